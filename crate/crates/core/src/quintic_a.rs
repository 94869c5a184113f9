//! A-model side of the quintic: cup and small quantum product on
//! `H^even`, the Γ̂-integral structure, flat frames and the Mukai pairing.
//!
//! Classes are written over the geometric basis `([X°], [H], [L], [p])`.
//! The α-basis is `α3 = [X°], α2 = [H], α1 = -[L], α0 = [p]`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::filtration::{ExactMatrix, SymFrac};
use crate::frame::{self, FrameVector};
use crate::instanton::InstantonTable;
use crate::quintic_b::{self, PrepotentialParts};
use crate::report::CheckReport;
use crate::ring::{as_integer, rat, rint, Rat, Ring};
use crate::scalar::TwistedScalar;
use crate::series::{QSeries, Series, SeriesError, Var};
use crate::taupoly::TauPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuinticAError {
    #[error("class is not an integral combination of the ξ basis: {0}")]
    NonIntegral(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A constant class with symbol coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstClass(pub [TwistedScalar; 4]);

impl ConstClass {
    pub fn zero() -> Self {
        ConstClass(std::array::from_fn(|_| TwistedScalar::zero()))
    }

    pub fn basis(k: usize) -> Self {
        let mut c = Self::zero();
        c.0[k] = TwistedScalar::one();
        c
    }

    pub fn from_rats(r: [Rat; 4]) -> Self {
        ConstClass(r.map(TwistedScalar::rational))
    }

    pub fn unit() -> Self {
        Self::basis(0)
    }

    pub fn hyperplane() -> Self {
        Self::basis(1)
    }

    pub fn line() -> Self {
        Self::basis(2)
    }

    pub fn point() -> Self {
        Self::basis(3)
    }

    pub fn add(&self, o: &Self) -> Self {
        ConstClass(std::array::from_fn(|i| self.0[i].add(&o.0[i])))
    }

    pub fn scale(&self, c: &TwistedScalar) -> Self {
        ConstClass(std::array::from_fn(|i| self.0[i].mul(c)))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        ConstClass(std::array::from_fn(|i| self.0[i].mul_rat(r)))
    }

    pub fn cup(&self, o: &Self) -> Self {
        let (a, b) = (&self.0, &o.0);
        let m = |x: &TwistedScalar, y: &TwistedScalar| x.mul(y);
        ConstClass([
            m(&a[0], &b[0]),
            m(&a[0], &b[1]).add(&m(&a[1], &b[0])),
            m(&a[0], &b[2]).add(&m(&a[2], &b[0])).add(&m(&a[1], &b[1]).mul_rat(&rint(5))),
            m(&a[0], &b[3])
                .add(&m(&a[3], &b[0]))
                .add(&m(&a[1], &b[2]))
                .add(&m(&a[2], &b[1])),
        ])
    }

    /// Sign `(-1)^k` on the degree-`2k` component.
    pub fn dual(&self) -> Self {
        ConstClass(std::array::from_fn(|k| {
            if k % 2 == 1 {
                self.0[k].neg()
            } else {
                self.0[k].clone()
            }
        }))
    }

    pub fn integrate(&self) -> TwistedScalar {
        self.0[3].clone()
    }

    /// `exp` of a class with no degree-0 part.
    pub fn exp_nilpotent(&self) -> Self {
        assert!(self.0[0].is_zero(), "exp needs a nilpotent class");
        let mut acc = Self::unit();
        let mut term = Self::unit();
        for k in 1..=3 {
            term = term.cup(self).scale_rat(&rat(1, k));
            acc = acc.add(&term);
        }
        acc
    }

    pub fn lift(&self, var: Var, order: usize) -> EvenClass {
        EvenClass(std::array::from_fn(|i| TauPoly::constant(self.0[i].clone(), var, order)))
    }
}

/// A class whose coefficients are τ-polynomials in `q`-series.
#[derive(Clone, Debug)]
pub struct EvenClass(pub [TauPoly; 4]);

impl PartialEq for EvenClass {
    fn eq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.sub(b).is_zero())
    }
}

impl EvenClass {
    pub fn zero(var: Var, order: usize) -> Self {
        EvenClass(std::array::from_fn(|_| TauPoly::zero(var, order)))
    }

    pub fn add(&self, o: &Self) -> Self {
        EvenClass(std::array::from_fn(|i| self.0[i].add(&o.0[i])))
    }

    pub fn sub(&self, o: &Self) -> Self {
        EvenClass(std::array::from_fn(|i| self.0[i].sub(&o.0[i])))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(TauPoly::is_zero)
    }

    /// Cup product; fails only if a τ-degree exceeds 3.
    pub fn cup(&self, o: &Self) -> Result<Self, SeriesError> {
        let (a, b) = (&self.0, &o.0);
        let m = |x: &TauPoly, y: &TauPoly| x.mul(y);
        Ok(EvenClass([
            m(&a[0], &b[0])?,
            m(&a[0], &b[1])?.add(&m(&a[1], &b[0])?),
            m(&a[0], &b[2])?.add(&m(&a[2], &b[0])?).add(&m(&a[1], &b[1])?.scale_rat(&rint(5))),
            m(&a[0], &b[3])?
                .add(&m(&a[3], &b[0])?)
                .add(&m(&a[1], &b[2])?)
                .add(&m(&a[2], &b[1])?),
        ]))
    }

    pub fn dtau(&self) -> Self {
        EvenClass(std::array::from_fn(|i| self.0[i].dtau()))
    }

    /// Substitutes `τ + 1`.
    pub fn tau_shift(&self) -> Self {
        EvenClass(std::array::from_fn(|i| self.0[i].shift(1)))
    }

    /// Coordinates over the α-basis ordered `(α3, α2, α1, α0)`.
    pub fn alpha_coords(&self) -> FrameVector {
        vec![self.0[0].clone(), self.0[1].clone(), self.0[2].neg(), self.0[3].clone()]
    }

    pub fn from_alpha_coords(v: &FrameVector) -> Self {
        EvenClass([v[0].clone(), v[1].clone(), v[2].neg(), v[3].clone()])
    }
}

/// `Q(α, β) = Σ_k (-1)^k ∫ α_k ∪ β_{3-k}`.
pub fn pairing(a: &EvenClass, b: &EvenClass) -> Result<TauPoly, SeriesError> {
    let mut acc = TauPoly::zero(a.0[0].var(), a.0[0].order());
    for k in 0..4 {
        let t = a.0[k].mul(&b.0[3 - k])?;
        acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    Ok(acc)
}

/// K-class as integer coordinates over `(ξ3, ξ2, ξ1, ξ0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass(pub [BigInt; 4]);

impl KClass {
    pub fn basis(i: usize) -> Self {
        let mut v: [BigInt; 4] = std::array::from_fn(|_| BigInt::from(0));
        v[3 - i] = BigInt::from(1);
        KClass(v)
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        KClass(v.map(BigInt::from))
    }
}

/// Stored characteristic classes with a derivation from `c(X°)`.
#[derive(Clone, Debug)]
pub struct GammaData {
    pub gamma_hat: ConstClass,
    pub todd: ConstClass,
    pub chern: ConstClass,
    /// `ch(ξ3), ch(ξ2), ch(ξ1), ch(ξ0)`.
    pub ch_basis: [ConstClass; 4],
}

impl Default for GammaData {
    fn default() -> Self {
        Self::new()
    }
}

impl GammaData {
    pub fn new() -> Self {
        let r = |n, d| rat(n, d);
        GammaData {
            gamma_hat: ConstClass([
                TwistedScalar::one(),
                TwistedScalar::zero(),
                TwistedScalar::rational(r(25, 12)),
                quintic_b::conifold_constant(),
            ]),
            todd: ConstClass::from_rats([rint(1), rint(0), r(25, 6), rint(0)]),
            chern: ConstClass::from_rats([rint(1), rint(0), rint(50), rint(-200)]),
            ch_basis: [
                ConstClass::unit(),
                ConstClass::from_rats([rint(0), rint(1), r(-11, 2), r(-25, 6)]),
                ConstClass::from_rats([rint(0), rint(0), rint(-1), rint(0)]),
                ConstClass::point(),
            ],
        }
    }

    /// `(ch_2, ch_3)` of the tangent bundle from `c` by Newton's identities.
    pub fn tangent_ch(&self) -> (ConstClass, ConstClass) {
        let c = &self.chern.0;
        let c1 = ConstClass([TwistedScalar::zero(), c[1].clone(), TwistedScalar::zero(), TwistedScalar::zero()]);
        let c2 = ConstClass([TwistedScalar::zero(), TwistedScalar::zero(), c[2].clone(), TwistedScalar::zero()]);
        let c3 = ConstClass([TwistedScalar::zero(), TwistedScalar::zero(), TwistedScalar::zero(), c[3].clone()]);
        // p1 = c1, p2 = c1 p1 - 2 c2, p3 = c1 p2 - c2 p1 + 3 c3
        let p1 = c1.clone();
        let p2 = c1.cup(&p1).add(&c2.scale_rat(&rint(-2)));
        let p3 = c1.cup(&p2).add(&c2.cup(&p1).scale_rat(&rint(-1))).add(&c3.scale_rat(&rint(3)));
        (p2.scale_rat(&rat(1, 2)), p3.scale_rat(&rat(1, 6)))
    }

    /// Γ̂ from `exp(Σ_k (-1)^k (k-1)! ζ(k)/(2πi)^k ch_k)` with
    /// `ζ(2)/(2πi)^2 = -1/24` and `ζ(3)/(2πi)^3 = c`.
    pub fn derived_gamma_hat(&self) -> ConstClass {
        let (ch2, ch3) = self.tangent_ch();
        let k2 = ch2.scale_rat(&rat(-1, 24));
        let k3 = ch3.scale(&TwistedScalar::c()).scale_rat(&rint(-2));
        k2.add(&k3).exp_nilpotent()
    }

    /// `1 + c1/2 + (c1² + c2)/12 + c1 c2/24`.
    pub fn derived_todd(&self) -> ConstClass {
        let c = &self.chern.0;
        let c1 = ConstClass([TwistedScalar::zero(), c[1].clone(), TwistedScalar::zero(), TwistedScalar::zero()]);
        let c2 = ConstClass([TwistedScalar::zero(), TwistedScalar::zero(), c[2].clone(), TwistedScalar::zero()]);
        ConstClass::unit()
            .add(&c1.scale_rat(&rat(1, 2)))
            .add(&c1.cup(&c1).add(&c2).scale_rat(&rat(1, 12)))
            .add(&c1.cup(&c2).scale_rat(&rat(1, 24)))
    }

    pub fn verify(&self) -> CheckReport {
        let mut r = CheckReport::new("characteristic classes");
        let (ch2, ch3) = self.tangent_ch();
        r.require(ch2 == ConstClass::from_rats([rint(0), rint(0), rint(-50), rint(0)]), || {
            format!("ch2 = {:?}", ch2)
        });
        r.require(ch3 == ConstClass::from_rats([rint(0), rint(0), rint(0), rint(-100)]), || {
            format!("ch3 = {:?}", ch3)
        });
        let g = self.derived_gamma_hat();
        r.require(g == self.gamma_hat, || format!("derived Γ̂ = {:?}", g));
        let td = self.derived_todd();
        r.require(td == self.todd, || format!("derived Td = {:?}", td));
        r
    }

    pub fn ch(&self, xi: &KClass) -> ConstClass {
        xi.0.iter().zip(&self.ch_basis).fold(ConstClass::zero(), |acc, (k, c)| {
            acc.add(&c.scale_rat(&Rat::from_integer(k.clone())))
        })
    }

    /// Inverse of `ch` on its image.
    pub fn ch_inverse(&self, v: &ConstClass) -> Result<KClass, QuinticAError> {
        let rats: Vec<Rat> = v
            .0
            .iter()
            .map(|x| x.as_rational().ok_or_else(|| QuinticAError::NonIntegral(format!("{x}"))))
            .collect::<Result<_, _>>()?;
        let a3 = rats[0].clone();
        let a2 = rats[1].clone();
        let a1 = -(&rats[2] + &a2 * rat(11, 2));
        let a0 = &rats[3] + &a2 * rat(25, 6);
        let ints: Vec<BigInt> = [a3, a2, a1, a0]
            .iter()
            .map(|x| as_integer(x).ok_or_else(|| QuinticAError::NonIntegral(x.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(KClass([ints[0].clone(), ints[1].clone(), ints[2].clone(), ints[3].clone()]))
    }

    /// `⟨ξ, ξ'⟩ = ∫ ch(ξ)^∨ ∪ ch(ξ') ∪ Td`.
    pub fn mukai_pairing(&self, a: &KClass, b: &KClass) -> TwistedScalar {
        self.ch(a).dual().cup(&self.ch(b)).cup(&self.todd).integrate()
    }

    pub fn mukai_gram(&self) -> Vec<Vec<TwistedScalar>> {
        (0..4)
            .map(|i| (0..4).map(|j| self.mukai_pairing(&KClass::basis(3 - i), &KClass::basis(3 - j))).collect())
            .collect()
    }

    /// `ch(O(-1) ⊗ ξ) = e^{-H} ch(ξ)`, read back in the ξ basis.
    pub fn tensor_o_minus1(&self, xi: &KClass) -> Result<KClass, QuinticAError> {
        let twist = ConstClass::hyperplane().scale_rat(&rint(-1)).exp_nilpotent();
        self.ch_inverse(&twist.cup(&self.ch(xi)))
    }

    /// Integer matrix of `O(-1) ⊗` on `(ξ3..ξ0)`, column convention.
    pub fn tensor_matrix(&self) -> Result<Vec<Vec<BigInt>>, QuinticAError> {
        let cols: Vec<KClass> =
            (0..4).map(|j| self.tensor_o_minus1(&KClass::basis(3 - j))).collect::<Result<_, _>>()?;
        Ok((0..4).map(|i| (0..4).map(|j| cols[j].0[i].clone()).collect()).collect())
    }
}

/// Quantum cohomology data at a fixed truncation order in `q`.
#[derive(Clone, Debug)]
pub struct AModel {
    pub order: usize,
    pub parts: PrepotentialParts,
    /// `Y = Φ''' = 5 + Σ d³ N_d q^d`.
    pub yukawa: QSeries,
    pub gamma: GammaData,
}

impl AModel {
    pub fn from_table(table: &InstantonTable, order: usize) -> Self {
        let parts = quintic_b::prepotential_parts(table, order);
        let yukawa = Series::from_fn(Var::Q, order, |d| {
            if d == 0 {
                TwistedScalar::rational(rint(5))
            } else if d <= table.len() {
                TwistedScalar::rational(table.gw(d as u32) * rint((d * d * d) as i64))
            } else {
                TwistedScalar::zero()
            }
        });
        AModel { order, parts, yukawa, gamma: GammaData::new() }
    }

    pub fn new(order: usize) -> Result<Self, quintic_b::PipelineError> {
        let table = quintic_b::instanton_numbers(order.max(2) - 1)?;
        Ok(Self::from_table(&table, order))
    }

    fn var(&self) -> Var {
        Var::Q
    }

    pub fn lift(&self, c: &ConstClass) -> EvenClass {
        c.lift(self.var(), self.order)
    }

    /// `[H]*`: `X ↦ H`, `H ↦ Y L`, `L ↦ p`, `p ↦ 0`.
    pub fn quantum_product_h(&self, a: &EvenClass) -> EvenClass {
        let z = TauPoly::zero(self.var(), self.order);
        EvenClass([z, a.0[0].clone(), a.0[1].mul_series(&self.yukawa), a.0[2].clone()])
    }

    /// `σ̃`, τ-linear: `σ̃(α2) = α2 + Φ''α1 + Φ'α0`, `σ̃(α3) = α3 + Φ'α1 + 2Φα0`.
    pub fn sigma_tilde(&self, a: &EvenClass) -> EvenClass {
        let (x, h) = (&a.0[0], &a.0[1]);
        let p = &self.parts;
        EvenClass([
            x.clone(),
            h.clone(),
            a.0[2].sub(&h.mul_series(&p.phi2)).sub(&x.mul_series(&p.phi1)),
            a.0[3].add(&h.mul_series(&p.phi1)).add(&x.mul_series(&p.phi).scale_rat(&rint(2))),
        ])
    }

    /// `σ(α) = σ̃(e^{-τ[H]} ∪ α)`.
    pub fn sigma(&self, a: &ConstClass) -> Result<EvenClass, SeriesError> {
        let (var, order) = (self.var(), self.order);
        let tau = |k: usize, c: Rat| TauPoly::tau_pow(k, TwistedScalar::rational(c), var, order);
        let e = EvenClass([tau(0, rint(1)), tau(1, rint(-1)), tau(2, rat(5, 2)), tau(3, rat(-5, 6))]);
        Ok(self.sigma_tilde(&e.cup(&self.lift(a))?))
    }

    /// `σ_∞(α) = σ̃(α)|_{q=0}`.
    pub fn sigma_infty(&self, a: &ConstClass) -> ConstClass {
        let s = self.sigma_tilde(&self.lift(a));
        ConstClass(std::array::from_fn(|i| s.0[i].term(0).coeff(0)))
    }

    /// `γ(ξ) = σ(Γ̂ ∪ ch ξ)`.
    pub fn gamma_flat(&self, xi: &KClass) -> Result<EvenClass, SeriesError> {
        self.sigma(&self.gamma.gamma_hat.cup(&self.gamma.ch(xi)))
    }

    pub fn gamma_infty(&self, xi: &KClass) -> ConstClass {
        self.sigma_infty(&self.gamma.gamma_hat.cup(&self.gamma.ch(xi)))
    }

    /// `∂_τ s + [H]*s`, zero exactly for flat sections.
    pub fn flatness_defect(&self, s: &EvenClass) -> EvenClass {
        s.dtau().add(&self.quantum_product_h(s))
    }

    pub fn flatness_check(&self) -> Result<CheckReport, SeriesError> {
        let mut r = CheckReport::new("flatness of σ and γ");
        for k in 0..4 {
            let alpha = if k == 1 { ConstClass::line().scale_rat(&rint(-1)) } else { ConstClass::basis(3 - k) };
            let s = self.sigma(&alpha)?;
            r.require(self.flatness_defect(&s).is_zero(), || format!("∇σ(α{k}) != 0"));
            let g = self.gamma_flat(&KClass::basis(k))?;
            r.require(self.flatness_defect(&g).is_zero(), || format!("∇γ(ξ{k}) != 0"));
        }
        Ok(r)
    }

    /// `Q(γ(ξ_i), γ(ξ_j))` is constant and equals `⟨ξ_i, ξ_j⟩`.
    pub fn pairing_check(&self) -> Result<CheckReport, SeriesError> {
        let mut r = CheckReport::new("Q(γ(ξ),γ(ξ')) = Mukai pairing");
        let gammas: Vec<EvenClass> =
            (0..4).map(|k| self.gamma_flat(&KClass::basis(k))).collect::<Result<_, _>>()?;
        for i in 0..4 {
            for j in 0..4 {
                let q = pairing(&gammas[i], &gammas[j])?;
                let m = self.gamma.mukai_pairing(&KClass::basis(i), &KClass::basis(j));
                let expected = TauPoly::constant(m, Var::Q, self.order);
                r.require(q.sub(&expected).is_zero(), || format!("pairing mismatch at (ξ{i}, ξ{j})"));
            }
        }
        Ok(r)
    }

    /// `T(γ(ξ)) = γ(O(-1) ⊗ ξ)` for the basis, and `T² ↔ O(-2)`.
    pub fn monodromy_check(&self) -> Result<CheckReport, QuinticAError> {
        let mut r = CheckReport::new("monodromy as tensoring by O(-1)");
        for k in 0..4 {
            let xi = KClass::basis(k);
            let g = self.gamma_flat(&xi)?;
            let twisted = self.gamma.tensor_o_minus1(&xi)?;
            r.require(g.tau_shift() == self.gamma_flat(&twisted)?, || format!("T γ(ξ{k}) != γ(O(-1)⊗ξ{k})"));
            let twice = self.gamma.tensor_o_minus1(&twisted)?;
            r.require(g.tau_shift().tau_shift() == self.gamma_flat(&twice)?, || {
                format!("T² γ(ξ{k}) != γ(O(-2)⊗ξ{k})")
            });
        }
        let m = self.gamma.tensor_matrix()?;
        let e = frame::rat_exp_nilpotent(&quintic_b::n_gamma());
        let same = (0..4).all(|i| (0..4).all(|j| Rat::from_integer(m[i][j].clone()) == e[i][j]));
        r.require(same, || "[O(-1)⊗]_ξ != exp([N]_γ)".to_string());
        Ok(r)
    }

    /// Columns `γ_∞(ξ3), …, γ_∞(ξ0)` over the limiting basis
    /// `e3 = [X°], e2 = [H], e1 = -[L], e0 = [p]`.
    pub fn lmhs_recovery(&self) -> ExactMatrix {
        let cols: Vec<Vec<SymFrac>> = (0..4)
            .map(|j| {
                let c = self.gamma_infty(&KClass::basis(3 - j));
                vec![c.0[0].clone(), c.0[1].clone(), c.0[2].neg(), c.0[3].clone()]
                    .into_iter()
                    .map(SymFrac::scalar)
                    .collect()
            })
            .collect();
        ExactMatrix::from_columns(4, &cols)
    }

    pub fn lmhs_check(&self) -> CheckReport {
        let mut r = CheckReport::new("LMHS recovery");
        let got = self.lmhs_recovery();
        let want = quintic_b::limiting_period_matrix();
        for i in 0..4 {
            for j in 0..4 {
                r.require(got.get(i, j) == want.get(i, j), || {
                    format!("entry ({},{}) = {} expected {}", i + 1, j + 1, got.get(i, j), want.get(i, j))
                });
            }
        }
        r
    }

    /// `γ(ξ_k)` against the inverse of the B-model basis change: with
    /// `M` the matrix of `e` over `γ`, `M^{-1}` expresses `γ_k` over `e`.
    pub fn inverse_basis_check(&self, basis: &[FrameVector; 4]) -> Result<CheckReport, SeriesError> {
        let mut r = CheckReport::new("γ(ξ) = inverse of the Hodge basis change");
        // columns ordered e3, e2, e1, e0; rows γ3..γ0
        let cols = [&basis[3], &basis[2], &basis[1], &basis[0]];
        let (var, order) = (self.var(), self.order);
        let m: Vec<Vec<TauPoly>> = (0..4).map(|i| (0..4).map(|j| cols[j][i].clone()).collect()).collect();
        let id = |i: usize, j: usize| {
            if i == j { TauPoly::rational(rint(1), var, order) } else { TauPoly::zero(var, order) }
        };
        let l: Vec<Vec<TauPoly>> = (0..4).map(|i| (0..4).map(|j| m[i][j].sub(&id(i, j))).collect()).collect();
        let matmul = |a: &Vec<Vec<TauPoly>>, b: &Vec<Vec<TauPoly>>| -> Result<Vec<Vec<TauPoly>>, SeriesError> {
            (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| {
                            (0..4).try_fold(TauPoly::zero(var, order), |acc, k| Ok(acc.add(&a[i][k].mul(&b[k][j])?)))
                        })
                        .collect()
                })
                .collect()
        };
        // unipotent: M^{-1} = I - L + L² - L³
        let l2 = matmul(&l, &l)?;
        let l3 = matmul(&l2, &l)?;
        let inv: Vec<Vec<TauPoly>> = (0..4)
            .map(|i| (0..4).map(|j| id(i, j).sub(&l[i][j]).add(&l2[i][j]).sub(&l3[i][j])).collect())
            .collect();
        for j in 0..4 {
            // column j is γ_{3-j} over (e3, e2, e1, e0) = alpha coordinates
            let col: FrameVector = (0..4).map(|i| inv[i][j].clone()).collect();
            let from_b = EvenClass::from_alpha_coords(&col);
            let k = 3 - j;
            let from_a = self.gamma_flat(&KClass::basis(k))?;
            r.require(from_a == from_b, || format!("γ(ξ{k}) disagrees with γ{k} from the Hodge basis"));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> AModel {
        AModel::new(6).unwrap()
    }

    #[test]
    fn cup_structure() {
        let h = ConstClass::hyperplane();
        assert_eq!(h.cup(&h), ConstClass::line().scale_rat(&rint(5)));
        assert_eq!(ConstClass::line().cup(&ConstClass::line()), ConstClass::zero());
        assert_eq!(h.cup(&ConstClass::line()), ConstClass::point());
    }

    #[test]
    fn characteristic_classes() {
        let r = GammaData::new().verify();
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn mukai_gram_is_q() {
        let g = GammaData::new().mukai_gram();
        let q = quintic_b::q_gamma();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g[i][j], TwistedScalar::rational(q[i][j].clone()), "({i},{j})");
            }
        }
    }

    #[test]
    fn flat_sections() {
        let m = model();
        let r = m.flatness_check().unwrap();
        assert!(r.passed, "{:?}", r.failures);
        let g1 = m.gamma_flat(&KClass::basis(1)).unwrap();
        let var = Var::Q;
        let expected = EvenClass([
            TauPoly::zero(var, 6),
            TauPoly::zero(var, 6),
            TauPoly::rational(rint(-1), var, 6),
            TauPoly::tau(var, 6),
        ]);
        assert_eq!(g1, expected);
    }

    #[test]
    fn pairing_monodromy_lmhs() {
        let m = model();
        for r in [m.pairing_check().unwrap(), m.monodromy_check().unwrap(), m.lmhs_check()] {
            assert!(r.passed, "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn agrees_with_b_model() {
        let qb = quintic_b::QuinticB::new(6).unwrap();
        let m = AModel::from_table(&qb.table, 6);
        let r = m.inverse_basis_check(&qb.hodge_basis()).unwrap();
        assert!(r.passed, "{:?}", r.failures);
    }
}
