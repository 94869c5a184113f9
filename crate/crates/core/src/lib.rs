pub mod ring;
pub mod scalar;
pub mod series;
pub mod taupoly;
pub mod numeric;
pub mod frobenius;
pub mod instanton;
pub mod filtration;
pub mod report;
pub mod frame;
pub mod quintic_b;
pub mod quintic_a;
pub mod local_p2;
pub mod twoparam;
