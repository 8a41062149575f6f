pub mod diagnose;
pub mod distance;
pub mod evolve;
pub mod pic1;
pub mod soliton;
