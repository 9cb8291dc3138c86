pub mod finite_field;
pub mod elliptic;
pub mod isogeny;
pub mod construct;
pub mod zeta;
pub mod twist;
pub mod pipeline;
