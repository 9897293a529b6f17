//! Exact arithmetic on the quartic twists `E_d : dy² = x³ − x`.

pub mod eta;
pub mod height;
pub mod point;
pub mod twist;

pub use eta::{eta, EtaResult, EtaStatus};
pub use height::{canonical_height, canonical_height_w_model, naive_x_height, HeightValue};
pub use point::{rat, rat_from_string, rat_to_string, CurvePoint};
pub use twist::Twist;
