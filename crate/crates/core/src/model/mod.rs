//! Orbits, orbit sets, trivializations, homology and relative classes.

mod angle;
mod homology;
mod orbit;
mod relclass;

pub use angle::{parse_fraction, validate_angle, MonodromyAngle};
pub use homology::HomologyModel;
pub use orbit::{
    End, EntryDoc, OrbitClass, OrbitKind, OrbitSet, OrbitSetDoc, OrbitTable, Side, Trivialization,
};
pub use relclass::{RelClass, RelClassDoc};
