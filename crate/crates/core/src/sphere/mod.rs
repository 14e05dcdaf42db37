//! Points, caps and samplers on spheres.

mod cap;
mod io;
mod partition;
mod point;
mod sampling;
mod stereo;

pub use cap::{cap_measure, Cap};
pub use io::{read_configuration, write_configuration, NORM_TOLERANCE};
pub use partition::{build_equal_area_partition, Cell, EqualAreaPartition};
pub use point::{Configuration, SpherePoint};
pub use sampling::{sample_jittered, sample_uniform, seeded_rng, uniform_point, SphereRng};
pub use stereo::{inverse_stereographic, stereographic};
