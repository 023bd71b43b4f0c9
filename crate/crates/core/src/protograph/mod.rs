//! Protomatrices, type descriptions and the maps between them.

pub mod count;
pub mod expand;
pub mod io;
pub mod lift;
pub mod presets;
pub mod protomatrix;
pub mod types;

pub use count::{composition_count, conventional_space_size, search_space_size};
pub use expand::{expand_type_description, fixed_nodes_connected, ExpansionLayout};
pub use io::{parse_protomatrix, parse_type_description, serialize_protomatrix, serialize_type_description};
pub use lift::{lift_type_description, DEFAULT_TYPE_LIFT};
pub use protomatrix::{design_rate, Protomatrix, DEFAULT_MAX_ENTRY};
pub use types::{tbp_design_rate, OccurrenceAssignment, TypeDescription};
