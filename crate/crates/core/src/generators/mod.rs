//! Instance families: the single-label path and the shutter construction.

mod gadget;
mod meta;
mod params;
mod random;

pub use gadget::{
    assemble, make_chain, make_gap_instance, make_gap_instance_capped, make_path_instance,
    make_shutter, shutter_pairs, DiamondVertices, Fragment, GadgetLabel, GadgetLayout,
    GapInstance, Permutation, PermutationTable,
};
pub use meta::{sidecar_path, ChainRecord, GadgetMeta, META_FORMAT};
pub use params::{
    derive_params, AsymptoticParams, AsymptoticSettings, GadgetParams, DEFAULT_EDGE_CAP,
};
pub use random::make_random_instance;
