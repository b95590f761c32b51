//! Generators for every arrangement used by the certificates and tests.

mod gadgets;
mod random;
mod z;

pub use gadgets::{build_figure1, build_gadget_x, build_gadget_y, Gadget, GADGET_X_REGIONS, GADGET_Y_REGIONS};
pub use random::gen_random_guillotine;
pub use z::{
    bottom_name, build_z_abstract, copy_id, build_z_abstract_from, build_z_geometric, check_embedding, floors, top_name,
    z_demands, CopyRecord, Demand, TopCopyRecord, ZStructure, BOTTOM_COPIES,
};
