//! Weight-2 modular symbols for Γ0(N): Manin symbols, the star involution,
//! the cuspidal +-subspace, Hecke operators and maps between levels.
//!
//! Hecke operators are computed with the Heilbronn family of
//! [`heilbronn::heilbronn`], which is valid for every index n.

mod cusps;
mod genus;
pub mod heilbronn;
mod maps;
mod p1;
mod space;
mod store;

pub use cusps::{cusp_count, cusps_equivalent, Cusp, CuspList};
pub use genus::{gamma0_index, genus_x0, nu2, nu3};
pub use maps::{
    atkin_lehner, atkin_lehner_full, column_space, cusp_symbol, degeneracy_down, degeneracy_old_embedding,
    degeneracy_up, old_subspace, p_new_subspace, restrict, zero_to_cusp,
};
pub use p1::{p1_count, p1_list, P1Element, P1List};
pub use space::{HeckeMatrix, ModSymSpace, SparseVec};
pub use store::{cache_path, load_into, serialize, SpaceStore, CACHE_FORMAT_VERSION};

use crate::error::Result;

/// Build the space of level `n`.
pub fn build_space(n: u64) -> Result<ModSymSpace> {
    ModSymSpace::new(n)
}

/// T_n on the cuspidal +-subspace.
pub fn hecke_matrix(space: &ModSymSpace, n: u64) -> Result<HeckeMatrix> {
    space.hecke_matrix(n)
}
