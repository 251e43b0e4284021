//! Builders for the algebras and distinguished elements used throughout.

pub mod affine;
pub mod deform;
pub mod embeddings;
pub mod freefield;
pub mod named;
pub mod virasoro;

pub use affine::{affine, current, sugawara, sugawara_of};
pub use deform::{deformable_form, limit_element, limit_presentation, to_deformable};
pub use embeddings::{
    affine_image, diagonal_current, sigma_embedding, sp_action_on_symplectic_tensor_betagamma, tau_embedding, EmbeddingImage,
};
pub use freefield::{bc_system, beta_gamma, free_fermion, heisenberg, heisenberg_gram, symplectic_fermion};
pub use named::{named_generators, n2_ambient, n2_generators, sl3_root_heisenberg, NamedElement, FAMILIES};
pub use virasoro::{primary_test, virasoro_test, PrimaryReport, VirasoroReport};
