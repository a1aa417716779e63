//! The graded Lie algebra `g = (+) G_k` and the map `phi` on kernels of
//! the bracket.

mod graded;
mod phi;

pub use graded::{
    basis, bracket_lattice, check_graded, gen_x, gen_y, rank, span, CosetElement, GradedElement,
};
pub(crate) use graded::conjugate_by_perm;
pub use phi::{
    omega_even_lift, phi_eval, phi_from_w, phi_from_w_matrix, reconstruct_plus, u_vector, w_prime, KernelElement, KernelTerm,
    PhiMode, PhiValue,
};
