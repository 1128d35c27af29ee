//! `Pin^c` and `Spin^c` elements, the twisted adjoint representation and
//! the lifts of orthogonal and unitary matrices.

mod actions;
mod element;
mod lift;
mod retraction;

pub use actions::{
    alpha_identities, check_rho_real_equivariance, conjugate_orthogonal, iv_model_action, random_pin,
    random_rational_unit_vector, rho_homomorphism_holds, AlphaIdentities,
};
pub use element::{twisted_adjoint, PinElement};
pub use lift::{
    check_phi_real, is_fixed_spinc, normalize_sign, phi_canonicity_residual, phi_lift, phi_lift_from_eigen, spin_lift,
    spin_lift_in, PhiLift, PhiRealCheck, SpinLift,
};
pub use retraction::{fixed_point_retraction, random_fixed_class, Retraction};
