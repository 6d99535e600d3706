//! Fractional ideals, class groups and principalization for imaginary
//! quadratic orders.

pub mod classgroup;
pub mod exact;
pub mod form;
pub mod ideal;
pub mod semilocal;

pub use classgroup::{class_group, ClassGroup};
pub use exact::{cl_pic_exact_check, is_principal, ClPicReport};
pub use form::{parse_form, reduced_forms, IdealClass, QuadForm};
pub use ideal::{parse_ideal, FractionalIdeal};
pub use semilocal::{
    local_valuations, locally_equal, maximal_ideals, primes_above, principalize_semilocal, valuation,
    Principalization,
};
