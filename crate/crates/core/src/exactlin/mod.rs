//! Exact integer linear algebra and polyhedral conversions.

/// Runs a generic kernel with the backend chosen by an [`Arith`](crate::Arith).
/// `Auto` retries with big integers when the 64-bit kernel overflows.
macro_rules! dispatch {
    ($arith:expr, $f:ident ( $($args:expr),* $(,)? )) => {
        match $arith {
            $crate::config::Arith::Checked64 => $f::<i64>($($args),*),
            $crate::config::Arith::Big => $f::<num_bigint::BigInt>($($args),*),
            $crate::config::Arith::Auto => match $f::<i64>($($args),*) {
                Err($crate::error::Error::Overflow(_)) => $f::<num_bigint::BigInt>($($args),*),
                other => other,
            },
        }
    };
}

mod cone;
mod dd;
mod fm;
mod hnf;
mod int;
mod integerize;
mod matrix;

pub use cone::HRepCone;
pub use dd::{double_description, double_description_with};
pub use fm::{cone_membership_system, fm_eliminate, fm_project, satisfies};
pub use hnf::{hnf, hnf_with, integer_kernel, lattice_coordinates, matrix_rank, saturate};
pub use integerize::integerize_interval_sum;
pub use matrix::IntMatrix;

#[allow(unused_imports)]
pub(crate) use cone::dot128;

pub type Rational = num_rational::BigRational;
