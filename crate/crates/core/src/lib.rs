//! Exact L-functions of the Artin–Schreier family
//! E_{a,γ}: y² = x(x + 16γ)(x + ℘_a(t)²) over F_q(t), ℘_a(t) = t^{q^a} − t,
//! together with an independent point-counting oracle and Sato–Tate
//! statistics of the Kloosterman angles.
//!
//! ```
//! use aslfunc_core::curve_oracle::CurveParams;
//! use aslfunc_core::lfunction::l_polynomial;
//!
//! let params = CurveParams::new(3, 1, 1).unwrap();
//! let l = l_polynomial(&params).unwrap();
//! assert_eq!(l.coeffs_i64(), vec![1, 4, -8, -78, -72, 324, 729]);
//! ```

pub mod checks;
pub mod curve_oracle;
pub mod cyclotomic;
mod error;
pub mod family;
pub mod field_arith;
pub mod kloosterman;
pub mod lfunction;
pub mod places;
pub mod report;
pub mod statistics;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// Resource bounds shared by every operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest field that may be enumerated element by element.
    pub enumeration_cap: u64,
    /// Largest number of elementary character evaluations per operation.
    pub work_limit: u128,
    /// Largest q^a for which ℘_a(t) and ℘_a(t)² − 16γ are factored.
    pub factorization_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: field_arith::TABLE_CAP,
            work_limit: 100_000_000,
            factorization_cap: 2187,
        }
    }
}

impl Limits {
    pub(crate) fn check_work(&self, needed: u128) -> Result<()> {
        if needed > self.work_limit {
            Err(Error::WorkLimitExceeded {
                needed,
                limit: self.work_limit,
            })
        } else {
            Ok(())
        }
    }
}
