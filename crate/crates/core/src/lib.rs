//! Exact computation of induced linear characters of Sylow `p`-subgroups of
//! symmetric groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`combinat`]: set partitions, Bell and Stirling machinery, and the
//!   `R`/`M` polynomial layer used by the closed forms.
//! * [`sylow`]: the iterated wreath product model of `P_{p^k}`, cycle types
//!   and exhaustive (budgeted) enumeration.
//! * [`chars`]: parametrised linear characters, closed-form class sums and
//!   induced values, each computable along three independent routes.
//! * [`classify`]: the normaliser-conjugacy decision, `f`-multisets and the
//!   multiset lemmas that reconstruct characters from induced data.
//! * [`verify`]: verification campaigns producing reproducible JSON reports.
//!
//! All arithmetic is exact. Rationals are [`ExactRational`] and sums of
//! `p`-th roots of unity are [`CycInt`].
//!
//! ```
//! use sylow_chars::chars::{gamma_closed, BitSeq};
//!
//! // Sum of the trivial character of P_9 over its elements of cycle type (3,1^6).
//! let u = BitSeq::parse("11").unwrap();
//! let value = gamma_closed(3, 2, &[1], &u).unwrap();
//! assert_eq!(value.to_string(), "6");
//! ```

pub mod chars;
pub mod classify;
pub mod combinat;
pub mod cyclotomic;
mod error;
pub mod rational;
pub mod sylow;
pub mod verify;

pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use rational::ExactRational;

/// Returns true when `p` is a prime number.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn ensure_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not prime")))
    }
}
