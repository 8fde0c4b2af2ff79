//! Linear characters of `P_n` and the sums of their values over `S_n`-classes.

mod closed;
mod eval;
mod induce;
mod oracle;
mod recursive;
mod spec;

pub use closed::{c_factor, class_sum, gamma_closed, gamma_pair, type_shape, TypeShape};
pub use eval::{char_eval, char_eval_product, row_exponent, row_exponent_from_level_sums};
pub use induce::{class_sum_with, gamma_with, induced_nonzero_check, induced_value, Induced, Mode};
pub use oracle::{census, oracle_class_sum, oracle_class_sum_cyclotomic, oracle_class_sum_direct, Census};
pub use recursive::{class_sum_recursive, gamma_pair_recursive, gamma_recursive};
pub use spec::{BitSeq, CharSpec, Row};
