//! Exact scalars: Laurent polynomials and rational functions in `q`,
//! cyclotomic numbers for `q = e^{±πi/ℓ}`, and prime-field reductions.

mod cyclotomic;
mod expr;
mod field;
mod laurent;
mod modp;
mod poly;
mod ratfunc;

pub use cyclotomic::{field as cyclotomic_field, specialize, CycloField, Cyclotomic};
pub use expr::eval_formula;
pub use field::{Field, Generic, ModPrime, RootOfUnity, Specialization};
pub use laurent::LaurentPoly;
pub use modp::{is_prime, prime_congruent_one, root_of_unity, Fp};
pub use ratfunc::{qint, RationalFunction};
