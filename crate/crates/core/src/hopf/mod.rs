//! Generic graded connected Hopf algebras and their Laurent-series-valued
//! characters.

mod algebra;
mod character;
mod toy;

pub use algebra::{
    antipode, antipode_sides, coassociativity_sides, coproduct, coproduct_generator, coproduct_monomial, counit,
    counit_sides, monomial_degree, monomials, Antipode, Combination, DisplayKey, Element, HopfInstance, Monomial,
    Tensor, Tensor3,
};
pub(crate) use character::by_degree;
pub use character::{
    birkhoff, birkhoff_on_monomial, bphz, bphz_prepare, convolve, evaluate_at_zero, inverse, BirkhoffPair, BphzTriple,
    Character,
};
pub use toy::{toy_character, toy_tree_value};
