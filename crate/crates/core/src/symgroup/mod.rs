//! Symmetric groups: partitions, irreducible characters, class functions and
//! the permutation characters attached to symmetric hypersurfaces.

mod characters;
mod class_function;
mod classfns;
mod kostka;
mod partition;

pub use characters::{mn_character, CharacterTable};
pub use class_function::{
    decompose, decompose_exact, inner_product, is_character, CharacterVerdict, ClassFunction,
};
pub use classfns::{
    chi_m, d_a, permutation_spectrum, reduced_permutation_spectrum, signed_theta_tilde, theta,
    theta_tilde, type_i_character, type_ii_character, AbelianGroupSpec,
};
pub use kostka::{
    c_mu, find_min_alpha, kostka, multiset_count, schur_multiplicity_theta, sign_multiplicity,
    trivial_multiplicity, DEFAULT_ALPHA_CAP,
};
pub use partition::{class_size, d_of, m_e, m_prime_e, partitions, permutation_of_type, Partition};
