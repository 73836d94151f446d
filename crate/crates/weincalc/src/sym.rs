//! Symmetric-group combinatorics: partitions, permutations, cycle types,
//! irreducible characters, and the content products behind the character
//! expansions.

pub mod character;
pub mod partition;
pub mod permutation;

pub use character::{character, symmetric_group, SymmetricGroup};
pub use partition::{partitions_of, CycleType, Partition};
pub use permutation::{all_permutations, Permutation};
