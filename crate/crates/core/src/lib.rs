//! Quasigroup string transformations and the candidate one-way functions
//! built from them, together with lookup-table inversion attacks and the
//! order-4 fractal / non-fractal census.

pub mod classification;
pub mod error;
pub mod inversion;
pub mod io;
pub mod latin;
pub mod quasigroup;
pub mod transform;

pub use classification::{
    census_order4, classify, period_profile, permutation_search, CensusReport, ClassLabel,
    ClassifierSettings, Label, LeaderAlphabet, SearchSettings,
};
pub use error::{Error, Result};
pub use inversion::{
    attack_r1, attack_r2, attack_rn, brute_preimages, preimage_histogram, AttackOptions,
    AttackTrace, Budget, PreimageHistogram,
};
pub use latin::{enumerate_latin, enumerate_order4, lex_index, order4_by_index, random_latin};
pub use quasigroup::{AlgebraicProfile, Quasigroup, Symbol};
pub use transform::{
    apply_leader_sequence, e_inverse, e_transform, r1, r2, r_n, LeaderString, LeaderSymbol,
    OwfSpec, QString,
};
