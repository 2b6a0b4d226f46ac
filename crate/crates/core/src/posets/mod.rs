//! Graded posets: Möbius functions, Eulerian classification, flag vectors,
//! toric h-vectors, the cd-index and the Bayer–Billera relations.

mod cd;
mod poset;
mod toric;

pub use cd::{
    ab_polynomial, bayer_billera_defects, bayer_billera_instances, cd_index, cd_monomials,
    parse_word_polynomial, semi_eulerian_correction, ABPolynomial, BayerBilleraInstance, CDIndex,
};
pub use poset::{
    face_poset, flag_vectors, order_complex, parse_poset, poset_to_json, rank_coloring,
    GradedPoset, PosetClass, PosetFile,
};
pub use toric::{toric_ds_defect, toric_h, ToricPolynomial};

#[cfg(test)]
mod tests;
