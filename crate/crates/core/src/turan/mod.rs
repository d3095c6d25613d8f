//! Semi-algebraic relations and Turán-type extraction of complete blocks.

pub mod extract;
pub mod relation;
pub mod shatter;

pub use extract::{
    bipartite_turan, block_is_complete, build_mnet, kpartite_turan, maximal_packing, packing_is_maximal,
    scaling_ratio, BipartiteInstance, LevelStats, Mnet, MnetSet, TuranBlock, TuranConstants,
};
pub use relation::{
    decode_simplex, encode_simplex, eval_flat, eval_relation, loose_relation, Formula, Monomial, Polynomial,
    SemiAlgRelation,
};
pub use shatter::{estimate_shatter, left_samples, shatter_ladder, ShatterEstimate, ShatterLadder};
