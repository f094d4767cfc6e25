//! Explicit constructions reproduced at finite truncation.

pub mod double_zero;
pub mod gaps;
pub mod lacunary;
pub mod precision;
pub mod random;
pub mod section4;
pub mod sharp;

pub use gaps::{separation_check, synthesis_gap_check, GapReport, SeparationReport};
pub use lacunary::{lacunary_sequence, LacunaryReport};
pub use section4::{section4_build, section4_max_k, Section4Pipeline};
pub use sharp::{
    mittag_leffler_check, sharp_instance, sharp_zero_freeness, truncation_discrepancy,
    MittagLefflerCheck, SharpInstance, ZeroFreeness,
};
