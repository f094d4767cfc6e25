//! Hypothesis checks of completeness and synthesis conditions on finite data.

pub mod growth;
pub mod integral;
pub mod macaev;
pub mod mass;
pub mod synthesis;
pub mod winding;

pub use growth::{exact_exponent, growth_profile, GrowthProfile};
pub use integral::{integral_test, IntegralReport};
pub use macaev::{macaev_check, MacaevReport};
pub use mass::{mass_detect, MassReport};
pub use synthesis::{enumerate_partitions, synthesis_defect, PartitionSweep, SynthesisDefect};
pub use winding::{volterra_window_check, Rectangle, WindowCount};
