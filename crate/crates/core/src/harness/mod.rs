//! Function registry, convergence studies and golden-table reproduction.

pub mod output;
pub mod registry;
pub mod study;
pub mod table;

pub use output::{write_profile_tsv, write_rows_csv};
pub use registry::{lookup, parse_params, RegistryEntry};
pub use study::{
    error_profile, run_study, run_study_for, ConvergenceRow, StepOptions, StripNormMode, StudyConfig, FULL_LADDER,
    TABLE_LADDER,
};
pub use table::{compare_table, reproduce_table, DigitTolerances, GoldenRow, TableId, TableReport, EX2_GOLDEN};
