//! Life annuity pricing over an integer-age mortality table.
//!
//! Every price is carried as an exact rational; rounding to crowns and
//! cents only happens when a value is rendered. The crate is organised as:
//!
//! * [`mortality`] — survivor tables, CSV ingestion and validation.
//! * [`pricing`] — present values by direct summation and by backward
//!   recurrence, deferred annuities, implied yields and the median-term
//!   baseline.
//! * [`solvency`] — deterministic run-off of the capital a manager holds
//!   for one cohort.
//! * [`cli`] — the `annuity` command-line front end.

pub mod cli;
pub mod error;
pub mod exact;
pub mod mortality;
pub mod pricing;
pub mod solvency;

pub use error::{Error, MortalityError, PricingError, Result};
pub use exact::{parse_amount, round_crowns, Amount};
pub use mortality::{kersseboom, load_table, median_remaining_term, MortalityTable};
pub use pricing::{
    deferred_price, implied_yield, median_term_price, price_table, price_table_from, pv_direct,
    quote, recurrence_step, AnnuityQuote, InterestBasis, PriceRow, PriceTable,
};
pub use solvency::{project_reserves, ReserveRow, ReserveTrajectory};
