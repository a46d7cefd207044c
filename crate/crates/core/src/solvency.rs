//! Year-by-year run-off of the capital collected from one cohort.
//!
//! Every member of age `m` buys the same annuity at its exact price. Each
//! year the capital earns interest at `lambda` and then pays `r` to every
//! survivor of the following age.

use num_traits::{Signed, Zero};

use crate::error::PricingError;
use crate::exact::{int, Amount};
use crate::mortality::MortalityTable;
use crate::pricing::{price_table_from, InterestBasis};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReserveRow {
    pub year: u32,
    pub age: u32,
    pub survivors: u64,
    /// Capital held at the start of `year`, after the previous payout.
    pub reserve: Amount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReserveTrajectory {
    pub start_age: u32,
    pub basis: InterestBasis,
    pub annual_payment: Amount,
    pub rows: Vec<ReserveRow>,
}

impl ReserveTrajectory {
    pub fn initial_reserve(&self) -> &Amount {
        &self.rows[0].reserve
    }

    /// Reserve in the extinction year, the last row.
    pub fn terminal_reserve(&self) -> &Amount {
        &self
            .rows
            .last()
            .expect("trajectory has at least two rows")
            .reserve
    }

    /// Interest earned during `year`.
    pub fn interest(&self, year: u32) -> Option<Amount> {
        let row = self.rows.get(year as usize)?;
        Some(&row.reserve * (self.basis.lambda() - int(1)))
    }

    /// Payments made at the end of `year` to survivors of the next age.
    pub fn payout(&self, year: u32) -> Option<Amount> {
        let next = self.rows.get(year as usize + 1)?;
        Some(int(next.survivors) * &self.annual_payment)
    }

    /// First year at or after `from` in which interest alone falls short of
    /// the payments due, forcing the manager to spend capital.
    pub fn first_interest_shortfall(&self, from: u32) -> Option<u32> {
        (from..self.rows.len() as u32).find(|&t| match (self.interest(t), self.payout(t)) {
            (Some(interest), Some(payout)) => interest < payout,
            _ => false,
        })
    }

    /// Years in which payments are still owed to someone.
    pub fn paying_years(&self) -> impl Iterator<Item = &ReserveRow> {
        self.rows
            .windows(2)
            .filter(|w| w[1].survivors > 0)
            .map(|w| &w[0])
    }

    /// Every year with a payment still owed holds strictly positive capital.
    pub fn is_solvent_until_extinction(&self) -> bool {
        self.paying_years().all(|row| row.reserve.is_positive())
            && self.terminal_reserve().is_zero()
    }
}

/// Runs the capital of an age-`m` cohort forward until the cohort is extinct.
pub fn project_reserves(
    table: &MortalityTable,
    basis: &InterestBasis,
    m: u32,
    r: &Amount,
) -> Result<ReserveTrajectory, PricingError> {
    let prices = price_table_from(table, basis, r, m)?;
    let extinction = table.extinction_age();
    let mut reserve = int(table.survivors(m)) * &prices.rows[0].price;
    let mut rows = Vec::with_capacity((extinction - m + 1) as usize);
    for age in m..=extinction {
        let survivors = table.survivors(age);
        rows.push(ReserveRow {
            year: age - m,
            age,
            survivors,
            reserve: reserve.clone(),
        });
        reserve = &reserve * basis.lambda() - int(table.survivors(age + 1)) * r;
    }
    Ok(ReserveTrajectory {
        start_age: m,
        basis: basis.clone(),
        annual_payment: r.clone(),
        rows,
    })
}
