//! Annuity valuation on exact rationals.
//!
//! A life annuity of `r` per year bought at age `m` is worth
//!
//! ```text
//! x = r / l(m) * sum_{k>=1} l(m+k) / lambda^k
//! ```
//!
//! where `l` is the survivor column and `lambda` the yearly accumulation
//! factor. [`pv_direct`] evaluates the sum term by term; [`price_table`]
//! obtains the same values with one backward sweep of [`recurrence_step`].

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, PricingError};
use crate::exact::{int, parse_amount, round_crowns, round_decimal, Amount};
use crate::mortality::{median_remaining_term, MortalityTable};

/// Yearly accumulation factor, one plus the rate of interest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InterestBasis {
    lambda: Amount,
}

impl InterestBasis {
    pub fn new(lambda: Amount) -> Result<Self, PricingError> {
        if lambda <= Amount::one() {
            return Err(PricingError::InvalidBasis(lambda.to_string()));
        }
        Ok(Self { lambda })
    }

    /// `5` percent gives `21/20`.
    pub fn from_percent(percent: &Amount) -> Result<Self, PricingError> {
        Self::new(Amount::one() + percent / int(100))
    }

    /// Five percent per year.
    pub fn five_percent() -> Self {
        Self {
            lambda: Amount::new(21.into(), 20.into()),
        }
    }

    pub fn lambda(&self) -> &Amount {
        &self.lambda
    }

    pub fn discount(&self) -> Amount {
        self.lambda.recip()
    }

    /// Rate of interest in percent, `100 * (lambda - 1)`.
    pub fn percent(&self) -> Amount {
        (&self.lambda - Amount::one()) * int(100)
    }
}

impl Default for InterestBasis {
    fn default() -> Self {
        Self::five_percent()
    }
}

impl fmt::Display for InterestBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lambda)
    }
}

/// Parses a rational accumulation factor such as `21/20` or `1.05`.
impl FromStr for InterestBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Self::new(parse_amount(s)?)?)
    }
}

/// A priced annuity contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnuityQuote {
    pub age: u32,
    pub annual_payment: Amount,
    /// Years until the first payment; 1 is the ordinary annuity.
    pub deferral: u32,
    pub exact_price: Amount,
    pub display_price: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceRow {
    pub age: u32,
    pub survivors: u64,
    pub price: Amount,
}

impl PriceRow {
    pub fn display_price(&self) -> String {
        round_crowns(&self.price)
    }
}

/// Ordinary annuity prices for consecutive ages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceTable {
    pub basis: InterestBasis,
    pub annual_payment: Amount,
    pub rows: Vec<PriceRow>,
}

impl PriceTable {
    pub fn start_age(&self) -> u32 {
        self.rows.first().map_or(0, |r| r.age)
    }

    pub fn row(&self, age: u32) -> Option<&PriceRow> {
        let idx = age.checked_sub(self.start_age())? as usize;
        self.rows.get(idx)
    }

    pub fn price(&self, age: u32) -> Option<&Amount> {
        self.row(age).map(|r| &r.price)
    }

    /// Rows whose annuity pays anything, i.e. someone survives to collect.
    pub fn priced_rows(&self) -> impl Iterator<Item = &PriceRow> {
        self.rows.iter().filter(|r| r.price.is_positive())
    }
}

fn check_payment(r: &Amount) -> Result<(), PricingError> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(PricingError::NonPositivePayment)
    }
}

fn alive(table: &MortalityTable, age: u32) -> Result<u64, PricingError> {
    match table.survivors(age) {
        0 => Err(PricingError::ExtinctCohort { age }),
        n => Ok(n),
    }
}

/// Present value by summing every discounted future payment.
pub fn pv_direct(
    table: &MortalityTable,
    basis: &InterestBasis,
    m: u32,
    r: &Amount,
) -> Result<Amount, PricingError> {
    tail_sum(table, basis, m, 1, r)
}

/// `r / l(m) * sum_{k>=n} l(m+k) / lambda^k`
fn tail_sum(
    table: &MortalityTable,
    basis: &InterestBasis,
    m: u32,
    n: u32,
    r: &Amount,
) -> Result<Amount, PricingError> {
    let at_m = alive(table, m)?;
    check_payment(r)?;
    let v = basis.discount();
    let mut factor = num_traits::pow(v.clone(), n as usize);
    let mut sum = Amount::zero();
    for age in m + n..table.extinction_age() {
        sum += &factor * int(table.survivors(age));
        factor *= &v;
    }
    Ok(sum * r / int(at_m))
}

/// One year backwards: the price at age `m` from the price at `m + 1`.
///
/// `(1 / lambda) * (l(m+1) / l(m)) * (r + price(m+1))`
pub fn recurrence_step(
    basis: &InterestBasis,
    survivors_m: u64,
    survivors_m1: u64,
    r: &Amount,
    price_m1: &Amount,
) -> Result<Amount, PricingError> {
    if survivors_m == 0 {
        return Err(PricingError::NoSurvivors);
    }
    if survivors_m1 > survivors_m {
        return Err(PricingError::NonMonotoneStep {
            current: survivors_m,
            next: survivors_m1,
        });
    }
    if price_m1.is_negative() {
        return Err(PricingError::NegativePrice);
    }
    if survivors_m1 == 0 {
        return Ok(Amount::zero());
    }
    Ok((r + price_m1) * int(survivors_m1) / (basis.lambda() * int(survivors_m)))
}

/// Prices for every living age, swept backwards from the oldest.
pub fn price_table(
    table: &MortalityTable,
    basis: &InterestBasis,
    r: &Amount,
) -> Result<PriceTable, PricingError> {
    price_table_from(table, basis, r, 0)
}

/// Like [`price_table`] but only for ages `start..`.
pub fn price_table_from(
    table: &MortalityTable,
    basis: &InterestBasis,
    r: &Amount,
    start: u32,
) -> Result<PriceTable, PricingError> {
    check_payment(r)?;
    alive(table, start)?;
    let last = table.last_living_age();
    let mut rows = Vec::with_capacity((last - start + 1) as usize);
    let mut next_price = Amount::zero();
    for age in (start..=last).rev() {
        let price = recurrence_step(
            basis,
            table.survivors(age),
            table.survivors(age + 1),
            r,
            &next_price,
        )?;
        rows.push(PriceRow {
            age,
            survivors: table.survivors(age),
            price: price.clone(),
        });
        next_price = price;
    }
    rows.reverse();
    Ok(PriceTable {
        basis: basis.clone(),
        annual_payment: r.clone(),
        rows,
    })
}

fn ordinary_price(
    table: &MortalityTable,
    basis: &InterestBasis,
    m: u32,
    r: &Amount,
) -> Result<Amount, PricingError> {
    let priced = price_table_from(table, basis, r, m)?;
    Ok(priced
        .rows
        .into_iter()
        .next()
        .map(|row| row.price)
        .unwrap_or_default())
}

/// Price of a life annuity whose first payment falls `n` years from now.
///
/// Scales the ordinary price at age `m + n - 1` by
/// `lambda^-(n-1) * l(m+n-1) / l(m)`; the result equals the direct tail sum
/// starting at year `n`.
pub fn deferred_price(
    table: &MortalityTable,
    basis: &InterestBasis,
    m: u32,
    n: u32,
    r: &Amount,
) -> Result<Amount, PricingError> {
    if n < 1 {
        return Err(PricingError::InvalidDeferral(n));
    }
    let at_m = alive(table, m)?;
    check_payment(r)?;
    let start = m + n - 1;
    let at_start = table.survivors(start);
    if at_start == 0 {
        return Ok(Amount::zero());
    }
    let ordinary = ordinary_price(table, basis, start, r)?;
    let discount = num_traits::pow(basis.discount(), (n - 1) as usize);
    Ok(discount * int(at_start) / int(at_m) * ordinary)
}

/// Quote for an annuity of `r` at age `m`, first payment after `deferral` years.
pub fn quote(
    table: &MortalityTable,
    basis: &InterestBasis,
    m: u32,
    deferral: u32,
    r: &Amount,
) -> Result<AnnuityQuote, PricingError> {
    let exact_price = deferred_price(table, basis, m, deferral, r)?;
    Ok(AnnuityQuote {
        age: m,
        annual_payment: r.clone(),
        deferral,
        display_price: round_crowns(&exact_price),
        exact_price,
    })
}

/// Yearly payment as a percentage of the purchase price, `100 r / x`.
pub fn implied_yield(x: &Amount, r: &Amount) -> Result<Amount, PricingError> {
    if !x.is_positive() {
        return Err(PricingError::NonPositivePrice);
    }
    Ok(r * int(100) / x)
}

/// Percent with two decimals, ties away from zero.
pub fn display_percent(p: &Amount) -> String {
    round_decimal(p, 2)
}

/// The median-lifespan baseline: an annuity-certain of `r` for the median
/// remaining term, ignoring the spread of deaths around it.
pub fn median_term_price(
    table: &MortalityTable,
    basis: &InterestBasis,
    m: u32,
    r: &Amount,
) -> Result<Amount, Error> {
    check_payment(r)?;
    let term = median_remaining_term(table, m)?;
    Ok(annuity_certain(basis, term, r))
}

/// `r * sum_{j=1..=years} lambda^-j`
pub fn annuity_certain(basis: &InterestBasis, years: u32, r: &Amount) -> Amount {
    let v = basis.discount();
    let mut factor = v.clone();
    let mut sum = Amount::zero();
    for _ in 0..years {
        sum += &factor;
        factor *= &v;
    }
    sum * r
}
