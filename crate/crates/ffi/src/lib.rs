//! C ABI for `annuity-core`.
//!
//! Tables, quotes and price tables cross the boundary as opaque handles that
//! the caller releases with the matching `*_free` function. Fallible calls
//! return an [`AnnuityStatus`] and write their result through an out
//! pointer; [`annuity_last_error`] describes the most recent failure on the
//! calling thread. Strings returned by this library are owned by the caller
//! and must be released with [`annuity_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use annuity_core::cli::{render, OutputFormat};
use annuity_core::exact::{round_crowns, to_f64};
use annuity_core::pricing::display_percent;
use annuity_core::{
    implied_yield, kersseboom, load_table, median_remaining_term, price_table, project_reserves,
    quote, Amount, InterestBasis, MortalityError, MortalityTable, PriceTable, PricingError,
};
use num_bigint::BigInt;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnuityStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidTable = 3,
    ExtinctCohort = 4,
    OutOfRange = 5,
    Panic = 99,
}

/// `numerator / denominator`; the denominator must be positive.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AnnuityRational {
    pub numerator: i64,
    pub denominator: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnuityFormat {
    Csv = 0,
    Tsv = 1,
    Markdown = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct AnnuityPriceRow {
    pub age: u32,
    pub survivors: u64,
    /// Nearest double to the exact price.
    pub price: f64,
}

/// Opaque mortality table.
pub struct AnnuityTable(MortalityTable);

/// Opaque priced contract.
pub struct AnnuityQuote(annuity_core::AnnuityQuote);

/// Opaque table of ordinary annuity prices.
pub struct AnnuityPriceTable(PriceTable);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn fail(status: AnnuityStatus, message: impl Into<String>) -> AnnuityStatus {
    set_error(message);
    status
}

fn pricing_status(e: &PricingError) -> AnnuityStatus {
    match e {
        PricingError::ExtinctCohort { .. } | PricingError::NoSurvivors => {
            AnnuityStatus::ExtinctCohort
        }
        _ => AnnuityStatus::InvalidArgument,
    }
}

fn guard(body: impl FnOnce() -> AnnuityStatus) -> AnnuityStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == AnnuityStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(AnnuityStatus::Panic, "internal panic"),
    }
}

fn rational(value: AnnuityRational) -> Option<Amount> {
    (value.denominator > 0).then(|| {
        Amount::new(
            BigInt::from(value.numerator),
            BigInt::from(value.denominator),
        )
    })
}

fn basis(lambda: AnnuityRational) -> Result<InterestBasis, AnnuityStatus> {
    let lambda = rational(lambda).ok_or_else(|| {
        fail(
            AnnuityStatus::InvalidArgument,
            "rate denominator must be positive",
        )
    })?;
    InterestBasis::new(lambda).map_err(|e| fail(AnnuityStatus::InvalidArgument, e.to_string()))
}

fn payment(value: AnnuityRational) -> Result<Amount, AnnuityStatus> {
    rational(value).ok_or_else(|| {
        fail(
            AnnuityStatus::InvalidArgument,
            "payment denominator must be positive",
        )
    })
}

fn to_c_string(text: String) -> *mut c_char {
    CString::new(text).map_or(ptr::null_mut(), CString::into_raw)
}

fn output_format(format: AnnuityFormat) -> OutputFormat {
    match format {
        AnnuityFormat::Csv => OutputFormat::Csv,
        AnnuityFormat::Tsv => OutputFormat::Tsv,
        AnnuityFormat::Markdown => OutputFormat::Markdown,
    }
}

fn rendered(
    format: AnnuityFormat,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> String {
    let mut buf = Vec::new();
    render(&mut buf, output_format(format), header, rows).expect("writing to a Vec");
    String::from_utf8(buf).expect("rendered cells are UTF-8")
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn annuity_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn annuity_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The built-in 1000-birth table. Never null.
#[no_mangle]
pub extern "C" fn annuity_table_kersseboom() -> *mut AnnuityTable {
    Box::into_raw(Box::new(AnnuityTable(kersseboom())))
}

/// Parses `len` bytes of `age,survivors` CSV into a new table.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` to writable storage
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn annuity_table_from_csv(
    data: *const u8,
    len: usize,
    out: *mut *mut AnnuityTable,
) -> AnnuityStatus {
    guard(|| {
        if data.is_null() || out.is_null() {
            return fail(AnnuityStatus::NullPointer, "null argument");
        }
        let bytes = std::slice::from_raw_parts(data, len);
        match load_table(bytes) {
            Ok(table) => {
                *out = Box::into_raw(Box::new(AnnuityTable(table)));
                AnnuityStatus::Ok
            }
            Err(e) => fail(AnnuityStatus::InvalidTable, e.to_string()),
        }
    })
}

/// # Safety
/// `table` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn annuity_table_free(table: *mut AnnuityTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Survivors at `age`; 0 beyond extinction or for a null table.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn annuity_table_survivors(table: *const AnnuityTable, age: u32) -> u64 {
    table.as_ref().map_or(0, |t| t.0.survivors(age))
}

/// First age with no survivors; 0 for a null table.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn annuity_table_extinction_age(table: *const AnnuityTable) -> u32 {
    table.as_ref().map_or(0, |t| t.0.extinction_age())
}

/// The table as `age,survivors` CSV, or null for a null table.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn annuity_table_to_csv(table: *const AnnuityTable) -> *mut c_char {
    table
        .as_ref()
        .map_or(ptr::null_mut(), |t| to_c_string(t.0.to_csv()))
}

/// Smallest number of years after which survivors of `age` are at most half.
///
/// # Safety
/// `table` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn annuity_median_term(
    table: *const AnnuityTable,
    age: u32,
    out: *mut u32,
) -> AnnuityStatus {
    guard(|| {
        let (Some(t), false) = (table.as_ref(), out.is_null()) else {
            return fail(AnnuityStatus::NullPointer, "null argument");
        };
        match median_remaining_term(&t.0, age) {
            Ok(k) => {
                *out = k;
                AnnuityStatus::Ok
            }
            Err(e @ MortalityError::NoLivingCohort { .. }) => {
                fail(AnnuityStatus::ExtinctCohort, e.to_string())
            }
            Err(e) => fail(AnnuityStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Prices an annuity of `payment` per year bought at `age` under the
/// accumulation factor `lambda`, first payment after `deferral` years
/// (1 for the ordinary annuity).
///
/// # Safety
/// `table` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn annuity_quote(
    table: *const AnnuityTable,
    lambda: AnnuityRational,
    payment_per_year: AnnuityRational,
    age: u32,
    deferral: u32,
    out: *mut *mut AnnuityQuote,
) -> AnnuityStatus {
    guard(|| {
        let (Some(t), false) = (table.as_ref(), out.is_null()) else {
            return fail(AnnuityStatus::NullPointer, "null argument");
        };
        let (basis, r) = match (basis(lambda), payment(payment_per_year)) {
            (Ok(b), Ok(r)) => (b, r),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match quote(&t.0, &basis, age, deferral, &r) {
            Ok(q) => {
                *out = Box::into_raw(Box::new(AnnuityQuote(q)));
                AnnuityStatus::Ok
            }
            Err(e) => fail(pricing_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `q` must be null or a handle from [`annuity_quote`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn annuity_quote_free(q: *mut AnnuityQuote) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Price rounded to two decimals, e.g. `"179.54"`.
///
/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn annuity_quote_display(q: *const AnnuityQuote) -> *mut c_char {
    q.as_ref()
        .map_or(ptr::null_mut(), |q| to_c_string(q.0.display_price.clone()))
}

/// Exact price as `numerator/denominator` in lowest terms.
///
/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn annuity_quote_exact(q: *const AnnuityQuote) -> *mut c_char {
    q.as_ref().map_or(ptr::null_mut(), |q| {
        let x = &q.0.exact_price;
        to_c_string(format!("{}/{}", x.numer(), x.denom()))
    })
}

/// Nearest double to the exact price; NaN for a null handle.
///
/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn annuity_quote_value(q: *const AnnuityQuote) -> f64 {
    q.as_ref().map_or(f64::NAN, |q| to_f64(&q.0.exact_price))
}

/// Yearly payment as a percent of the price, rounded to two decimals.
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn annuity_quote_yield(
    q: *const AnnuityQuote,
    out: *mut *mut c_char,
) -> AnnuityStatus {
    guard(|| {
        let (Some(q), false) = (q.as_ref(), out.is_null()) else {
            return fail(AnnuityStatus::NullPointer, "null argument");
        };
        match implied_yield(&q.0.exact_price, &q.0.annual_payment) {
            Ok(pct) => {
                *out = to_c_string(display_percent(&pct));
                AnnuityStatus::Ok
            }
            Err(e) => fail(AnnuityStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Ordinary annuity prices for every living age of `table`.
///
/// # Safety
/// `table` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn annuity_price_table(
    table: *const AnnuityTable,
    lambda: AnnuityRational,
    payment_per_year: AnnuityRational,
    out: *mut *mut AnnuityPriceTable,
) -> AnnuityStatus {
    guard(|| {
        let (Some(t), false) = (table.as_ref(), out.is_null()) else {
            return fail(AnnuityStatus::NullPointer, "null argument");
        };
        let (basis, r) = match (basis(lambda), payment(payment_per_year)) {
            (Ok(b), Ok(r)) => (b, r),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match price_table(&t.0, &basis, &r) {
            Ok(pt) => {
                *out = Box::into_raw(Box::new(AnnuityPriceTable(pt)));
                AnnuityStatus::Ok
            }
            Err(e) => fail(pricing_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `pt` must be null or a handle from [`annuity_price_table`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn annuity_price_table_free(pt: *mut AnnuityPriceTable) {
    if !pt.is_null() {
        drop(Box::from_raw(pt));
    }
}

/// Number of rows, one per living age.
///
/// # Safety
/// `pt` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn annuity_price_table_len(pt: *const AnnuityPriceTable) -> usize {
    pt.as_ref().map_or(0, |pt| pt.0.rows.len())
}

/// # Safety
/// `pt` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn annuity_price_table_row(
    pt: *const AnnuityPriceTable,
    index: usize,
    out: *mut AnnuityPriceRow,
) -> AnnuityStatus {
    guard(|| {
        let (Some(pt), false) = (pt.as_ref(), out.is_null()) else {
            return fail(AnnuityStatus::NullPointer, "null argument");
        };
        let Some(row) = pt.0.rows.get(index) else {
            return fail(
                AnnuityStatus::OutOfRange,
                format!("row {index} of {}", pt.0.rows.len()),
            );
        };
        *out = AnnuityPriceRow {
            age: row.age,
            survivors: row.survivors,
            price: to_f64(&row.price),
        };
        AnnuityStatus::Ok
    })
}

/// Rows with a positive price as `age,survivors,price`, prices rounded to
/// two decimals. Null for a null handle.
///
/// # Safety
/// `pt` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn annuity_price_table_render(
    pt: *const AnnuityPriceTable,
    format: AnnuityFormat,
) -> *mut c_char {
    pt.as_ref().map_or(ptr::null_mut(), |pt| {
        let rows = pt.0.priced_rows().map(|row| {
            vec![
                row.age.to_string(),
                row.survivors.to_string(),
                row.display_price(),
            ]
        });
        to_c_string(rendered(format, &["age", "survivors", "price"], rows))
    })
}

/// Capital run-off of the cohort aged `age` as `year,age,survivors,reserve`.
///
/// # Safety
/// `table` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn annuity_reserves_render(
    table: *const AnnuityTable,
    lambda: AnnuityRational,
    payment_per_year: AnnuityRational,
    age: u32,
    format: AnnuityFormat,
    out: *mut *mut c_char,
) -> AnnuityStatus {
    guard(|| {
        let (Some(t), false) = (table.as_ref(), out.is_null()) else {
            return fail(AnnuityStatus::NullPointer, "null argument");
        };
        let (basis, r) = match (basis(lambda), payment(payment_per_year)) {
            (Ok(b), Ok(r)) => (b, r),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match project_reserves(&t.0, &basis, age, &r) {
            Ok(traj) => {
                let rows = traj.rows.iter().map(|row| {
                    vec![
                        row.year.to_string(),
                        row.age.to_string(),
                        row.survivors.to_string(),
                        round_crowns(&row.reserve),
                    ]
                });
                *out = to_c_string(rendered(
                    format,
                    &["year", "age", "survivors", "reserve"],
                    rows,
                ));
                AnnuityStatus::Ok
            }
            Err(e) => fail(pricing_status(&e), e.to_string()),
        }
    })
}

/// Reads the message set by the last failed call; for Rust callers and tests.
pub fn last_error_message() -> String {
    // SAFETY: the pointer comes from the thread-local CString and is read
    // before any further call can replace it.
    unsafe { CStr::from_ptr(annuity_last_error()) }
        .to_string_lossy()
        .into_owned()
}
