use std::ffi::CStr;
use std::ptr;

use annuity_ffi::*;

const FIVE: AnnuityRational = AnnuityRational {
    numerator: 21,
    denominator: 20,
};
const HUNDRED: AnnuityRational = AnnuityRational {
    numerator: 100,
    denominator: 1,
};

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = CStr::from_ptr(s).to_str().unwrap().to_string();
    annuity_string_free(s);
    text
}

unsafe fn quote_at(
    table: *const AnnuityTable,
    age: u32,
    deferral: u32,
) -> (AnnuityStatus, *mut AnnuityQuote) {
    let mut q = ptr::null_mut();
    let status = annuity_quote(table, FIVE, HUNDRED, age, deferral, &mut q);
    (status, q)
}

#[test]
fn quotes_round_trip_through_handles() {
    unsafe {
        let table = annuity_table_kersseboom();
        let (status, q) = quote_at(table, 94, 1);
        assert_eq!(status, AnnuityStatus::Ok);
        assert_eq!(take_string(annuity_quote_display(q)), "47.62");
        assert_eq!(take_string(annuity_quote_exact(q)), "1000/21");
        assert!((annuity_quote_value(q) - 1000.0 / 21.0).abs() < 1e-12);
        let mut pct = ptr::null_mut();
        assert_eq!(annuity_quote_yield(q, &mut pct), AnnuityStatus::Ok);
        assert_eq!(take_string(pct), "210.00");
        annuity_quote_free(q);

        let (status, q) = quote_at(table, 0, 20);
        assert_eq!(status, AnnuityStatus::Ok);
        assert_eq!(take_string(annuity_quote_display(q)), "343.06");
        annuity_quote_free(q);
        annuity_table_free(table);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let table = annuity_table_kersseboom();
        let (status, q) = quote_at(table, 96, 1);
        assert_eq!(status, AnnuityStatus::ExtinctCohort);
        assert!(q.is_null());
        assert!(last_error_message().contains("extinct"));

        let (status, _) = quote_at(table, 3, 0);
        assert_eq!(status, AnnuityStatus::InvalidArgument);
        assert!(last_error_message().contains("deferral"));

        let mut q = ptr::null_mut();
        let flat = AnnuityRational {
            numerator: 1,
            denominator: 1,
        };
        assert_eq!(
            annuity_quote(table, flat, HUNDRED, 3, 1, &mut q),
            AnnuityStatus::InvalidArgument
        );
        let bad_den = AnnuityRational {
            numerator: 1,
            denominator: 0,
        };
        assert_eq!(
            annuity_quote(table, FIVE, bad_den, 3, 1, &mut q),
            AnnuityStatus::InvalidArgument
        );
        assert_eq!(
            annuity_quote(ptr::null(), FIVE, HUNDRED, 3, 1, &mut q),
            AnnuityStatus::NullPointer
        );
        assert_eq!(
            annuity_quote(table, FIVE, HUNDRED, 3, 1, ptr::null_mut()),
            AnnuityStatus::NullPointer
        );

        let (status, q) = quote_at(table, 3, 1);
        assert_eq!(status, AnnuityStatus::Ok);
        assert_eq!(last_error_message(), "");
        annuity_quote_free(q);
        annuity_table_free(table);
    }
}

#[test]
fn tables_from_csv() {
    unsafe {
        let csv = b"age,survivors\n0,2\n1,1\n";
        let mut table = ptr::null_mut();
        assert_eq!(
            annuity_table_from_csv(csv.as_ptr(), csv.len(), &mut table),
            AnnuityStatus::Ok
        );
        assert_eq!(annuity_table_survivors(table, 0), 2);
        assert_eq!(annuity_table_extinction_age(table), 2);
        assert_eq!(
            take_string(annuity_table_to_csv(table)),
            "age,survivors\n0,2\n1,1\n"
        );
        let mut k = 0;
        assert_eq!(annuity_median_term(table, 0, &mut k), AnnuityStatus::Ok);
        assert_eq!(k, 1);
        assert_eq!(
            annuity_median_term(table, 5, &mut k),
            AnnuityStatus::ExtinctCohort
        );
        annuity_table_free(table);

        let bad = b"age,survivors\n0,100\n1,150\n";
        let mut table = ptr::null_mut();
        assert_eq!(
            annuity_table_from_csv(bad.as_ptr(), bad.len(), &mut table),
            AnnuityStatus::InvalidTable
        );
        assert!(table.is_null());
        assert!(last_error_message().contains("row 3"));

        // Round trip of the built-in table through its CSV form.
        let builtin = annuity_table_kersseboom();
        let text = take_string(annuity_table_to_csv(builtin));
        let mut reparsed = ptr::null_mut();
        assert_eq!(
            annuity_table_from_csv(text.as_ptr(), text.len(), &mut reparsed),
            AnnuityStatus::Ok
        );
        for age in 0..100 {
            assert_eq!(
                annuity_table_survivors(reparsed, age),
                annuity_table_survivors(builtin, age)
            );
        }
        annuity_table_free(reparsed);
        annuity_table_free(builtin);
    }
}

#[test]
fn price_table_rows_and_rendering() {
    unsafe {
        let table = annuity_table_kersseboom();
        let mut pt = ptr::null_mut();
        assert_eq!(
            annuity_price_table(table, FIVE, HUNDRED, &mut pt),
            AnnuityStatus::Ok
        );
        assert_eq!(annuity_price_table_len(pt), 96);
        let mut row = AnnuityPriceRow::default();
        assert_eq!(annuity_price_table_row(pt, 90, &mut row), AnnuityStatus::Ok);
        assert_eq!((row.age, row.survivors), (90, 8));
        assert!((row.price - 179.535_594).abs() < 1e-5);
        assert_eq!(
            annuity_price_table_row(pt, 96, &mut row),
            AnnuityStatus::OutOfRange
        );

        let csv = take_string(annuity_price_table_render(pt, AnnuityFormat::Csv));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 96);
        assert_eq!(lines[0], "age,survivors,price");
        assert_eq!(lines[91], "90,8,179.54");
        let md = take_string(annuity_price_table_render(pt, AnnuityFormat::Markdown));
        assert!(md.starts_with("| age | survivors | price |\n"));
        annuity_price_table_free(pt);

        let mut out = ptr::null_mut();
        assert_eq!(
            annuity_reserves_render(table, FIVE, HUNDRED, 94, AnnuityFormat::Tsv, &mut out),
            AnnuityStatus::Ok
        );
        assert_eq!(
            take_string(out),
            "year\tage\tsurvivors\treserve\n0\t94\t2\t95.24\n1\t95\t1\t0.00\n2\t96\t0\t0.00\n"
        );
        annuity_table_free(table);
    }
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        annuity_table_free(ptr::null_mut());
        annuity_quote_free(ptr::null_mut());
        annuity_price_table_free(ptr::null_mut());
        annuity_string_free(ptr::null_mut());
        assert_eq!(annuity_table_survivors(ptr::null(), 0), 0);
        assert!(annuity_quote_display(ptr::null()).is_null());
        assert!(annuity_quote_value(ptr::null()).is_nan());
        assert_eq!(annuity_price_table_len(ptr::null()), 0);
    }
}

#[test]
fn header_declares_the_exported_symbols() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/annuity.h")).unwrap();
    for symbol in [
        "annuity_table_kersseboom",
        "annuity_table_from_csv",
        "annuity_quote",
        "annuity_quote_display",
        "annuity_price_table_render",
        "annuity_reserves_render",
        "annuity_last_error",
        "annuity_string_free",
        "ANNUITY_STATUS_EXTINCT_COHORT",
        "typedef struct AnnuityTable AnnuityTable;",
    ] {
        assert!(header.contains(symbol), "{symbol} missing from header");
    }
}
