#ifndef ANNUITY_H
#define ANNUITY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum AnnuityStatus {
  ANNUITY_STATUS_OK = 0,
  ANNUITY_STATUS_NULL_POINTER = 1,
  ANNUITY_STATUS_INVALID_ARGUMENT = 2,
  ANNUITY_STATUS_INVALID_TABLE = 3,
  ANNUITY_STATUS_EXTINCT_COHORT = 4,
  ANNUITY_STATUS_OUT_OF_RANGE = 5,
  ANNUITY_STATUS_PANIC = 99,
} AnnuityStatus;

typedef enum AnnuityFormat {
  ANNUITY_FORMAT_CSV = 0,
  ANNUITY_FORMAT_TSV = 1,
  ANNUITY_FORMAT_MARKDOWN = 2,
} AnnuityFormat;

/**
 * Opaque table of ordinary annuity prices.
 */
typedef struct AnnuityPriceTable AnnuityPriceTable;

/**
 * Opaque priced contract.
 */
typedef struct AnnuityQuote AnnuityQuote;

/**
 * Opaque mortality table.
 */
typedef struct AnnuityTable AnnuityTable;

/**
 * `numerator / denominator`; the denominator must be positive.
 */
typedef struct AnnuityRational {
  int64_t numerator;
  int64_t denominator;
} AnnuityRational;

typedef struct AnnuityPriceRow {
  uint32_t age;
  uint64_t survivors;
  /**
   * Nearest double to the exact price.
   */
  double price;
} AnnuityPriceRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library.
 */
const char *annuity_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void annuity_string_free(char *s);

/**
 * The built-in 1000-birth table. Never null.
 */
struct AnnuityTable *annuity_table_kersseboom(void);

/**
 * Parses `len` bytes of `age,survivors` CSV into a new table.
 *
 * # Safety
 * `data` must point to `len` readable bytes and `out` to writable storage
 * for one pointer.
 */
enum AnnuityStatus annuity_table_from_csv(const uint8_t *data,
                                          size_t len,
                                          struct AnnuityTable **out);

/**
 * # Safety
 * `table` must be null or a handle from this library not yet freed.
 */
void annuity_table_free(struct AnnuityTable *table);

/**
 * Survivors at `age`; 0 beyond extinction or for a null table.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
uint64_t annuity_table_survivors(const struct AnnuityTable *table, uint32_t age);

/**
 * First age with no survivors; 0 for a null table.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
uint32_t annuity_table_extinction_age(const struct AnnuityTable *table);

/**
 * The table as `age,survivors` CSV, or null for a null table.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
char *annuity_table_to_csv(const struct AnnuityTable *table);

/**
 * Smallest number of years after which survivors of `age` are at most half.
 *
 * # Safety
 * `table` must be a live handle and `out` writable.
 */
enum AnnuityStatus annuity_median_term(const struct AnnuityTable *table,
                                       uint32_t age,
                                       uint32_t *out);

/**
 * Prices an annuity of `payment` per year bought at `age` under the
 * accumulation factor `lambda`, first payment after `deferral` years
 * (1 for the ordinary annuity).
 *
 * # Safety
 * `table` must be a live handle and `out` writable.
 */
enum AnnuityStatus annuity_quote(const struct AnnuityTable *table,
                                 struct AnnuityRational lambda,
                                 struct AnnuityRational payment_per_year,
                                 uint32_t age,
                                 uint32_t deferral,
                                 struct AnnuityQuote **out);

/**
 * # Safety
 * `q` must be null or a handle from [`annuity_quote`] not yet freed.
 */
void annuity_quote_free(struct AnnuityQuote *q);

/**
 * Price rounded to two decimals, e.g. `"179.54"`.
 *
 * # Safety
 * `q` must be null or a live handle.
 */
char *annuity_quote_display(const struct AnnuityQuote *q);

/**
 * Exact price as `numerator/denominator` in lowest terms.
 *
 * # Safety
 * `q` must be null or a live handle.
 */
char *annuity_quote_exact(const struct AnnuityQuote *q);

/**
 * Nearest double to the exact price; NaN for a null handle.
 *
 * # Safety
 * `q` must be null or a live handle.
 */
double annuity_quote_value(const struct AnnuityQuote *q);

/**
 * Yearly payment as a percent of the price, rounded to two decimals.
 *
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum AnnuityStatus annuity_quote_yield(const struct AnnuityQuote *q, char **out);

/**
 * Ordinary annuity prices for every living age of `table`.
 *
 * # Safety
 * `table` must be a live handle and `out` writable.
 */
enum AnnuityStatus annuity_price_table(const struct AnnuityTable *table,
                                       struct AnnuityRational lambda,
                                       struct AnnuityRational payment_per_year,
                                       struct AnnuityPriceTable **out);

/**
 * # Safety
 * `pt` must be null or a handle from [`annuity_price_table`] not yet freed.
 */
void annuity_price_table_free(struct AnnuityPriceTable *pt);

/**
 * Number of rows, one per living age.
 *
 * # Safety
 * `pt` must be null or a live handle.
 */
size_t annuity_price_table_len(const struct AnnuityPriceTable *pt);

/**
 * # Safety
 * `pt` must be a live handle and `out` writable.
 */
enum AnnuityStatus annuity_price_table_row(const struct AnnuityPriceTable *pt,
                                           size_t index,
                                           struct AnnuityPriceRow *out);

/**
 * Rows with a positive price as `age,survivors,price`, prices rounded to
 * two decimals. Null for a null handle.
 *
 * # Safety
 * `pt` must be null or a live handle.
 */
char *annuity_price_table_render(const struct AnnuityPriceTable *pt, enum AnnuityFormat format);

/**
 * Capital run-off of the cohort aged `age` as `year,age,survivors,reserve`.
 *
 * # Safety
 * `table` must be a live handle and `out` writable.
 */
enum AnnuityStatus annuity_reserves_render(const struct AnnuityTable *table,
                                           struct AnnuityRational lambda,
                                           struct AnnuityRational payment_per_year,
                                           uint32_t age,
                                           enum AnnuityFormat format,
                                           char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANNUITY_H */
