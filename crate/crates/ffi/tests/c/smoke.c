#include <stdio.h>
#include <string.h>

#include "annuity.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,  \
              annuity_last_error());                                  \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  AnnuityRational five = {21, 20};
  AnnuityRational hundred = {100, 1};

  AnnuityTable *table = annuity_table_kersseboom();
  CHECK(annuity_table_survivors(table, 90) == 8);
  CHECK(annuity_table_extinction_age(table) == 96);

  AnnuityQuote *quote = NULL;
  CHECK(annuity_quote(table, five, hundred, 90, 1, &quote) == ANNUITY_STATUS_OK);
  char *shown = annuity_quote_display(quote);
  CHECK(strcmp(shown, "179.54") == 0);
  annuity_string_free(shown);
  annuity_quote_free(quote);

  CHECK(annuity_quote(table, five, hundred, 0, 10, &quote) == ANNUITY_STATUS_OK);
  shown = annuity_quote_display(quote);
  CHECK(strcmp(shown, "649.75") == 0);
  annuity_string_free(shown);
  annuity_quote_free(quote);

  CHECK(annuity_quote(table, five, hundred, 96, 1, &quote) == ANNUITY_STATUS_EXTINCT_COHORT);
  CHECK(strlen(annuity_last_error()) > 0);

  const char *csv = "age,survivors\n0,100\n1,150\n";
  AnnuityTable *bad = NULL;
  CHECK(annuity_table_from_csv((const uint8_t *)csv, strlen(csv), &bad) == ANNUITY_STATUS_INVALID_TABLE);
  CHECK(bad == NULL);

  annuity_table_free(table);
  puts("ok");
  return 0;
}
