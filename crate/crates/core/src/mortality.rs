//! Survivor tables indexed by whole years of age.

use std::io::Read;

use crate::error::MortalityError;

/// Survivors of the annuitant-based observations, ages 0 through 95, for a
/// cohort of 1000 births. Age 95 carries the single survivor needed for the
/// age-94 price of 47.62; age 96 is extinct.
const KERSSEBOOM: [u64; 96] = [
    1000, 804, 768, 736, 709, 690, 676, 664, 654, 646, // 0-9
    639, 633, 627, 621, 616, 611, 606, 601, 596, 590, // 10-19
    584, 577, 571, 565, 559, 552, 544, 535, 525, 516, // 20-29
    507, 499, 490, 482, 475, 468, 461, 454, 446, 439, // 30-39
    432, 426, 420, 413, 406, 400, 393, 386, 378, 370, // 40-49
    362, 354, 345, 336, 327, 319, 310, 301, 291, 282, // 50-59
    273, 264, 254, 245, 235, 225, 215, 205, 195, 185, // 60-69
    175, 165, 155, 145, 135, 125, 114, 104, 93, 82, // 70-79
    72, 63, 54, 46, 39, 32, 26, 20, 15, 11, // 80-89
    8, 6, 4, 3, 2, 1, // 90-95
];

/// Number of cohort members alive at each integer age.
///
/// The stored sequence is dense from age 0 and ends at the last age with a
/// positive count; every later age has zero survivors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MortalityTable {
    survivors: Vec<u64>,
}

impl MortalityTable {
    /// Builds a table from survivor counts starting at age 0.
    ///
    /// Trailing zero entries are dropped so that equal tables compare equal
    /// regardless of how many extinct ages the source listed.
    pub fn new(mut survivors: Vec<u64>) -> Result<Self, MortalityError> {
        let radix = *survivors.first().ok_or(MortalityError::Empty)?;
        if radix == 0 {
            return Err(MortalityError::ZeroRadix);
        }
        for (age, pair) in survivors.windows(2).enumerate() {
            if pair[1] > pair[0] {
                return Err(MortalityError::Increasing {
                    row: age as u64 + 2,
                    age: age as u32 + 1,
                    previous: pair[0],
                    current: pair[1],
                });
            }
        }
        while survivors.last() == Some(&0) {
            survivors.pop();
        }
        Ok(Self { survivors })
    }

    pub fn radix(&self) -> u64 {
        self.survivors[0]
    }

    /// Survivors at `age`; zero beyond the stored range.
    pub fn survivors(&self, age: u32) -> u64 {
        self.survivors.get(age as usize).copied().unwrap_or(0)
    }

    /// First age with no survivors.
    pub fn extinction_age(&self) -> u32 {
        self.survivors.len() as u32
    }

    /// Oldest age with at least one survivor.
    pub fn last_living_age(&self) -> u32 {
        self.extinction_age() - 1
    }

    /// Stored counts, ages 0 through [`Self::last_living_age`].
    pub fn counts(&self) -> &[u64] {
        &self.survivors
    }

    pub fn is_alive(&self, age: u32) -> bool {
        self.survivors(age) > 0
    }

    pub(crate) fn require_alive(&self, age: u32) -> Result<u64, MortalityError> {
        match self.survivors(age) {
            0 => Err(MortalityError::NoLivingCohort { age }),
            n => Ok(n),
        }
    }

    /// Renders the table in the `age,survivors` CSV layout read by [`load_table`].
    pub fn to_csv(&self) -> String {
        let mut out = String::from("age,survivors\n");
        for (age, n) in self.survivors.iter().enumerate() {
            out.push_str(&format!("{age},{n}\n"));
        }
        out
    }
}

/// The built-in 1000-birth table used for all reproduced price tables.
pub fn kersseboom() -> MortalityTable {
    MortalityTable {
        survivors: KERSSEBOOM.to_vec(),
    }
}

/// Reads an `age,survivors` CSV and validates it.
///
/// Rows are numbered as lines of the file, so the header is row 1 and age 0
/// is row 2.
pub fn load_table<R: Read>(source: R) -> Result<MortalityTable, MortalityError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(source);

    let header = reader.headers().map_err(|e| MortalityError::Malformed {
        row: 1,
        message: e.to_string(),
    })?;
    if header.len() != 2 || &header[0] != "age" || &header[1] != "survivors" {
        return Err(MortalityError::Header {
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut survivors: Vec<u64> = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let row = idx as u64 + 2;
        let record = record.map_err(|e| MortalityError::Malformed {
            row: e.position().map_or(row, |p| p.line()),
            message: e.to_string(),
        })?;
        let expected = survivors.len() as u32;
        let age_field = &record[0];
        if parse_digits(age_field) != Some(expected as u64) {
            return Err(MortalityError::NonConsecutiveAge {
                row,
                expected,
                found: age_field.to_string(),
            });
        }
        let count = parse_digits(&record[1]).ok_or_else(|| MortalityError::NonInteger {
            row,
            found: record[1].to_string(),
        })?;
        if expected == 0 && count == 0 {
            return Err(MortalityError::ZeroRadix);
        }
        if let Some(&previous) = survivors.last() {
            if count > previous {
                return Err(MortalityError::Increasing {
                    row,
                    age: expected,
                    previous,
                    current: count,
                });
            }
        }
        survivors.push(count);
    }
    MortalityTable::new(survivors)
}

fn parse_digits(field: &str) -> Option<u64> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    field.parse().ok()
}

/// Whole years until survivors of age `m` have fallen to at most half.
///
/// Returns the smallest `k >= 1` with `survivors(m + k) <= survivors(m) / 2`,
/// compared exactly.
pub fn median_remaining_term(table: &MortalityTable, m: u32) -> Result<u32, MortalityError> {
    let alive = table.require_alive(m)?;
    let term = (1..)
        .find(|&k| 2 * table.survivors(m + k) <= alive)
        .expect("survivors reach zero past the stored range");
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(counts: &[u64]) -> MortalityTable {
        MortalityTable::new(counts.to_vec()).unwrap()
    }

    #[test]
    fn kersseboom_endpoints() {
        let t = kersseboom();
        assert_eq!(t.radix(), 1000);
        assert_eq!(t.survivors(0), 1000);
        assert_eq!(t.survivors(5), 690);
        assert_eq!(t.survivors(90), 8);
        assert_eq!(t.survivors(94), 2);
        assert_eq!(t.survivors(95), 1);
        assert_eq!(t.survivors(96), 0);
        assert_eq!(t.survivors(200), 0);
        assert_eq!(t.extinction_age(), 96);
        assert_eq!(t.last_living_age(), 95);
    }

    #[test]
    fn kersseboom_is_valid() {
        let t = kersseboom();
        assert_eq!(MortalityTable::new(t.counts().to_vec()).unwrap(), t);
        assert_eq!(load_table(t.to_csv().as_bytes()).unwrap(), t);
    }

    #[test]
    fn loads_minimal_table() {
        let t = load_table("age,survivors\n0,1000\n1,804".as_bytes()).unwrap();
        assert_eq!(t.radix(), 1000);
        assert_eq!(t.counts(), &[1000, 804]);
    }

    #[test]
    fn accepts_crlf_and_trailing_zeros() {
        let t = load_table("age,survivors\r\n0,5\r\n1,2\r\n2,0\r\n3,0\r\n".as_bytes()).unwrap();
        assert_eq!(t.counts(), &[5, 2]);
        assert_eq!(t.extinction_age(), 2);
    }

    #[test]
    fn rejects_increase() {
        let err = load_table("age,survivors\n0,100\n1,150".as_bytes()).unwrap_err();
        assert_eq!(
            err,
            MortalityError::Increasing {
                row: 3,
                age: 1,
                previous: 100,
                current: 150
            }
        );
        assert!(err.to_string().contains("survivors increased at age 1"));
    }

    type Check = fn(&MortalityError) -> bool;

    #[test]
    fn rejects_bad_rows() {
        let cases: &[(&str, Check)] = &[
            ("", |e| matches!(e, MortalityError::Header { .. })),
            ("age,count\n0,1", |e| {
                matches!(e, MortalityError::Header { .. })
            }),
            ("age,survivors\n", |e| matches!(e, MortalityError::Empty)),
            ("age,survivors\n1,10", |e| {
                matches!(
                    e,
                    MortalityError::NonConsecutiveAge {
                        row: 2,
                        expected: 0,
                        ..
                    }
                )
            }),
            ("age,survivors\n0,10\n2,5", |e| {
                matches!(
                    e,
                    MortalityError::NonConsecutiveAge {
                        row: 3,
                        expected: 1,
                        ..
                    }
                )
            }),
            ("age,survivors\n0,10\n1,4.5", |e| {
                matches!(e, MortalityError::NonInteger { row: 3, .. })
            }),
            ("age,survivors\n0,10\n1,-1", |e| {
                matches!(e, MortalityError::NonInteger { row: 3, .. })
            }),
            ("age,survivors\n0,1,000", |e| {
                matches!(e, MortalityError::Malformed { .. })
            }),
            ("age,survivors\n0,0", |e| {
                matches!(e, MortalityError::ZeroRadix)
            }),
        ];
        for (src, check) in cases {
            let err = load_table(src.as_bytes()).unwrap_err();
            assert!(check(&err), "{src:?} gave {err:?}");
        }
    }

    #[test]
    fn median_terms() {
        let t = kersseboom();
        assert_eq!(median_remaining_term(&t, 90).unwrap(), 2);
        assert_eq!(median_remaining_term(&t, 94).unwrap(), 1);
        assert_eq!(median_remaining_term(&table(&[2, 1]), 0).unwrap(), 1);
        assert_eq!(
            median_remaining_term(&t, 96),
            Err(MortalityError::NoLivingCohort { age: 96 })
        );
    }

    #[test]
    fn median_term_is_minimal_by_scan() {
        let t = kersseboom();
        for m in 0..t.extinction_age() {
            let k = median_remaining_term(&t, m).unwrap();
            let half = t.survivors(m) as f64 / 2.0;
            assert!(k >= 1);
            assert!(t.survivors(m + k) as f64 <= half);
            for j in 1..k {
                assert!(t.survivors(m + j) as f64 > half, "age {m} step {j}");
            }
        }
    }
}
