//! Regenerated tables: the classification, the small-degree data and the
//! worked examples over 81 and 99 points.

use serde::Serialize;

use crate::closed_form::{big_m, little_m, omega_known};
use crate::error::{Error, Result};
use crate::small::small_char_data;
use crate::sylow::{n_total, seq_stats, sigma_type, BinarySeq, CharLabel};

pub const TABLE_NAMES: [&str; 4] = ["example-81", "example-99", "table1", "table2"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRow {
    pub s: String,
    pub sigma: String,
    pub f: Option<u32>,
    pub g: Option<u32>,
    #[serde(rename = "F")]
    pub big_f: Option<u32>,
    #[serde(rename = "G")]
    pub big_g: Option<u32>,
    #[serde(rename = "H")]
    pub big_h: Option<u32>,
    pub n_value: u64,
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    pub quasi_trivial: bool,
    pub omega: String,
}

pub fn sequence_row(s: &BinarySeq) -> Result<SequenceRow> {
    let st = seq_stats(s);
    let (ty, n_value) = sigma_type(s)?;
    let label = CharLabel::single(s.clone());
    Ok(SequenceRow {
        s: s.to_string(),
        sigma: ty.tag().to_string(),
        f: st.first_one,
        g: st.second_one,
        big_f: st.leading_run,
        big_g: st.leading_run.and(st.first_after_run),
        big_h: st.leading_run.and(st.second_after_run),
        n_value,
        m: little_m(&label)?,
        big_m: big_m(&label),
        quasi_trivial: label.is_quasi_trivial(),
        omega: omega_known(&label)?.to_string(),
    })
}

/// All sixteen sequences of length 4.
pub fn example_81() -> Result<Vec<SequenceRow>> {
    BinarySeq::all(4).iter().map(sequence_row).collect()
}

/// Sequences of length 3 to 5 with their type and `N`.
pub fn table1() -> Result<Vec<SequenceRow>> {
    (3..=5)
        .flat_map(BinarySeq::all)
        .map(|s| sequence_row(&s))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelRow {
    pub label: String,
    pub n: u64,
    pub component_n: Vec<u64>,
    pub n_value: u64,
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    pub quasi_trivial: bool,
    pub omega: String,
}

fn component_n(s: &BinarySeq) -> Result<u64> {
    if s.len() >= 3 {
        Ok(sigma_type(s)?.1)
    } else {
        Ok(small_char_data(&CharLabel::single(s.clone()))?.n_value)
    }
}

pub fn label_row(label: &CharLabel) -> Result<LabelRow> {
    Ok(LabelRow {
        label: label.to_string(),
        n: label.n(),
        component_n: label
            .display_order()
            .into_iter()
            .map(component_n)
            .collect::<Result<_>>()?,
        n_value: n_total(label)?,
        m: little_m(label)?,
        big_m: big_m(label),
        quasi_trivial: label.is_quasi_trivial(),
        omega: omega_known(label)?.to_string(),
    })
}

/// `φ(0000) × φ(s) × φ(t)` over 99 points, in the order of the worked example.
pub fn example_99() -> Result<Vec<LabelRow>> {
    const PAIRS: [(&str, &str); 10] = [
        ("00", "00"),
        ("00", "01"),
        ("01", "01"),
        ("00", "10"),
        ("10", "01"),
        ("10", "10"),
        ("00", "11"),
        ("01", "11"),
        ("10", "11"),
        ("11", "11"),
    ];
    PAIRS
        .iter()
        .map(|(s, t)| {
            let label: CharLabel = format!("0000;{s};{t}").parse()?;
            label_row(&label)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallRow {
    pub label: String,
    pub l: u64,
    pub row: String,
    pub n_value: u64,
    pub omega: String,
    pub psi1: bool,
    pub psi2: bool,
}

/// Every character of `P_l` for `1 <= l < 27`.
pub fn table2() -> Result<Vec<SmallRow>> {
    let mut rows = Vec::new();
    for l in 1..27 {
        for psi in CharLabel::all(l) {
            let d = small_char_data(&psi)?;
            rows.push(SmallRow {
                label: psi.to_string(),
                l,
                row: d.row.to_string(),
                n_value: d.n_value,
                omega: d.omega.to_string(),
                psi1: d.psi1,
                psi2: d.psi2,
            });
        }
    }
    Ok(rows)
}

/// A regenerated table, ready for serialization.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Table {
    Sequences(Vec<SequenceRow>),
    Labels(Vec<LabelRow>),
    Small(Vec<SmallRow>),
}

pub fn table(name: &str) -> Result<Table> {
    match name {
        "example-81" => example_81().map(Table::Sequences),
        "example-99" => example_99().map(Table::Labels),
        "table1" => table1().map(Table::Sequences),
        "table2" => table2().map(Table::Small),
        _ => Err(Error::OutOfRange(format!(
            "unknown table {name:?}; expected one of {}",
            TABLE_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(example_81().unwrap().len(), 16);
        assert_eq!(example_99().unwrap().len(), 10);
        assert_eq!(table1().unwrap().len(), 8 + 16 + 32);
        assert!(table("bogus").is_err());
    }

    #[test]
    fn first_row_of_99() {
        let row = &example_99().unwrap()[0];
        assert_eq!(row.component_n, vec![81, 9, 9]);
        assert_eq!(row.n_value, 99);
        assert_eq!(row.omega, "P(99)");
    }
}
