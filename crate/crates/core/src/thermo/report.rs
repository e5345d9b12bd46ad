use std::io::{Read, Write};

use super::units::Units;
use crate::error::{Error, Result};

/// Fixed CSV column order of a cost report.
pub const COST_COLUMNS: [&str; 9] =
    ["k", "W_tape", "W_diss_eq2", "W_diss_eq3", "W_diss_eq5", "W_out", "W_diss_limit", "units", "memory_id"];

/// Every work quantity for one block length and one memory.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub k: usize,
    pub w_tape: f64,
    pub w_diss_erasure: f64,
    pub w_diss_predict_retrodict: f64,
    pub w_diss_mutual_information: f64,
    pub w_out: f64,
    /// H(R) - E
    pub w_diss_limit: f64,
    pub units: Units,
    pub memory_id: String,
}

impl CostReport {
    /// Canonical dissipation value (predictive minus retrodictive uncertainty).
    pub fn w_diss(&self) -> f64 {
        self.w_diss_predict_retrodict
    }

    pub fn to_record(&self) -> Vec<String> {
        let f = |v: f64| self.units.format(v);
        vec![
            self.k.to_string(),
            f(self.w_tape),
            f(self.w_diss_erasure),
            f(self.w_diss_predict_retrodict),
            f(self.w_diss_mutual_information),
            f(self.w_out),
            f(self.w_diss_limit),
            self.units.to_string(),
            self.memory_id.clone(),
        ]
    }

    pub fn from_record(record: &csv::StringRecord) -> Result<Self> {
        match SweepRow::from_record(record)? {
            SweepRow::Cost(r) => Ok(r),
            SweepRow::Limit { .. } => Err(Error::Record("expected a cost row, found the limit row".into())),
        }
    }
}

/// A row of sweep output: one per block length, then a closing row carrying the analytic limit
/// with `k` written as `inf` and the tape columns left empty.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepRow {
    Cost(CostReport),
    Limit { value: f64, units: Units, memory_id: String },
}

impl SweepRow {
    pub fn to_record(&self) -> Vec<String> {
        match self {
            SweepRow::Cost(r) => r.to_record(),
            SweepRow::Limit { value, units, memory_id } => {
                let v = units.format(*value);
                vec![
                    "inf".into(),
                    String::new(),
                    v.clone(),
                    v.clone(),
                    v.clone(),
                    String::new(),
                    v,
                    units.to_string(),
                    memory_id.clone(),
                ]
            }
        }
    }

    pub fn from_record(record: &csv::StringRecord) -> Result<Self> {
        if record.len() != COST_COLUMNS.len() {
            return Err(Error::Record(format!("expected {} fields, found {}", COST_COLUMNS.len(), record.len())));
        }
        let num = |i: usize| -> Result<f64> {
            record[i]
                .parse::<f64>()
                .map_err(|_| Error::Record(format!("column {} is not a number: `{}`", COST_COLUMNS[i], &record[i])))
        };
        let units: Units = record[7].parse()?;
        let memory_id = record[8].to_string();
        if &record[0] == "inf" {
            return Ok(SweepRow::Limit { value: num(6)?, units, memory_id });
        }
        let k =
            record[0].parse::<usize>().map_err(|_| Error::Record(format!("k is not an integer: `{}`", &record[0])))?;
        Ok(SweepRow::Cost(CostReport {
            k,
            w_tape: num(1)?,
            w_diss_erasure: num(2)?,
            w_diss_predict_retrodict: num(3)?,
            w_diss_mutual_information: num(4)?,
            w_out: num(5)?,
            w_diss_limit: num(6)?,
            units,
            memory_id,
        }))
    }

    /// Writes the header and rows as CSV.
    pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(COST_COLUMNS)?;
        for r in rows {
            w.write_record(r.to_record())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
        let mut rdr = csv::Reader::from_reader(input);
        let header = rdr.headers()?.clone();
        if header.iter().ne(COST_COLUMNS) {
            return Err(Error::Record(format!("unexpected header {:?}", header.iter().collect::<Vec<_>>())));
        }
        rdr.records().map(|r| SweepRow::from_record(&r?)).collect()
    }
}
