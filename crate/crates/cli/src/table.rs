//! Figure tables: a config echo, a header row and numeric rows.

use std::io::Write;

use crate::error::{invalid, CliResult};
use crate::format::cell;

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub abscissa: f64,
    /// One entry per ordinate column; `None` where the column does not apply.
    pub ordinates: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub echo: String,
    pub columns: Vec<String>,
    pub rows: Vec<CurveSample>,
}

impl Table {
    pub fn new(echo: String, columns: Vec<String>) -> Self {
        Self {
            echo,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: CurveSample) -> CliResult<()> {
        if row.ordinates.len() + 1 != self.columns.len() {
            return Err(invalid(format!(
                "row has {} ordinates for {} columns",
                row.ordinates.len(),
                self.columns.len()
            )));
        }
        if let Some(last) = self.rows.last() {
            if !(row.abscissa > last.abscissa) {
                return Err(invalid(format!(
                    "abscissa {} does not increase past {}",
                    row.abscissa, last.abscissa
                )));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| {
                    if idx == 0 {
                        Some(r.abscissa)
                    } else {
                        r.ordinates[idx - 1]
                    }
                })
                .collect(),
        )
    }

    pub fn write_to<W: Write>(&self, out: &mut W) -> CliResult<()> {
        writeln!(out, "# {}", self.echo)?;
        let mut w = csv::WriterBuilder::new().from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            let mut record = vec![cell(Some(row.abscissa))];
            record.extend(row.ordinates.iter().map(|x| cell(*x)));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_echo_header_and_rows() {
        let mut t = Table::new("cfg".into(), vec!["x".into(), "y".into(), "z".into()]);
        t.push(CurveSample {
            abscissa: 0.0,
            ordinates: vec![Some(-0.0), None],
        })
        .unwrap();
        t.push(CurveSample {
            abscissa: 0.5,
            ordinates: vec![Some(1.0 / 3.0), Some(2.0)],
        })
        .unwrap();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# cfg\nx,y,z\n0,0,\n0.5,0.333333333333,2\n"
        );
    }

    #[test]
    fn rejects_bad_rows() {
        let mut t = Table::new(String::new(), vec!["x".into(), "y".into()]);
        t.push(CurveSample {
            abscissa: 1.0,
            ordinates: vec![None],
        })
        .unwrap();
        assert!(t
            .push(CurveSample {
                abscissa: 1.0,
                ordinates: vec![None]
            })
            .is_err());
        assert!(t
            .push(CurveSample {
                abscissa: 2.0,
                ordinates: vec![]
            })
            .is_err());
    }
}
