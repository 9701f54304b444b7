use chamberscope::ratio::format_rational;
use chamberscope::realize::ChamberRecord;
use chamberscope::{Error, Result};

use crate::Format;

const HEADER: [&str; 7] = ["code", "a_min", "l1", "b", "r_cup", "s", "betti"];

fn tuple<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Rows sorted by `(betti, r_cup, s)`, ties kept in input order.
fn rows(records: &[ChamberRecord]) -> Result<Vec<[String; 7]>> {
    let mut keyed = Vec::with_capacity(records.len());
    for r in records {
        let inv = r
            .invariants
            .as_ref()
            .ok_or_else(|| Error::Inconsistency(format!("{}: invariants missing", r.code)))?;
        let a_min = r.a_min.as_ref().map_or_else(String::new, |a| tuple(a.iter().map(format_rational)));
        let l1 = r.l1.as_ref().map_or_else(String::new, format_rational);
        let row = [
            r.code.to_string(),
            a_min,
            l1,
            inv.betti.get(1).copied().unwrap_or(0).to_string(),
            inv.r_cup.to_string(),
            inv.s.to_string(),
            tuple(&inv.betti),
        ];
        keyed.push((inv.key(), row));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, row)| row).collect())
}

pub fn render(records: &[ChamberRecord], format: Format) -> Result<String> {
    let rows = rows(records)?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::Inconsistency(format!("csv: {e}"));
            w.write_record(HEADER).map_err(csv_err)?;
            for row in &rows {
                w.write_record(row).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Inconsistency(format!("csv: {e}")))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
        Format::Md => {
            let mut out = format!("| {} |\n|{}\n", HEADER.join(" | "), "---|".repeat(HEADER.len()));
            for row in &rows {
                let cells: Vec<String> = row
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i == 0 { format!("`{c}`") } else { c.clone() })
                    .collect();
                out.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
            Ok(out)
        }
    }
}
