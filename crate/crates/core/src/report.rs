//! CSV and JSON writers for reports.

use std::io::Write;

use serde::Serialize;

use crate::asymptotics::{format_from_ln, ConvergenceReport};
use crate::error::Result;
use crate::montecarlo::ProfileRow;

#[derive(Serialize)]
struct ProfileCsvRow<'a> {
    order: usize,
    sample: u64,
    source_role: &'a str,
    distance: usize,
    count: u64,
    proportion: f64,
    scaled_distance: f64,
    scaled_proportion: f64,
}

/// Profile rows, all measured from `O1`.
pub fn write_profiles_csv<W: Write>(rows: &[ProfileRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(ProfileCsvRow {
            order: r.order,
            sample: r.sample,
            source_role: "O1",
            distance: r.distance,
            count: r.count,
            proportion: r.proportion,
            scaled_distance: r.scaled_distance,
            scaled_proportion: r.scaled_proportion,
        })
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ConvergenceCsvRow<'a> {
    law_id: &'a str,
    n: usize,
    observed: String,
    predicted: String,
    ratio: f64,
}

/// `law_id,n,observed,predicted,ratio`.
pub fn write_convergence_csv<W: Write>(reports: &[ConvergenceReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for rep in reports {
        for row in &rep.rows {
            w.serialize(ConvergenceCsvRow {
                law_id: &rep.law_id,
                n: row.n,
                observed: format_from_ln(row.ln_observed),
                predicted: format_from_ln(row.ln_predicted),
                ratio: row.ratio,
            })
            .map_err(csv_error)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON followed by a newline.
pub fn write_json<W: Write, T: Serialize>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn csv_error(e: csv::Error) -> crate::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io.into(),
        other => std::io::Error::new(std::io::ErrorKind::InvalidData, format!("{other:?}")).into(),
    }
}
