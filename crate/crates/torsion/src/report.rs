//! Parallel report runs and their CSV / JSON encodings.

use std::io::Write;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use torsion_core::mellin::{calibrate_c_psi, Calibration};
use torsion_core::torsion::{compute_row, fit_report, Column, OrbifoldData, TorsionReport, TorsionRow};

const COLUMNS: [Column; 3] = [Column::Mi, Column::Msi, Column::Mecusp];

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Core(#[from] torsion_core::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

static CALIBRATION: OnceLock<Result<Calibration, torsion_core::Error>> = OnceLock::new();

/// The calibrated `C(ψ)`, computed once per process.
pub fn calibration() -> Result<&'static Calibration, torsion_core::Error> {
    CALIBRATION.get_or_init(calibrate_c_psi).as_ref().map_err(Clone::clone)
}

/// Rows for `m_min..=m_max` on `jobs` threads (all cores when `None`),
/// merged in `m` order and fitted.
pub fn run(orb: &OrbifoldData, m_min: u64, m_max: u64, jobs: Option<usize>) -> Result<TorsionReport, ReportError> {
    if m_min > m_max {
        return Err(torsion_core::Error::InvalidInput("empty m-range").into());
    }
    let c_psi = calibration()?.value;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build()?;
    let rows = pool.install(|| {
        (m_min..=m_max)
            .into_par_iter()
            .map(|m| compute_row(orb, m, c_psi))
            .collect::<Result<Vec<TorsionRow>, _>>()
    })?;
    Ok(fit_report(orb, rows))
}

/// `v` printed with 12 significant digits.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{}", if v == 0.0 { 0.0 } else { v });
    }
    let exponent = v.abs().log10().floor() as i32;
    if (-4..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        let s = format!("{v:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
        s.to_owned()
    } else {
        let s = format!("{v:.11e}");
        let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exp}")
    }
}

fn rounded(v: f64) -> Value {
    sig12(v).parse::<f64>().ok().map_or(Value::Null, Value::from)
}

fn cell(value: &torsion_core::Result<f64>) -> String {
    value.as_ref().map_or(String::new(), |v| sig12(*v))
}

/// CSV with header `m,dim,lambda_0..lambda_n,MI,MsI,MEcusp`. Failed cells
/// are left empty.
pub fn write_csv<W: Write>(report: &TorsionReport, n: usize, out: W) -> Result<(), ReportError> {
    let mut writer = csv::Writer::from_writer(out);
    let mut header = vec!["m".to_owned(), "dim".to_owned()];
    header.extend((0..=n).map(|k| format!("lambda_{k}")));
    header.extend(COLUMNS.iter().map(|c| c.name().to_owned()));
    writer.write_record(&header)?;
    for row in &report.rows {
        let mut record = vec![row.m.to_string(), row.dim.to_string()];
        record.extend(row.lambdas.iter().map(u64::to_string));
        record.extend(COLUMNS.iter().map(|c| cell(c.get(row))));
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// JSON layout: `rows` (failed cells are `null` with the reason under
/// `errors`), `fits`, and the calibrated constant.
pub fn to_json(report: &TorsionReport, c_psi: f64) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            obj.insert("m".into(), json!(row.m));
            obj.insert("dim".into(), json!(row.dim as f64));
            obj.insert("lambdas".into(), json!(row.lambdas));
            let mut errors = Map::new();
            for c in COLUMNS {
                match c.get(row) {
                    Ok(v) => {
                        obj.insert(c.name().into(), rounded(*v));
                    }
                    Err(e) => {
                        obj.insert(c.name().into(), Value::Null);
                        errors.insert(c.name().into(), json!(e.to_string()));
                    }
                }
            }
            if !errors.is_empty() {
                obj.insert("errors".into(), Value::Object(errors));
            }
            Value::Object(obj)
        })
        .collect();
    let fits: Vec<Value> = report
        .fits
        .iter()
        .map(|f| match &f.fit {
            Ok(fit) => json!({
                "column": f.column.name(),
                "model": fit.model,
                "coefficient": rounded(fit.coefficient),
                "max_relative_residual": rounded(fit.max_relative_residual),
                "window": [fit.window.0, fit.window.1],
                "points": fit.points,
            }),
            Err(e) => json!({
                "column": f.column.name(),
                "model": Value::Null,
                "error": e.to_string(),
            }),
        })
        .collect();
    json!({ "c_psi": rounded(c_psi), "rows": rows, "fits": fits })
}

pub fn write_json<W: Write>(report: &TorsionReport, c_psi: f64, mut out: W) -> Result<(), ReportError> {
    serde_json::to_writer_pretty(&mut out, &to_json(report, c_psi))?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-1.1544313298030602), "-1.1544313298");
        assert_eq!(sig12(25848.14210096448), "25848.142101");
        assert_eq!(sig12(1.6472207132609337e-5), "1.64722071326e-5");
        assert_eq!(sig12(6.02214076e23), "6.02214076e23");
        assert_eq!(sig12(123456789012345.0), "1.23456789012e14");
        assert_eq!(sig12(0.00992554812697577), "0.00992554812698");
    }

    #[test]
    fn parallel_and_sequential_rows_agree() {
        let orb = crate::Config::model(30).orbifold().unwrap();
        let c_psi = calibration().unwrap().value;
        let serial = torsion_core::torsion::run_report(&orb, 1, 30, c_psi).unwrap();
        let parallel = run(&orb, 1, 30, Some(4)).unwrap();
        assert_eq!(serial, parallel);
    }
}
