//! CSV and TSV writers for studies and profiles.

use std::io::Write;

use crate::error::Result;
use crate::harness::study::ConvergenceRow;

pub const CSV_HEADER: [&str; 6] = ["i", "N", "h", "err", "envelope", "ratio"];
pub const TSV_HEADER: [&str; 2] = ["x", "err"];

/// Scientific notation with 7 significant digits.
pub fn sci7(v: f64) -> String {
    format!("{v:.6e}")
}

/// Writes study rows as CSV with header `i,N,h,err,envelope,ratio`.
pub fn write_rows_csv<W: Write>(rows: &[ConvergenceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.index.to_string(),
            r.n_terms.to_string(),
            sci7(r.step),
            sci7(r.observed_err),
            sci7(r.envelope),
            sci7(r.ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `(x, err(x))` pairs as tab-separated values with header `x<TAB>err`.
pub fn write_profile_tsv<W: Write>(profile: &[(f64, f64)], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().delimiter(b'\t').from_writer(out);
    w.write_record(TSV_HEADER)?;
    for (x, e) in profile {
        w.write_record([sci7(*x), sci7(*e)])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let rows = [ConvergenceRow {
            index: 1,
            n_terms: 2,
            step: 0.763_074_532_878_494_2,
            observed_err: 6.373_769_658e-2,
            envelope: 3.641_221_875e-2,
            ratio: 1.750_448_3,
        }];
        let mut buf = Vec::new();
        write_rows_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "i,N,h,err,envelope,ratio\n1,2,7.630745e-1,6.373770e-2,3.641222e-2,1.750448e0\n"
        );
    }

    #[test]
    fn tsv_layout() {
        let mut buf = Vec::new();
        write_profile_tsv(&[(-1.5, 2.0e-4), (0.0, -3.25e-5)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "x\terr\n-1.500000e0\t2.000000e-4\n0.000000e0\t-3.250000e-5\n");
    }
}
