//! CSV output for plottable rows.

use std::io::Write;

use serde::Serialize;

use crate::Result;

/// Writes `rows` with a header line taken from the field names.
pub fn write_csv<T: Serialize>(rows: &[T], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        kappa: f64,
        lambda_min: f64,
    }

    #[test]
    fn header_and_rows() {
        let s = to_csv_string(&[
            Row { kappa: 0.5, lambda_min: -1.0 },
            Row { kappa: 1.0, lambda_min: 0.25 },
        ])
        .unwrap();
        assert_eq!(s, "kappa,lambda_min\n0.5,-1.0\n1.0,0.25\n");
    }
}
