//! CSV output for traced leaves.

use std::io::Write;

use crate::leaf::LeafTrace;

fn header_fields(n: usize) -> Vec<String> {
    let mut cols = vec!["step".to_string()];
    for k in 1..=n {
        cols.push(format!("re_z{k}"));
        cols.push(format!("im_z{k}"));
    }
    if n == 2 {
        cols.push("re_p".into());
        cols.push("im_p".into());
    } else {
        for j in 1..n {
            cols.push(format!("re_p{j}"));
            cols.push(format!("im_p{j}"));
        }
    }
    cols.push("resid_rho".into());
    cols
}

/// `step,re_z1,im_z1,...,re_zn,im_zn,re_p,im_p,resid_rho`; with more than
/// one `p` the columns are `re_p1,im_p1,...`.
pub fn trace_header(n: usize) -> String {
    header_fields(n).join(",")
}

/// One row per recorded point; `resid[k]` goes in the last column.
pub fn write_trace_csv(out: impl Write, trace: &LeafTrace, resid: &[f64]) -> csv::Result<()> {
    let n = trace.points.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header_fields(n))?;
    for (k, (z, p)) in trace.points.iter().zip(&trace.branches).enumerate() {
        let mut row = vec![k.to_string()];
        for c in z.iter().chain(p) {
            row.push(format!("{:e}", c.re));
            row.push(format!("{:e}", c.im));
        }
        row.push(format!("{:e}", resid[k]));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers() {
        assert_eq!(trace_header(2), "step,re_z1,im_z1,re_z2,im_z2,re_p,im_p,resid_rho");
        assert_eq!(
            trace_header(3),
            "step,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3,re_p1,im_p1,re_p2,im_p2,resid_rho"
        );
    }
}
