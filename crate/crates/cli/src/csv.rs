use std::io::{self, Write};

use sinc_bound::experiments::SweepRecord;
use sinc_bound::Real;

pub const SWEEP_HEADER: &str = "n,h,M,N,max_error,bound,transform";

/// 17 significant digits, enough to round-trip an `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_sweep<T: Real>(out: &mut impl Write, records: &[SweepRecord<T>]) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in records {
        let bound = r.bound.map(|b| float(b.to_f64_lossy())).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n,
            float(r.h.to_f64_lossy()),
            r.m,
            r.n_upper,
            float(r.max_error.to_f64_lossy()),
            bound,
            r.transform.tag()
        )?;
    }
    Ok(())
}
