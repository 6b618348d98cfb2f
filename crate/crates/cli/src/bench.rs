//! Convolution vs truncated-sum timing over all admissible indices.

use std::io::Write;
use std::time::{Duration, Instant};

use mzv_core::{all_admissible_up_to, zeta_convolution, zeta_naive, MultiIndex, Precision, Real, RealEvaluator, RealField, Result, Scalar};

/// Extra digits for the reference value errors are measured against.
const REFERENCE_GUARD: u32 = 20;

pub struct BenchRow {
    pub index: MultiIndex,
    pub cold: Duration,
    pub warm: Duration,
    pub conv_error: Real,
    pub naive: Duration,
    pub naive_error: Real,
    pub naive_bound: Real,
}

pub fn run(prec: Precision, cap: u32, cutoff: u64) -> Result<Vec<BenchRow>> {
    let reference_prec = Precision::new(prec.digits() + REFERENCE_GUARD)?;
    let ev = RealEvaluator::new(prec);
    let indices = all_admissible_up_to(cap);
    let mut rows = Vec::with_capacity(indices.len());
    for idx in &indices {
        let reference: Real = zeta_convolution(idx, &reference_prec)?;
        let reference = reference.convert_to(&prec);
        let t = Instant::now();
        let conv = ev.zeta(idx)?;
        let cold = t.elapsed();
        let t = Instant::now();
        let again = ev.zeta(idx)?;
        let warm = t.elapsed();
        debug_assert_eq!(conv, again);
        let t = Instant::now();
        let naive = zeta_naive::<Real>(idx, cutoff, &prec)?;
        let naive_time = t.elapsed();
        rows.push(BenchRow {
            index: idx.clone(),
            cold,
            warm,
            conv_error: (conv - &reference).abs(),
            naive: naive_time,
            naive_error: (naive.value - &reference).abs(),
            naive_bound: naive.error_bound,
        });
    }
    Ok(rows)
}

fn micros(d: Duration) -> String {
    format!("{:.1}", d.as_secs_f64() * 1e6)
}

pub fn write_table<W: Write>(rows: &[BenchRow], cutoff: u64, mut out: W) -> std::io::Result<()> {
    let width = rows.iter().map(|r| r.index.to_string().len()).max().unwrap_or(5).max(5);
    writeln!(
        out,
        "{:<width$}  {:>10}  {:>10}  {:>11}  {:>12}  {:>11}  {:>11}",
        "INDEX", "COLD_US", "WARM_US", "CONV_ERR", "NAIVE_US", "NAIVE_ERR", "NAIVE_BOUND"
    )?;
    for r in rows {
        writeln!(
            out,
            "{:<width$}  {:>10}  {:>10}  {:>11}  {:>12}  {:>11}  {:>11}",
            r.index.to_string(),
            micros(r.cold),
            micros(r.warm),
            r.conv_error.to_scientific(3),
            micros(r.naive),
            r.naive_error.to_scientific(3),
            r.naive_bound.to_scientific(3),
        )?;
    }
    let cold: Duration = rows.iter().map(|r| r.cold).sum();
    let warm: Duration = rows.iter().map(|r| r.warm).sum();
    let naive: Duration = rows.iter().map(|r| r.naive).sum();
    let max = |f: fn(&BenchRow) -> &Real| rows.iter().map(f).max_by(|a, b| a.partial_cmp(b).unwrap()).cloned();
    writeln!(out, "{} indices; naive cutoff M = {cutoff}", rows.len())?;
    writeln!(
        out,
        "total: convolution cold {} us, warm {} us (x{:.0}), naive {} us",
        micros(cold),
        micros(warm),
        cold.as_secs_f64() / warm.as_secs_f64().max(1e-9),
        micros(naive)
    )?;
    if let (Some(c), Some(n), Some(b)) = (max(|r| &r.conv_error), max(|r| &r.naive_error), max(|r| &r.naive_bound)) {
        writeln!(
            out,
            "max error: convolution {}, naive {} (bound {})",
            c.to_scientific(3),
            n.to_scientific(3),
            b.to_scientific(3)
        )?;
    }
    Ok(())
}
