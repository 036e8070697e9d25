use std::hint::black_box;
use std::time::Instant;

use crate::gray::{generate_gray, GrayStep};
use crate::{Graph, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchStats {
    pub orders: u64,
    pub total_ns: u128,
    pub ns_per_order: f64,
    pub preprocessing_ns: u128,
    pub peak_mem_kb: Option<u64>,
    pub cyclic: bool,
}

/// VmHWM of this process, where /proc is available.
pub fn peak_mem_kb() -> Option<u64> {
    let s = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = s.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

/// Runs the stream to exhaustion `warmup` times untimed, then once timed.
/// Only deltas are consumed; setup time is reported apart.
pub fn bench_cat(g: &Graph, warmup: usize) -> Result<BenchStats> {
    for _ in 0..warmup {
        let mut s = generate_gray(g)?;
        black_box(s.by_ref().count());
    }
    let t0 = Instant::now();
    let mut s = generate_gray(g)?;
    let preprocessing_ns = t0.elapsed().as_nanos();

    let t1 = Instant::now();
    let mut orders = 0u64;
    let mut acc = 0usize;
    for step in s.by_ref() {
        orders += 1;
        if let GrayStep::Delta(d) = step {
            acc = acc.wrapping_add(d.as_slice()[0]);
        }
    }
    black_box(acc);
    let total_ns = t1.elapsed().as_nanos();
    Ok(BenchStats {
        orders,
        total_ns,
        ns_per_order: total_ns as f64 / orders.max(1) as f64,
        preprocessing_ns,
        peak_mem_kb: peak_mem_kb(),
        cyclic: s.cyclic(),
    })
}
