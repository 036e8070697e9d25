//! Decomposition, canonical orders and the Gray-code generator.

mod bench;
mod decompose;
pub mod plan;
mod stream;

pub use bench::{bench_cat, peak_mem_kb, BenchStats};
pub use decompose::{canonical_order, check_sigma_split, choose_omega, decompose, recursive_order, Decomposition};
pub use stream::{GrayStep, GrayStream, Swaps};

use crate::betweenness::{find_asteroidal_triple, interval_table_from};
use crate::graph::{component_table, Graph};
use crate::{Error, Result};

/// Stream of every AT-free order, starting at the canonical order.
pub fn generate_gray(g: &Graph) -> Result<GrayStream> {
    if g.n() == 0 {
        return Err(Error::Empty);
    }
    let ct = component_table(g);
    if find_asteroidal_triple(g, &ct).is_some() {
        return Err(Error::NotAtFree);
    }
    let tbl = interval_table_from(g, &ct);
    let beta = canonical_order(g, &tbl)?;
    let plan = plan::find_plan(&tbl).ok_or(Error::NoPlan)?;
    Ok(GrayStream::new(tbl, &plan, beta))
}
