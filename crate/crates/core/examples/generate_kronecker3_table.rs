//! Regenerates `data/kronecker3-a-table.json`: the absolutely-indecomposable
//! count table for the three-arrow Kronecker quiver in the box (3, 3),
//! produced by the finite-field counting oracle.
//!
//! The table is checked into the repository because producing it from
//! scratch samples point counts at primes up to 41, which takes on the order
//! of fifteen minutes on one core. Pass a cache directory to make reruns
//! incremental:
//!
//! ```text
//! cargo run --release --example generate_kronecker3_table -- [cache-dir]
//! ```

use std::path::Path;
use std::time::Instant;

use cuspidal_core::fforacle::{kac_tables, OracleCache};
use cuspidal_core::quiver::presets::kronecker;
use cuspidal_core::series::BoxBounds;

fn main() {
    let cache_dir = std::env::args().nth(1);
    let cache = cache_dir.as_deref().map(|d| OracleCache::new(Path::new(d)));
    let q = kronecker(3);
    let bounds = BoxBounds::new(vec![3, 3]);
    let t0 = Instant::now();
    let table = kac_tables(&q, &bounds, None, None, cache.as_ref()).unwrap();
    eprintln!("computed box (3,3) in {:?}", t0.elapsed());
    let out = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/kronecker3-a-table.json");
    std::fs::write(&out, serde_json::to_string_pretty(&table.to_json()).unwrap()).unwrap();
    eprintln!("wrote {}", out.display());
    for (d, e) in &table.entries {
        println!("{d:?}: A = {}", e.a);
    }
}
