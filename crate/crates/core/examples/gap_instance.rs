//! Two heavy triangles joined by a light perfect matching. The cut LP pays 3
//! with every heavy edge at 1/2; no integral solution pays less than 4.
//!
//! `cargo run --example gap_instance -- [copies]`

use map_core::oracle;
use map_core::pipeline::{self, SolveOptions};
use map_core::rational::to_pq;
use map_core::toolkit::generators::gen_gap_instance;

fn main() -> map_core::Result<()> {
    let k = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let inst = gen_gap_instance(k)?;
    let sol = pipeline::solve(&inst, &SolveOptions { oracle: true, ..Default::default() })?;
    let r = &sol.report;
    println!("copies: {k}, n = {}, |M| = {}", r.n, r.matching_size);
    println!("LP value:      {}", to_pq(&r.lp_cost));
    println!("algorithm:     {} heavy edges", r.total_cost);
    println!("optimum:       {}", r.opt_cost.unwrap());
    println!("ratio vs LP:   {}", to_pq(&r.ratio_vs_lp));
    let x: Vec<String> = sol.lp.x.values().iter().map(to_pq).collect();
    println!("x* = [{}]", x.join(", "));
    let witness = oracle::exact_opt(&inst, None)?.witness;
    println!("an optimal H: {witness:?}");
    Ok(())
}
