//! Tree cut values, tight edges and the scaled solution x' for one solve.
//!
//! `cargo run --example diagnostics -- [gamma as p/q]`

use map_core::dfs;
use map_core::pipeline::{self, SolveOptions};
use map_core::rational::{parse_pq, to_pq};
use map_core::toolkit::generators::gen_gap_instance;

fn main() -> map_core::Result<()> {
    let gamma = parse_pq(&std::env::args().nth(1).unwrap_or_else(|| "1/1000".into()))?;
    let inst = gen_gap_instance(2)?;
    let opts = SolveOptions { diagnostics: true, gamma: gamma.clone(), ..Default::default() };
    let sol = pipeline::solve(&inst, &opts)?;
    let tight = dfs::tightness_report(&inst, &sol.tree, &sol.lp.x, &gamma)?;
    println!("tree edge   cut value   tight");
    for (e, value) in &tight.tree_cut_value {
        let mark = if tight.tight_edges().contains(e) { "yes" } else { "" };
        println!("{e:>9}   {:>9}   {mark}", to_pq(value));
    }
    let d = sol.report.diagnostics.as_ref().expect("requested");
    println!("S0 {:?}, S1 {:?}", tight.s0_light_tight, tight.s1_heavy_tight);
    println!("S0+ {:?}, S0- {:?}", tight.s0_plus, tight.s0_minus);
    println!("c(x*_T) = {}", to_pq(&d.cost_in_tree));
    println!("c(x') = {} <= {}: feasible {}", to_pq(&d.x_prime_cost), to_pq(&d.x_prime_bound), d.x_prime_feasible);
    println!("node cut violations: {:?}", d.node_cut_violations);
    println!("invariant failures: {:?}", pipeline::check_invariants(&inst, &sol));
    Ok(())
}
