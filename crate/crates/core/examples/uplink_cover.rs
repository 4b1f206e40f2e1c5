//! Cover a DFS tree with back edges: greedy optimum, the covering LP, and the
//! fractional covers read off the LP solution.
//!
//! `cargo run --example uplink_cover -- [seed]`

use map_core::rational::to_pq;
use map_core::toolkit::generators::gen_random_instance;
use map_core::{cut_lp, dfs, oracle, tap};

fn main() -> map_core::Result<()> {
    let seed = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let inst = gen_random_instance(10, 8, 0.8, seed)?;
    let lp = cut_lp::solve_cut_lp(&inst)?;
    let tree = dfs::guided_dfs(&inst, &lp, 0)?;
    println!("dfs order {:?}", tree.order);
    for b in &tree.back_edges {
        println!("  link {} from {} up to {}, x = {}", b.edge, b.descendant, b.ancestor, to_pq(lp.x.get(b.edge)));
    }
    let aug = tap::optimal_uplink_cover(&tree)?;
    println!("greedy cover {:?} (size {})", aug.chosen, aug.size);
    println!("covering LP optimum {}", to_pq(&tap::tap_fractional_optimum(&tree)?));
    println!("enumerated optimum {}", oracle::exact_uplink_cover(&tree)?);

    let restricted = tap::restricted_solution(&tree, &lp.x);
    println!("x* on links: total {}, feasible {}", to_pq(&restricted.total()), restricted.is_feasible(&tree));
    let scaled = tap::scaled_solution(&inst, &tree, &lp.x)?;
    println!("scaled y: total {}, feasible {}", to_pq(&scaled.y.total()), scaled.y.is_feasible(&tree));
    Ok(())
}
