//! The comb family on which a DFS that ignores the LP builds a heavy spine
//! and then pays one link per leaf, while the LP-guided walk follows the
//! light edges.
//!
//! `cargo run --example bad_dfs -- [max_depth]`

use map_core::cut_lp;
use map_core::dfs::DfsRule;
use map_core::pipeline::{self, SolveOptions};
use map_core::rational::{to_decimal, to_pq};
use map_core::toolkit::generators::gen_bad_dfs_instance;

fn main() -> map_core::Result<()> {
    let max_depth = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    println!("{:>5} {:>4} {:>8} {:>10} {:>14}", "depth", "opt", "guided", "unguided", "unguided/opt");
    for d in 2..=max_depth {
        let inst = gen_bad_dfs_instance(d)?;
        let lp = cut_lp::solve_cut_lp(&inst)?;
        let opts = SolveOptions { oracle: true, ..Default::default() };
        let guided = pipeline::solve_with_lp(&inst, lp.clone(), &opts)?;
        let unguided = pipeline::solve_with_lp(&inst, lp, &SolveOptions { dfs_rule: DfsRule::Lexicographic, ..opts })?;
        let ratio = unguided.report.ratio_vs_opt.unwrap();
        println!(
            "{d:>5} {:>4} {:>8} {:>10} {:>14}",
            guided.report.opt_cost.unwrap(),
            guided.report.total_cost,
            unguided.report.total_cost,
            format!("{} ({})", to_pq(&ratio), &to_decimal(&ratio)[..5]),
        );
    }
    Ok(())
}
