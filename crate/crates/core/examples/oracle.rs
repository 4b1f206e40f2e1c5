//! Exact optimum by branch and bound, with and without a node budget.
//!
//! `cargo run --release --example oracle -- [n] [seed]`

use map_core::oracle;
use map_core::rational::to_pq;
use map_core::toolkit::generators::gen_random_instance;
use map_core::{cut_lp, Error};

fn main() -> map_core::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(12) as usize;
    let seed = args.next().flatten().unwrap_or(1);
    let inst = gen_random_instance(n, n, 0.5, seed)?;
    let lp = cut_lp::solve_cut_lp(&inst)?;
    let res = oracle::exact_opt(&inst, None)?;
    println!("n = {n}, heavy edges = {}", inst.heavy_edges().len());
    println!("LP {} <= OPT {} ({} search nodes)", to_pq(&lp.objective), res.opt_cost, res.nodes_explored);
    println!("witness {:?}", res.witness);
    match oracle::exact_opt(&inst, Some(10)) {
        Err(Error::BudgetExceeded { budget, lower, best }) => {
            println!("with budget {budget}: gave up, lower bound {lower}, best found {best:?}")
        }
        other => println!("with budget 10: {:?}", other.map(|r| r.opt_cost)),
    }
    Ok(())
}
