//! Solve the cut LP by separation and compare it against the LP with every
//! cut written out.
//!
//! `cargo run --example cutting_plane_lp -- [n] [seed]`

use map_core::cut_lp;
use map_core::oracle;
use map_core::rational::to_pq;
use map_core::toolkit::generators::gen_random_instance;

fn main() -> map_core::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(9) as usize;
    let seed = args.next().flatten().unwrap_or(7);
    let inst = gen_random_instance(n, n, 0.5, seed)?;
    let lp = cut_lp::solve_cut_lp(&inst)?;
    println!("n = {n}, edges = {}, |M| = {}", inst.edge_count(), inst.matching_size());
    println!("cutting plane: {} after {} rounds with {} cuts", to_pq(&lp.objective), lp.rounds, lp.cuts_used);
    for e in lp.support.iter().copied() {
        let (u, v) = inst.graph().endpoints(e);
        println!("  x[{e}] {u}-{v} {} = {}", if inst.is_light(e) { "light" } else { "heavy" }, to_pq(lp.x.get(e)));
    }
    println!("violated cuts left: {}", cut_lp::violated_cuts(inst.graph(), &lp.x).len());
    if n <= oracle::MAX_ENUMERATION_VERTICES {
        let all = oracle::exact_cut_lp_enumeration(&inst)?;
        println!("all {} cuts listed: {}", (1u64 << (n - 1)) - 1, to_pq(&all));
    }
    Ok(())
}
