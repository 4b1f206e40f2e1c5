//! Inspect the extreme point the LP returns: its tight constraint basis,
//! fractional edges and the vertices touching many of them.
//!
//! `cargo run --example extreme_point_structure -- [seed]`

use map_core::cut_lp;
use map_core::rational::{ratio, to_pq};
use map_core::toolkit::generators::gen_random_instance;

fn main() -> map_core::Result<()> {
    let seed = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(0);
    // Look for an instance whose extreme point is fractional.
    let (inst, lp) = (seed..seed + 500)
        .map(|s| {
            let inst = gen_random_instance(10, 12, 0.6, s).expect("valid generator input");
            let lp = cut_lp::solve_cut_lp(&inst).expect("generated instances are feasible");
            (inst, lp)
        })
        .find(|(_, lp)| !cut_lp::fractional_edges(&lp.x).is_empty())
        .expect("some seed gives a fractional extreme point");
    let n = inst.vertex_count();
    let frac = cut_lp::fractional_edges(&lp.x);
    println!("objective {}, {} fractional edges (at most {})", to_pq(&lp.objective), frac.len(), 2 * n - 1);
    for e in &frac {
        println!("  x[{e}] = {}", to_pq(lp.x.get(*e)));
    }
    let cert = &lp.basis_certificate;
    println!(
        "basis: {} tight cuts, {} edges at 0, {} at 1, rank {} of {}",
        cert.cuts.len(),
        cert.at_zero.len(),
        cert.at_one.len(),
        cert.rank(inst.graph()),
        inst.edge_count()
    );
    println!("all tight at x*: {}", cert.holds_at_equality(inst.graph(), &lp.x));
    for alpha in [ratio(1, 2), ratio(1, 4), ratio(1, 8)] {
        let verts = cut_lp::alpha_fractional_vertices(inst.graph(), &lp.x, &alpha)?;
        println!("alpha = {}: {:?}", to_pq(&alpha), verts);
    }
    Ok(())
}
