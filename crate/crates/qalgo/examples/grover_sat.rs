//! Grover search over a marked set, then over the satisfying assignments of a formula.

use qalgo::algorithms::grover::sat_oracle;
use qalgo::algorithms::{grover, sat_solve, Variant};
use qalgo::oracles::BooleanExpr as E;

fn main() -> qalgo::Result<()> {
    for n in [2, 4, 6, 8] {
        let r = grover(&[3], n, Variant::Economical, None, 0)?;
        let g = r.answer.geometry;
        println!("n = {n}: t = {}, success {:.4}, found {}", g.iterations, r.answer.success_probability, r.answer.x);
    }

    // a ∧ (c ∨ (¬b ∧ c))
    let e = E::and(vec![E::var(0), E::or(vec![E::var(2), E::and(vec![E::not(E::var(1)), E::var(2)])])]);
    let oracle = sat_oracle(&e, 3)?;
    println!("{e}: oracle uses {} qubits and {} gates", oracle.body.num_qubits(), oracle.body.len());
    let r = sat_solve(&e, 3, None, 1)?;
    for (x, p) in r.distribution().sorted_entries().into_iter().take(3) {
        println!("  {x:03b}  {p:.4}");
    }
    println!("answer {:03b} after {} attempt(s)", r.answer.unwrap_or(0), r.rounds_used);
    Ok(())
}
