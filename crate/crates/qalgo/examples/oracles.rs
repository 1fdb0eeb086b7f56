//! Building oracles: truth tables, expressions with ancillas, Toffoli ladders, modular arithmetic.

use qalgo::oracles::{
    expr_to_circuit, modmul_oracle, order2_modexp_circuit, synth_multi_oracle, toffoli_ladder, BooleanExpr as E,
    TruthTable,
};

fn main() -> qalgo::Result<()> {
    let tt = TruthTable::parse("# f(x) = x xor 101\n000 101\n001 100\n010 111\n011 110\n100 001\n101 000\n110 011\n111 010\n")?;
    let c = synth_multi_oracle(&tt)?;
    println!("truth table oracle: {} gates on {} qubits", c.len(), c.num_qubits());

    let e = E::or(vec![E::and(vec![E::var(0), E::var(1)]), E::and(vec![E::var(2), E::not(E::var(3))])]);
    let ec = expr_to_circuit(&e, 4, true)?;
    println!(
        "{e}: {} gates, {} ancillas starting at {:?}, result on qubit {}",
        ec.circuit.len(),
        ec.ancilla_count,
        ec.ancilla_init,
        ec.result_qubit
    );

    let ladder = toffoli_ladder(5)?;
    println!("C⁵(X) ladder: {} Toffolis, ancillas {:?}", ladder.circuit.len(), ladder.ancillas);

    let u = modmul_oracle(2, 21)?;
    println!("y → 2y mod 21 squared four times equals y → 16y: {}", u.pow2(4) == modmul_oracle(16, 21)?);

    let c = order2_modexp_circuit(4, 15)?;
    println!("gate-level 4^x mod 15: {} gates on {} qubits", c.len(), c.num_qubits());
    Ok(())
}
