//! Quantum counting: estimate |M| from the eigenphase of the Grover operator.

use qalgo::algorithms::qpe::counting_estimate;
use qalgo::algorithms::quantum_counting;

fn main() -> qalgo::Result<()> {
    let (n, m) = (8, 5);
    for size in [1u64, 4, 16, 40] {
        let marked: Vec<u64> = (0..size).map(|i| i * 37 % 256).collect();
        let r = quantum_counting(&marked, n, Some(m), 3)?;
        let top = r.distribution().most_likely();
        println!(
            "|M| = {size:2}: sampled estimate {:6.2}, most likely {:6.2}",
            r.answer,
            counting_estimate(top, n, m)
        );
    }
    Ok(())
}
