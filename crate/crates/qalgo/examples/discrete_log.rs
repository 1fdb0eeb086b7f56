//! Discrete logarithm 27^s ≡ 3 (mod 34), where 27 has order 16.

use qalgo::algorithms::qpe_dlog;
use qalgo::algorithms::shor_dlog_pow2;

fn main() -> qalgo::Result<()> {
    for seed in 0..6 {
        let r = shor_dlog_pow2(34, 27, 3, seed)?;
        let o = &r.answer;
        println!("seed {seed}: (r1, r2) = ({:2}, {:2})  s = {:?}", o.r1, o.r2, o.s);
    }
    let p = shor_dlog_pow2(34, 27, 3, 0)?.answer.success_probability;
    println!("exact probability of a usable readout: {p:.3}");

    let q = qpe_dlog(34, 27, 3, 4, 0)?;
    println!("via phase estimation: φ̃ = {}, φ̃′ = {}, s = {:?}", q.answer.phi1, q.answer.phi2, q.answer.s);
    Ok(())
}
