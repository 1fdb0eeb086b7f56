use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use qalgo::algorithms::grover::sat_oracle;
use qalgo::algorithms::shor::shor_distribution_given;
use qalgo::algorithms::{bernstein_vazirani, deutsch, grover, qft_circuit, Variant};
use qalgo::circuit::run;
use qalgo::gf2::dot;
use qalgo::oracles::{
    synth_bit_oracle, synth_bv_oracle, synth_bv_phase_oracle, synth_phase_oracle, BooleanExpr, TruthTable,
};
use qalgo::qstate::marginal;
use qalgo::{basis_state, kron, simulate, Circuit, StateVector};

fn minus() -> StateVector {
    StateVector::from_amplitudes(vec![Complex64::new(0.5f64.sqrt(), 0.0), Complex64::new(-(0.5f64.sqrt()), 0.0)])
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bit_oracle_kicks_back_phase(n in 1usize..=5, seed in any::<u64>()) {
        let tt = TruthTable::from_fn(n, 1, |x| (seed.rotate_left(x as u32 * 7) ^ x.wrapping_mul(0x9e37)) & 1).unwrap();
        let oracle = synth_bit_oracle(&tt).unwrap();
        for x in 0..1u64 << n {
            let input = kron(&basis_state(n, x).unwrap(), &minus());
            let out = simulate(&oracle, &input).unwrap();
            let sign = if tt.eval(x) == 1 { -1.0 } else { 1.0 };
            let overlap = input.inner(&out);
            prop_assert!((overlap.re - sign).abs() <= 1e-12 && overlap.im.abs() <= 1e-12);
        }
    }

    #[test]
    fn single_marked_phase_oracle_matches_bit_oracle(n in 1usize..=5, x0 in any::<u64>()) {
        let x0 = x0 % (1 << n);
        let phase = synth_phase_oracle(n, &[x0]).unwrap();
        let bit = synth_bit_oracle(&TruthTable::from_fn(n, 1, |x| (x == x0) as u64).unwrap()).unwrap();
        let d = StateVector::uniform(n).unwrap();
        let via_phase = kron(&simulate(&phase, &d).unwrap(), &minus());
        let via_bit = simulate(&bit, &kron(&d, &minus())).unwrap();
        prop_assert!(via_phase.max_diff(&via_bit) <= 1e-12);
    }

    #[test]
    fn grover_variants_agree(n in 2usize..=6, picks in prop::collection::btree_set(0u64..64, 1..=4), extra in 0u64..3) {
        let marked: Vec<u64> = picks.into_iter().map(|x| x % (1 << n)).collect();
        let t = Some(extra + 1);
        let std = grover(&marked, n, Variant::Standard, t, 0).unwrap();
        let eco = grover(&marked, n, Variant::Economical, t, 0).unwrap();
        prop_assert!(std.distribution().max_abs_diff(eco.distribution()) <= 1e-9);
    }
}

#[test]
fn deutsch_and_bv_variants_agree() {
    for table in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        let tt = TruthTable::new(1, 1, table.to_vec()).unwrap();
        let (a, b) = (deutsch(&tt, false).unwrap(), deutsch(&tt, true).unwrap());
        assert!(a.distribution().max_abs_diff(b.distribution()) <= 1e-9);
    }
    for n in 1..=6usize {
        for s in 0..1u64 << n {
            let a = bernstein_vazirani(&synth_bv_oracle(s, n).unwrap(), n, false).unwrap();
            let b = bernstein_vazirani(&synth_bv_phase_oracle(s, n).unwrap(), n, true).unwrap();
            assert!(a.distribution().max_abs_diff(b.distribution()) <= 1e-9, "n={n} s={s}");
        }
    }
}

#[test]
fn hadamard_layer_expansion() {
    for n in 1..=6usize {
        let mut c = Circuit::new(n);
        c.h_layer(0..n).unwrap();
        let scale = f64::powi(2.0, -(n as i32)).sqrt();
        for x in 0..1u64 << n {
            let out = simulate(&c, &basis_state(n, x).unwrap()).unwrap();
            for y in 0..1u64 << n {
                let want = if dot(x, y) == 1 { -scale } else { scale };
                assert!((out.amplitude(y) - Complex64::new(want, 0.0)).norm() <= 1e-12);
            }
        }
    }
}

fn shor_formula(ell: f64, q: f64, r: f64, c: f64) -> f64 {
    (PI * ell * r * c / q).sin().powi(2) / (q * c * (PI * ell * r / q).sin().powi(2))
}

#[test]
fn shor_distribution_matches_closed_form() {
    for (n_mod, a) in [(15u64, 2u64), (15, 7), (21, 2), (33, 10)] {
        let q = (n_mod * n_mod + 1).next_power_of_two();
        let powers: Vec<u64> = std::iter::successors(Some(1u64), |p| Some(p * a % n_mod)).take(n_mod as usize).collect();
        let r = powers.iter().skip(1).position(|&p| p == 1).unwrap() as u64 + 1;
        for x0 in 0..r {
            let c = (q - x0).div_ceil(r);
            let d = shor_distribution_given(a, n_mod, powers[x0 as usize]).unwrap();
            for ell in 0..q {
                let want =
                    if (ell * r).is_multiple_of(q) { c as f64 / q as f64 } else { shor_formula(ell as f64, q as f64, r as f64, c as f64) };
                assert!((d.probability(ell) - want).abs() <= 1e-9, "N={n_mod} a={a} x0={x0} ℓ={ell}");
            }
        }
        // the continuous form repeats every q/r, checked away from its poles
        let (qf, rf) = (q as f64, r as f64);
        for j in 1..200 {
            let ell = j as f64 / 7.0 + 0.013;
            let (p0, p1) = (shor_formula(ell, qf, rf, 85.0), shor_formula(ell + qf / rf, qf, rf, 85.0));
            assert!((p0 - p1).abs() <= 1e-9 * p0.max(1.0), "N={n_mod} ℓ={ell}");
        }
    }
}

fn tv_check(c: &Circuit, seed: u64) {
    let exact = marginal(&simulate(c, &basis_state(c.num_qubits(), 0).unwrap()).unwrap(), c.measurements().unwrap())
        .unwrap();
    let sampled = run(c, 100_000, seed).unwrap();
    let tv = sampled.total_variation(&exact);
    assert!(tv <= 0.01, "total variation {tv}");
}

#[test]
fn sampled_frequencies_converge() {
    let mut circuits = Vec::new();

    let mut qft = Circuit::new(4);
    qft.x(1).unwrap().h(3).unwrap();
    qft.append_at(&qft_circuit(4).unwrap(), 0).unwrap();
    circuits.push(qft.measure(&[0, 1, 2, 3]).unwrap().clone());

    let bv = synth_bv_oracle(0b10110, 5).unwrap();
    let mut c = Circuit::new(6);
    c.x(5).unwrap().h_layer(0..6).unwrap();
    c.append_at(&bv, 0).unwrap();
    c.h_layer(0..5).unwrap();
    circuits.push(c.measure(&[0, 1, 2, 3, 4]).unwrap().clone());

    use BooleanExpr as E;
    let e = E::or(vec![E::and(vec![E::var(0), E::var(1)]), E::and(vec![E::var(2), E::not(E::var(3))])]);
    let sat = sat_oracle(&e, 4).unwrap();
    let mut c = sat.search_circuit(1).unwrap();
    circuits.push(c.measure(&[0, 1, 2, 3]).unwrap().clone());

    let mut ghz = Circuit::new(3);
    ghz.h(0).unwrap().cx(0, 1).unwrap().cx(1, 2).unwrap();
    circuits.push(ghz.measure(&[0, 1, 2]).unwrap().clone());

    for (seed, c) in circuits.iter().enumerate() {
        tv_check(c, seed as u64);
    }
}
