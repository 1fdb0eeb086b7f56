//! End-to-end acceptance checks, one test per criterion. Each prints a
//! `PASS`/`FAIL` line before asserting.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qalgo::algorithms::grover::optimal_iterations;
use qalgo::algorithms::qpe::{counting_estimate, grover_operator};
use qalgo::algorithms::shor::{shor_distribution_given, shor_factor, ShorMode};
use qalgo::algorithms::simon::{simon_batch, simon_round_distribution};
use qalgo::algorithms::{
    bernstein_vazirani, crk_decomposition, deutsch, deutsch_jozsa, grover, inverse_qft_circuit, qft_circuit, qpe,
    qpe_order_finding, quantum_counting, sat_solve, shor_dlog_pow2, shor_quantum_part, FunctionKind, QpeUnitary,
    Variant,
};
use qalgo::gates::{phase, rk_phase, Matrix};
use qalgo::gf2::dot;
use num_traits::ToPrimitive;
use qalgo::numtheory::{best_order_candidate, mult_order};
use qalgo::oracles::{
    expr_to_circuit, modexp_oracle, order2_modexp_circuit, synth_bit_oracle, synth_bv_oracle, synth_bv_phase_oracle,
    synth_multi_oracle, synth_phase_oracle, toffoli_ladder, BooleanExpr, TruthTable,
};
use qalgo::{basis_state, simulate, unitary_of, Circuit, Control, StateVector};

/// Collects failed checks so the criterion can report once.
struct Criterion {
    name: &'static str,
    failures: Vec<String>,
    start: Instant,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Self { name, failures: Vec::new(), start: Instant::now() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn within(&mut self, limit: Duration) {
        let spent = self.start.elapsed();
        self.check(spent <= limit, || format!("took {spent:?}, limit {limit:?}"));
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("PASS {}", self.name);
        } else {
            println!("FAIL {}", self.name);
            for f in &self.failures {
                println!("  {f}");
            }
            panic!("{}: {} check(s) failed", self.name, self.failures.len());
        }
    }
}

fn mod_pow_u64(a: u64, e: u64, n: u64) -> u64 {
    (0..e).fold(1 % n, |acc, _| acc * a % n)
}

fn small(b: &num_bigint::BigUint) -> u64 {
    b.to_u64().unwrap()
}

fn permutation_matrix(width: usize, f: impl Fn(u64) -> u64) -> Matrix {
    let dim = 1usize << width;
    let mut m = Matrix::zeros(dim, dim);
    for x in 0..dim {
        m[(f(x as u64) as usize, x)] = Complex64::new(1.0, 0.0);
    }
    m
}

fn max_err(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn c01_deterministic_algorithms() {
    let mut c = Criterion::new("1 deterministic algorithms");
    for (table, want) in [
        ([0, 0], FunctionKind::Constant),
        ([0, 1], FunctionKind::Balanced),
        ([1, 0], FunctionKind::Balanced),
        ([1, 1], FunctionKind::Constant),
    ] {
        let tt = TruthTable::new(1, 1, table.to_vec()).unwrap();
        for economical in [false, true] {
            let r = deutsch(&tt, economical).unwrap();
            let bit = table[0] ^ table[1];
            c.check(r.answer == want, || format!("deutsch {table:?}: {:?}", r.answer));
            let p = r.distribution().probability(bit);
            c.check((p - 1.0).abs() <= 1e-9, || format!("deutsch {table:?} p = {p}"));
        }
    }

    // every 2-bit function with 0, 2 or 4 ones
    for mask in 0u64..16 {
        let ones = mask.count_ones();
        if ones % 2 == 1 {
            continue;
        }
        let tt = TruthTable::from_fn(2, 1, |x| (mask >> x) & 1).unwrap();
        let r = deutsch_jozsa(&synth_bit_oracle(&tt).unwrap(), 2).unwrap();
        let (want, p) = if ones == 2 {
            (FunctionKind::Balanced, 1.0 - r.distribution().probability(0))
        } else {
            (FunctionKind::Constant, r.distribution().probability(0))
        };
        c.check(r.answer == want, || format!("dj mask {mask:04b}: {:?}", r.answer));
        c.check((p - 1.0).abs() <= 1e-9, || format!("dj mask {mask:04b}: p = {p}"));
    }
    let worked = TruthTable::from_fn(3, 1, |x| [0b001, 0b011, 0b110, 0b111].contains(&x) as u64).unwrap();
    let r = deutsch_jozsa(&synth_bit_oracle(&worked).unwrap(), 3).unwrap();
    c.check(r.answer == FunctionKind::Balanced, || "3-bit worked oracle".into());
    c.check(r.distribution().probability(0) <= 1e-9, || "3-bit worked oracle p(000)".into());

    for n in 1..=6usize {
        for s in 0..1u64 << n {
            let std = bernstein_vazirani(&synth_bv_oracle(s, n).unwrap(), n, false).unwrap();
            let eco = bernstein_vazirani(&synth_bv_phase_oracle(s, n).unwrap(), n, true).unwrap();
            for (r, kind) in [(std, "standard"), (eco, "economical")] {
                let p = r.distribution().probability(s);
                c.check(r.answer == s && (p - 1.0).abs() <= 1e-9, || format!("bv {kind} n={n} s={s}: p = {p}"));
            }
        }
    }
    c.within(Duration::from_secs(1));
    c.finish();
}

/// A random two-to-one function with `f(x) = f(x ⊕ s)`.
fn simon_function(n: usize, s: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut labels: Vec<u64> = (0..1u64 << n).collect();
    labels.shuffle(rng);
    let mut f = vec![0; 1 << n];
    let mut next = 0;
    for x in 0..1u64 << n {
        if x < x ^ s {
            f[x as usize] = labels[next];
            f[(x ^ s) as usize] = labels[next];
            next += 1;
        }
    }
    f
}

#[test]
fn c02_simon() {
    let mut c = Criterion::new("2 simon");
    let batches = 2000usize;
    for n in 3..=5usize {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let mut hits = 0usize;
        for k in 0..20 {
            let s = rng.gen_range(1..1u64 << n);
            let f = simon_function(n, s, &mut rng);
            let oracle = synth_multi_oracle(&TruthTable::new(n, n, f.clone()).unwrap()).unwrap();
            let round = simon_round_distribution(&oracle, n).unwrap();
            let support: BTreeSet<u64> = round.support(1e-12).into_iter().collect();
            let want: BTreeSet<u64> = (0..1u64 << n).filter(|&x| dot(x, s) == 0).collect();
            c.check(support == want, || format!("n={n} s={s:b}: support {support:?}"));
            for _ in 0..batches / 20 + usize::from(k < batches % 20) {
                let b = simon_batch(&round, n, |x| f[x as usize], &mut rng).unwrap();
                hits += usize::from(b.candidate == Some(s));
            }
        }
        let freq = hits as f64 / batches as f64;
        // n−1 uniform draws from the (n−1)-dimensional space orthogonal to s
        let exact: f64 = (0..n - 1).map(|i| 1.0 - 2f64.powi(i as i32 - (n as i32 - 1))).product();
        let sigma = (exact * (1.0 - exact) / batches as f64).sqrt();
        c.check((freq - exact).abs() <= 3.0 * sigma, || format!("n={n}: frequency {freq} vs exact {exact}"));
        let bound = 0.5 + 1.0 / f64::powi(2.0, n as i32);
        let slack = 3.0 * (bound * (1.0 - bound) / batches as f64).sqrt();
        c.check(freq >= 0.5, || format!("n={n}: batch frequency {freq:.4} < 1/2"));
        c.check(freq >= bound - slack, || format!("n={n}: batch frequency {freq:.4} < {:.4}", bound - slack));
    }
    c.within(Duration::from_secs(30));
    c.finish();
}

/// `p(ℓ)` given the offset's count `c` of exponents congruent to it mod `r`.
fn shor_formula(ell: u64, q: u64, r: u64, c: u64) -> f64 {
    let (q, r, c) = (q as f64, r as f64, c as f64);
    if (ell * r as u64).is_multiple_of(q as u64) {
        return c / q;
    }
    let num = (PI * ell as f64 * r * c / q).sin().powi(2);
    let den = q * c * (PI * ell as f64 * r / q).sin().powi(2);
    num / den
}

#[test]
fn c03_shor_distribution() {
    let mut c = Criterion::new("3 shor distribution");
    let (n_mod, a, q, r) = (21u64, 2u64, 512u64, 6u64);
    for x0 in 0..r {
        let z = mod_pow_u64(a, x0, n_mod);
        let count = (q - x0).div_ceil(r);
        let d = shor_distribution_given(a, n_mod, z).unwrap();
        let worst = (0..q).map(|l| (d.probability(l) - shor_formula(l, q, r, count)).abs()).fold(0.0, f64::max);
        c.check(worst <= 1e-9, || format!("z={z}: branchwise error {worst:e}"));
    }

    let d = shor_distribution_given(a, n_mod, 4).unwrap();
    let p = |l: u64| d.probability(l % q);
    let maxima: Vec<u64> = (0..q).filter(|&l| p(l) > p(l + q - 1) && p(l) > p(l + 1)).collect();
    c.check(maxima == [0, 85, 171, 256, 341, 427], || format!("local maxima {maxima:?}"));

    let peaks: Vec<u64> = (0..r).map(|k| (2 * k * q + r) / (2 * r)).collect();
    let total: f64 = peaks.iter().map(|&l| p(l)).sum();
    c.check(total >= 3.0 / (PI * PI), || format!("peak mass {total}"));
    let floor = 4.0 / (PI * PI * r as f64) * (1.0 - 1.0 / n_mod as f64);
    for &l in &peaks {
        c.check(p(l) > floor, || format!("p({l}) = {} ≤ {floor}", p(l)));
    }
    c.within(Duration::from_secs(10));
    c.finish();
}

#[test]
fn c04_shor_end_to_end() {
    let mut c = Criterion::new("4 shor end-to-end");
    let bound = 2.0 * 16.0 * PI * PI * 7f64.ln().ln() / 9.0;
    for n_mod in [15u64, 21] {
        let mut rounds = 0u64;
        let mut quantum_successes = 0u64;
        for seed in 0..50 {
            let r = shor_factor(n_mod, ShorMode::LasVegas, seed, 32).unwrap();
            let f = r.answer.factor;
            c.check(matches!(f, Some(p) if p > 1 && p < n_mod && n_mod % p == 0), || {
                format!("N={n_mod} seed={seed}: {f:?}")
            });
            if r.answer.shortcut.is_none() {
                rounds += r.rounds_used;
                quantum_successes += 1;
            }
        }
        let mean = rounds as f64 / quantum_successes.max(1) as f64;
        println!("  N={n_mod}: {quantum_successes} quantum successes, mean rounds {mean:.2}");
        c.check(mean <= bound, || format!("N={n_mod}: mean rounds {mean:.2} > {bound:.2}"));
    }
    c.within(Duration::from_secs(120));
    c.finish();
}

#[test]
fn c05_continued_fractions() {
    let mut c = Criterion::new("5 continued fractions");
    let got = |l: u64| best_order_candidate(l, 512u64, 21u64).unwrap().map(|b| small(&b));
    c.check(got(85) == Some(6), || format!("85/512 → {:?}", got(85)));
    c.check(got(171) == Some(3), || format!("171/512 → {:?}", got(171)));

    for n_mod in 2u64..=64 {
        let q = (n_mod * n_mod + 1).next_power_of_two();
        for a in (1..n_mod).filter(|&a| num_integer::gcd(a, n_mod) == 1) {
            let r = small(&mult_order(a, n_mod).unwrap());
            if r == 1 {
                continue;
            }
            for k in (1..r).filter(|&k| num_integer::gcd(k, r) == 1) {
                // both roundings of kq/r when it sits on a half
                let twice = 2 * k * q;
                let mut ells = vec![(twice + r) / (2 * r)];
                if (twice + r).is_multiple_of(2 * r) {
                    ells.push(ells[0] - 1);
                }
                for ell in ells {
                    let cand = best_order_candidate(ell, q, n_mod).unwrap().map(|b| small(&b));
                    c.check(cand == Some(r), || format!("N={n_mod} a={a} k={k}: ℓ={ell} → {cand:?}, r={r}"));
                }
            }
        }
    }
    c.finish();
}

#[test]
fn c06_discrete_log() {
    let mut c = Criterion::new("6 discrete log");
    let mut coprime_seen = 0;
    for seed in 0..64 {
        let r = shor_dlog_pow2(34, 27, 3, seed).unwrap();
        let o = &r.answer;
        let p = o.success_probability;
        c.check((p - 0.5).abs() <= 1e-9, || format!("success probability {p}"));
        if num_integer::gcd(o.r1, 16) == 1 {
            coprime_seen += 1;
            c.check(o.s == Some(11), || format!("seed {seed}: r1={} r2={} s={:?}", o.r1, o.r2, o.s));
        }
    }
    c.check(coprime_seen > 0, || "no seed gave an odd r1".into());
    c.finish();
}

#[test]
fn c07_grover() {
    let mut c = Criterion::new("7 grover");
    for n in 2..=10usize {
        let big_n = 1u64 << n;
        let r = grover(&[big_n / 3], n, Variant::Economical, None, 0).unwrap();
        let p = r.answer.success_probability;
        c.check(p >= 1.0 - 1.0 / big_n as f64, || format!("n={n}: success {p}"));
        if n == 2 {
            c.check((p - 1.0).abs() <= 1e-9, || format!("n=2: success {p}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for n in 2..=10usize {
        for m in 1..=4u64.min((1 << n) / 2) {
            let mut all: Vec<u64> = (0..1u64 << n).collect();
            all.shuffle(&mut rng);
            let marked = &all[..m as usize];
            for variant in [Variant::Standard, Variant::Economical] {
                if variant == Variant::Standard && n > 8 {
                    continue;
                }
                let t = optimal_iterations(n, m);
                for t in [t, t + 1] {
                    let r = grover(marked, n, variant, Some(t), 0).unwrap();
                    let (sim, want) = (r.answer.success_probability, r.answer.geometry.predicted_success);
                    let theta = 2.0 * ((m as f64) / (1u64 << n) as f64).sqrt().asin();
                    let closed = (((2 * t + 1) as f64) * theta / 2.0).sin().powi(2);
                    c.check((sim - closed).abs() <= 1e-9 && (want - closed).abs() <= 1e-12, || {
                        format!("n={n} m={m} t={t} {variant:?}: simulated {sim}, closed form {closed}")
                    });
                }
            }
        }
    }

    use BooleanExpr as E;
    let formula = E::and(vec![E::var(0), E::or(vec![E::var(2), E::and(vec![E::not(E::var(1)), E::var(2)])])]);
    let r = sat_solve(&formula, 3, None, 5).unwrap();
    let d = r.distribution();
    let p = d.probability(0b101) + d.probability(0b111);
    c.check((p - 1.0).abs() <= 1e-9, || format!("SAT mass on 101, 111: {p}"));
    c.check(matches!(r.answer, Some(0b101 | 0b111)), || format!("SAT answer {:?}", r.answer));
    c.finish();
}

fn dft(n: usize) -> Matrix {
    let q = 1usize << n;
    Matrix::from_fn(q, q, |k, l| {
        Complex64::from_polar(1.0 / (q as f64).sqrt(), 2.0 * PI * ((k * l) % q) as f64 / q as f64)
    })
}

#[test]
fn c08_qft() {
    let mut c = Criterion::new("8 qft");
    for n in 1..=8usize {
        let err = max_err(&unitary_of(&qft_circuit(n).unwrap()).unwrap(), &dft(n));
        c.check(err <= 1e-10, || format!("n={n}: QFT error {err:e}"));
        let err = max_err(&unitary_of(&inverse_qft_circuit(n).unwrap()).unwrap(), &dft(n).adjoint());
        c.check(err <= 1e-10, || format!("n={n}: inverse QFT error {err:e}"));
    }
    for n in 1..=16usize {
        let len = qft_circuit(n).unwrap().len();
        c.check(len == n * (n + 1) / 2 + n / 2, || format!("n={n}: {len} gates"));
    }
    for k in 1..=10u32 {
        let mut direct = Circuit::new(2);
        direct.controlled(rk_phase(k), &[1], &[Control::pos(0)]).unwrap();
        let err = max_err(&unitary_of(&crk_decomposition(k).unwrap()).unwrap(), &unitary_of(&direct).unwrap());
        c.check(err <= 1e-12, || format!("k={k}: C(R_k) error {err:e}"));
    }
    c.finish();
}

#[test]
fn c09_qpe() {
    let mut c = Criterion::new("9 qpe");
    let one = basis_state(1, 1).unwrap();
    for m in 1..=8usize {
        for j in 0..1u64 << m {
            let u = QpeUnitary::Gate(phase(2.0 * PI * j as f64 / (1u64 << m) as f64));
            let r = qpe(&u, &one, m, j).unwrap();
            let p = r.distribution().probability(j);
            c.check((p - 1.0).abs() <= 1e-9 && r.answer == j, || format!("m={m} j={j}: p = {p}"));
        }
    }
    for (n_mod, a) in [(21u64, 2u64), (15, 7)] {
        let via_qpe = qpe_order_finding(a, n_mod, 0).unwrap();
        let via_shor = shor_quantum_part(a, n_mod, 0).unwrap();
        let diff = via_qpe.distribution().max_abs_diff(via_shor.distribution());
        c.check(diff <= 1e-9, || format!("(N, a) = ({n_mod}, {a}): distributions differ by {diff:e}"));
    }
    c.finish();
}

/// Worst `||M̃| − |M|| / √|M|` over the most probable readouts, swept by brute force.
const COUNTING_C: f64 = 1.53;

#[test]
fn c10_counting() {
    let mut c = Criterion::new("10 counting");
    let r = quantum_counting(&[1, 2], 2, Some(2), 0).unwrap();
    c.check((r.answer - 2.0).abs() <= 1e-9, || format!("dyadic case: {}", r.answer));

    let (n, m) = (8usize, 5usize);
    for size in [4u64, 16] {
        let marked: Vec<u64> = (0..size).map(|i| i * 13 % 256).collect();
        let r = quantum_counting(&marked, n, Some(m), 0).unwrap();
        let top = r.distribution().most_likely();
        let estimate = counting_estimate(top, n, m);
        let err = (estimate - size as f64).abs();
        let allowed = COUNTING_C * (size as f64).sqrt();
        c.check(err <= allowed, || format!("|M|={size}: estimate {estimate:.3}, error {err:.3} > {allowed:.3}"));
        // the phase estimation input is |d⟩ and the operator is a proper unitary
        let g = grover_operator(&marked, n).unwrap();
        let s = qpe(&QpeUnitary::Gate(g), &StateVector::uniform(n).unwrap(), m, 0).unwrap();
        c.check(s.distribution().max_abs_diff(r.distribution()) <= 1e-12, || "counting is not plain QPE".into());
    }
    c.finish();
}

#[test]
fn c11_oracle_synthesis() {
    let mut c = Criterion::new("11 oracle synthesis");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut xor_form: Vec<(String, Circuit)> = Vec::new();

    let mut tables: Vec<TruthTable> = Vec::new();
    for n_in in 1..=3usize {
        for _ in 0..6 {
            tables.push(TruthTable::from_fn(n_in, 1, |_| rng.gen_range(0..2)).unwrap());
        }
    }
    for (n_in, n_out) in [(2usize, 2usize), (3, 3), (4, 4), (5, 5), (4, 2)] {
        for _ in 0..3 {
            tables.push(TruthTable::from_fn(n_in, n_out, |_| rng.gen_range(0..1 << n_out)).unwrap());
        }
    }
    for tt in &tables {
        let (n_in, n_out) = (tt.n_in(), tt.n_out());
        let circ = if n_out == 1 { synth_bit_oracle(tt).unwrap() } else { synth_multi_oracle(tt).unwrap() };
        let want = permutation_matrix(n_in + n_out, |x| x ^ tt.eval(x >> n_out));
        let err = max_err(&unitary_of(&circ).unwrap(), &want);
        c.check(err == 0.0, || format!("table {n_in}→{n_out}: error {err:e}"));
        xor_form.push((format!("table {n_in}→{n_out}"), circ));
    }

    for n in 1..=6usize {
        for s in [0u64, 1, (1 << n) - 1, rng.gen_range(0..1 << n)] {
            let circ = synth_bv_oracle(s, n).unwrap();
            let want = permutation_matrix(n + 1, |x| x ^ dot(x >> 1, s));
            let err = max_err(&unitary_of(&circ).unwrap(), &want);
            c.check(err == 0.0, || format!("bv n={n} s={s}: error {err:e}"));
            xor_form.push((format!("bv n={n} s={s}"), circ));

            let phase_circ = synth_bv_phase_oracle(s, n).unwrap();
            let want = Matrix::from_fn(1 << n, 1 << n, |i, j| {
                let sign = if dot(i as u64, s) == 1 { -1.0 } else { 1.0 };
                Complex64::new(if i == j { sign } else { 0.0 }, 0.0)
            });
            let err = max_err(&unitary_of(&phase_circ).unwrap(), &want);
            c.check(err <= 1e-12, || format!("bv phase n={n} s={s}: error {err:e}"));
        }
    }

    for n in 1..=6usize {
        let marked: Vec<u64> = (0..1u64 << n).filter(|_| rng.gen_bool(0.3)).collect();
        let want = Matrix::from_fn(1 << n, 1 << n, |i, j| {
            let sign = if marked.contains(&(i as u64)) { -1.0 } else { 1.0 };
            Complex64::new(if i == j { sign } else { 0.0 }, 0.0)
        });
        let err = max_err(&unitary_of(&synth_phase_oracle(n, &marked).unwrap()).unwrap(), &want);
        c.check(err <= 1e-12, || format!("phase n={n}: error {err:e}"));
    }

    for n in 3..=5usize {
        let ladder = toffoli_ladder(n).unwrap();
        let width = 2 * n - 1;
        let bit = |x: u64, q: usize| (x >> (width - 1 - q)) & 1;
        let want = permutation_matrix(width, |x| {
            let all = ladder.controls.iter().all(|&q| bit(x, q) == 1);
            x ^ (u64::from(all) << (width - 1 - ladder.target))
        });
        let u = unitary_of(&ladder.circuit).unwrap();
        // the ladder is exact on the subspace with clean ancillas
        let clean = |x: usize| ladder.ancillas.iter().all(|&q| bit(x as u64, q) == 0);
        let err = (0..1usize << width)
            .filter(|&x| clean(x))
            .flat_map(|x| (0..1usize << width).map(move |y| (y, x)))
            .map(|(y, x)| (u[(y, x)] - want[(y, x)]).norm())
            .fold(0.0, f64::max);
        c.check(err == 0.0, || format!("ladder n={n}: error {err:e}"));
        xor_form.push((format!("ladder n={n}"), ladder.circuit.clone()));
    }

    for (a, n_mod) in [(2u64, 3u64), (4, 5), (6, 7)] {
        let circ = order2_modexp_circuit(a, n_mod).unwrap();
        let width = circ.num_qubits();
        let n = qalgo::numtheory::ceil_log2(n_mod) as usize;
        let want = permutation_matrix(width, |x| x ^ mod_pow_u64(a, x >> n, n_mod));
        let err = max_err(&unitary_of(&circ).unwrap(), &want);
        c.check(err == 0.0, || format!("order-2 modexp a={a} N={n_mod}: error {err:e}"));
        let perm = modexp_oracle(a, n_mod, 1 << (width - n)).unwrap();
        c.check(perm.to_matrix().unwrap() == want, || format!("modexp permutation a={a} N={n_mod}"));
        c.check(perm.is_involution(), || format!("modexp a={a} N={n_mod} is not an involution"));
        xor_form.push((format!("order-2 modexp a={a} N={n_mod}"), circ));
    }

    use BooleanExpr as E;
    let (a, b, cc, d) = (E::var(0), E::var(1), E::var(2), E::var(3));
    let exprs = vec![
        E::and(vec![a.clone(), E::or(vec![cc.clone(), E::and(vec![E::not(b.clone()), cc.clone()])])]),
        E::or(vec![E::and(vec![a.clone(), b.clone()]), E::and(vec![cc.clone(), d.clone()])]),
        E::xor(vec![a.clone(), E::not(b.clone()), cc.clone()]),
        E::not(E::or(vec![a.clone(), b.clone(), E::not(cc.clone())])),
        E::and(vec![E::xor(vec![a.clone(), b.clone()]), E::or(vec![E::not(cc.clone()), d.clone()])]),
        E::and(vec![a.clone(), E::not(a.clone())]),
    ];
    for e in &exprs {
        let n_vars = e.max_var().map_or(1, |v| v + 1);
        let ec = expr_to_circuit(e, n_vars, true).unwrap();
        let width = ec.circuit.num_qubits();
        if width > 10 {
            continue;
        }
        let mut restored = true;
        for x in 0..1u64 << n_vars {
            let out = simulate(&ec.circuit, &ec.initial_state(x).unwrap()).unwrap();
            let start = ec.initial_index(x);
            // every ancilla back at its initial value except the result, which holds e(x)
            let want = if ec.result_qubit < n_vars {
                start
            } else {
                let bit = 1u64 << (width - 1 - ec.result_qubit);
                if e.eval(x, n_vars) { start | bit } else { start & !bit }
            };
            restored &= (out.amplitude(want).re - 1.0).abs() <= 1e-12;
        }
        c.check(restored, || format!("{e}: ancillas not restored"));
        if ec.result_qubit < n_vars {
            c.check((0..1u64 << n_vars).all(|x| e.eval(x, n_vars) == ((x >> (n_vars - 1 - ec.result_qubit)) & 1 == 1)), || {
                format!("{e}: passthrough variable wrong")
            });
        }
        xor_form.push((format!("{e}"), ec.circuit.clone()));
    }

    for (label, circ) in &xor_form {
        let u = unitary_of(circ).unwrap();
        let square = &u * &u;
        let err = max_err(&square, &Matrix::identity(u.nrows(), u.ncols()));
        c.check(err == 0.0, || format!("{label}: not an involution ({err:e})"));
    }
    c.finish();
}
