//! The acceptance gate: every verified claim in one place, one printed
//! pass/fail line per criterion.  Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tsnorm::experiments::{self, ExperimentOpts};
use tsnorm::scalar::{Scalar, ScalarMode};
use tsnorm::spaces::SeqSpace;
use tsnorm::vector::SparseVector;

/// Wall-clock budgets assume an optimized build; debug builds get slack.
fn budget(seconds: f64) -> f64 {
    if cfg!(debug_assertions) {
        seconds * 20.0
    } else {
        seconds
    }
}

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        if ok {
            println!("PASS  {name}: {detail}");
        } else {
            println!("FAIL  {name}: {detail}");
            self.failures.push(name.to_string());
        }
    }

    fn experiment(&mut self, name: &str, max_seconds: f64) {
        let started = Instant::now();
        let report = experiments::run(name, &ExperimentOpts::default())
            .unwrap_or_else(|e| panic!("{name} failed to run: {e}"));
        let elapsed = started.elapsed().as_secs_f64();
        let cells = report.cells.len();
        let failed: Vec<String> = report.failing().map(|c| c.id.clone()).collect();
        let within_budget = elapsed <= budget(max_seconds);
        self.check(
            name,
            failed.is_empty() && within_budget,
            format!(
                "{cells} cells, failing {failed:?}, {elapsed:.2}s (budget {:.0}s)",
                budget(max_seconds)
            ),
        );
    }
}

#[test]
fn acceptance() {
    let mut gate = Gate {
        failures: Vec::new(),
    };

    // 1. constant vectors in Y hit sqrt(n)/2 for n in 4..=40, within 1e-9
    gate.experiment("lemma34", 60.0);
    // 2. exact two-row staircase limits 13/8 vs 7/4, separation 1/8
    gate.experiment("thm43", 10.0);
    // 3. k-functionals of z_n approach 1/2 from above, monotonically
    gate.experiment("eq41", 30.0);
    // 4. k-functionals of the spiky vectors stay <= 3/4, exactly
    gate.experiment("eq42", 30.0);
    // 5. grid-space values 3^(1/4) vs 1 and their ratio
    gate.experiment("xk-asymmetry", 30.0);
    // 6. two normalized Y vectors whose sum is far below 2
    gate.experiment("thm32-c0", 60.0);
    // 7. block-rearrangement lower bound and group-norm closed forms in S
    gate.experiment("schlumprecht-order", 30.0);
    // 8. 200 seeded vectors, zero violations of the three inequalities
    gate.experiment("facts12", 60.0);
    // 9. interval DP == exhaustive subset enumeration on 100 seeded vectors
    gate.experiment("oracle-wlog", 60.0);
    // 10. algebraic invariants over seeded random inputs
    property_suite(&mut gate);

    assert!(
        gate.failures.is_empty(),
        "acceptance failures: {:?}",
        gate.failures
    );
}

fn random_exact(rng: &mut ChaCha8Rng) -> SparseVector {
    let support = rng.gen_range(1..=7usize);
    SparseVector::from_entries(
        ScalarMode::Exact,
        (0..support).map(|_| {
            (
                rng.gen_range(1..=30u64),
                Scalar::ratio(rng.gen_range(-6..=6i64), rng.gen_range(1..=6i64)).unwrap(),
            )
        }),
    )
    .unwrap()
}

fn remap(x: &SparseVector, map: impl Fn(usize, u64) -> u64) -> SparseVector {
    SparseVector::from_entries(
        x.mode(),
        x.support()
            .enumerate()
            .map(|(pos, i)| (map(pos, i), x.coeff(i))),
    )
    .unwrap()
}

fn property_suite(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let minus_one = Scalar::int(-1);
    let mut violations: Vec<String> = Vec::new();
    let mut cases = 0usize;
    for trial in 0..60 {
        let x = random_exact(&mut rng);
        if x.is_zero() {
            continue;
        }
        cases += 1;
        let xf = x.to_float_mode();

        // 1-unconditionality: exact in T, 1e-9 in S and Y
        let flipped = SparseVector::from_entries(
            ScalarMode::Exact,
            x.support().map(|i| {
                let c = x.coeff(i);
                if rng.gen_bool(0.5) {
                    (i, c.try_mul(&minus_one).unwrap())
                } else {
                    (i, c)
                }
            }),
        )
        .unwrap();
        let t = tsnorm::tsirelson_norm(&x);
        if t.value != tsnorm::tsirelson_norm(&flipped).value {
            violations.push(format!("unconditionality/T trial {trial}"));
        }
        for space in [SeqSpace::Schlumprecht, SeqSpace::Tzafriri] {
            let a = space.norm(&xf).unwrap().value.to_f64();
            let b = space.norm(&flipped.to_float_mode()).unwrap().value.to_f64();
            if (a - b).abs() > 1e-9 {
                violations.push(format!("unconditionality/{space:?} trial {trial}"));
            }
        }

        // subsymmetry of S and Y: spread the support, keep the order
        let base: u64 = rng.gen_range(1..=50);
        let mut offsets = Vec::new();
        let mut acc = base;
        for _ in 0..x.support_len() {
            acc += rng.gen_range(1..=9u64);
            offsets.push(acc);
        }
        let spread = remap(&xf, |pos, _| offsets[pos]);
        for space in [SeqSpace::Schlumprecht, SeqSpace::Tzafriri] {
            let a = space.norm(&xf).unwrap().value.to_f64();
            let b = space.norm(&spread).unwrap().value.to_f64();
            if (a - b).abs() > 1e-9 {
                violations.push(format!("subsymmetry/{space:?} trial {trial}"));
            }
        }

        // T right-shift monotonicity
        let shift = rng.gen_range(1..=15u64);
        let shifted = remap(&x, |_, i| i + shift);
        if tsnorm::tsirelson_norm(&shifted).value.to_f64() < t.value.to_f64() - 1e-12 {
            violations.push(format!("right-shift trial {trial}"));
        }

        // homogeneity, exact
        let c = Scalar::ratio(rng.gen_range(-5..=5i64), rng.gen_range(1..=5i64)).unwrap();
        let abs_c = if c.to_f64() < 0.0 {
            c.try_mul(&minus_one).unwrap()
        } else {
            c.clone()
        };
        let scaled = x.scale(&c).unwrap();
        if tsnorm::tsirelson_norm(&scaled).value != t.value.try_mul(&abs_c).unwrap() {
            violations.push(format!("homogeneity trial {trial}"));
        }

        // witness replay
        if t.witness.clone().unwrap().replay(&x).unwrap() != t.value {
            violations.push(format!("witness-replay/T trial {trial}"));
        }
        for space in [SeqSpace::Schlumprecht, SeqSpace::Tzafriri] {
            let r = space.norm(&xf).unwrap();
            let replayed = r.witness.unwrap().replay(&xf).unwrap().to_f64();
            if (replayed - r.value.to_f64()).abs() > 1e-12 {
                violations.push(format!("witness-replay/{space:?} trial {trial}"));
            }
        }
    }
    gate.check(
        "property-suite",
        violations.is_empty() && cases >= 50,
        format!("{cases} seeded cases, violations {violations:?}"),
    );
}
