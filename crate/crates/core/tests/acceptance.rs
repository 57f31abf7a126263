//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Expected values are computed here from elementary number
//! theory, never from the engine.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use leech_core::abelian::{AbGroup, AbHom, IntMatrix};
use leech_core::complex::{
    comparison_report, complex_homology, hom_complex_fast, hom_complex_oracle, tensor_complex_fast,
    tensor_complex_oracle,
};
use leech_core::engine::{
    closed_form, cohomology, cohomology_ordinary, homology, homology_ordinary,
    index_independence_check, oracle_check, periodicity_check,
};
use leech_core::module::{random_module, LeechModule, Side, SizeBounds};
use leech_core::monoid::CyclicMonoid;
use leech_core::resolution::Resolution;
use leech_core::trace::{lemma_report, s_left, s_right, trace_left, trace_right};
use num_integer::Integer;

struct Outcome {
    failures: Vec<String>,
    checks: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            checks: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn mono(m: usize, q: usize) -> CyclicMonoid {
    CyclicMonoid::new(m, q).expect("admissible monoid")
}

/// Every `C_{m,q}` with `2 ≤ m + q ≤ max_order`.
fn monoids_up_to(max_order: usize) -> Vec<CyclicMonoid> {
    (2..=max_order)
        .flat_map(|n| (0..n).map(move |m| mono(m, n - m)))
        .collect()
}

fn cyclic(d: u64) -> AbGroup {
    if d == 1 {
        AbGroup::trivial()
    } else {
        AbGroup::cyclic(d)
    }
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    for (m, q) in [(0, 5), (1, 2), (2, 9), (3, 4)] {
        let c = mono(m, q);
        let a = LeechModule::constant_z(c, Side::Left);
        let b = LeechModule::constant_z(c, Side::Right);
        for n in 0..=12 {
            let up = match n {
                0 => AbGroup::integers(),
                n if n % 2 == 1 => AbGroup::trivial(),
                _ => cyclic(q as u64),
            };
            let down = match n {
                0 => AbGroup::integers(),
                n if n % 2 == 1 => cyclic(q as u64),
                _ => AbGroup::trivial(),
            };
            let h = cohomology(&a, n).expect("left module");
            out.check(h == up, || format!("{c} H^{n} = {h}, expected {up}"));
            let h = homology(&b, n).expect("right module");
            out.check(h == down, || format!("{c} H_{n} = {h}, expected {down}"));
        }
    }
    out
}

fn criterion_2_bounds() -> SizeBounds {
    SizeBounds {
        max_free_rank: 2,
        max_torsion_coords: 2,
        max_torsion_order: 6,
        max_blocks: 3,
        max_group_rank: Some(2),
    }
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let bounds = criterion_2_bounds();
    for c in monoids_up_to(5) {
        for side in [Side::Left, Side::Right] {
            for seed in 0..20 {
                let a = random_module(c, side, seed, &bounds);
                match oracle_check(&a, 6) {
                    Ok(report) => {
                        out.checks += report.checks();
                        for v in report.violations() {
                            out.failures.push(format!("{c} {side} seed {seed}: {v}"));
                        }
                    }
                    Err(e) => out.check(false, || format!("{c} {side} seed {seed}: {e}")),
                }
            }
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    for c in monoids_up_to(6) {
        let report = Resolution::new(c).verify_exactness(8);
        out.checks += report.checks();
        for v in report.violations() {
            out.failures.push(format!("{c}: {v}"));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let bounds = SizeBounds::default();
    for c in monoids_up_to(6) {
        for side in [Side::Left, Side::Right] {
            for seed in 0..100 {
                let a = random_module(c, side, 10_000 + seed, &bounds);
                let report = lemma_report(&a);
                out.checks += report.checks();
                for v in report.violations() {
                    out.failures.push(format!("{c} {side} seed {seed}: {v}"));
                }
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let bounds = SizeBounds::default();
    for (m, q, period) in [(2, 4, 4), (2, 9, 18), (1, 2, 4)] {
        let c = mono(m, q);
        out.check(c.cohomological_period() == period, || {
            format!("{c} period {}", c.cohomological_period())
        });
        for side in [Side::Left, Side::Right] {
            for seed in 0..20 {
                let a = random_module(c, side, 20_000 + seed, &bounds);
                // every residue class modulo the period is hit twice from degree 3
                match periodicity_check(&a, 2..=2 + 2 * period) {
                    Ok(report) => {
                        out.checks += report.checks();
                        for v in report.violations() {
                            out.failures.push(format!("{c} {side} seed {seed}: {v}"));
                        }
                    }
                    Err(e) => out.check(false, || format!("{c} {side} seed {seed}: {e}")),
                }
            }
        }
    }
    out
}

/// `(ker q, coker q)` on `Z` or `Z/d`, from gcds alone.
fn multiplication_by_q(d: u64, q: u64) -> (AbGroup, AbGroup) {
    if d == 0 {
        (AbGroup::trivial(), cyclic(q))
    } else {
        let g = d.gcd(&q);
        (cyclic(g), cyclic(g))
    }
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    for d in [0u64, 2, 6] {
        let group = if d == 0 {
            AbGroup::integers()
        } else {
            AbGroup::cyclic(d)
        };
        for q in [2usize, 4, 9] {
            let (ker, coker) = multiplication_by_q(d, q as u64);
            for m in [0usize, 1, 2, 5] {
                let c = mono(m, q);
                let a = LeechModule::trivial(c, Side::Left, &group);
                let b = LeechModule::trivial(c, Side::Right, &group);
                let oracle_a = hom_complex_oracle(&a, 6).expect("left module");
                let oracle_b = tensor_complex_oracle(&b, 6).expect("right module");
                for n in 0..=12 {
                    let (up, down) = match n {
                        0 => (group.clone(), group.clone()),
                        n if n % 2 == 1 => (ker.clone(), coker.clone()),
                        _ => (coker.clone(), ker.clone()),
                    };
                    let h = cohomology(&a, n).expect("left module");
                    out.check(h == up, || {
                        format!("{c} A={group} H^{n} = {h}, expected {up}")
                    });
                    let h = homology(&b, n).expect("right module");
                    out.check(h == down, || {
                        format!("{c} A={group} H_{n} = {h}, expected {down}")
                    });
                    if n <= 6 {
                        let h = complex_homology(&oracle_a.complex, n).expect("interior spot");
                        out.check(h == up, || {
                            format!("{c} A={group} oracle H^{n} = {h}, expected {up}")
                        });
                        let h = complex_homology(&oracle_b.complex, n).expect("interior spot");
                        out.check(h == down, || {
                            format!("{c} A={group} oracle H_{n} = {h}, expected {down}")
                        });
                    }
                }
            }
            let report =
                index_independence_check(&group, q, &[0, 1, 2, 5], 12).expect("valid monoids");
            out.checks += report.checks();
            for v in report.violations() {
                out.failures.push(format!("A={group} q={q}: {v}"));
            }
        }
    }
    out
}

fn hom(g: &AbGroup, rows: &[Vec<i64>]) -> AbHom {
    let m = IntMatrix::from_rows(rows).expect("rectangular");
    AbHom::new(g.clone(), g.clone(), m).expect("well defined")
}

fn pow(p: &AbHom, k: usize) -> AbHom {
    (0..k).fold(AbHom::identity(p.source()), |acc, _| {
        p.compose(&acc).unwrap()
    })
}

/// `(monoid, group, action)` triples with permutation, nilpotent and mixed
/// actions, each satisfying `P^m (P^q − I) = 0` by construction.
fn ordinary_cases() -> Vec<(CyclicMonoid, AbGroup, AbHom)> {
    let z2 = AbGroup::free(2);
    let z3 = AbGroup::free(3);
    let swap = hom(&z2, &[vec![0, 1], vec![1, 0]]);
    let rotate = hom(&z3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    let nil2 = hom(&z2, &[vec![0, 3], vec![0, 0]]);
    let nil3 = hom(&z3, &[vec![0, 1, -2], vec![0, 0, 5], vec![0, 0, 0]]);
    // swap on the first two coordinates, zero on the third
    let mixed = hom(&z3, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]);
    let torsion = AbGroup::from_parts(0, &[2, 6]);
    let tors_swap = hom(&torsion, &[vec![1, 0], vec![3, 5]]);
    vec![
        (mono(0, 2), z2.clone(), swap.clone()),
        (mono(1, 2), z2.clone(), swap.clone()),
        (mono(2, 4), z2.clone(), swap.clone()),
        (mono(0, 3), z3.clone(), rotate.clone()),
        (mono(3, 3), z3.clone(), rotate.clone()),
        (mono(2, 9), z3.clone(), rotate),
        (mono(2, 4), z3.clone(), mixed.clone()),
        (mono(2, 1), z2.clone(), nil2.clone()),
        (mono(3, 2), z3.clone(), nil3.clone()),
        (mono(4, 5), z3, nil3),
        (mono(1, 4), AbGroup::free(3), mixed),
        (mono(2, 2), torsion, tors_swap),
        (mono(2, 3), z2, nil2),
    ]
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    for (c, group, p) in ordinary_cases() {
        let (m, q) = (c.index(), c.period());
        let id = AbHom::identity(&group);
        let sum = (0..q).fold(AbHom::zero(&group, &group), |acc, t| {
            acc.add(&pow(&p, t)).unwrap()
        });
        let pm = pow(&p, m);
        let a = LeechModule::from_ordinary(c, Side::Left, &group, &p).expect("lawful action");
        let b = LeechModule::from_ordinary(c, Side::Right, &group, &p).expect("lawful action");
        let (s_l, t_l) = (p.sub(&id).unwrap(), pm.compose(&sum).unwrap());
        let (s_r, t_r) = (id.sub(&p).unwrap(), sum.compose(&pm).unwrap());
        for x in c.elements() {
            out.check(s_left(&a, x).unwrap() == s_l, || {
                format!("{c} left S at {x} is not P - I")
            });
            out.check(s_right(&b, x).unwrap() == s_r, || {
                format!("{c} right S at {x} is not I - P")
            });
            if x >= 1 {
                out.check(trace_left(&a, x).unwrap() == t_l, || {
                    format!("{c} left T at {x} is not P^m sum P^t")
                });
                out.check(trace_right(&b, x).unwrap() == t_r, || {
                    format!("{c} right T at {x} is not sum P^t P^m")
                });
            }
        }
        for n in 0..=11 {
            let (h, k) = (cohomology(&a, n).unwrap(), homology(&b, n).unwrap());
            out.check(cohomology_ordinary(&a, n).unwrap() == h, || {
                format!("{c} ordinary H^{n} differs")
            });
            out.check(homology_ordinary(&b, n).unwrap() == k, || {
                format!("{c} ordinary H_{n} differs")
            });
            if (1..=9).contains(&n) {
                let (h2, k2) = (cohomology(&a, n + 2).unwrap(), homology(&b, n + 2).unwrap());
                out.check(h == h2, || {
                    format!("{c} H^{n} = {h} but H^{} = {h2}", n + 2)
                });
                out.check(k == k2, || {
                    format!("{c} H_{n} = {k} but H_{} = {k2}", n + 2)
                });
            }
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let bounds = SizeBounds::default();
    for c in monoids_up_to(5) {
        for seed in 0..10 {
            let a = random_module(c, Side::Left, 30_000 + seed, &bounds);
            let fast = hom_complex_fast(&a, 6).unwrap();
            let oracle = hom_complex_oracle(&a, 6).unwrap();
            let report = comparison_report(&fast, &oracle);
            out.checks += report.checks();
            for v in report.violations() {
                out.failures.push(format!("{c} left seed {seed}: {v}"));
            }
            let b = random_module(c, Side::Right, 30_000 + seed, &bounds);
            let fast = tensor_complex_fast(&b, 6).unwrap();
            let oracle = tensor_complex_oracle(&b, 6).unwrap();
            let report = comparison_report(&fast, &oracle);
            out.checks += report.checks();
            for v in report.violations() {
                out.failures.push(format!("{c} right seed {seed}: {v}"));
            }
            for (module, complex) in [
                (&a, hom_complex_fast(&a, 6).unwrap()),
                (&b, tensor_complex_fast(&b, 6).unwrap()),
            ] {
                for n in 0..=6 {
                    let via_complex = complex_homology(&complex, n).unwrap();
                    let direct = closed_form(module, n).unwrap();
                    out.check(via_complex == direct, || {
                        format!("{c} seed {seed} degree {n}: fast complex disagrees")
                    });
                }
            }
        }
    }
    out
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "constant Z tables",
            criterion_1,
            Some(Duration::from_secs(5)),
        ),
        (
            "closed form equals oracle homology",
            criterion_2,
            Some(Duration::from_secs(120)),
        ),
        ("resolution exactness", criterion_3, None),
        ("trace and S identities", criterion_4, None),
        ("periodicity", criterion_5, None),
        ("trivial coefficients", criterion_6, None),
        ("ordinary coefficients", criterion_7, None),
        ("comparison maps", criterion_8, None),
    ];
    let mut all_ok = true;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            outcome.check(elapsed < limit, || {
                format!("took {elapsed:.2?}, limit {limit:?}")
            });
        }
        let ok = outcome.failures.is_empty();
        all_ok &= ok;
        println!(
            "criterion {} {}: {name} ({} checks, {} failures, {elapsed:.2?})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            outcome.checks,
            outcome.failures.len(),
        );
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
