//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tybraid_core::braiding::{brute_force_braidings, solve_braidings, twists, Stage};
use tybraid_core::classify::{classify, pi0_aut_br};
use tybraid_core::crossed::{brute_force_crossed, classify_crossed, crossed_pi0, solve_crossed};
use tybraid_core::equations::Coefficients;
use tybraid_core::f2::{wall_normalize, Bicharacter};
use tybraid_core::survey::{form_counts, gauss_table, orbit_row, verdict_table, Column, Row};
use tybraid_core::{CycScalar, TYData};

const N: u32 = 16;
const TAUS: [i8; 2] = [1, -1];

type Criterion = (&'static str, fn() -> Outcome);
type Outcome = Result<String, Vec<String>>;

fn collect(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(failures)
    }
}

/// Expected (orbits, extending, per-orbit, total, sigma3(1) invariant) for `n >= 1`.
fn table1_expected(c: Column) -> (usize, usize, &'static [&'static [usize]], usize, bool) {
    match c {
        Column::SplitReal => (2, 1, &[&[2]], 2, true),
        Column::RealComplexId => (2, 2, &[&[1, 2], &[2, 1]], 3, false),
        Column::RealComplexConj => (2, 2, &[&[2, 2]], 4, true),
        Column::RealQuaternionic => (2, 1, &[&[2]], 2, true),
        Column::ComplexCrossed => (2, 2, &[&[1, 1]], 2, false),
    }
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=3 {
        for tau in TAUS {
            let row = match orbit_row(n, tau, N) {
                Ok(x) => x,
                Err(e) => {
                    failures.push(format!("n={n} tau={tau}: {e}"));
                    continue;
                }
            };
            for (c, cell) in row {
                let (orbits, extending, per, total, inv) = table1_expected(c);
                let got = (
                    cell.orbits,
                    cell.extending,
                    cell.total,
                    cell.sigma3_invariant,
                );
                if got != (orbits, extending, total, inv)
                    || !per.contains(&cell.per_orbit.as_slice())
                {
                    failures.push(format!("{} n={n} tau={tau}: got {cell:?}", c.label()));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        failures.push(format!("took {secs:.1}s"));
    }
    collect(
        failures,
        format!("5 columns x n=1..3 x tau=±1 in {secs:.1}s"),
    )
}

fn criterion2() -> Outcome {
    let expected: [(Row, &str, &str); 8] = [
        (Row::SplitReal, "Always", "Never"),
        (Row::RealQuaternionic, "Always", "Never"),
        (Row::RcIdSameSign, "Never", "Never"),
        (Row::RcIdOppositeSign, "Never", "Only when A0 = *"),
        (Row::RcConj, "Always", "Never"),
        (
            Row::SplitComplex(0),
            "Only when sgn(σ) = sgn(τ)",
            "Only when A = * and sgn(σ) = −sgn(τ)",
        ),
        (Row::SplitComplex(1), "Never", "Never"),
        (Row::SplitComplex(2), "Never", "Never"),
    ];
    let table = verdict_table(2, N).map_err(|e| vec![e.to_string()])?;
    let mut failures = Vec::new();
    for ((row, sym, nd), got) in expected.iter().zip(&table) {
        assert_eq!(*row, got.row);
        if got.symmetric != *sym || got.nondegenerate != *nd {
            failures.push(format!(
                "{}: expected {sym} / {nd}, got {} / {}",
                row.label(),
                got.symmetric,
                got.nondegenerate
            ));
        }
    }
    collect(failures, "8 rows, n=0..2".into())
}

fn criterion3() -> Outcome {
    // (QF+, QF-, |Aut|, |H+|, |H-|)
    let expected: [(usize, [u128; 5]); 3] = [
        (1, [3, 1, 6, 2, 6]),
        (2, [10, 6, 720, 72, 120]),
        (3, [36, 28, 1_451_520, 40_320, 51_840]),
    ];
    let mut failures = Vec::new();
    for (n, [p, m, aut, hp, hm]) in expected {
        let c = form_counts(n, true, N).map_err(|e| vec![e.to_string()])?;
        let got = [
            c.qf_plus,
            c.qf_minus,
            c.qf_plus_formula,
            c.qf_minus_formula,
            c.aut.unwrap_or(0),
            c.aut_formula,
            c.stab_plus.unwrap_or(0),
            c.stab_plus_formula,
            c.stab_minus.unwrap_or(0),
            c.stab_minus_formula,
        ];
        if got != [p, m, p, m, aut, aut, hp, hp, hm, hm] {
            failures.push(format!("n={n}: {c:?}"));
        }
    }
    collect(failures, "n=1..3 enumerated and by formula".into())
}

fn criterion4() -> Outcome {
    let t = gauss_table(1, N).map_err(|e| vec![e.to_string()])?;
    let four = CycScalar::from_int(N, 4);
    let four_i = CycScalar::root_of_unity(N, 4).mul_pow2(2);
    let values = [
        -&four_i,
        four_i.clone(),
        four.clone(),
        four_i.clone(),
        -&four_i,
        -&four,
    ];
    let mut failures = Vec::new();
    for (row, v) in t.rows.iter().zip(&values) {
        if &row.gauss_sum != v {
            failures.push(format!("{}: got {:?}", row.label, row.gauss_sum));
        }
    }
    let image = |l: &str| {
        t.rows
            .iter()
            .find(|r| r.label == l)
            .and_then(|r| r.image.clone())
    };
    for (a, b) in [("(---)", "(+++)"), ("(+--)", "(-++)")] {
        if image(a).as_deref() != Some(b) || image(b).as_deref() != Some(a) {
            failures.push(format!("f does not swap {a} and {b}"));
        }
    }
    if !t.exchange_preserves_chi {
        failures.push("f is not an isometry".into());
    }
    collect(failures, "six sums at n=1, f swaps both pairs".into())
}

fn full_cases() -> Vec<TYData> {
    let mut v = Vec::new();
    for tau in TAUS {
        v.push(TYData::split_real(0, tau, N).unwrap());
        v.push(TYData::real_quaternionic(0, tau, N).unwrap());
        v.push(TYData::real_complex(0, false, tau, N).unwrap());
        v.push(TYData::real_complex(0, true, tau, N).unwrap());
        v.push(TYData::split_complex(0, 0, tau, N).unwrap());
        v.push(TYData::split_complex(0, 1, tau, N).unwrap());
    }
    v
}

fn staged_cases() -> Vec<TYData> {
    let mut v = Vec::new();
    for tau in TAUS {
        for n in 0..=2 {
            v.push(TYData::split_real(n, tau, N).unwrap());
            v.push(TYData::real_quaternionic(n, tau, N).unwrap());
        }
        for n in 0..=1 {
            v.push(TYData::real_complex(n, false, tau, N).unwrap());
            v.push(TYData::real_complex(n, true, tau, N).unwrap());
        }
        for (n, ell) in [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0)] {
            v.push(TYData::split_complex(n, ell, tau, N).unwrap());
        }
    }
    v
}

fn coeff_set<'a>(it: impl Iterator<Item = &'a Coefficients>) -> BTreeSet<String> {
    it.map(|c| format!("{c:?}")).collect()
}

fn criterion5() -> Outcome {
    let mut failures = Vec::new();
    let mut compared = 0;
    for (stage, cases) in [(Stage::Full, full_cases()), (Stage::Staged, staged_cases())] {
        for d in cases {
            let label = format!(
                "{:?} {} dim={} tau={}",
                stage,
                d.case.name(),
                d.group.dim,
                d.tau_sign
            );
            let solved = solve_braidings(&d).map_err(|e| vec![e.to_string()])?;
            let oracle = match brute_force_braidings(&d, stage) {
                Ok(x) => x,
                Err(e) => {
                    failures.push(format!("{label}: {e}"));
                    continue;
                }
            };
            if coeff_set(solved.iter().map(|b| &b.coeffs))
                != coeff_set(oracle.iter().map(|b| &b.coeffs))
            {
                failures.push(format!(
                    "{label}: solver {} vs oracle {}",
                    solved.len(),
                    oracle.len()
                ));
            }
            if stage == Stage::Full {
                for b in &oracle {
                    if d.elements().any(|x| {
                        d.elements()
                            .any(|y| b.coeffs.s0(x, y) != &d.chi_scalar(x, y))
                    }) {
                        failures.push(format!("{label}: sigma0 differs from chi"));
                    }
                }
            }
            compared += 1;
        }
    }
    for tau in TAUS {
        for (stage, ns) in [(Stage::Full, 0..=0), (Stage::Staged, 0..=2)] {
            for n in ns {
                let d = TYData::complex_complex(n, tau, N).unwrap();
                let label = format!("{stage:?} crossed n={n} tau={tau}");
                let solved = solve_crossed(&d)
                    .map_err(|e| vec![e.to_string()])?
                    .braidings;
                match brute_force_crossed(&d, stage) {
                    Ok(o) => {
                        if coeff_set(solved.iter().map(|b| &b.coeffs))
                            != coeff_set(o.iter().map(|b| &b.coeffs))
                        {
                            failures.push(format!(
                                "{label}: solver {} vs oracle {}",
                                solved.len(),
                                o.len()
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("{label}: {e}")),
                }
                compared += 1;
            }
        }
    }
    collect(failures, format!("{compared} instances agree"))
}

fn expected_classes(d: &TYData, n: usize, ell: usize) -> usize {
    use tybraid_core::Case::*;
    let tau = d.tau_sign;
    match (d.case, n) {
        (SplitReal, 0) => {
            if tau > 0 {
                2
            } else {
                0
            }
        }
        (RealQuaternionic, 0) => {
            if tau > 0 {
                0
            } else {
                2
            }
        }
        (SplitReal | RealQuaternionic, _) => 2,
        (RealComplexId, 0) => {
            if tau > 0 {
                2
            } else {
                1
            }
        }
        (RealComplexId, _) => 3,
        (RealComplexConj, 0) => 2,
        (RealComplexConj, _) => 4,
        (SplitComplex, _) => match (ell, n) {
            (0, 0) => 2,
            (0, _) => 4,
            (1, 0) => 4,
            (2, 0) => 6,
            _ => 8,
        },
        (ComplexComplex, 0) => 1,
        (ComplexComplex, _) => 2,
    }
}

fn all_braided(n_max: usize) -> Vec<(TYData, usize, usize)> {
    let mut v = Vec::new();
    for tau in TAUS {
        for n in 0..=n_max {
            v.push((TYData::split_real(n, tau, N).unwrap(), n, 0));
            v.push((TYData::real_quaternionic(n, tau, N).unwrap(), n, 0));
            v.push((TYData::real_complex(n, false, tau, N).unwrap(), n, 0));
            v.push((TYData::real_complex(n, true, tau, N).unwrap(), n, 0));
            for ell in 0..=2 {
                v.push((TYData::split_complex(n, ell, tau, N).unwrap(), n, ell));
            }
        }
    }
    v
}

fn criterion6() -> Outcome {
    let mut failures = Vec::new();
    for (d, n, ell) in all_braided(2) {
        let label = format!("{} n={n} ell={ell} tau={}", d.case.name(), d.tau_sign);
        match classify(&d) {
            Ok(c) if c.classes.len() == expected_classes(&d, n, ell) => {}
            Ok(c) => failures.push(format!("{label}: {} classes", c.classes.len())),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    for tau in TAUS {
        for n in 0..=2 {
            let d = TYData::complex_complex(n, tau, N).unwrap();
            match classify_crossed(&d) {
                Ok(c) if c.classes.len() == expected_classes(&d, n, 0) => {}
                Ok(c) => failures.push(format!(
                    "crossed n={n} tau={tau}: {} classes",
                    c.classes.len()
                )),
                Err(e) => failures.push(format!("crossed n={n} tau={tau}: {e}")),
            }
        }
    }
    collect(failures, "all cases n=0..2, witnesses verified".into())
}

fn random_form(rng: &mut ChaCha8Rng, alternating: bool) -> Bicharacter {
    loop {
        let dim = if alternating {
            2 * rng.gen_range(1..=3)
        } else {
            rng.gen_range(1..=6)
        };
        let mut rows = vec![0u32; dim];
        for i in 0..dim {
            for j in i..dim {
                let bit = if i == j {
                    !alternating && rng.gen_bool(0.5)
                } else {
                    rng.gen_bool(0.5)
                };
                if bit {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        if let Ok(chi) = Bicharacter::from_rows(dim, rows) {
            if chi.is_nondegenerate() {
                return chi;
            }
        }
    }
}

fn criterion7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for k in 0..1000 {
        let chi = random_form(&mut rng, k % 4 == 0);
        match wall_normalize(&chi) {
            Ok(w) => {
                let target = Bicharacter::normal_form(w.h_blocks, w.l_blocks);
                if w.basis_change.congruence(chi.matrix()) != *target.matrix() {
                    failures.push(format!("{:?}: congruence fails", chi.gram_rows()));
                }
                if chi.is_alternating() && (w.l_blocks != 0 || !chi.dim().is_multiple_of(2)) {
                    failures.push(format!(
                        "{:?}: alternating gave l_blocks={}",
                        chi.gram_rows(),
                        w.l_blocks
                    ));
                }
            }
            Err(e) => failures.push(format!("{:?}: {e}", chi.gram_rows())),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 30.0 {
        failures.push(format!("took {secs:.1}s"));
    }
    collect(failures, format!("1000 forms in {secs:.2}s"))
}

fn criterion8() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (d, n, ell) in all_braided(2) {
        let label = format!("{} n={n} ell={ell} tau={}", d.case.name(), d.tau_sign);
        let one = CycScalar::one(N);
        let mut bad = 0;
        let bs = solve_braidings(&d).map_err(|e| vec![e.to_string()])?;
        for b in &bs {
            let ts = twists(b);
            let trivial = ts
                .iter()
                .filter(|t| t.theta.iter().all(|x| *x == one))
                .count();
            if ts.len() != 2 || trivial != 2 {
                bad += 1;
            }
            checked += 1;
        }
        if bad > 0 {
            failures.push(format!(
                "{label}: {bad}/{} braidings without two twists with theta_a = 1",
                bs.len()
            ));
        }
    }
    collect(failures, format!("{checked} braidings"))
}

fn criterion9() -> Outcome {
    let mut failures = Vec::new();
    for tau in TAUS {
        for n in 0..=2 {
            let d = TYData::complex_complex(n, tau, N).unwrap();
            match solve_braidings(&d) {
                Ok(bs) if bs.is_empty() => {}
                Ok(bs) => failures.push(format!("n={n} tau={tau}: {} braidings", bs.len())),
                Err(e) => failures.push(format!("n={n} tau={tau}: {e}")),
            }
        }
        let d = TYData::complex_complex(0, tau, N).unwrap();
        if let Ok(bs) = brute_force_braidings(&d, Stage::Full) {
            if !bs.is_empty() {
                failures.push(format!("oracle n=0 tau={tau}: {} braidings", bs.len()));
            }
        }
    }
    collect(failures, "n=0..2".into())
}

fn criterion10() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (d, n, ell) in all_braided(2) {
        let label = format!("{} n={n} ell={ell} tau={}", d.case.name(), d.tau_sign);
        let c = classify(&d).map_err(|e| vec![format!("{label}: {e}")])?;
        for cl in &c.classes {
            let b = &c.braidings[cl.representative];
            let p = pi0_aut_br(b).map_err(|e| vec![format!("{label}: {e}")])?;
            if !p.agrees() || p.count != cl.pi0.count || !cl.pi0.agrees() {
                failures.push(format!(
                    "{label}: count {} / {}, formula {:?}",
                    p.count, cl.pi0.count, p.formula
                ));
            }
            checked += 1;
        }
    }
    for tau in TAUS {
        for n in 0..=2 {
            let d = TYData::complex_complex(n, tau, N).unwrap();
            let c = classify_crossed(&d).map_err(|e| vec![e.to_string()])?;
            for cl in &c.classes {
                let p = crossed_pi0(&c.braidings[cl.representative])
                    .map_err(|e| vec![e.to_string()])?;
                if !p.agrees() || p.count != cl.pi0.count {
                    failures.push(format!(
                        "crossed n={n} tau={tau}: count {}, formula {:?}",
                        p.count, p.formula
                    ));
                }
                checked += 1;
            }
        }
    }
    let pick = |d: TYData, sgn: i8| -> Option<u64> {
        let c = classify(&d).ok()?;
        c.classes
            .iter()
            .find(|cl| cl.invariants.sgn_sigma == Some(sgn))
            .map(|cl| cl.pi0.count)
    };
    let cc = classify_crossed(&TYData::complex_complex(1, 1, N).unwrap())
        .ok()
        .and_then(|c| {
            c.classes
                .iter()
                .find(|cl| cl.sgn_sigma == Some(1))
                .map(|cl| cl.pi0.count)
        });
    let examples = [
        (
            "split real n=1 sgn+",
            pick(TYData::split_real(1, 1, N).unwrap(), 1),
            2,
        ),
        (
            "RQ n=1 sgn-",
            pick(TYData::real_quaternionic(1, 1, N).unwrap(), -1),
            12,
        ),
        (
            "RC-conj n=1 sgn+",
            pick(TYData::real_complex(1, true, 1, N).unwrap(), 1),
            8,
        ),
        ("CC n=1 sgn+", cc, 8),
    ];
    for (name, got, want) in examples {
        if got != Some(want) {
            failures.push(format!("{name}: got {got:?}, expected {want}"));
        }
    }
    collect(
        failures,
        format!("{checked} classes, formula = enumeration"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("orbit and class counts per column", criterion1),
        ("symmetric / nondegenerate verdicts", criterion2),
        ("form, automorphism and stabilizer counts", criterion3),
        ("Gauss sums and the exchange automorphism", criterion4),
        ("oracle agrees with solver", criterion5),
        ("class counts with functor witnesses", criterion6),
        ("Wall normalization fuzzing", criterion7),
        ("two twists with theta_a = 1", criterion8),
        ("no braidings on complex/complex", criterion9),
        ("pi0 Aut_br formula vs enumeration", criterion10),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", i + 1);
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| id.contains(f.as_str()) || name.contains(f.as_str()))
        {
            continue;
        }
        let start = Instant::now();
        match run() {
            Ok(detail) => println!(
                "{id}: PASS  {name} ({detail}; {:.1}s)",
                start.elapsed().as_secs_f64()
            ),
            Err(fails) => {
                failed += 1;
                println!("{id}: FAIL  {name} ({} problems)", fails.len());
                for f in fails.iter().take(12) {
                    println!("    {f}");
                }
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
