use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tybraid_core::braiding::{
    brute_force_braidings, check_hexagons, solve_braidings, Stage, FULL_LIMIT, STAGED_LIMIT,
};
use tybraid_core::classify::classify;
use tybraid_core::crossed::{
    brute_force_crossed, check_heptagons, classify_crossed, solve_crossed,
};
use tybraid_core::equations::{Coefficients, Violation};
use tybraid_core::f2::{wall_normalize, Bicharacter};
use tybraid_core::json::{BraidingJson, CrossedBraidingJson, DataJson, ViolationJson};
use tybraid_core::{Case, TYData};

use crate::report::{to_json, Failure, Format, Problem, Report, Table};
use crate::{read_input, Target};

#[derive(Debug, Clone, Serialize)]
struct Check {
    name: &'static str,
    id: String,
    passed: Option<bool>,
    detail: String,
}

#[derive(Default, Serialize)]
struct Outcome {
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<DataJson>,
    checks: Vec<Check>,
    violations: Vec<ViolationJson>,
}

impl Outcome {
    fn check(
        &mut self,
        name: &'static str,
        id: impl Into<String>,
        passed: Option<bool>,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check {
            name,
            id: id.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn violations(&mut self, name: &'static str, vs: &[Violation], checked: usize) {
        let first = vs
            .first()
            .map(|v| v.eq.clone())
            .unwrap_or_else(|| name.to_string());
        let detail = match vs.first() {
            None => format!("{checked} solution(s), no violations"),
            Some(v) => format!("{} violation(s), first {} at {:?}", vs.len(), v.eq, v.at),
        };
        self.check(name, first, Some(vs.is_empty()), detail);
        self.violations
            .extend(vs.iter().take(64).map(ViolationJson::from));
    }

    fn render(self, format: Format) -> Result<Report, Failure> {
        let problems: Vec<Problem> = self
            .checks
            .iter()
            .filter(|c| c.passed == Some(false))
            .map(|c| Problem {
                id: c.id.clone(),
                detail: format!("{}: {}", c.name, c.detail),
            })
            .collect();
        let mut t = Table::new(["check", "id", "status", "detail"]);
        for c in &self.checks {
            let status = match c.passed {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "SKIP",
            };
            t.push([
                c.name.to_string(),
                c.id.clone(),
                status.to_string(),
                c.detail.clone(),
            ]);
        }
        let text = match format {
            Format::Json => to_json(&self)?,
            Format::Csv => t.csv()?,
            Format::Markdown => {
                let mut s = t.markdown();
                for v in &self.violations {
                    s += &format!(
                        "\n- {} at {:?}: lhs {:?}, rhs {:?}",
                        v.eq, v.at, v.lhs.coeffs, v.rhs.coeffs
                    );
                }
                if !self.violations.is_empty() {
                    s.push('\n');
                }
                s
            }
        };
        Ok(Report { text, problems })
    }
}

fn oracle_stage(order: usize) -> Option<Stage> {
    if order <= FULL_LIMIT {
        Some(Stage::Full)
    } else if order <= STAGED_LIMIT {
        Some(Stage::Staged)
    } else {
        None
    }
}

fn keys<'a>(cs: impl Iterator<Item = &'a Coefficients>) -> Vec<String> {
    let mut v: Vec<String> = cs.map(|c| format!("{c:?}")).collect();
    v.sort();
    v
}

fn compare(
    out: &mut Outcome,
    stage: Option<Stage>,
    solver: Vec<String>,
    oracle: impl FnOnce(Stage) -> Result<Vec<String>, Failure>,
) -> Result<(), Failure> {
    let id = "criterion 5";
    match stage {
        None => out.check("oracle", id, None, "instance above the oracle limit"),
        Some(s) => {
            let o = oracle(s)?;
            let detail = format!(
                "{s:?} oracle {} solution(s), solver {}",
                o.len(),
                solver.len()
            );
            out.check("oracle", id, Some(o == solver), detail);
        }
    }
    Ok(())
}

fn braided(out: &mut Outcome, data: &TYData) -> Result<(), Failure> {
    let fail = |e: &dyn std::fmt::Display| Failure::new("solve", e.to_string());
    let bs = solve_braidings(data).map_err(|e| fail(&e))?;
    let solver = keys(bs.iter().map(|b| &b.coeffs));
    compare(out, oracle_stage(data.order()), solver, |s| {
        Ok(keys(
            brute_force_braidings(data, s)
                .map_err(|e| fail(&e))?
                .iter()
                .map(|b| &b.coeffs),
        ))
    })?;
    let vs: Vec<Violation> = bs.iter().flat_map(check_hexagons).collect();
    out.violations("hexagons", &vs, bs.len());
    match classify(data) {
        Ok(c) => {
            out.check(
                "witnesses",
                "criterion 6",
                Some(true),
                format!("{} class(es)", c.classes.len()),
            );
            let bad: Vec<String> = c
                .classes
                .iter()
                .enumerate()
                .filter(|(_, cl)| !cl.pi0.agrees())
                .map(|(i, cl)| {
                    format!(
                        "class {}: count {} formula {:?}",
                        i + 1,
                        cl.pi0.count,
                        cl.pi0.formula
                    )
                })
                .collect();
            let counts: Vec<String> = c
                .classes
                .iter()
                .map(|cl| cl.pi0.count.to_string())
                .collect();
            let detail = if bad.is_empty() {
                format!("orders {}", counts.join(", "))
            } else {
                bad.join("; ")
            };
            out.check("pi0", "criterion 10", Some(bad.is_empty()), detail);
        }
        Err(e) => out.check("witnesses", "criterion 6", Some(false), e.to_string()),
    }
    Ok(())
}

fn crossed(out: &mut Outcome, data: &TYData) -> Result<(), Failure> {
    let fail = |e: &dyn std::fmt::Display| Failure::new("solve", e.to_string());
    let sol = solve_crossed(data).map_err(|e| fail(&e))?;
    if let Some(o) = &sol.obstruction {
        out.check("obstruction", "criterion 9", None, o.clone());
    }
    let solver = keys(sol.braidings.iter().map(|b| &b.coeffs));
    compare(out, oracle_stage(data.order()), solver, |s| {
        Ok(keys(
            brute_force_crossed(data, s)
                .map_err(|e| fail(&e))?
                .iter()
                .map(|b| &b.coeffs),
        ))
    })?;
    let vs: Vec<Violation> = sol.braidings.iter().flat_map(check_heptagons).collect();
    out.violations("heptagons", &vs, sol.braidings.len());
    let plain = solve_braidings(data).map_err(|e| fail(&e))?;
    out.check(
        "no braidings",
        "criterion 9",
        Some(plain.is_empty()),
        format!("{} plain braiding(s)", plain.len()),
    );
    match classify_crossed(data) {
        Ok(c) => {
            out.check(
                "witnesses",
                "criterion 6",
                Some(true),
                format!("{} class(es)", c.classes.len()),
            );
            let bad: Vec<String> = c
                .classes
                .iter()
                .enumerate()
                .filter(|(_, cl)| !cl.pi0.agrees())
                .map(|(i, cl)| {
                    format!(
                        "class {}: count {} formula {:?}",
                        i + 1,
                        cl.pi0.count,
                        cl.pi0.formula
                    )
                })
                .collect();
            let counts: Vec<String> = c
                .classes
                .iter()
                .map(|cl| cl.pi0.count.to_string())
                .collect();
            let detail = if bad.is_empty() {
                format!("orders {}", counts.join(", "))
            } else {
                bad.join("; ")
            };
            out.check("pi0", "criterion 10", Some(bad.is_empty()), detail);
        }
        Err(e) => out.check("witnesses", "criterion 6", Some(false), e.to_string()),
    }
    Ok(())
}

/// Random nondegenerate symmetric forms of dimension up to 8 must reduce to a normal form.
fn fuzz_wall(out: &mut Outcome, seed: u64) {
    const CASES: usize = 256;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut tried = 0;
    while tried < CASES {
        let dim = rng.gen_range(1..=8usize);
        let mut rows = vec![0u32; dim];
        for i in 0..dim {
            for j in i..dim {
                if rng.gen_bool(0.5) {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        let Ok(chi) = Bicharacter::from_rows(dim, rows.clone()) else {
            continue;
        };
        if !chi.is_nondegenerate() {
            continue;
        }
        tried += 1;
        let ok = match wall_normalize(&chi) {
            Ok(w) => {
                let target = Bicharacter::normal_form(w.h_blocks, w.l_blocks);
                w.l_blocks <= 2
                    && 2 * w.h_blocks + w.l_blocks == dim
                    && &w.basis_change.congruence(chi.matrix()) == target.matrix()
            }
            Err(_) => false,
        };
        if !ok {
            failures.push(format!("{rows:?}"));
        }
    }
    let detail = if failures.is_empty() {
        format!("{CASES} forms, seed {seed}")
    } else {
        format!("seed {seed}: {}", failures.join(" "))
    };
    out.check(
        "wall fuzz",
        "criterion 7",
        Some(failures.is_empty()),
        detail,
    );
}

fn input(out: &mut Outcome, text: &str, modulus: u32) -> Result<(), Failure> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::new("input", e))?;
    let case = value
        .pointer("/data/case")
        .and_then(|c| c.as_str())
        .unwrap_or_default();
    let bad = |e: &dyn std::fmt::Display| Failure::new("input", e.to_string());
    if case == Case::ComplexComplex.name() {
        let j: CrossedBraidingJson = serde_json::from_value(value).map_err(|e| bad(&e))?;
        let cb = j.to_crossed(modulus).map_err(|e| bad(&e))?;
        out.data = Some(j.data.clone());
        let vs = check_heptagons(&cb);
        out.violations("heptagons", &vs, 1);
        if vs.is_empty() {
            let again = CrossedBraidingJson::from(&cb);
            let same = again.invariants == j.invariants && again.kappa == j.kappa;
            out.check(
                "invariants",
                "invariants",
                Some(same),
                format!(
                    "declared {:?}, computed {:?}",
                    j.invariants, again.invariants
                ),
            );
        }
    } else {
        let j: BraidingJson = serde_json::from_value(value).map_err(|e| bad(&e))?;
        let b = j.to_braiding(modulus).map_err(|e| bad(&e))?;
        out.data = Some(j.data.clone());
        let vs = check_hexagons(&b);
        out.violations("hexagons", &vs, 1);
        if vs.is_empty() {
            let again = BraidingJson::from(&b);
            out.check(
                "invariants",
                "invariants",
                Some(again.invariants == j.invariants),
                format!(
                    "declared {:?}, computed {:?}",
                    j.invariants, again.invariants
                ),
            );
        }
    }
    Ok(())
}

pub fn run(
    target: &Target,
    format: Format,
    seed: Option<u64>,
    modulus: u32,
) -> Result<Report, Failure> {
    let mut out = Outcome::default();
    if let Some(path) = &target.input {
        input(&mut out, &read_input(path)?, modulus)?;
    } else {
        let data = target.data(modulus)?;
        out.data = Some(DataJson::from(&data));
        if data.case == Case::ComplexComplex {
            crossed(&mut out, &data)?;
        } else {
            braided(&mut out, &data)?;
        }
    }
    if let Some(s) = seed {
        fuzz_wall(&mut out, s);
    }
    out.render(format)
}
