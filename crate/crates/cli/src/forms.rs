use serde::Serialize;
use tybraid_core::survey::form_counts;

use crate::report::{to_json, Failure, Format, Problem, Report, Table};

/// Largest `n` whose automorphism group is enumerated.
const AUT_LIMIT: usize = 3;
const N_LIMIT: usize = 6;

#[derive(Serialize)]
struct Row {
    n: usize,
    qf_plus: u128,
    qf_minus: u128,
    aut: Option<u128>,
    stab_plus: Option<u128>,
    stab_minus: Option<u128>,
    aut_formula: u128,
    stab_plus_formula: u128,
    stab_minus_formula: u128,
}

fn cell(x: Option<u128>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn run(n_max: usize, format: Format, modulus: u32) -> Result<Report, Failure> {
    if !(1..=N_LIMIT).contains(&n_max) {
        return Err(Failure::new(
            "input",
            format!("--n-max must be in 1..={N_LIMIT}"),
        ));
    }
    let mut rows = Vec::new();
    let mut problems = Vec::new();
    for n in 1..=n_max {
        let c =
            form_counts(n, n <= AUT_LIMIT, modulus).map_err(|e| Failure::new("criterion 3", e))?;
        let checks = [
            ("QF+", Some(c.qf_plus), c.qf_plus_formula),
            ("QF-", Some(c.qf_minus), c.qf_minus_formula),
            ("|Aut|", c.aut, c.aut_formula),
            ("|H+|", c.stab_plus, c.stab_plus_formula),
            ("|H-|", c.stab_minus, c.stab_minus_formula),
        ];
        for (what, got, want) in checks {
            if let Some(g) = got.filter(|&g| g != want) {
                problems.push(Problem {
                    id: "criterion 3".into(),
                    detail: format!("n={n} {what}: counted {g}, formula {want}"),
                });
            }
        }
        rows.push(Row {
            n,
            qf_plus: c.qf_plus,
            qf_minus: c.qf_minus,
            aut: c.aut,
            stab_plus: c.stab_plus,
            stab_minus: c.stab_minus,
            aut_formula: c.aut_formula,
            stab_plus_formula: c.stab_plus_formula,
            stab_minus_formula: c.stab_minus_formula,
        });
    }
    let text = if format == Format::Json {
        to_json(&rows)?
    } else {
        let mut t = Table::new([
            "n",
            "QF+",
            "QF-",
            "|Aut|",
            "|H+|",
            "|H-|",
            "|Aut| formula",
            "|H+| formula",
            "|H-| formula",
        ]);
        for r in &rows {
            t.push([
                r.n.to_string(),
                r.qf_plus.to_string(),
                r.qf_minus.to_string(),
                cell(r.aut),
                cell(r.stab_plus),
                cell(r.stab_minus),
                r.aut_formula.to_string(),
                r.stab_plus_formula.to_string(),
                r.stab_minus_formula.to_string(),
            ]);
        }
        t.render(format)?
    };
    Ok(Report { text, problems })
}
