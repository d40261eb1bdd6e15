use tybraid_core::survey::{gauss_table, orbit_row, split_complex_cell, verdict_table, OrbitCell};

use crate::report::{pretty, sign, Failure, Problem, Report, Table};
use crate::Tables;

/// Largest `n-max` for the case and verdict tables, and for the Gauss table.
const INTRO_LIMIT: usize = 2;
const GAUSS_LIMIT: usize = 3;

/// Bundled goldens: (table, n_max, text).
const GOLDENS: &[(&str, usize, &str)] = &[
    ("cases", 1, include_str!("../goldens/cases-n1.md")),
    ("cases", 2, include_str!("../goldens/cases-n2.md")),
    ("verdicts", 1, include_str!("../goldens/verdicts-n1.md")),
    ("verdicts", 2, include_str!("../goldens/verdicts-n2.md")),
    ("gauss", 1, include_str!("../goldens/gauss-n1.md")),
    ("gauss", 2, include_str!("../goldens/gauss-n2.md")),
    ("gauss", 3, include_str!("../goldens/gauss-n3.md")),
];

fn per_orbit(v: &[usize]) -> String {
    match v.first() {
        None => "0".to_string(),
        Some(&k) if v.iter().all(|&x| x == k) => k.to_string(),
        Some(_) => "Varies".to_string(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

fn fail(e: impl std::fmt::Display) -> Failure {
    Failure::new("reproduce", e)
}

pub fn cases(n_max: usize, modulus: u32) -> Result<String, Failure> {
    let mut out = String::from("## Braidings by case\n");
    for n in 1..=n_max {
        for tau in [1, -1] {
            let row = orbit_row(n, tau, modulus).map_err(fail)?;
            let cells: Vec<&OrbitCell> = row.iter().map(|(_, c)| c).collect();
            let mut header = vec!["Case:".to_string()];
            header.extend(row.iter().map(|(col, _)| col.label().to_string()));
            let mut t = Table::new(header);
            let line = |name: &str, f: &dyn Fn(&OrbitCell) -> String| {
                std::iter::once(name.to_string())
                    .chain(cells.iter().map(|c| f(c)))
                    .collect::<Vec<_>>()
            };
            t.push(line("χ-admissible orbits", &|c| c.orbits.to_string()));
            t.push(line("Orbits extending to braidings", &|c| {
                c.extending.to_string()
            }));
            t.push(line("Braidings per orbit", &|c| per_orbit(&c.per_orbit)));
            t.push(line("Total braidings", &|c| c.total.to_string()));
            t.push(line("Is σ3(1) an invariant?", &|c| {
                yes_no(c.sigma3_invariant).to_string()
            }));
            out += &format!("\n### n = {n}, τ {}\n\n{}", sign(tau), t.markdown());
        }
    }
    out += "\n## Split complex\n";
    for n in 1..=n_max {
        for tau in [1, -1] {
            let cells = (0..=2)
                .map(|ell| split_complex_cell(ell, n, tau, modulus))
                .collect::<Result<Vec<_>, _>>()
                .map_err(fail)?;
            let mut t = Table::new(["|ℓ|", "0", "1", "2"]);
            let mut push =
                |name: &str, f: &dyn Fn(&tybraid_core::survey::SplitComplexCell) -> String| {
                    t.push(
                        std::iter::once(name.to_string())
                            .chain(cells.iter().map(f))
                            .collect::<Vec<_>>(),
                    );
                };
            push("χ-admissible orbits", &|c| c.orbits.to_string());
            push("Braidings per orbit", &|c| per_orbit(&c.per_orbit));
            push("Total braidings", &|c| c.total.to_string());
            out += &format!("\n### n = {n}, τ {}\n\n{}", sign(tau), t.markdown());
        }
    }
    Ok(out)
}

pub fn verdicts(n_max: usize, modulus: u32) -> Result<String, Failure> {
    let mut t = Table::new(["Case", "Symmetric?", "Nondegenerate?"]);
    for r in verdict_table(n_max, modulus).map_err(fail)? {
        t.push([r.row.label(), r.symmetric, r.nondegenerate]);
    }
    Ok(format!(
        "## Symmetric and nondegenerate braidings, n ≤ {n_max}\n\n{}",
        t.markdown()
    ))
}

pub fn gauss(n_max: usize, modulus: u32) -> Result<String, Failure> {
    let mut out = String::from("## Gauss sums on h^n ⊕ ℓ²\n");
    for n in 1..=n_max {
        let g = gauss_table(n, modulus).map_err(fail)?;
        let mut header = vec!["(κ, ε1, ε2)".to_string()];
        header.extend(g.rows.iter().map(|r| r.label.clone()));
        let mut t = Table::new(header);
        t.push(
            std::iter::once("Σ".to_string())
                .chain(g.rows.iter().map(|r| pretty(&r.gauss_sum)))
                .collect::<Vec<_>>(),
        );
        t.push(
            std::iter::once("Image under f".to_string())
                .chain(g.rows.iter().map(|r| r.image.clone().unwrap_or_default()))
                .collect::<Vec<_>>(),
        );
        out += &format!(
            "\n### n = {n}\n\n{}\nf preserves χ: {}\n",
            t.markdown(),
            yes_no(g.exchange_preserves_chi)
        );
    }
    Ok(out)
}

/// First differing line, 1-based.
fn first_difference(want: &str, got: &str) -> Option<(usize, String, String)> {
    let (mut w, mut g) = (want.lines(), got.lines());
    for i in 1.. {
        match (w.next(), g.next()) {
            (None, None) => return None,
            (a, b) if a == b => continue,
            (a, b) => {
                return Some((
                    i,
                    a.unwrap_or("<end>").to_string(),
                    b.unwrap_or("<end>").to_string(),
                ))
            }
        }
    }
    None
}

pub fn run(tables: Tables, n_max: usize, modulus: u32) -> Result<Report, Failure> {
    let limit = if tables == Tables::Gauss {
        GAUSS_LIMIT
    } else {
        INTRO_LIMIT
    };
    if !(1..=limit).contains(&n_max) {
        return Err(Failure::new(
            "input",
            format!("--n-max must be in 1..={limit} for these tables"),
        ));
    }
    let mut parts: Vec<(&str, &str, String)> = Vec::new();
    if matches!(tables, Tables::Intro | Tables::All) {
        parts.push(("cases", "criterion 1", cases(n_max, modulus)?));
        parts.push(("verdicts", "criterion 2", verdicts(n_max, modulus)?));
    }
    if matches!(tables, Tables::Gauss | Tables::All) {
        parts.push(("gauss", "criterion 4", gauss(n_max, modulus)?));
    }
    let mut report = Report::default();
    for (i, (name, id, text)) in parts.iter().enumerate() {
        if i > 0 {
            report.text.push('\n');
        }
        report.text += text;
        match GOLDENS.iter().find(|(g, k, _)| g == name && *k == n_max) {
            None => eprintln!("no bundled {name} golden for n-max {n_max}; not diffed"),
            Some((_, _, want)) => {
                if let Some((line, w, g)) = first_difference(want, text) {
                    report.problems.push(Problem {
                        id: id.to_string(),
                        detail: format!("{name} table differs from golden at line {line}: expected {w:?}, got {g:?}"),
                    });
                }
            }
        }
    }
    Ok(report)
}
