use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use tybraid_core::classify::classify;
use tybraid_core::crossed::classify_crossed;
use tybraid_core::json::{BraidingJson, ClassificationJson, CrossedBraidingJson, DataJson};
use tybraid_core::{Case, TYData};

use crate::cache::Cache;
use crate::report::{opt_sign, pretty_json, to_json, Failure, Format, Report, Table};
use crate::Target;

fn cached<B: Serialize + DeserializeOwned>(
    cache: Option<&Path>,
    kind: &str,
    data: &TYData,
    modulus: u32,
    compute: impl FnOnce() -> Result<ClassificationJson<B>, Failure>,
) -> Result<ClassificationJson<B>, Failure> {
    let key = DataJson::from(data);
    let Some(path) = cache else { return compute() };
    let mut c = Cache::open(path, modulus)?;
    if c.dropped > 0 {
        eprintln!("cache: dropped {} stale line(s)", c.dropped);
    }
    if let Some(hit) = c.get(kind, &key)? {
        eprintln!("cache: hit");
        return Ok(hit);
    }
    eprintln!("cache: miss");
    let fresh = compute()?;
    c.put(kind, &key, &fresh)?;
    Ok(fresh)
}

fn table<B>(c: &ClassificationJson<B>) -> Table {
    let mut t = Table::new([
        "class",
        "size",
        "sgn_sigma",
        "epsilon",
        "sigma_w",
        "sigma3(1)",
        "pi0",
        "pi0 formula",
    ]);
    for (i, cl) in c.classes.iter().enumerate() {
        let inv = &cl.invariants;
        let p = c.pi0_aut_br_orders.get(i);
        t.push([
            (i + 1).to_string(),
            cl.size.to_string(),
            opt_sign(inv.sgn_sigma).to_string(),
            opt_sign(inv.epsilon).to_string(),
            opt_sign(inv.sigma_w).to_string(),
            inv.sigma3_1.as_ref().map(pretty_json).unwrap_or_default(),
            p.map(|p| p.count.to_string()).unwrap_or_default(),
            p.and_then(|p| p.formula)
                .map(|f| f.to_string())
                .unwrap_or_default(),
        ]);
    }
    t
}

fn render<B: Serialize>(
    c: &ClassificationJson<B>,
    data: &TYData,
    format: Format,
) -> Result<String, Failure> {
    match format {
        Format::Json => to_json(c),
        Format::Csv => table(c).csv(),
        Format::Markdown => {
            let total: usize = c.classes.iter().map(|cl| cl.size).sum();
            let mut out = format!(
                "## {} on A = (Z/2)^{}, tau {}\n\n{} braiding(s) in {} class(es)\n\n",
                data.case,
                data.group.dim,
                crate::report::sign(data.tau_sign),
                total,
                c.classes.len()
            );
            if let Some(o) = &c.obstruction {
                out += &format!("obstruction: {o}\n\n");
            }
            if !c.classes.is_empty() {
                out += &table(c).markdown();
            }
            Ok(out)
        }
    }
}

pub fn run(
    target: &Target,
    format: Format,
    cache: Option<&Path>,
    modulus: u32,
) -> Result<Report, Failure> {
    let data = target.data(modulus)?;
    let text = if data.case == Case::ComplexComplex {
        let c = cached::<CrossedBraidingJson>(cache, "crossed", &data, modulus, || {
            let c = classify_crossed(&data).map_err(|e| Failure::new("classify", e))?;
            Ok((&c).into())
        })?;
        render(&c, &data, format)?
    } else {
        let c = cached::<BraidingJson>(cache, "braided", &data, modulus, || {
            let c = classify(&data).map_err(|e| Failure::new("classify", e))?;
            Ok((&c).into())
        })?;
        render(&c, &data, format)?
    };
    Ok(Report::ok(text))
}
