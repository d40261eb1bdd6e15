//! Summary computations: orbit and class counts per case, symmetry and
//! nondegeneracy verdicts, Gauss sums of the forms on `h^n ⊕ l^2`, and
//! counts of admissible forms.

use std::collections::HashMap;

use thiserror::Error;

use crate::braiding::{double_braiding_invariants, solve_braidings, Braiding, SolveError};
use crate::classify::{classify, ClassifyError};
use crate::crossed::classify_crossed;
use crate::data::{DataError, TYData};
use crate::f2::{aut_order_formula, count_aut, Automorphism, Bicharacter, Element, F2Error};
use crate::qform::{
    enumerate_qforms, orbits_and_stabilizers, qf_minus_count, qf_plus_count, sign_of,
    stabilizer_formula, Field, FormError, QForm,
};
use crate::scalar::CycScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurveyError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    F2(#[from] F2Error),
}

/// Columns of the orbit and class count table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    SplitReal,
    RealComplexId,
    RealComplexConj,
    RealQuaternionic,
    ComplexCrossed,
}

impl Column {
    pub const ALL: [Column; 5] = [
        Column::SplitReal,
        Column::RealComplexId,
        Column::RealComplexConj,
        Column::RealQuaternionic,
        Column::ComplexCrossed,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Column::SplitReal => "Split Real",
            Column::RealComplexId => "R/C, id",
            Column::RealComplexConj => "R/C, conj",
            Column::RealQuaternionic => "R/H",
            Column::ComplexCrossed => "C/C*",
        }
    }

    pub fn data(self, n: usize, tau_sign: i8, modulus: u32) -> Result<TYData, DataError> {
        match self {
            Column::SplitReal => TYData::split_real(n, tau_sign, modulus),
            Column::RealComplexId => TYData::real_complex(n, false, tau_sign, modulus),
            Column::RealComplexConj => TYData::real_complex(n, true, tau_sign, modulus),
            Column::RealQuaternionic => TYData::real_quaternionic(n, tau_sign, modulus),
            Column::ComplexCrossed => TYData::complex_complex(n, tau_sign, modulus),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCell {
    pub n: usize,
    pub tau_sign: i8,
    /// Orbits of admissible forms on the even part.
    pub orbits: usize,
    pub extending: usize,
    /// Classes per extending orbit, in orbit order.
    pub per_orbit: Vec<usize>,
    pub total: usize,
    /// Whether `sigma3(1)` is constant on every class.
    pub sigma3_invariant: bool,
}

/// Automorphism orbits of the admissible forms on one bicharacter.
#[derive(Debug, Clone)]
pub struct FormOrbits {
    pub chi: Bicharacter,
    pub modulus: u32,
    pub count: usize,
    index: HashMap<Vec<u32>, usize>,
}

impl FormOrbits {
    pub fn new(chi: &Bicharacter, field: Field, modulus: u32) -> Result<FormOrbits, SurveyError> {
        let forms = enumerate_qforms(chi, field, modulus)?;
        let report = orbits_and_stabilizers(chi, &forms, None)?;
        let mut index = HashMap::new();
        for (k, o) in report.orbits.iter().enumerate() {
            for &i in &o.members {
                index.insert(forms[i].basis_values(), k);
            }
        }
        Ok(FormOrbits {
            chi: chi.clone(),
            modulus,
            count: report.orbits.len(),
            index,
        })
    }

    /// Orbit of the form with these basis exponents.
    pub fn orbit_of(&self, basis_exps: &[u32]) -> Option<usize> {
        self.index.get(basis_exps).copied()
    }
}

fn even_key(data: &TYData, sigma1: &[CycScalar]) -> Vec<u32> {
    data.group
        .even_basis()
        .iter()
        .map(|&x| {
            sigma1[x as usize]
                .unit_exponent()
                .expect("unit coefficient")
        })
        .collect()
}

fn tally(orbits: &FormOrbits, keys: &[Vec<u32>]) -> Vec<usize> {
    let mut per = vec![0usize; orbits.count];
    for k in keys {
        per[orbits.orbit_of(k).expect("restriction is admissible")] += 1;
    }
    per.into_iter().filter(|&c| c > 0).collect()
}

pub fn orbit_cell(
    column: Column,
    n: usize,
    tau_sign: i8,
    modulus: u32,
) -> Result<OrbitCell, SurveyError> {
    let data = column.data(n, tau_sign, modulus)?;
    let even_chi = data.chi.restrict(&data.group.even_basis());
    orbit_cell_with(
        column,
        n,
        tau_sign,
        &FormOrbits::new(&even_chi, Field::Real, modulus)?,
    )
}

/// As `orbit_cell`, reusing orbits computed for the even part.
pub fn orbit_cell_with(
    column: Column,
    n: usize,
    tau_sign: i8,
    orbits: &FormOrbits,
) -> Result<OrbitCell, SurveyError> {
    let data = column.data(n, tau_sign, orbits.modulus)?;
    let even_chi = data.chi.restrict(&data.group.even_basis());
    let own;
    let orbits = if even_chi == orbits.chi {
        orbits
    } else {
        own = FormOrbits::new(&even_chi, Field::Real, data.modulus)?;
        &own
    };
    let (keys, invariant): (Vec<Vec<u32>>, bool) = if column == Column::ComplexCrossed {
        let c = classify_crossed(&data)?;
        let keys = c
            .classes
            .iter()
            .map(|cl| even_key(&data, &c.braidings[cl.representative].coeffs.sigma1));
        (
            keys.collect(),
            c.classes.iter().all(|cl| cl.epsilon.is_some()),
        )
    } else {
        let c = classify(&data)?;
        let keys = c
            .classes
            .iter()
            .map(|cl| even_key(&data, &c.braidings[cl.representative].coeffs.sigma1));
        (
            keys.collect(),
            c.classes.iter().all(|cl| cl.invariants.epsilon.is_some()),
        )
    };
    let per_orbit = tally(orbits, &keys);
    Ok(OrbitCell {
        n,
        tau_sign,
        orbits: orbits.count,
        extending: per_orbit.len(),
        per_orbit,
        total: keys.len(),
        sigma3_invariant: invariant,
    })
}

/// Every column at one `(n, tau)`.
pub fn orbit_row(
    n: usize,
    tau_sign: i8,
    modulus: u32,
) -> Result<Vec<(Column, OrbitCell)>, SurveyError> {
    let orbits = FormOrbits::new(&Bicharacter::standard_hyperbolic(n), Field::Real, modulus)?;
    Column::ALL
        .iter()
        .map(|&c| Ok((c, orbit_cell_with(c, n, tau_sign, &orbits)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitComplexCell {
    pub ell: usize,
    pub n: usize,
    pub tau_sign: i8,
    pub orbits: usize,
    pub per_orbit: Vec<usize>,
    pub total: usize,
}

/// Counts for `chi = h^n ⊕ l^ell`.
pub fn split_complex_cell(
    ell: usize,
    n: usize,
    tau_sign: i8,
    modulus: u32,
) -> Result<SplitComplexCell, SurveyError> {
    let data = TYData::split_complex(n, ell, tau_sign, modulus)?;
    let orbits = FormOrbits::new(&data.chi, Field::Complex, modulus)?;
    let c = classify(&data)?;
    let keys: Vec<Vec<u32>> = c
        .classes
        .iter()
        .map(|cl| even_key(&data, &c.braidings[cl.representative].coeffs.sigma1))
        .collect();
    Ok(SplitComplexCell {
        ell,
        n,
        tau_sign,
        orbits: orbits.count,
        per_orbit: tally(&orbits, &keys),
        total: keys.len(),
    })
}

/// Rows of the symmetry and nondegeneracy table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Row {
    SplitReal,
    RealQuaternionic,
    RcIdSameSign,
    RcIdOppositeSign,
    RcConj,
    SplitComplex(usize),
}

impl Row {
    pub const ALL: [Row; 8] = [
        Row::SplitReal,
        Row::RealQuaternionic,
        Row::RcIdSameSign,
        Row::RcIdOppositeSign,
        Row::RcConj,
        Row::SplitComplex(0),
        Row::SplitComplex(1),
        Row::SplitComplex(2),
    ];

    pub fn label(self) -> String {
        match self {
            Row::SplitReal => "Split Real".into(),
            Row::RealQuaternionic => "Real/Quaternionic".into(),
            Row::RcIdSameSign => "Real/Complex, g = id, sgn(σ) = sgn(τ)".into(),
            Row::RcIdOppositeSign => "Real/Complex, g = id, sgn(σ) = −sgn(τ)".into(),
            Row::RcConj => "Real/Complex, g = conj".into(),
            Row::SplitComplex(l) => format!("Split Complex, |ℓ| = {l}"),
        }
    }

    fn data(self, n: usize, tau: i8, m: u32) -> Result<TYData, DataError> {
        match self {
            Row::SplitReal => TYData::split_real(n, tau, m),
            Row::RealQuaternionic => TYData::real_quaternionic(n, tau, m),
            Row::RcIdSameSign | Row::RcIdOppositeSign => TYData::real_complex(n, false, tau, m),
            Row::RcConj => TYData::real_complex(n, true, tau, m),
            Row::SplitComplex(l) => TYData::split_complex(n, l, tau, m),
        }
    }

    fn admits(self, b: &Braiding) -> bool {
        let same = b.sgn_sigma() == Some(b.data.tau_sign);
        match self {
            Row::RcIdSameSign => same,
            Row::RcIdOppositeSign => !same,
            _ => true,
        }
    }
}

/// One braiding's contribution to a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sample {
    pub n: usize,
    pub tau_sign: i8,
    pub group_trivial: bool,
    pub even_trivial: bool,
    pub same_sign: Option<bool>,
    pub symmetric: bool,
    pub nondegenerate: bool,
}

type Condition = (&'static str, fn(&Sample) -> bool);

const CONDITIONS: [Condition; 5] = [
    ("Always", |_| true),
    ("Never", |_| false),
    ("Only when sgn(σ) = sgn(τ)", |s| s.same_sign == Some(true)),
    ("Only when A0 = *", |s| s.even_trivial),
    ("Only when A = * and sgn(σ) = −sgn(τ)", |s| {
        s.group_trivial && s.same_sign == Some(false)
    }),
];

/// The first condition that holds on exactly the samples where `pick` holds.
pub fn verdict(samples: &[Sample], pick: impl Fn(&Sample) -> bool) -> String {
    CONDITIONS
        .iter()
        .find(|(_, cond)| samples.iter().all(|s| cond(s) == pick(s)))
        .map(|(name, _)| name.to_string())
        .unwrap_or_else(|| "Mixed".into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictRow {
    pub row: Row,
    pub symmetric: String,
    pub nondegenerate: String,
    pub samples: Vec<Sample>,
}

pub fn samples(row: Row, n_max: usize, modulus: u32) -> Result<Vec<Sample>, SurveyError> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for tau in [1i8, -1] {
            let data = row.data(n, tau, modulus)?;
            for b in solve_braidings(&data)?.iter().filter(|b| row.admits(b)) {
                let db = double_braiding_invariants(b);
                out.push(Sample {
                    n,
                    tau_sign: tau,
                    group_trivial: data.order() == 1,
                    even_trivial: data.group.even_elements().len() == 1,
                    same_sign: b.sgn_sigma().map(|s| s == tau),
                    symmetric: db.is_symmetric,
                    nondegenerate: db.is_nondegenerate,
                });
            }
        }
    }
    Ok(out)
}

/// Verdicts over `n = 0..=n_max` hyperbolic blocks and both signs of `tau`.
pub fn verdict_table(n_max: usize, modulus: u32) -> Result<Vec<VerdictRow>, SurveyError> {
    Row::ALL
        .iter()
        .map(|&row| {
            let s = samples(row, n_max, modulus)?;
            Ok(VerdictRow {
                row,
                symmetric: verdict(&s, |x| x.symmetric),
                nondegenerate: verdict(&s, |x| x.nondegenerate),
                samples: s,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRow {
    pub label: String,
    pub signs: (i8, i8, i8),
    pub gauss_sum: CycScalar,
    /// Class label of the image under the exchange automorphism.
    pub image: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussTable {
    pub n: usize,
    pub rows: Vec<GaussRow>,
    pub exchange_preserves_chi: bool,
}

fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

fn signs_label(k: i8, e1: i8, e2: i8) -> String {
    format!("({}{}{})", sign_char(k), sign_char(e1), sign_char(e2))
}

pub const GAUSS_ORDER: [(i8, i8, i8); 6] = [
    (1, -1, -1),
    (1, 1, 1),
    (1, -1, 1),
    (-1, -1, -1),
    (-1, 1, 1),
    (-1, -1, 1),
];

/// `sigma(kappa, e1, e2)` on `h^n ⊕ l^2`: sign `kappa` on the hyperbolic
/// part and `sigma(g_k) = i e_k`.
pub fn gauss_form(n: usize, signs: (i8, i8, i8), modulus: u32) -> Result<QForm, FormError> {
    let chi = Bicharacter::normal_form(n, 2);
    let half = modulus / 2;
    let quarter = modulus / 4;
    let mut basis = vec![0u32; 2 * n + 2];
    if signs.0 < 0 {
        basis[0] = half;
        basis[1] = half;
    }
    basis[2 * n] = if signs.1 > 0 { quarter } else { 3 * quarter };
    basis[2 * n + 1] = if signs.2 > 0 { quarter } else { 3 * quarter };
    QForm::extend_from_basis(&chi, &basis, Field::Complex, modulus)
}

/// `f(a1) = a1 g1 g2`, `f(b1) = b1 g1 g2`, `f(g1) = a1 b1 g1`, `f(g2) = a1 b1 g2`.
pub fn exchange_automorphism(n: usize) -> Automorphism {
    let (a1, b1): (Element, Element) = (1, 2);
    let (g1, g2): (Element, Element) = (1 << (2 * n), 1 << (2 * n + 1));
    let mut images: Vec<Element> = (0..2 * n + 2).map(|i| 1 << i).collect();
    images[0] = a1 ^ g1 ^ g2;
    images[1] = b1 ^ g1 ^ g2;
    images[2 * n] = a1 ^ b1 ^ g1;
    images[2 * n + 1] = a1 ^ b1 ^ g2;
    Automorphism { images }
}

fn read_signs(q: &QForm, n: usize, modulus: u32) -> Option<(i8, i8, i8)> {
    let k = sign_of(&q.gauss_sum_over(0..1u32 << (2 * n))).ok()?;
    let eps = |x: Element| match q.exp(x) {
        e if e == modulus / 4 => Some(1),
        e if e == 3 * modulus / 4 => Some(-1),
        _ => None,
    };
    let (e1, e2) = (eps(1 << (2 * n))?, eps(1 << (2 * n + 1))?);
    // swapping g1 and g2 identifies (k,+,-) with (k,-,+)
    Some(if e1 != e2 { (k, -1, 1) } else { (k, e1, e2) })
}

/// Gauss sums of the six forms and the action of the exchange automorphism; needs `n >= 1`.
pub fn gauss_table(n: usize, modulus: u32) -> Result<GaussTable, SurveyError> {
    let chi = Bicharacter::normal_form(n, 2);
    let f = exchange_automorphism(n);
    let preserves = f.is_invertible() && f.preserves(&chi);
    let mut rows = Vec::new();
    for &s in &GAUSS_ORDER {
        let q = gauss_form(n, s, modulus)?;
        let image = if preserves {
            read_signs(&q.act(&f)?, n, modulus)
        } else {
            None
        };
        rows.push(GaussRow {
            label: signs_label(s.0, s.1, s.2),
            signs: s,
            gauss_sum: q.gauss_sum(),
            image: image.map(|(a, b, c)| signs_label(a, b, c)),
        });
    }
    Ok(GaussTable {
        n,
        rows,
        exchange_preserves_chi: preserves,
    })
}

/// Enumerated and formula counts on `(K4^n, h^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormCounts {
    pub n: usize,
    pub qf_plus: u128,
    pub qf_minus: u128,
    pub qf_plus_formula: u128,
    pub qf_minus_formula: u128,
    pub aut: Option<u128>,
    pub aut_formula: u128,
    pub stab_plus: Option<u128>,
    pub stab_minus: Option<u128>,
    pub stab_plus_formula: u128,
    pub stab_minus_formula: u128,
}

/// Counts by enumeration; the automorphism group is enumerated only when `with_aut`.
pub fn form_counts(n: usize, with_aut: bool, modulus: u32) -> Result<FormCounts, SurveyError> {
    let chi = Bicharacter::standard_hyperbolic(n);
    let forms = enumerate_qforms(&chi, Field::Real, modulus)?;
    let mut plus = 0u128;
    let mut minus = 0u128;
    for q in &forms {
        if q.sign()? > 0 {
            plus += 1;
        } else {
            minus += 1;
        }
    }
    let (aut, stab_plus, stab_minus) = if with_aut {
        let report = orbits_and_stabilizers(&chi, &forms, None)?;
        let stab = |s: i8| -> Result<Option<u128>, SurveyError> {
            for o in &report.orbits {
                if forms[o.members[0]].sign()? == s {
                    return Ok(Some(o.stabilizer_order as u128));
                }
            }
            Ok(None)
        };
        let aut = if forms.is_empty() {
            count_aut(&chi, None)?
        } else {
            report.aut_order
        };
        (Some(aut as u128), stab(1)?, stab(-1)?)
    } else {
        (None, None, None)
    };
    let n32 = n as u32;
    Ok(FormCounts {
        n,
        qf_plus: plus,
        qf_minus: minus,
        qf_plus_formula: qf_plus_count(n32),
        qf_minus_formula: qf_minus_count(n32),
        aut,
        aut_formula: aut_order_formula(n32),
        stab_plus,
        stab_minus,
        stab_plus_formula: stabilizer_formula(n32, 1),
        stab_minus_formula: stabilizer_formula(n32, -1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_real_cell() {
        let c = orbit_cell(Column::SplitReal, 1, 1, 16).unwrap();
        assert_eq!(
            (c.orbits, c.extending, c.per_orbit.clone(), c.total),
            (2, 1, vec![2], 2)
        );
        assert!(c.sigma3_invariant);
    }

    #[test]
    fn verdict_picks_first_match() {
        let s = |sym| Sample {
            n: 0,
            tau_sign: 1,
            group_trivial: true,
            even_trivial: true,
            same_sign: Some(true),
            symmetric: sym,
            nondegenerate: false,
        };
        assert_eq!(verdict(&[s(true), s(true)], |x| x.symmetric), "Always");
        assert_eq!(verdict(&[s(false)], |x| x.symmetric), "Never");
    }
}
