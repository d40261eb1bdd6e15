//! Z/2-crossed braidings on complex/complex data, with `T = F(id, conj, kappa)`
//! and `gamma_{0,0}`, `gamma_{1,0}`, `gamma_{0,1}` the identity.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::braiding::{
    assignments, extend_sigma1, Search, SolveError, Stage, FULL_LIMIT, STAGED_LIMIT,
};
use crate::classify::{
    partition, ClassInvariants, ClassifyError, EquivFunctor, Member, Pi0, Variant,
};
use crate::data::{Case, TYData};
use crate::equations::{self, Coefficients, Ctx, Partial, Violation, S0, S1, S2, S3, SK};
use crate::f2::{for_each_aut, wall_normalize, Automorphism};
use crate::qform::{enumerate_qforms, stabilizer_formula, Field, QForm};
use crate::scalar::CycScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedBraiding {
    pub data: Arc<TYData>,
    /// Includes `kappa`, `gamma_a` and `gamma_m`.
    pub coeffs: Coefficients,
    pub form: Option<QForm>,
    pub epsilon: Option<i8>,
}

impl CrossedBraiding {
    pub fn from_coefficients(data: Arc<TYData>, coeffs: Coefficients) -> CrossedBraiding {
        let exps: Option<Vec<u32>> = coeffs.sigma1.iter().map(|x| x.unit_exponent()).collect();
        let form = exps.and_then(|e| QForm::from_table(&data.chi, e, data.modulus).ok());
        let epsilon = coeffs.sigma3[0].real_sign();
        CrossedBraiding {
            data,
            coeffs,
            form,
            epsilon,
        }
    }

    pub fn kappa(&self) -> Option<i8> {
        self.coeffs.kappa.real_sign()
    }

    pub fn gamma_m(&self) -> &CycScalar {
        &self.coeffs.gamma_m
    }

    pub fn sigma3_one(&self) -> &CycScalar {
        &self.coeffs.sigma3[0]
    }

    pub fn sgn_sigma(&self) -> Option<i8> {
        self.form.as_ref().and_then(|q| q.sign().ok())
    }

    pub fn check(&self) -> Vec<Violation> {
        check_heptagons(self)
    }
}

/// Failing instances of the heptagon families and of the constraints on
/// `kappa` and `gamma`.
pub fn check_heptagons(cb: &CrossedBraiding) -> Vec<Violation> {
    let data = &cb.data;
    let m = data.modulus;
    let one = CycScalar::one(m);
    let Ok(ctx) = Ctx::new(data) else {
        return vec![];
    };
    let c = &cb.coeffs;
    let mut out = equations::structural_violations(data, c);
    out.extend(equations::violations(data, &ctx, c));
    let mut push = |eq: &str, at: Vec<u32>, lhs: CycScalar, rhs: CycScalar| {
        if lhs != rhs {
            out.push(Violation {
                eq: eq.into(),
                at,
                lhs,
                rhs,
            });
        }
    };
    push("KAPPA", vec![], &c.kappa * &c.kappa, one.clone());
    for a in data.elements() {
        push("CB-G1", vec![a], c.gamma_a[a as usize].clone(), one.clone());
        let g = &c.gamma_a[a as usize];
        push("CB-GR", vec![a], g.clone(), g.conjugate());
    }
    push(
        "CB-G2",
        vec![],
        &c.gamma_m * &c.gamma_m.conjugate(),
        one.clone(),
    );
    push("CB-GR", vec![], c.gamma_m.clone(), c.gamma_m.conjugate());
    out
}

/// Solver output, with the reason when `(A, chi)` is not hyperbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedSolutions {
    pub braidings: Vec<CrossedBraiding>,
    pub obstruction: Option<String>,
}

fn crossed_coefficients(data: &TYData, q: &QForm, kappa: i8, s: &CycScalar) -> Coefficients {
    let values: Vec<CycScalar> = data.elements().map(|a| q.value(a)).collect();
    crossed_coefficients_from_values(data, &values, kappa, s)
}

/// Crossed coefficients with `sigma2 = sigma1`, `sigma3 = s sigma1` and `gamma_m = kappa`.
pub fn crossed_coefficients_from_values(
    data: &TYData,
    sigma1: &[CycScalar],
    kappa: i8,
    s: &CycScalar,
) -> Coefficients {
    let m = data.modulus;
    let order = data.order();
    let mut c = Coefficients::filled(order, &CycScalar::one(m));
    for a in data.elements() {
        for b in data.elements() {
            c.sigma0[a as usize * order + b as usize] = data.chi_scalar(a, b);
        }
        let s1 = sigma1[a as usize].clone();
        c.sigma3[a as usize] = s * &s1;
        c.sigma2[a as usize] = s1.clone();
        c.sigma1[a as usize] = s1;
    }
    c.kappa = CycScalar::from_int(m, kappa as i64);
    c.gamma_m = c.kappa.clone();
    c
}

fn check_case(data: &TYData) -> Result<(), SolveError> {
    if data.case != Case::ComplexComplex {
        return Err(SolveError::WrongCase(data.case));
    }
    let v = data.validate();
    if !v.is_empty() {
        return Err(SolveError::InvalidData(
            v.iter()
                .map(|x| x.detail.clone())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    Ok(())
}

/// All crossed braidings from the reduced system: `kappa` is the sign of
/// `tau Sigma(sigma)`, `sigma3(1)^2 = kappa tau Sigma(sigma)`.
pub fn solve_crossed(data: &TYData) -> Result<CrossedSolutions, SolveError> {
    check_case(data)?;
    let wall = wall_normalize(&data.chi)?;
    if wall.l_blocks > 0 {
        return Ok(CrossedSolutions {
            braidings: Vec::new(),
            obstruction: Some(format!(
                "chi has {} self-pairing -1 block(s); sigma1(a)^2 = chi(a,a) = 1 is impossible",
                wall.l_blocks
            )),
        });
    }
    let m = data.modulus;
    let tau = data.tau()?;
    let arc = Arc::new(data.clone());
    let mut out = Vec::new();
    for q in enumerate_qforms(&data.chi, Field::Real, m)? {
        let t = &tau * &q.gauss_sum();
        let kappa = t
            .real_sign()
            .ok_or_else(|| SolveError::InvalidData("tau Sigma is not real".into()))?;
        let r = &t * &CycScalar::from_int(m, kappa as i64);
        let roots = r.sqrt_candidates()?;
        if roots.is_empty() {
            return Err(SolveError::ModulusTooSmall {
                have: m,
                need: 2 * m,
            });
        }
        for (i, s) in roots.iter().enumerate() {
            out.push(CrossedBraiding {
                data: arc.clone(),
                coeffs: crossed_coefficients(data, &q, kappa, s),
                form: Some(q.clone()),
                epsilon: Some(if i == 0 { 1 } else { -1 }),
            });
        }
    }
    Ok(CrossedSolutions {
        braidings: out,
        obstruction: None,
    })
}

fn accept(data: &TYData, c: &Coefficients) -> bool {
    let cb = CrossedBraiding {
        data: Arc::new(data.clone()),
        coeffs: c.clone(),
        form: None,
        epsilon: None,
    };
    check_heptagons(&cb).is_empty()
}

/// Exhaustive search over unit coefficients, with `kappa` in the outer loop
/// and `gamma_m` ranging over `mu_4`.
pub fn brute_force_crossed(
    data: &TYData,
    stage: Stage,
) -> Result<Vec<CrossedBraiding>, SolveError> {
    check_case(data)?;
    let order = data.order();
    let limit = match stage {
        Stage::Full => FULL_LIMIT,
        Stage::Staged => STAGED_LIMIT,
    };
    if order > limit {
        return Err(SolveError::Capacity {
            what: "crossed brute force",
            order,
            limit,
        });
    }
    if data.modulus < 16 {
        return Err(SolveError::ModulusTooSmall {
            have: data.modulus,
            need: 16,
        });
    }
    let s = Search {
        data,
        ctx: Ctx::new(data)?,
        fams: equations::families(data.case),
        m: data.modulus,
    };
    let mut found = match stage {
        Stage::Full => full_crossed(&s),
        Stage::Staged => staged_crossed(&s),
    };
    found.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    found.dedup();
    let arc = Arc::new(data.clone());
    Ok(found
        .into_iter()
        .map(|c| CrossedBraiding::from_coefficients(arc.clone(), c))
        .collect())
}

fn full_crossed(s: &Search<'_>) -> Vec<Coefficients> {
    let data = s.data;
    let order = data.order();
    let m = s.m;
    let signs = s.mu(2);
    let mu4 = s.mu(4);
    let mu16 = s.mu(16);
    let all = S0 | S1 | S2 | S3;
    let f0 = s.select(S0, S0);
    let f1 = s.select(S1, S0 | S1);
    let f2 = s.select(S2, S0 | S1 | S2);
    let f3 = s.select(S3, all);
    let fk = s.select(SK, all | SK);
    let mut out = Vec::new();
    let mut c = Coefficients::filled(order, &CycScalar::one(m));
    for kappa in &signs {
        c.kappa = kappa.clone();
        for v0 in assignments(&signs, order * order) {
            c.sigma0 = v0;
            if !equations::holds(&s.ctx, &Partial::full(&c), &f0) {
                continue;
            }
            for v1 in assignments(&mu4, order) {
                c.sigma1 = v1;
                if !equations::holds(&s.ctx, &Partial::full(&c), &f1) {
                    continue;
                }
                for v2 in assignments(&mu4, order) {
                    c.sigma2 = v2;
                    if !equations::holds(&s.ctx, &Partial::full(&c), &f2) {
                        continue;
                    }
                    for v3 in assignments(&mu16, order) {
                        c.sigma3 = v3;
                        if !equations::holds(&s.ctx, &Partial::full(&c), &f3) {
                            continue;
                        }
                        for g in &mu4 {
                            c.gamma_m = g.clone();
                            if equations::holds(&s.ctx, &Partial::full(&c), &fk) && accept(data, &c)
                            {
                                out.push(c.clone());
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn staged_crossed(s: &Search<'_>) -> Vec<Coefficients> {
    let data = s.data;
    let order = data.order();
    let m = s.m;
    let mu4 = s.mu(4);
    let f1 = s.select(S1, S0 | S1);
    let mut out = Vec::new();
    for kappa in s.mu(2) {
        let mut base = Coefficients::filled(order, &CycScalar::one(m));
        base.kappa = kappa;
        for a in data.elements() {
            for b in data.elements() {
                base.sigma0[a as usize * order + b as usize] = data.chi_scalar(a, b);
            }
        }
        let mut sigma1s = Vec::new();
        let mut known = vec![false; order];
        extend_sigma1(s, &f1, &mu4, &mut base, &mut known, 0, &mut sigma1s);
        for s1 in sigma1s {
            base.sigma1 = s1;
            for s3 in s.mu(16) {
                for g in &mu4 {
                    let mut c = base.clone();
                    c.gamma_m = g.clone();
                    for a in data.elements() {
                        let i = a as usize;
                        c.sigma2[i] = c.sigma1[i].clone();
                        c.sigma3[i] = &s3 * &c.sigma1[i];
                    }
                    if accept(data, &c) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

/// `(F(f, xi, kappa), eta)` with `eta_a = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedEquivalence {
    pub functor: EquivFunctor,
    pub eta_m: i8,
}

/// Whether `(F, eta)` is a crossed braided equivalence from `b` to `b2`:
/// `kappa' = kappa`, `chi(f(a), f(b)) = chi(a,b)`, `sigma1'(f(a)) = sigma1(a)`
/// and `sigma3'(f(a)) eta_m = sigma3(a)`.
pub fn is_crossed_equivalence(
    e: &CrossedEquivalence,
    b: &CrossedBraiding,
    b2: &CrossedBraiding,
) -> Result<bool, ClassifyError> {
    let data = &b.data;
    if b.data != b2.data {
        return Err(ClassifyError::DataMismatch);
    }
    if e.functor.case != Case::ComplexComplex || data.case != Case::ComplexComplex {
        return Err(ClassifyError::CaseMismatch {
            functor: e.functor.case,
            data: data.case,
        });
    }
    let f = &e.functor.f;
    if f.dim() != data.group.dim || !f.is_invertible() || !f.preserves(&data.chi) {
        return Ok(false);
    }
    if e.eta_m.abs() != 1
        || !matches!(e.functor.kappa, Some(1) | Some(-1))
        || e.functor.lambda.is_some()
    {
        return Ok(false);
    }
    let eta = CycScalar::from_int(data.modulus, e.eta_m as i64);
    let (c, c2) = (&b.coeffs, &b2.coeffs);
    Ok(c.kappa == c2.kappa
        && data.elements().all(|a| {
            let fa = f.apply(a) as usize;
            let i = a as usize;
            c2.sigma1[fa] == c.sigma1[i] && &c2.sigma3[fa] * &eta == c.sigma3[i]
        }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedClass {
    pub representative: usize,
    pub witnesses: Vec<(usize, CrossedEquivalence)>,
    pub sgn_sigma: Option<i8>,
    pub epsilon: Option<i8>,
    pub pi0: Pi0,
}

impl CrossedClass {
    pub fn size(&self) -> usize {
        self.witnesses.len() + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedClassification {
    pub data: Arc<TYData>,
    pub braidings: Vec<CrossedBraiding>,
    pub obstruction: Option<String>,
    pub classes: Vec<CrossedClass>,
    /// Pairs `(i, j)` joined by an equivalence with identity functor, and its `eta_m`.
    pub strong: Vec<(usize, usize, i8)>,
}

fn crossed_variants() -> Vec<Variant> {
    let mut out = Vec::new();
    for xi in [false, true] {
        for kappa in [1, -1] {
            for eta in [1, -1] {
                out.push(Variant {
                    xi,
                    lambda_exp: None,
                    kappa: Some(kappa),
                    eta_m: Some(eta),
                });
            }
        }
    }
    out
}

fn crossed_member(b: &CrossedBraiding) -> Member {
    let exp = |x: &CycScalar| x.unit_exponent().expect("unit coefficient");
    Member {
        sigma1: b.coeffs.sigma1.iter().map(exp).collect(),
        sigma3_one: exp(&b.coeffs.sigma3[0]),
    }
}

fn equivalence(f: Automorphism, v: &Variant, modulus: u32) -> CrossedEquivalence {
    CrossedEquivalence {
        functor: v.functor(Case::ComplexComplex, f, modulus),
        eta_m: v.eta_m.expect("crossed variant"),
    }
}

/// `|H_sgn| * 4`: the stabilizer of the form times the choices of `xi` and `kappa`.
pub fn crossed_pi0_formula(b: &CrossedBraiding) -> Option<u128> {
    let sgn = b.sgn_sigma()?;
    Some(stabilizer_formula((b.data.group.dim / 2) as u32, sgn) * 4)
}

/// `|pi0 Aut_br(b)|` counted over `(F(f, xi, kappa), eta)` fixing `b`.
pub fn crossed_pi0(b: &CrossedBraiding) -> Result<Pi0, ClassifyError> {
    let data = &b.data;
    let mut count = 0u64;
    let mut err = None;
    for_each_aut(&data.chi, None, |f| {
        for v in crossed_variants() {
            match is_crossed_equivalence(&equivalence(f.clone(), &v, data.modulus), b, b) {
                Ok(true) => count += 1,
                Ok(false) => {}
                Err(e) => {
                    err = Some(e);
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(Pi0 {
        count,
        formula: crossed_pi0_formula(b),
    })
}

pub fn classify_crossed(data: &TYData) -> Result<CrossedClassification, ClassifyError> {
    let sol = solve_crossed(data)?;
    let data = Arc::new(data.clone());
    let bs = sol.braidings;
    let members: Vec<Member> = bs.iter().map(crossed_member).collect();
    let raw = partition(&data, &members, &crossed_variants())?;
    let mut classes = Vec::new();
    for rc in raw {
        let rep = &bs[rc.rep];
        let mut witnesses = Vec::new();
        for (j, f, v) in rc.members {
            let e = equivalence(f, &v, data.modulus);
            if !is_crossed_equivalence(&e, rep, &bs[j])? {
                return Err(ClassifyError::WitnessRejected { member: j });
            }
            witnesses.push((j, e));
        }
        let ids: Vec<usize> = std::iter::once(rc.rep)
            .chain(witnesses.iter().map(|w| w.0))
            .collect();
        let sgn = ids.iter().map(|&i| bs[i].sgn_sigma());
        let eps = ids.iter().map(|&i| bs[i].epsilon);
        let inv = |mut it: Box<dyn Iterator<Item = Option<i8>> + '_>| {
            let first = it.next().flatten()?;
            it.all(|x| x == Some(first)).then_some(first)
        };
        classes.push(CrossedClass {
            representative: rc.rep,
            sgn_sigma: inv(Box::new(sgn)),
            epsilon: inv(Box::new(eps)),
            witnesses,
            pi0: Pi0 {
                count: rc.fixing,
                formula: crossed_pi0_formula(rep),
            },
        });
    }
    let id = Automorphism::identity(data.group.dim);
    let mut strong = Vec::new();
    for (i, b) in bs.iter().enumerate() {
        for (j, b2) in bs.iter().enumerate() {
            for eta_m in [1, -1] {
                let v = Variant {
                    xi: false,
                    lambda_exp: None,
                    kappa: Some(1),
                    eta_m: Some(eta_m),
                };
                if is_crossed_equivalence(&equivalence(id.clone(), &v, data.modulus), b, b2)? {
                    strong.push((i, j, eta_m));
                }
            }
        }
    }
    Ok(CrossedClassification {
        data,
        braidings: bs,
        obstruction: sol.obstruction,
        classes,
        strong,
    })
}

impl ClassInvariants {
    pub fn of_crossed(b: &CrossedBraiding) -> ClassInvariants {
        ClassInvariants {
            sgn_sigma: b.sgn_sigma(),
            epsilon: b.epsilon,
            sigma_w: None,
            sigma3_one: Some(b.sigma3_one().clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::Bicharacter;

    const N: u32 = 16;

    #[test]
    fn counts() {
        let d = TYData::complex_complex(1, 1, N).unwrap();
        let sol = solve_crossed(&d).unwrap();
        assert_eq!(sol.braidings.len(), 8);
        for b in &sol.braidings {
            assert_eq!(b.check(), vec![]);
            assert_eq!(b.kappa(), b.sgn_sigma());
        }
        let d0 = TYData::complex_complex(0, 1, N).unwrap();
        assert_eq!(solve_crossed(&d0).unwrap().braidings.len(), 2);
        let dl = TYData::ungraded(Case::ComplexComplex, Bicharacter::ell(1), 1, N).unwrap();
        let sol = solve_crossed(&dl).unwrap();
        assert!(sol.braidings.is_empty() && sol.obstruction.is_some());
    }

    #[test]
    fn kappa_flip_breaks_f8() {
        let d = TYData::complex_complex(1, 1, N).unwrap();
        let mut b = solve_crossed(&d).unwrap().braidings.remove(0);
        b.coeffs.kappa = -&b.coeffs.kappa;
        assert!(b.check().iter().any(|v| v.eq == "CB-F8"));
    }

    #[test]
    fn imaginary_gamma() {
        let d = TYData::complex_complex(1, 1, N).unwrap();
        let mut b = solve_crossed(&d).unwrap().braidings.remove(0);
        b.coeffs.gamma_m = CycScalar::i(N).unwrap();
        assert!(b.check().iter().any(|v| v.eq == "CB-GR"));
    }

    #[test]
    fn classes() {
        let c = classify_crossed(&TYData::complex_complex(1, 1, N).unwrap()).unwrap();
        let mut sizes: Vec<usize> = c.classes.iter().map(|x| x.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 6]);
        for cl in &c.classes {
            assert_eq!(Some(cl.pi0.count as u128), cl.pi0.formula);
        }
        assert_eq!(c.strong.len(), 4 * 4);
    }
}
