//! Braided equivalence: representative monoidal functors per case, the
//! criterion for a functor to be braided, partition into classes and the
//! orders of `pi0 Aut_br`.

use std::ops::ControlFlow;
use std::sync::Arc;

use thiserror::Error;

use crate::braiding::{ell_blocks, form_sign, solve_braidings, Braiding, SolveError};
use crate::data::{Case, TYData};
use crate::f2::{for_each_aut, wall_normalize, Automorphism, Element, F2Error};
use crate::qform::stabilizer_formula;
use crate::scalar::CycScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    F2(#[from] F2Error),
    #[error("case mismatch: functor for {functor}, braidings on {data}")]
    CaseMismatch { functor: Case, data: Case },
    #[error("braidings live on different data")]
    DataMismatch,
    #[error("functor image of braiding {0} is not among the solutions")]
    NotClosed(usize),
    #[error("witness for braiding {member} rejected by the equivalence criterion")]
    WitnessRejected { member: usize },
    #[error("modulus too large for packed keys")]
    KeyOverflow,
}

/// A representative monoidal autoequivalence `F(f, xi, lambda)` or `F(f, xi, kappa)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivFunctor {
    pub case: Case,
    pub f: Automorphism,
    /// `true` when the functor conjugates endomorphisms of `m`.
    pub xi: bool,
    pub lambda: Option<CycScalar>,
    pub kappa: Option<i8>,
}

/// Functor parameters apart from `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Variant {
    pub xi: bool,
    /// Exponent of `lambda` in `mu_N`.
    pub lambda_exp: Option<u32>,
    pub kappa: Option<i8>,
    /// Crossed case only: `eta_m`.
    pub eta_m: Option<i8>,
}

impl Variant {
    fn plain() -> Self {
        Variant {
            xi: false,
            lambda_exp: None,
            kappa: None,
            eta_m: None,
        }
    }

    pub(crate) fn functor(&self, case: Case, f: Automorphism, modulus: u32) -> EquivFunctor {
        EquivFunctor {
            case,
            f,
            xi: self.xi,
            lambda: self
                .lambda_exp
                .map(|e| CycScalar::root_of_unity(modulus, e as i64)),
            kappa: self.kappa,
        }
    }
}

/// Representative functor parameters for the case, apart from `f`.
pub(crate) fn variants(case: Case, modulus: u32) -> Vec<Variant> {
    let q = modulus / 4;
    let mut out = Vec::new();
    match case {
        Case::SplitReal | Case::SplitComplex => out.push(Variant::plain()),
        Case::RealQuaternionic => {
            for k in [1, -1] {
                out.push(Variant {
                    kappa: Some(k),
                    ..Variant::plain()
                });
            }
        }
        Case::RealComplexId | Case::RealComplexConj => {
            let lambdas = if case == Case::RealComplexId {
                [0, q]
            } else {
                [0, 2 * q]
            };
            for xi in [false, true] {
                for l in lambdas {
                    out.push(Variant {
                        xi,
                        lambda_exp: Some(l),
                        ..Variant::plain()
                    });
                }
            }
        }
        Case::ComplexComplex => {
            for xi in [false, true] {
                for k in [1, -1] {
                    out.push(Variant {
                        xi,
                        kappa: Some(k),
                        ..Variant::plain()
                    });
                }
            }
        }
    }
    out
}

fn lambda_ok(data: &TYData, f: &EquivFunctor) -> bool {
    match (data.case, &f.lambda) {
        (Case::RealComplexId | Case::RealComplexConj, Some(l)) => {
            l.pow(4).is_one() && l.conj_if(data.g_conj()) == *l
        }
        (Case::RealComplexId | Case::RealComplexConj, None) => false,
        (_, l) => l.is_none(),
    }
}

/// Exponent of `lambda^x`: `lambda` on even `x`, its conjugate on odd `x`.
fn lambda_at(data: &TYData, le: u32, x: Element) -> u32 {
    if data.degree(x) {
        (data.modulus - le) % data.modulus
    } else {
        le
    }
}

/// `chi(f(a), f(b)) = (lambda lambda^(ab) / (lambda^a lambda^b)) chi(a,b)^xi`, on exponents.
fn functor_is_monoidal(data: &TYData, fun: &EquivFunctor) -> bool {
    let m = data.modulus;
    if fun.f.dim() != data.group.dim || !fun.f.is_invertible() || !lambda_ok(data, fun) {
        return false;
    }
    let le = fun
        .lambda
        .as_ref()
        .map_or(0, |l| l.unit_exponent().expect("root of unity"));
    let half = |bit: bool| if bit { m / 2 } else { 0 };
    let images: Vec<Element> = data.elements().map(|a| fun.f.apply(a)).collect();
    for a in data.elements() {
        if data.degree(images[a as usize]) != data.degree(a) {
            return false;
        }
        let la = lambda_at(data, le, a);
        for b in data.elements() {
            let factor = le + lambda_at(data, le, a ^ b) + 2 * m - la - lambda_at(data, le, b);
            let rhs = (factor + half(data.chi.pair(a, b))) % m;
            if half(data.chi.pair(images[a as usize], images[b as usize])) != rhs {
                return false;
            }
        }
    }
    true
}

/// Whether `F` is a braided equivalence from `b` to `b2`.
///
/// Split and quaternionic: `sigma1'(f(a)) = sigma1(a)` and `sigma3'(1) = sigma3(1)`.
/// Real/complex: `sigma1'(f(a)) = (lambda^a / lambda) sigma1(a)^xi` and
/// `sigma3'(1) = sigma3(1)^xi`.
pub fn is_braided_equivalence(
    fun: &EquivFunctor,
    b: &Braiding,
    b2: &Braiding,
) -> Result<bool, ClassifyError> {
    let data = &b.data;
    if b.data != b2.data {
        return Err(ClassifyError::DataMismatch);
    }
    if fun.case != data.case || data.case == Case::ComplexComplex {
        return Err(ClassifyError::CaseMismatch {
            functor: fun.case,
            data: data.case,
        });
    }
    if !functor_is_monoidal(data, fun) {
        return Ok(false);
    }
    let m = data.modulus;
    let exp = |x: &CycScalar| x.unit_exponent();
    let conj = |e: u32| if fun.xi { (m - e) % m } else { e };
    let (c, c2) = (&b.coeffs, &b2.coeffs);
    let (Some(s3), Some(s3b)) = (exp(&c.sigma3[0]), exp(&c2.sigma3[0])) else {
        return Ok(false);
    };
    let ok = match data.case {
        Case::RealComplexId | Case::RealComplexConj => {
            let le = fun.lambda.as_ref().and_then(exp).expect("checked");
            data.elements().all(|a| {
                let factor = (lambda_at(data, le, a) + m - le) % m;
                match (
                    exp(&c.sigma1[a as usize]),
                    exp(&c2.sigma1[fun.f.apply(a) as usize]),
                ) {
                    (Some(x), Some(y)) => y == (factor + conj(x)) % m,
                    _ => false,
                }
            }) && s3b == conj(s3)
        }
        _ => {
            !fun.xi
                && data
                    .elements()
                    .all(|a| c2.sigma1[fun.f.apply(a) as usize] == c.sigma1[a as usize])
                && s3b == s3
        }
    };
    Ok(ok)
}

/// Values that identify a braiding inside the solution set: exponents of
/// `sigma1` on the basis and of `sigma3(1)`, packed in base `N`.
pub(crate) type Key = u128;

pub(crate) struct Member {
    pub sigma1: Vec<u32>,
    pub sigma3_one: u32,
}

impl Member {
    pub(crate) fn of(b: &Braiding) -> Member {
        let exp = |x: &CycScalar| x.unit_exponent().expect("unit coefficient");
        Member {
            sigma1: b.coeffs.sigma1.iter().map(exp).collect(),
            sigma3_one: exp(&b.coeffs.sigma3[0]),
        }
    }

    pub(crate) fn key(&self, dim: usize, modulus: u32) -> Key {
        pack(
            (0..dim).map(|i| self.sigma1[1 << i]),
            self.sigma3_one,
            modulus,
        )
    }
}

fn pack(basis: impl Iterator<Item = u32>, last: u32, modulus: u32) -> Key {
    basis.fold(last as u128, |acc, e| acc * modulus as u128 + e as u128)
}

/// One class: the representative, every member with a witness from the
/// representative, and the number of representative functors fixing it.
pub(crate) struct RawClass {
    pub rep: usize,
    pub members: Vec<(usize, Automorphism, Variant)>,
    pub fixing: u64,
}

/// Partitions members into orbits of the representative functors.
///
/// `F(f^-1)` sends `sigma1` to `x -> factor(f(x)) sigma1(f(x))^xi`, so the
/// image key only needs the values at `f(e_i)`.
pub(crate) fn partition(
    data: &TYData,
    members: &[Member],
    variants: &[Variant],
) -> Result<Vec<RawClass>, ClassifyError> {
    let dim = data.group.dim;
    let n = data.modulus;
    if (n as f64).log2() * (dim + 1) as f64 >= 127.0 {
        return Err(ClassifyError::KeyOverflow);
    }
    let mut index: Vec<(Key, usize)> = members
        .iter()
        .enumerate()
        .map(|(i, m)| (m.key(dim, n), i))
        .collect();
    index.sort_unstable();
    let lookup = |k: Key| {
        index
            .binary_search_by_key(&k, |e| e.0)
            .ok()
            .map(|p| index[p].1)
    };
    let graded = data.group.is_graded().then_some(&data.group);
    let conj = |e: u32, xi: bool| if xi { (n - e) % n } else { e };
    let mut assigned = vec![false; members.len()];
    let mut out = Vec::new();
    for start in 0..members.len() {
        if assigned[start] {
            continue;
        }
        let rep = &members[start];
        let own = rep.key(dim, n);
        assigned[start] = true;
        let mut class = RawClass {
            rep: start,
            members: Vec::new(),
            fixing: 0,
        };
        let mut missing = None;
        // Per variant: the image value at each element, and sigma3(1).
        let tables: Vec<(Vec<u32>, u32)> = variants
            .iter()
            .map(|v| {
                let vals = data
                    .elements()
                    .map(|x| {
                        let factor = match v.lambda_exp {
                            Some(l) if data.degree(x) => (2 * (n - l)) % n,
                            _ => 0,
                        };
                        (factor + conj(rep.sigma1[x as usize], v.xi)) % n
                    })
                    .collect();
                let flip = if v.eta_m == Some(-1) { n / 2 } else { 0 };
                (vals, (conj(rep.sigma3_one, v.xi) + flip) % n)
            })
            .collect();
        for_each_aut(&data.chi, graded, |f| {
            for (v, (vals, s3)) in variants.iter().zip(&tables) {
                let key = pack(f.images.iter().map(|&x| vals[x as usize]), *s3, n);
                if key == own {
                    class.fixing += 1;
                }
                match lookup(key) {
                    Some(j) if !assigned[j] => {
                        assigned[j] = true;
                        let inv = f.inverse().expect("automorphism");
                        class.members.push((j, inv, *v));
                    }
                    Some(_) => {}
                    None => {
                        missing = Some(start);
                        return ControlFlow::Break(());
                    }
                }
            }
            ControlFlow::Continue(())
        })?;
        if let Some(s) = missing {
            return Err(ClassifyError::NotClosed(s));
        }
        class.members.sort_by_key(|m| m.0);
        out.push(class);
    }
    Ok(out)
}

/// Invariants reported per class; a field is set only when it is constant
/// on the class.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassInvariants {
    pub sgn_sigma: Option<i8>,
    pub epsilon: Option<i8>,
    pub sigma_w: Option<i8>,
    pub sigma3_one: Option<CycScalar>,
}

fn constant<T: PartialEq + Clone>(mut it: impl Iterator<Item = Option<T>>) -> Option<T> {
    let first = it.next()??;
    for x in it {
        if x.as_ref() != Some(&first) {
            return None;
        }
    }
    Some(first)
}

impl ClassInvariants {
    pub(crate) fn of<'a>(bs: impl Iterator<Item = &'a Braiding> + Clone) -> Self {
        ClassInvariants {
            sgn_sigma: constant(bs.clone().map(|b| b.sgn_sigma())),
            epsilon: constant(bs.clone().map(|b| b.epsilon)),
            sigma_w: constant(bs.clone().map(|b| b.sigma_w())),
            sigma3_one: constant(bs.map(|b| Some(b.sigma3_one().clone()))),
        }
    }
}

/// Order of `pi0 Aut_br`, by count and by formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pi0 {
    pub count: u64,
    pub formula: Option<u128>,
}

impl Pi0 {
    pub fn agrees(&self) -> bool {
        self.formula.is_none_or(|f| f == self.count as u128)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidingClass {
    /// Index of the representative in `Classification::braidings`.
    pub representative: usize,
    /// Members other than the representative, each with a functor from the representative.
    pub witnesses: Vec<(usize, EquivFunctor)>,
    pub invariants: ClassInvariants,
    pub pi0: Pi0,
}

impl BraidingClass {
    pub fn size(&self) -> usize {
        self.witnesses.len() + 1
    }

    pub fn members(&self) -> Vec<usize> {
        let mut v: Vec<usize> = std::iter::once(self.representative)
            .chain(self.witnesses.iter().map(|w| w.0))
            .collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub data: Arc<TYData>,
    pub braidings: Vec<Braiding>,
    pub classes: Vec<BraidingClass>,
}

/// Number of hyperbolic blocks on which the stabilizer formula is evaluated.
fn hyperbolic_rank(data: &TYData) -> Result<u32, ClassifyError> {
    Ok(match data.case {
        Case::RealComplexId | Case::RealComplexConj => (data.group.dim / 2) as u32,
        _ => wall_normalize(&data.chi)?.h_blocks as u32,
    })
}

/// `|pi0 Aut_br|` from the stabilizer formulas.
pub fn pi0_formula(b: &Braiding) -> Result<Option<u128>, ClassifyError> {
    let data = &b.data;
    if data.case == Case::SplitComplex && ell_blocks(data)? >= 2 {
        return Ok(None);
    }
    let Some(q) = &b.form else { return Ok(None) };
    let Some(sgn) = form_sign(data, q)? else {
        return Ok(None);
    };
    let h = stabilizer_formula(hyperbolic_rank(data)?, sgn);
    let factor = match data.case {
        Case::SplitReal | Case::SplitComplex => 1,
        Case::RealQuaternionic => 2,
        Case::RealComplexId => {
            if sgn == data.tau_sign {
                2
            } else {
                1
            }
        }
        Case::RealComplexConj | Case::ComplexComplex => 4,
    };
    Ok(Some(h * factor))
}

/// `|pi0 Aut_br(b)|` counted over representative functors, with the formula.
pub fn pi0_aut_br(b: &Braiding) -> Result<Pi0, ClassifyError> {
    let data = &b.data;
    let vs = variants(data.case, data.modulus);
    let mut count = 0u64;
    let mut err = None;
    let graded = data.group.is_graded().then_some(&data.group);
    for_each_aut(&data.chi, graded, |f| {
        for v in &vs {
            let fun = v.functor(data.case, f.clone(), data.modulus);
            match is_braided_equivalence(&fun, b, b) {
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
        formula: pi0_formula(b)?,
    })
}

/// Classes of braidings on `data`, each member reached from its
/// representative by a checked functor witness.
pub fn classify(data: &TYData) -> Result<Classification, ClassifyError> {
    let braidings = solve_braidings(data)?;
    let data = Arc::new(data.clone());
    let members: Vec<Member> = braidings.iter().map(Member::of).collect();
    let raw = partition(&data, &members, &variants(data.case, data.modulus))?;
    let mut classes = Vec::with_capacity(raw.len());
    for rc in raw {
        let rep = &braidings[rc.rep];
        let mut witnesses = Vec::with_capacity(rc.members.len());
        for (j, f, v) in rc.members {
            let fun = v.functor(data.case, f, data.modulus);
            if !is_braided_equivalence(&fun, rep, &braidings[j])? {
                return Err(ClassifyError::WitnessRejected { member: j });
            }
            witnesses.push((j, fun));
        }
        let ids: Vec<usize> = std::iter::once(rc.rep)
            .chain(witnesses.iter().map(|w| w.0))
            .collect();
        let invariants = ClassInvariants::of(ids.iter().map(|&i| &braidings[i]));
        let pi0 = Pi0 {
            count: rc.fixing,
            formula: pi0_formula(rep)?,
        };
        classes.push(BraidingClass {
            representative: rc.rep,
            witnesses,
            invariants,
            pi0,
        });
    }
    Ok(Classification {
        data,
        braidings,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u32 = 16;

    fn count(d: TYData) -> usize {
        classify(&d).unwrap().classes.len()
    }

    #[test]
    fn split_real_two_classes() {
        assert_eq!(count(TYData::split_real(1, 1, N).unwrap()), 2);
        assert_eq!(count(TYData::split_real(0, -1, N).unwrap()), 0);
    }

    #[test]
    fn rc_counts() {
        assert_eq!(count(TYData::real_complex(1, false, 1, N).unwrap()), 3);
        assert_eq!(count(TYData::real_complex(1, true, 1, N).unwrap()), 4);
        assert_eq!(count(TYData::real_complex(0, true, -1, N).unwrap()), 2);
    }

    #[test]
    fn identity_is_braided() {
        let d = TYData::split_real(1, 1, N).unwrap();
        let bs = solve_braidings(&d).unwrap();
        let fun = EquivFunctor {
            case: d.case,
            f: Automorphism::identity(2),
            xi: false,
            lambda: None,
            kappa: None,
        };
        assert!(is_braided_equivalence(&fun, &bs[0], &bs[0]).unwrap());
        let other = bs
            .iter()
            .find(|b| b.form == bs[0].form && b.epsilon != bs[0].epsilon)
            .unwrap();
        assert!(!is_braided_equivalence(&fun, &bs[0], other).unwrap());
    }

    #[test]
    fn pi0_examples() {
        let d = TYData::split_real(1, 1, N).unwrap();
        let c = classify(&d).unwrap();
        for cl in &c.classes {
            assert_eq!(cl.pi0.count, 2);
            assert!(cl.pi0.agrees());
        }
    }
}
