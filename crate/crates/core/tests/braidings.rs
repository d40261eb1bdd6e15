use proptest::prelude::*;
use tybraid_core::braiding::{
    brute_force_braidings, check_hexagons, double_braiding_invariants, solve_braidings,
    twist_equations_hold, twists, Braiding, Stage,
};
use tybraid_core::crossed::{brute_force_crossed, check_heptagons, solve_crossed};
use tybraid_core::data::Simple;
use tybraid_core::{CycScalar, TYData};

const N: u32 = 16;

fn sample_data() -> Vec<TYData> {
    let mut v = Vec::new();
    for tau in [1, -1] {
        for n in 0..=1 {
            v.push(TYData::split_real(n, tau, N).unwrap());
            v.push(TYData::real_quaternionic(n, tau, N).unwrap());
            v.push(TYData::real_complex(n, false, tau, N).unwrap());
            v.push(TYData::real_complex(n, true, tau, N).unwrap());
            for ell in 0..=2 {
                v.push(TYData::split_complex(n, ell, tau, N).unwrap());
            }
        }
    }
    v
}

fn sorted(mut v: Vec<Braiding>) -> Vec<String> {
    let mut keys: Vec<String> = v.drain(..).map(|b| format!("{:?}", b.coeffs)).collect();
    keys.sort();
    keys
}

#[test]
fn solver_output_satisfies_every_hexagon() {
    for d in sample_data() {
        for b in solve_braidings(&d).unwrap() {
            assert!(
                check_hexagons(&b).is_empty(),
                "{} {:?}",
                d.case.name(),
                check_hexagons(&b)
            );
        }
    }
}

#[test]
fn full_oracle_on_smallest_groups() {
    for d in sample_data().into_iter().filter(|d| d.order() <= 2) {
        let oracle = brute_force_braidings(&d, Stage::Full).unwrap();
        for b in &oracle {
            for x in d.elements() {
                for y in d.elements() {
                    assert_eq!(b.coeffs.s0(x, y), &d.chi_scalar(x, y));
                }
            }
        }
        assert_eq!(
            sorted(oracle),
            sorted(solve_braidings(&d).unwrap()),
            "{}",
            d.case.name()
        );
    }
}

#[test]
fn staged_oracle_on_order_eight() {
    for d in [
        TYData::real_complex(1, false, -1, N).unwrap(),
        TYData::real_complex(1, true, 1, N).unwrap(),
        TYData::split_complex(1, 1, 1, N).unwrap(),
    ] {
        let oracle = brute_force_braidings(&d, Stage::Staged).unwrap();
        assert_eq!(
            sorted(oracle),
            sorted(solve_braidings(&d).unwrap()),
            "{}",
            d.case.name()
        );
    }
}

#[test]
fn oracle_refuses_large_groups() {
    assert!(brute_force_braidings(&TYData::split_real(1, 1, N).unwrap(), Stage::Full).is_err());
    assert!(brute_force_braidings(&TYData::split_real(3, 1, N).unwrap(), Stage::Staged).is_err());
}

#[test]
fn solution_counts() {
    // braidings = admissible forms of the right sign times two roots
    let count = |d: TYData| solve_braidings(&d).unwrap().len();
    assert_eq!(count(TYData::split_real(1, 1, N).unwrap()), 6);
    assert_eq!(count(TYData::split_real(1, -1, N).unwrap()), 2);
    assert_eq!(count(TYData::split_real(2, -1, N).unwrap()), 12);
    assert_eq!(count(TYData::real_quaternionic(0, 1, N).unwrap()), 0);
    assert_eq!(count(TYData::split_complex(0, 1, 1, N).unwrap()), 4);
    assert_eq!(count(TYData::split_complex(0, 2, 1, N).unwrap()), 8);
}

#[test]
fn every_braiding_has_two_twists() {
    for d in sample_data() {
        for b in solve_braidings(&d).unwrap() {
            let ts = twists(&b);
            assert_eq!(ts.len(), 2);
            assert!(ts.iter().all(|t| twist_equations_hold(&b, t)));
            let theta_m: Vec<&CycScalar> = ts.iter().map(|t| &t.theta_m).collect();
            assert_eq!(theta_m[0], &-theta_m[1]);
        }
    }
}

#[test]
fn split_real_is_symmetric_and_ising_is_nondegenerate() {
    for b in solve_braidings(&TYData::split_real(1, 1, N).unwrap()).unwrap() {
        assert!(double_braiding_invariants(&b).is_symmetric);
    }
    for b in solve_braidings(&TYData::split_complex(0, 1, 1, N).unwrap()).unwrap() {
        let db = double_braiding_invariants(&b);
        assert_eq!(db.transparent, vec![Simple::G(0)]);
    }
}

#[test]
fn no_plain_braidings_on_complex_complex() {
    for n in 0..=2 {
        assert!(solve_braidings(&TYData::complex_complex(n, 1, N).unwrap())
            .unwrap()
            .is_empty());
    }
}

#[test]
fn crossed_solutions() {
    for tau in [1, -1] {
        for n in 0..=1 {
            let d = TYData::complex_complex(n, tau, N).unwrap();
            let sol = solve_crossed(&d).unwrap();
            assert!(sol.obstruction.is_none());
            for b in &sol.braidings {
                assert!(check_heptagons(b).is_empty());
                let s3 = b.sigma3_one();
                assert!(s3.is_real());
                assert_eq!(b.kappa(), b.sgn_sigma().map(|s| s * tau));
            }
            let mut oracle: Vec<String> = brute_force_crossed(&d, Stage::Staged)
                .unwrap()
                .iter()
                .map(|b| format!("{:?}", b.coeffs))
                .collect();
            let mut ours: Vec<String> = sol
                .braidings
                .iter()
                .map(|b| format!("{:?}", b.coeffs))
                .collect();
            oracle.sort();
            ours.sort();
            assert_eq!(oracle, ours);
        }
    }
}

fn any_braiding() -> impl Strategy<Value = Braiding> {
    let all: Vec<Braiding> = sample_data()
        .iter()
        .flat_map(|d| solve_braidings(d).unwrap())
        .collect();
    prop::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn perturbed_sigma1_breaks_a_hexagon(b in any_braiding(), pick in 1usize..64, shift in 1i64..16) {
        let mut c = b.coeffs.clone();
        let a = pick % c.order;
        prop_assume!(a != 0);
        c.sigma1[a] = &c.sigma1[a] * &CycScalar::root_of_unity(N, shift);
        let broken = Braiding::from_coefficients(b.data.clone(), c);
        prop_assert!(!check_hexagons(&broken).is_empty());
    }

    #[test]
    fn flipping_sigma3_at_one_alone_breaks_a_hexagon(b in any_braiding()) {
        prop_assume!(b.coeffs.order > 1);
        let mut c = b.coeffs.clone();
        c.sigma3[0] = -&c.sigma3[0];
        let broken = Braiding::from_coefficients(b.data.clone(), c);
        prop_assert!(!check_hexagons(&broken).is_empty());
    }
}
