use proptest::prelude::*;
use tybraid_core::f2::{
    aut_order_formula, count_aut, enumerate_aut, wall_normalize, Automorphism, Bicharacter,
    GradedGroup,
};
use tybraid_core::qform::{
    enumerate_qforms, orbits_and_stabilizers, qf_minus_count, qf_plus_count, stabilizer_formula,
    Field, QForm,
};
use tybraid_core::CycScalar;

const N: u32 = 16;

fn nondegenerate(dim: usize, alternating: bool) -> impl Strategy<Value = Bicharacter> {
    prop::collection::vec(any::<bool>(), dim * dim).prop_filter_map("degenerate", move |bits| {
        let mut rows = vec![0u32; dim];
        for i in 0..dim {
            for j in i..dim {
                let on = if i == j {
                    !alternating && bits[i * dim + j]
                } else {
                    bits[i * dim + j]
                };
                if on {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        Bicharacter::from_rows(dim, rows)
            .ok()
            .filter(|c| c.is_nondegenerate())
    })
}

fn any_form() -> impl Strategy<Value = Bicharacter> {
    (1usize..=6).prop_flat_map(|d| nondegenerate(d, false))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn wall_congruence(chi in any_form()) {
        let w = wall_normalize(&chi).unwrap();
        prop_assert_eq!(2 * w.h_blocks + w.l_blocks, chi.dim());
        prop_assert!(w.l_blocks <= 2);
        let target = Bicharacter::normal_form(w.h_blocks, w.l_blocks);
        prop_assert_eq!(&w.basis_change.congruence(chi.matrix()), target.matrix());
    }

    #[test]
    fn alternating_forms_are_hyperbolic(chi in (1usize..=3).prop_flat_map(|k| nondegenerate(2 * k, true))) {
        let w = wall_normalize(&chi).unwrap();
        prop_assert_eq!(w.l_blocks, 0);
        prop_assert_eq!(w.h_blocks * 2, chi.dim());
    }

    #[test]
    fn gauss_sum_is_multiplicative(i in 0usize..4, j in 0usize..10) {
        let a = enumerate_qforms(&Bicharacter::standard_hyperbolic(1), Field::Real, N).unwrap();
        let b = enumerate_qforms(&Bicharacter::normal_form(1, 1), Field::Complex, N).unwrap();
        let (p, q) = (&a[i % a.len()], &b[j % b.len()]);
        prop_assert_eq!(p.direct_sum(q).gauss_sum(), &p.gauss_sum() * &q.gauss_sum());
    }

    #[test]
    fn action_is_a_left_action(i in 0usize..720, j in 0usize..720, k in 0usize..16) {
        let chi = Bicharacter::standard_hyperbolic(2);
        let auts = enumerate_aut(&chi, None).unwrap();
        let forms = enumerate_qforms(&chi, Field::Real, N).unwrap();
        let (f, g, q) = (&auts[i], &auts[j], &forms[k]);
        let lhs = q.act(f).unwrap().act(g).unwrap();
        prop_assert_eq!(lhs, q.act(&g.compose(f)).unwrap());
        prop_assert_eq!(q.act(&Automorphism::identity(4)).unwrap(), q.clone());
        prop_assert_eq!(q.act(f).unwrap().gauss_sum(), q.gauss_sum());
    }
}

#[test]
fn automorphism_counts() {
    for n in 1..=2 {
        let chi = Bicharacter::standard_hyperbolic(n);
        assert_eq!(
            count_aut(&chi, None).unwrap() as u128,
            aut_order_formula(n as u32)
        );
    }
    assert_eq!(aut_order_formula(3), 1_451_520);
}

#[test]
fn form_counts_and_orbits() {
    for n in 0..=3u32 {
        let chi = Bicharacter::standard_hyperbolic(n as usize);
        let forms = enumerate_qforms(&chi, Field::Real, N).unwrap();
        let plus = forms.iter().filter(|q| q.sign().unwrap() > 0).count() as u128;
        assert_eq!(plus, qf_plus_count(n));
        assert_eq!(forms.len() as u128 - plus, qf_minus_count(n));
        if n <= 2 {
            let report = orbits_and_stabilizers(&chi, &forms, None).unwrap();
            for o in &report.orbits {
                let s = forms[o.members[0]].sign().unwrap();
                assert_eq!(o.stabilizer_order as u128, stabilizer_formula(n, s));
                assert_eq!(
                    o.members.len() as u64 * o.stabilizer_order,
                    report.aut_order
                );
            }
        }
    }
}

#[test]
fn ell_squared_has_three_classes() {
    let chi = Bicharacter::ell(2);
    let forms = enumerate_qforms(&chi, Field::Complex, N).unwrap();
    assert_eq!(forms.len(), 4);
    assert_eq!(
        orbits_and_stabilizers(&chi, &forms, None)
            .unwrap()
            .orbits
            .len(),
        3
    );
    let ell = enumerate_qforms(&Bicharacter::ell(1), Field::Complex, N).unwrap();
    assert_eq!(
        orbits_and_stabilizers(&Bicharacter::ell(1), &ell, None)
            .unwrap()
            .orbits
            .len(),
        2
    );
}

#[test]
fn h_plus_ell_squared_has_four_classes() {
    for (n, classes) in [(1, 4), (2, 4)] {
        let chi = Bicharacter::normal_form(n, 2);
        let forms = enumerate_qforms(&chi, Field::Complex, N).unwrap();
        assert_eq!(
            orbits_and_stabilizers(&chi, &forms, None)
                .unwrap()
                .orbits
                .len(),
            classes
        );
    }
}

#[test]
fn graded_automorphisms_respect_degree() {
    let g = GradedGroup {
        dim: 3,
        grading: 0b100,
        w: Some(0b100),
    };
    let chi = Bicharacter::from_rows(3, vec![0b010, 0b001, 0]).unwrap();
    for f in enumerate_aut(&chi, Some(&g)).unwrap() {
        for x in 0..8 {
            assert_eq!(g.degree(f.apply(x)), g.degree(x));
        }
    }
}

#[test]
fn anisotropic_form_sums_to_minus_two() {
    let chi = Bicharacter::standard_hyperbolic(1);
    let q = QForm::extend_from_basis(&chi, &[N / 2, N / 2], Field::Real, N).unwrap();
    assert_eq!(q.gauss_sum(), CycScalar::from_int(N, -2));
}
