use proptest::prelude::*;
use tybraid_core::scalar::Dyadic;
use tybraid_core::CycScalar;

const N: u32 = 16;

fn scalar() -> impl Strategy<Value = CycScalar> {
    (prop::collection::vec(-12i64..12, (N / 2) as usize), 0u32..3).prop_map(|(nums, e)| {
        let ds: Vec<Dyadic> = nums.into_iter().map(|k| Dyadic::new(k, e)).collect();
        CycScalar::from_dyadics(N, &ds).unwrap()
    })
}

fn unit() -> impl Strategy<Value = CycScalar> {
    (0i64..N as i64).prop_map(|j| CycScalar::root_of_unity(N, j))
}

proptest! {
    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycScalar::one(N), a.clone());
    }

    #[test]
    fn conjugation_is_a_ring_involution(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert!((&a * &a.conjugate()).is_real());
    }

    #[test]
    fn units(u in unit(), v in unit()) {
        let e = u.unit_exponent().unwrap();
        prop_assert_eq!(u.pow(N), CycScalar::one(N));
        prop_assert!((&u * &u.unit_inverse().unwrap()).is_one());
        prop_assert_eq!((&u * &v).unit_exponent(), Some((e + v.unit_exponent().unwrap()) % N));
        prop_assert_eq!(u.conjugate().unit_exponent(), Some((N - e) % N));
    }

    #[test]
    fn square_roots_square_back(j in 0i64..(N / 2) as i64, k in 0i64..3) {
        let x = &CycScalar::root_of_unity(N, 2 * j) * &CycScalar::sqrt2_pow(N, 2 * k).unwrap();
        let roots = x.sqrt_candidates().unwrap();
        prop_assert_eq!(roots.len(), 2);
        for r in roots {
            prop_assert_eq!(&r * &r, x.clone());
        }
    }
}

#[test]
fn sqrt2_squares_to_two() {
    let r = CycScalar::sqrt2(N).unwrap();
    assert_eq!(&r * &r, CycScalar::from_int(N, 2));
    assert_eq!(CycScalar::i(N).unwrap().pow(2), CycScalar::from_int(N, -1));
}

#[test]
fn real_signs() {
    assert_eq!(CycScalar::from_int(N, -4).real_sign(), Some(-1));
    assert_eq!(CycScalar::sqrt2_pow(N, 3).unwrap().real_sign(), Some(1));
    assert_eq!(CycScalar::i(N).unwrap().real_sign(), None);
}
