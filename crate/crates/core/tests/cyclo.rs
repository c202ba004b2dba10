use greenring::arith::{gcd, rat, Cyclo};
use proptest::prelude::*;

/// A random element `Σ c_a ω_n^a` with small rational coefficients.
fn element() -> impl Strategy<Value = Cyclo> {
    (1u32..=24).prop_flat_map(|n| {
        prop::collection::vec((-4i64..=4, 1i64..=3), n as usize).prop_map(move |cs| {
            cs.iter().enumerate().map(|(a, &(p, q))| Cyclo::root_of_unity(n, a as i64).scale(&rat(p, q))).sum()
        })
    })
}

fn close(x: Cyclo, (re, im): (f64, f64)) -> bool {
    let (a, b) = x.to_complex();
    (a - re).abs() < 1e-9 && (b - im).abs() < 1e-9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn galois_is_a_ring_map(x in element(), y in element(), j in 1i64..60) {
        let m = x.conductor() as u64 * y.conductor() as u64;
        prop_assume!(gcd(j as u64, m) == 1);
        let s = |z: &Cyclo| z.galois(j).unwrap();
        prop_assert_eq!(s(&(&x + &y)), &s(&x) + &s(&y));
        prop_assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
    }

    #[test]
    fn galois_composes(x in element(), i in 1i64..60, j in 1i64..60) {
        let n = x.conductor() as u64;
        prop_assume!(gcd(i as u64, n) == 1 && gcd(j as u64, n) == 1);
        prop_assert_eq!(x.galois(i).unwrap().galois(j).unwrap(), x.galois(i * j).unwrap());
        prop_assert_eq!(x.galois(-1).unwrap(), x.conj());
    }

    #[test]
    fn reduction_is_canonical(x in element()) {
        let n = x.conductor();
        let again = Cyclo::from_coeffs(n, x.coeffs().to_vec());
        prop_assert_eq!(again.conductor(), n);
        prop_assert_eq!(&again, &x);
        let lifted = Cyclo::from_coeffs(4 * n, x.coords_at(4 * n));
        prop_assert_eq!(lifted.conductor(), n);
        prop_assert_eq!(lifted, x);
    }

    #[test]
    fn arithmetic_agrees_with_floats(x in element(), y in element()) {
        let (a, b) = x.to_complex();
        let (c, d) = y.to_complex();
        prop_assert!(close(&x + &y, (a + c, b + d)));
        prop_assert!(close(&x * &y, (a * c - b * d, a * d + b * c)));
        if let Some(inv) = x.inv() {
            let r = a * a + b * b;
            prop_assert!(close(inv, (a / r, -b / r)));
        } else {
            prop_assert!(x.is_zero());
        }
    }
}

#[test]
fn roots_of_unity_reduce() {
    assert_eq!(Cyclo::root_of_unity(6, 3), Cyclo::from_int(-1));
    assert_eq!(Cyclo::root_of_unity(12, 4), Cyclo::root_of_unity(3, 1));
    assert_eq!(Cyclo::root_of_unity(4, 1).pow(2), Cyclo::from_int(-1));
    assert!(Cyclo::root_of_unity(5, 1).galois(5).is_err());
}
