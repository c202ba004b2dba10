/// The `n`-th cyclotomic polynomial, coefficients in increasing degree.
///
/// Computed by dividing `x^n - 1` exactly by `Φ_d` for every proper divisor `d`
/// of `n`, building the divisor polynomials bottom-up.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let divs: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    let mut known: Vec<(u32, Vec<i64>)> = Vec::with_capacity(divs.len());
    for &m in &divs {
        let mut num = vec![0i64; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        for (d, phi_d) in &known {
            if m % d == 0 {
                num = exact_div_monic(&num, phi_d);
            }
        }
        known.push((m, num));
    }
    known.pop().map(|(_, p)| p).unwrap()
}

/// Quotient of `num` by the monic polynomial `den`; the division must be exact.
fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}
