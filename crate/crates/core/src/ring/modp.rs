//! Arithmetic in the prime field of size 2^61 - 1, used to evaluate matrices
//! at random points for randomized rank. Not part of the public API.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{LaurentPoly, RationalFunction};

/// The Mersenne prime 2^61 - 1.
pub(crate) const P: u64 = (1u64 << 61) - 1;

pub(crate) fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub(crate) fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub(crate) fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub(crate) fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= P;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero mod P.
pub(crate) fn inv(a: u64) -> u64 {
    debug_assert!(a % P != 0);
    pow(a, P - 2)
}

fn bigint_mod_p(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(P))
        .to_u64()
        .expect("reduced value fits in u64")
}

/// Signed exponentiation: negative exponents invert the (nonzero) base.
fn pow_signed(base: u64, e: i64) -> Option<u64> {
    if e >= 0 {
        Some(pow(base, e as u64))
    } else if base == 0 {
        None
    } else {
        Some(pow(inv(base), e.unsigned_abs()))
    }
}

impl LaurentPoly {
    /// Evaluate modulo P at the given point. `None` when a negative exponent
    /// meets a zero coordinate or a coefficient denominator vanishes mod P.
    pub(crate) fn eval_mod(&self, point: &[u64]) -> Option<u64> {
        debug_assert_eq!(point.len(), self.nvars());
        let mut acc = 0u64;
        for (exps, coeff) in self.terms() {
            let num = bigint_mod_p(coeff.numer());
            let den = bigint_mod_p(coeff.denom());
            if den == 0 {
                return None;
            }
            let mut term = mul(num, inv(den));
            for (&x, &e) in point.iter().zip(&exps.0) {
                if e == 0 {
                    continue;
                }
                term = mul(term, pow_signed(x % P, e)?);
            }
            acc = add(acc, term);
        }
        Some(acc)
    }
}

impl RationalFunction {
    /// Evaluate modulo P; `None` when the denominator vanishes at the point.
    pub(crate) fn eval_mod(&self, point: &[u64]) -> Option<u64> {
        let den = self.denom().eval_mod(point)?;
        if den == 0 {
            return None;
        }
        let num = self.numer().eval_mod(point)?;
        Some(mul(num, inv(den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        assert_eq!(mul(P - 1, P - 1), 1);
        for a in [1u64, 2, 3, 12345678901234567] {
            assert_eq!(mul(a, inv(a)), 1);
        }
        assert_eq!(add(P - 1, 1), 0);
        assert_eq!(sub(0, 1), P - 1);
    }

    #[test]
    fn evaluation_matches_rational_arithmetic() {
        use num_rational::BigRational;
        let x = RationalFunction::parse("(1 - z2)/(z1 - 1)", 2).unwrap();
        let p = |v: i64| BigRational::from_integer(BigInt::from(v));
        let exact = x.evaluate(&[p(2), p(3)]).unwrap(); // -2
        assert_eq!(exact, p(-2));
        assert_eq!(x.eval_mod(&[2, 3]), Some(P - 2));
        // Pole mod P.
        assert_eq!(x.eval_mod(&[1, 3]), None);
        // Negative exponents need invertible coordinates.
        let y = RationalFunction::parse("z1^-1", 1).unwrap();
        assert_eq!(y.eval_mod(&[0]), None);
        assert_eq!(y.eval_mod(&[2]), Some(inv(2)));
    }
}
