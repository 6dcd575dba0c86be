use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntegerPolynomial, NumfieldError};

/// Resultant of two integer polynomials by the subresultant remainder sequence.
/// Agrees with the Sylvester determinant `Res(a, b) = lc(a)^deg b * prod b(alpha_i)`.
pub fn resultant(a: &IntegerPolynomial, b: &IntegerPolynomial) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (ca, cb) = (a.content(), b.content());
    let mut a = IntegerPolynomial::new(a.coeffs().iter().map(|c| c / &ca).collect());
    let mut b = IntegerPolynomial::new(b.coeffs().iter().map(|c| c / &cb).collect());
    let t = num_traits::pow(ca, b.degree()) * num_traits::pow(cb, a.degree());
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree() == 0 {
        return s * t * num_traits::pow(b.leading(), a.degree());
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree() - b.degree();
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        let d = &g * num_traits::pow(h.clone(), delta);
        b = IntegerPolynomial::new(r.coeffs().iter().map(|c| c / &d).collect());
        g = a.leading();
        if delta > 0 {
            h = num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1);
        }
        if b.degree() == 0 {
            let da = a.degree();
            let last = num_traits::pow(b.leading(), da) / num_traits::pow(h, da - 1);
            return s * t * last;
        }
    }
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`; zero exactly when `f` has a repeated root.
pub fn discriminant(f: &IntegerPolynomial) -> Result<BigInt, NumfieldError> {
    if f.is_zero() {
        return Err(NumfieldError::ZeroPolynomial);
    }
    let n = f.degree();
    if n == 0 {
        return Err(NumfieldError::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative()) / f.leading();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// Interpolates `y -> Res_x(f(x), g_y(x))` as a polynomial in `y` of degree at most `bound`,
/// evaluating at `y = 0, 1, ..., bound`.
pub(crate) fn resultant_in_y<F>(f: &IntegerPolynomial, bound: usize, g_at: F) -> IntegerPolynomial
where
    F: Fn(&BigInt) -> IntegerPolynomial,
{
    let points: Vec<BigInt> = (0..=bound).map(BigInt::from).collect();
    let values: Vec<BigInt> = points.iter().map(|y| resultant(f, &g_at(y))).collect();
    interpolate(&points, &values)
}

/// Newton interpolation through integer points; the result is asserted integral.
pub(crate) fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntegerPolynomial {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    // Horner on the Newton basis.
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // acc = acc * (y - x_i) + dd[i]
        let xi = BigRational::from_integer(xs[i].clone());
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xi;
        }
        next[0] += &dd[i];
        acc = next;
    }
    IntegerPolynomial::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated resultant is integral");
                c.to_integer()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntegerPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(discriminant(&p("x^2 + 1")).unwrap(), BigInt::from(-4));
        assert_eq!(discriminant(&p("x^4 - x + 1")).unwrap(), BigInt::from(229));
        assert_eq!(discriminant(&p("x^3 - x - 1")).unwrap(), BigInt::from(-23));
        assert_eq!(discriminant(&p("3x^2 + 2x + 5")).unwrap(), BigInt::from(4 - 60));
        assert_eq!(discriminant(&p("x^3 - 3x + 2")).unwrap(), BigInt::zero());
        assert!(discriminant(&IntegerPolynomial::zero()).is_err());
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - a, g) = g(a)
        let g = p("x^3 + 2x - 7");
        assert_eq!(resultant(&p("x - 3"), &g), BigInt::from(26));
        assert_eq!(resultant(&g, &p("x - 3")), BigInt::from(-26));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p("3x^3 - x + 4");
        let xs: Vec<BigInt> = (0..4).map(BigInt::from).collect();
        let ys: Vec<BigInt> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }
}
