//! Gaussian rationals `a + bi` with `a, b` in Q.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Complex, One, Signed, Zero};

/// Exact coefficient in Q(i).
pub type Coeff = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Coeff {
    Complex::new(rat(n, 1), BigRational::zero())
}

pub fn frac(n: i64, d: i64) -> Coeff {
    Complex::new(rat(n, d), BigRational::zero())
}

pub fn gauss(re: BigRational, im: BigRational) -> Coeff {
    Complex::new(re, im)
}

/// The imaginary unit.
pub fn i_unit() -> Coeff {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn from_rational(r: BigRational) -> Coeff {
    Complex::new(r, BigRational::zero())
}

pub fn is_real(c: &Coeff) -> bool {
    c.im.is_zero()
}

/// Sign used when printing a leading term: true if the coefficient reads as negative.
pub fn reads_negative(c: &Coeff) -> bool {
    if c.re.is_zero() {
        c.im.is_negative()
    } else {
        c.re.is_negative()
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn latex_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Plain text for a coefficient. Mixed values are parenthesised.
pub fn fmt_coeff(c: &Coeff) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => fmt_rat(&c.re),
        (true, false) => {
            if c.im.is_one() {
                "i".into()
            } else if (-c.im.clone()).is_one() {
                "-i".into()
            } else {
                format!("{}*i", fmt_rat(&c.im))
            }
        }
        (false, false) => {
            let sign = if c.im.is_negative() { "-" } else { "+" };
            format!("({}{}{}*i)", fmt_rat(&c.re), sign, fmt_rat(&c.im.abs()))
        }
    }
}

pub fn latex_coeff(c: &Coeff) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => latex_rat(&c.re),
        (true, false) => {
            if c.im.is_one() {
                "i".into()
            } else if (-c.im.clone()).is_one() {
                "-i".into()
            } else {
                format!("{} i", latex_rat(&c.im))
            }
        }
        (false, false) => {
            let sign = if c.im.is_negative() { "-" } else { "+" };
            format!("\\left({} {} {} i\\right)", latex_rat(&c.re), sign, latex_rat(&c.im.abs()))
        }
    }
}

/// `[num_re, den_re, num_im, den_im]` as decimal strings, so arbitrary size survives JSON.
pub fn to_parts(c: &Coeff) -> [String; 4] {
    [
        c.re.numer().to_string(),
        c.re.denom().to_string(),
        c.im.numer().to_string(),
        c.im.denom().to_string(),
    ]
}

pub fn from_parts(parts: [&str; 4]) -> Option<Coeff> {
    let p = |s: &str| s.parse::<BigInt>().ok();
    let (a, b, c, d) = (p(parts[0])?, p(parts[1])?, p(parts[2])?, p(parts[3])?);
    if b.is_zero() || d.is_zero() {
        return None;
    }
    Some(Complex::new(BigRational::new(a, b), BigRational::new(c, d)))
}

/// Lossy conversion for the numeric oracle.
pub fn to_f64(c: &Coeff) -> num::Complex<f64> {
    use num::ToPrimitive;
    num::Complex::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing() {
        assert_eq!(fmt_coeff(&frac(-3, 6)), "-1/2");
        assert_eq!(fmt_coeff(&i_unit()), "i");
        assert_eq!(fmt_coeff(&(int(1) + i_unit() * int(-2))), "(1-2*i)");
    }

    #[test]
    fn parts_roundtrip() {
        let c = frac(7, 3) + i_unit() * frac(-5, 4);
        let p = to_parts(&c);
        let back = from_parts([&p[0], &p[1], &p[2], &p[3]]).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn field_ops() {
        let a = int(1) + i_unit();
        assert_eq!(a.clone() * a.conj(), int(2));
        assert_eq!(int(1) / a.clone() * a, int(1));
    }
}
