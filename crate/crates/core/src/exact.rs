//! Exact scalar arithmetic: rationals and quadratic surds `(a + b√d)/c`.
//!
//! Certificates and bound comparisons must never hinge on floating point, so
//! every comparison here is integer sign analysis. The discriminant `d` is
//! kept as-is (no squarefree reduction); all arithmetic stays within one
//! fixed `d` per tessellation.

use std::cmp::Ordering;

use num::integer::gcd;
use num::rational::Ratio;

/// Exact rational with plenty of headroom for every quantity in this crate.
pub type Rational = Ratio<i128>;

/// `(a + b·√d) / c` with integer components, `c > 0`, `d >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surd {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl Surd {
    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Surd {
        assert!(c != 0, "zero denominator");
        assert!(d >= 0, "negative discriminant");
        let mut s = Surd { a, b, c, d };
        s.normalize();
        s
    }

    pub fn from_rational(r: Rational, d: i128) -> Surd {
        Surd::new(*r.numer(), 0, *r.denom(), d)
    }

    pub fn from_integer(n: i128, d: i128) -> Surd {
        Surd::new(n, 0, 1, d)
    }

    fn normalize(&mut self) {
        if self.c < 0 {
            self.a = -self.a;
            self.b = -self.b;
            self.c = -self.c;
        }
        if self.d == 0 {
            self.b = 0;
        }
        let g = gcd(gcd(self.a.abs(), self.b.abs()), self.c.abs());
        if g > 1 {
            self.a /= g;
            self.b /= g;
            self.c /= g;
        }
    }

    pub fn components(&self) -> (i128, i128, i128, i128) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn discriminant(&self) -> i128 {
        self.d
    }

    fn same_field(&self, other: &Surd) -> (Surd, Surd) {
        assert!(
            self.d == other.d || self.b == 0 || other.b == 0,
            "mixed discriminants {} vs {}",
            self.d,
            other.d
        );
        let d = if self.b != 0 { self.d } else { other.d };
        (
            Surd { d, ..*self },
            Surd { d, ..*other },
        )
    }

    pub fn add(&self, other: &Surd) -> Surd {
        let (x, y) = self.same_field(other);
        Surd::new(
            x.a * y.c + y.a * x.c,
            x.b * y.c + y.b * x.c,
            x.c * y.c,
            x.d,
        )
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Surd {
        Surd::new(-self.a, -self.b, self.c, self.d)
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let (x, y) = self.same_field(other);
        Surd::new(
            x.a * y.a + x.b * y.b * x.d,
            x.a * y.b + x.b * y.a,
            x.c * y.c,
            x.d,
        )
    }

    pub fn mul_rational(&self, r: Rational) -> Surd {
        Surd::new(self.a * *r.numer(), self.b * *r.numer(), self.c * *r.denom(), self.d)
    }

    /// Multiplicative inverse via conjugation.
    pub fn inv(&self) -> Surd {
        let norm = self.a * self.a - self.b * self.b * self.d;
        assert!(norm != 0, "inverting zero or degenerate surd");
        // 1/x = c(a - b√d) / (a² - b²d)
        Surd::new(self.c * self.a, -self.c * self.b, norm, self.d)
    }

    /// Exact sign of `a + b√d` over positive `c`.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = if self.d == 0 { 0 } else { self.b.signum() };
        if sb == 0 {
            return sa as i32;
        }
        if sa == 0 {
            return sb as i32;
        }
        if sa == sb {
            return sa as i32;
        }
        // Opposite signs: compare |a|² against b²d exactly.
        let lhs = self.a * self.a;
        let rhs = self.b * self.b * self.d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa as i32,
            Ordering::Less => sb as i32,
            Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    pub fn cmp_rational(&self, r: Rational) -> Ordering {
        let diff = self.sub(&Surd::from_rational(r, self.d));
        match diff.signum() {
            x if x > 0 => Ordering::Greater,
            0 => Ordering::Equal,
            _ => Ordering::Less,
        }
    }

    pub fn cmp_surd(&self, other: &Surd) -> Ordering {
        match self.sub(other).signum() {
            x if x > 0 => Ordering::Greater,
            0 => Ordering::Equal,
            _ => Ordering::Less,
        }
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64
    }

    /// Exact floor, using a float guess corrected by exact comparisons.
    pub fn floor(&self) -> i128 {
        let mut m = self.to_f64().floor() as i128;
        while self.cmp_rational(Rational::from_integer(m)) == Ordering::Less {
            m -= 1;
        }
        while self.cmp_rational(Rational::from_integer(m + 1)) != Ordering::Less {
            m += 1;
        }
        m
    }

    /// Exact ceiling.
    pub fn ceil(&self) -> i128 {
        let f = self.floor();
        if self.cmp_rational(Rational::from_integer(f)) == Ordering::Equal {
            f
        } else {
            f + 1
        }
    }
}

impl std::fmt::Display for Surd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b == 0 {
            if self.c == 1 {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else {
            write!(f, "({} + {}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
        }
    }
}

/// Round an exact rational to one decimal place, half away from zero, as the
/// tables print it.
pub fn format_1dp(r: Rational) -> String {
    let scaled = r * Rational::from_integer(10);
    let num = *scaled.numer();
    let den = *scaled.denom();
    // round(num/den) half away from zero
    let rounded = if num >= 0 {
        (2 * num + den) / (2 * den)
    } else {
        -((2 * -num + den) / (2 * den))
    };
    let whole = rounded / 10;
    let frac = (rounded % 10).abs();
    let sign = if rounded < 0 && whole == 0 { "-" } else { "" };
    format!("{sign}{whole}.{frac}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_basics() {
        // β_{5,4} = (6 + √12)/6
        let beta = Surd::new(6, 1, 6, 12);
        assert!((beta.to_f64() - 1.5773502691896257).abs() < 1e-12);
        // Satisfies (p-2)β² - (p-2)(q-2)β + (q-2) = 0 exactly.
        let lhs = beta
            .mul(&beta)
            .mul_rational(Rational::from_integer(3))
            .sub(&beta.mul_rational(Rational::from_integer(6)))
            .add(&Surd::from_integer(2, 12));
        assert!(lhs.is_zero());
        assert_eq!(beta.floor(), 1);
        assert_eq!(beta.ceil(), 2);
    }

    #[test]
    fn sign_analysis() {
        // 3 - √8 > 0, 2 - √8 < 0, 2 - √4 = 0
        assert_eq!(Surd::new(3, -1, 1, 8).signum(), 1);
        assert_eq!(Surd::new(2, -1, 1, 8).signum(), -1);
        assert_eq!(Surd::new(2, -1, 1, 4).signum(), 0);
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let beta = Surd::new(6, 1, 6, 12);
        let prod = beta.mul(&beta.inv());
        assert!(prod.sub(&Surd::from_integer(1, 12)).is_zero());
    }

    #[test]
    fn one_dp_formatting() {
        assert_eq!(format_1dp(Rational::new(1, 3)), "0.3");
        assert_eq!(format_1dp(Rational::new(9, 7)), "1.3");
        assert_eq!(format_1dp(Rational::new(5, 7)), "0.7");
        assert_eq!(format_1dp(Rational::new(18, 7)), "2.6");
        assert_eq!(format_1dp(Rational::new(1, 1)), "1.0");
        assert_eq!(format_1dp(Rational::new(9, 2)), "4.5");
        assert_eq!(format_1dp(Rational::new(29, 7)), "4.1");
    }
}
