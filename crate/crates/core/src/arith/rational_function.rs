use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::FiniteFieldOps;
use super::finite_field::{FiniteField, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Element of `F_q(t)` in lowest terms with monic denominator.
#[derive(Clone)]
pub struct RationalFunction {
    field: FiniteField,
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(field: &FiniteField, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(field, num, den))
    }

    fn normalize(field: &FiniteField, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                field: field.clone(),
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den, field);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g, field), den.div_exact(&g, field))
        };
        let lc = den.lead();
        if lc != 1 {
            let li = field.inv(&lc).expect("nonzero");
            num = num.scale(li, field);
            den = den.scale(li, field);
        }
        RationalFunction {
            field: field.clone(),
            num,
            den,
        }
    }

    pub fn from_poly(field: &FiniteField, p: Poly) -> Self {
        RationalFunction {
            field: field.clone(),
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(field: &FiniteField, c: Fq) -> Self {
        Self::from_poly(field, Poly::constant(c))
    }

    pub fn t(field: &FiniteField) -> Self {
        Self::from_poly(field, Poly::x())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `max(deg num, deg den)`, with `0` for zero.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.deg())
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        if self.den == o.den {
            return Self::normalize(f, self.num.add(&o.num, f), self.den.clone());
        }
        let num = self.num.mul(&o.den, f).add(&o.num.mul(&self.den, f), f);
        Self::normalize(f, num, self.den.mul(&o.den, f))
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            field: self.field.clone(),
            num: self.num.neg(&self.field),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        Self::normalize(f, self.num.mul(&o.num, f), self.den.mul(&o.den, f))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(&self.field, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Self {
        let f = &self.field;
        let (n, d) = if e >= 0 {
            (self.num.pow(e as u64, f), self.den.pow(e as u64, f))
        } else {
            (self.den.pow((-e) as u64, f), self.num.pow((-e) as u64, f))
        };
        Self::normalize(f, n, d)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den && self.field == other.field
    }
}

impl Eq for RationalFunction {}

impl Hash for RationalFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            let s = p.format(&self.field, "t");
            if p.coeffs().iter().filter(|c| **c != 0).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num.format(&self.field, "t"))
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_monic_denominator() {
        let f7 = FiniteField::prime(7).unwrap();
        // (t^2 + t) / (2 t^3) = (4t + 4) / t^2
        let x = RationalFunction::new(
            &f7,
            Poly::from_coeffs(vec![0, 1, 1]),
            Poly::from_coeffs(vec![0, 0, 0, 2]),
        )
        .unwrap();
        assert_eq!(x.denom(), &Poly::from_coeffs(vec![0, 0, 1]));
        assert_eq!(x.numer(), &Poly::from_coeffs(vec![4, 4]));
        assert_eq!(x.to_string(), "(4*t+4)/t^2");
    }

    #[test]
    fn field_ops() {
        let f9 = FiniteField::new(9).unwrap();
        let t = RationalFunction::t(&f9);
        let a = RationalFunction::constant(&f9, 4);
        let x = t.add(&a).div(&t.sub(&a)).unwrap();
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.pow(-2).mul(&x.pow(2)), RationalFunction::constant(&f9, 1));
    }
}
