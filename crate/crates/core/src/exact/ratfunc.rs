//! Rational functions in `t`, kept in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::RatPoly;
use super::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: RatPoly,
    den: RatPoly, // monic, nonzero, coprime to num
}

impl RatFunc {
    pub fn new(num: RatPoly, den: RatPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num: RatPoly::zero(), den: RatPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading().recip();
        num = num.scale(&lead);
        den = den.scale(&lead);
        RatFunc { num, den }
    }

    pub fn from_poly(p: RatPoly) -> Self {
        RatFunc { num: p, den: RatPoly::one() }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(RatPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(RatPoly::one())
    }

    pub fn numerator(&self) -> &RatPoly {
        &self.num
    }

    pub fn denominator(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The underlying polynomial, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&RatPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    /// Substitution `t -> t^l` on both numerator and denominator.
    pub fn adams_t(&self, l: usize) -> Self {
        RatFunc::new(self.num.adams_t(l), self.den.adams_t(l))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}
