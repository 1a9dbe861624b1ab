//! Dense univariate polynomials over the exact rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{One, Zero};

use super::{rat, Rat};
use crate::Error;

/// Polynomial in the counting variable `t`, coefficients lowest power first,
/// no trailing zeros. The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        RatPoly::from_coeffs(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        RatPoly { coeffs }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        RatPoly::monomial(rat(1), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// Convenience constructor from integer coefficients, lowest power first.
    pub fn from_ints(cs: &[i64]) -> Self {
        RatPoly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Substitution `t -> t^l` (the Adams operation on the `t` variable).
    pub fn adams_t(&self, l: usize) -> Self {
        assert!(l >= 1, "adams power must be positive");
        if l == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rat::zero(); (self.coeffs.len() - 1) * l + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * l] = c.clone();
        }
        RatPoly { coeffs }
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && c.numer().sign() != num::bigint::Sign::Minus)
    }

    /// Euclidean division; panics on zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (RatPoly::zero(), self.clone());
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    let v = &rem[k + j] - d * &c;
                    rem[k + j] = v;
                }
            }
            quot[k] = c;
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// Monic gcd via the Euclidean algorithm; gcd(0,0) = 0.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Same polynomial scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// JSON wire form: coefficient strings "a/b" (or "a"), lowest power first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    let s = if c.is_integer() {
                        c.numer().to_string()
                    } else {
                        format!("{}/{}", c.numer(), c.denom())
                    };
                    serde_json::Value::String(s)
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, Error> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput("polynomial must be a JSON array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            let s = item
                .as_str()
                .ok_or_else(|| Error::InvalidInput("polynomial coefficient must be a string".into()))?;
            let r: Rat = s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad rational coefficient {s:?}")))?;
            coeffs.push(r);
        }
        Ok(RatPoly::from_coeffs(coeffs))
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = v;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl AddAssign<&RatPoly> for RatPoly {
    fn add_assign(&mut self, rhs: &RatPoly) {
        *self = &*self + rhs;
    }
}

/// Unique polynomial of degree < #samples through all given points.
pub fn poly_interpolate(samples: &[(Rat, Rat)]) -> Result<RatPoly, Error> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("interpolation needs at least one sample".into()));
    }
    for (i, (x, _)) in samples.iter().enumerate() {
        for (y, _) in &samples[..i] {
            if x == y {
                return Err(Error::InvalidInput("degenerate sample set".into()));
            }
        }
    }
    // Newton's divided differences, assembled exactly.
    let n = samples.len();
    let mut table: Vec<Rat> = samples.iter().map(|(_, v)| v.clone()).collect();
    let mut coeffs = vec![table[0].clone()];
    for order in 1..n {
        for i in 0..n - order {
            let num = &table[i + 1] - &table[i];
            let den = &samples[i + order].0 - &samples[i].0;
            table[i] = num / den;
        }
        table.truncate(n - order);
        coeffs.push(table[0].clone());
    }
    // Expand sum_k coeffs[k] * prod_{j<k} (t - x_j).
    let mut result = RatPoly::zero();
    let mut basis = RatPoly::one();
    for (k, c) in coeffs.iter().enumerate() {
        result += &basis.scale(c);
        if k + 1 < n {
            let factor = RatPoly::from_coeffs(vec![-&samples[k].0, rat(1)]);
            basis = &basis * &factor;
        }
    }
    Ok(result)
}

/// Generalized binomial coefficient `P (P-1) ... (P-k+1) / k!`.
pub fn binomial_poly(p: &RatPoly, k: usize) -> RatPoly {
    let mut result = RatPoly::one();
    for j in 0..k {
        let factor = p - &RatPoly::constant(rat(j as i64));
        result = &result * &factor;
    }
    let mut kfact = Rat::one();
    for j in 2..=k {
        kfact *= rat(j as i64);
    }
    result.scale(&kfact.recip())
}
