//! Box-truncated multivariate power series with plethystic Exp/Log.
//!
//! A series lives in variables `z_1, ..., z_r` (one per quiver vertex),
//! truncated to a finite box of exponent vectors. Coefficients are either
//! polynomials or rational functions in `t`; the choice is fixed at the type
//! level, so mixing modes is impossible.

use std::collections::BTreeMap;
use std::fmt;

use num::One;

use crate::exact::{mobius, rat, ratio, Rat, RatFunc, RatPoly};
use crate::Error;

/// Exponent / dimension vector: one nonnegative entry per vertex.
pub type DimVec = Vec<u32>;

pub fn total_height(d: &[u32]) -> u32 {
    d.iter().sum()
}

/// Which variables the Adams operations act on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AdamsScope {
    /// `psi_l` maps `t^a z^e` to `t^a z^{le}`.
    ZOnly,
    /// `psi_l` maps `t^a z^e` to `t^{la} z^{le}`.
    TAndZ,
}

/// Coefficient ring of a truncated series.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
    /// Substitution `t -> t^l`.
    fn adams_t(&self, l: usize) -> Self;
}

impl Coeff for RatPoly {
    fn zero() -> Self {
        RatPoly::zero()
    }
    fn one() -> Self {
        RatPoly::one()
    }
    fn is_zero(&self) -> bool {
        RatPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatPoly::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        RatPoly::scale(self, c)
    }
    fn adams_t(&self, l: usize) -> Self {
        RatPoly::adams_t(self, l)
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        RatFunc::scale(self, c)
    }
    fn adams_t(&self, l: usize) -> Self {
        RatFunc::adams_t(self, l)
    }
}

/// Componentwise truncation bounds `{e : 0 <= e <= bounds}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoxBounds {
    bounds: DimVec,
}

impl BoxBounds {
    pub fn new(bounds: DimVec) -> Self {
        BoxBounds { bounds }
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn rank(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        e.len() == self.bounds.len() && e.iter().zip(&self.bounds).all(|(a, b)| a <= b)
    }

    pub fn max_height(&self) -> u32 {
        self.bounds.iter().sum()
    }

    /// All exponent vectors in the box, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = DimVec> + '_ {
        let mut current: Option<DimVec> = Some(vec![0; self.bounds.len()]);
        std::iter::from_fn(move || {
            let out = current.clone()?;
            let mut next = out.clone();
            let mut i = next.len();
            loop {
                if i == 0 {
                    current = None;
                    break;
                }
                i -= 1;
                if next[i] < self.bounds[i] {
                    next[i] += 1;
                    for e in next.iter_mut().skip(i + 1) {
                        *e = 0;
                    }
                    current = Some(next);
                    break;
                }
            }
            Some(out)
        })
    }
}

/// Truncated multivariate power series. Absent keys are zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C: Coeff = RatPoly> {
    bounds: BoxBounds,
    coeffs: BTreeMap<DimVec, C>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn zero(bounds: BoxBounds) -> Self {
        TruncSeries { bounds, coeffs: BTreeMap::new() }
    }

    pub fn one(bounds: BoxBounds) -> Self {
        let mut s = TruncSeries::zero(bounds);
        s.set(vec![0; s.bounds.rank()], C::one());
        s
    }

    /// The single term `c * z^e` (zero if `e` falls outside the box).
    pub fn monomial(bounds: BoxBounds, e: DimVec, c: C) -> Self {
        let mut s = TruncSeries::zero(bounds);
        s.set(e, c);
        s
    }

    pub fn bounds(&self) -> &BoxBounds {
        &self.bounds
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.coeffs.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Set a coefficient; out-of-box keys are dropped, zeros are not stored.
    pub fn set(&mut self, e: DimVec, c: C) {
        if !self.bounds.contains(&e) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn add_to(&mut self, e: &[u32], c: &C) {
        if c.is_zero() || !self.bounds.contains(e) {
            return;
        }
        let v = self.coeff(e).add(c);
        self.set(e.to_vec(), v);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DimVec, &C)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.bounds.rank()])
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.bounds != other.bounds {
            return Err(Error::BoxMismatch);
        }
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_to(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            bounds: self.bounds.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = TruncSeries::zero(self.bounds.clone());
        for (e, v) in self.terms() {
            out.set(e.clone(), v.scale(c));
        }
        out
    }

    /// Convolution truncated to the box.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.bounds != other.bounds {
            return Err(Error::BoxMismatch);
        }
        let mut out = TruncSeries::zero(self.bounds.clone());
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e: DimVec = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if out.bounds.contains(&e) {
                    out.add_to(&e, &c1.mul(c2));
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse within the box; requires constant term 1.
    pub fn inverse(&self) -> Result<Self, Error> {
        if !self.constant_term().is_one() {
            return Err(Error::NotInvertible);
        }
        let mut inv: TruncSeries<C> = TruncSeries::one(self.bounds.clone());
        let mut keys: Vec<DimVec> = self.bounds.iter().collect();
        keys.sort_by_key(|e| (total_height(e), e.clone()));
        for e in keys.into_iter().skip(1) {
            // inv[e] = -sum_{0 < n <= e} f[n] * inv[e - n]
            let mut acc = C::zero();
            for (n, fc) in self.terms() {
                if n.iter().all(|&x| x == 0) {
                    continue;
                }
                if n.iter().zip(&e).all(|(a, b)| a <= b) {
                    let rest: DimVec = e.iter().zip(n).map(|(a, b)| a - b).collect();
                    let g = inv.coeff(&rest);
                    if !g.is_zero() {
                        acc = acc.add(&fc.mul(&g));
                    }
                }
            }
            inv.set(e, acc.neg());
        }
        Ok(inv)
    }

    /// Adams operation `psi_l`; out-of-box monomials are dropped.
    pub fn adams(&self, l: usize, scope: AdamsScope) -> Result<Self, Error> {
        if l == 0 {
            return Err(Error::InvalidInput("adams power must be positive".into()));
        }
        let mut out = TruncSeries::zero(self.bounds.clone());
        for (e, c) in self.terms() {
            let le: DimVec = e.iter().map(|&x| x * l as u32).collect();
            if !out.bounds.contains(&le) {
                continue;
            }
            let nc = match scope {
                AdamsScope::ZOnly => c.clone(),
                AdamsScope::TAndZ => c.adams_t(l),
            };
            out.add_to(&le, &nc);
        }
        Ok(out)
    }

    /// Formal `exp` of a series with zero constant term.
    fn exp(&self) -> Self {
        let max = self.bounds.max_height() as usize;
        let mut out = TruncSeries::one(self.bounds.clone());
        let mut power = TruncSeries::one(self.bounds.clone());
        let mut kfact = Rat::one();
        for k in 1..=max {
            power = power.mul(self).expect("same box");
            if power.is_zero() {
                break;
            }
            kfact *= rat(k as i64);
            out = out.add(&power.scale(&kfact.clone().recip())).expect("same box");
        }
        out
    }

    /// Formal `log` of a series with constant term 1.
    fn log(&self) -> Self {
        let max = self.bounds.max_height() as usize;
        // u = f - 1; callers guarantee constant term 1.
        let mut u = self.clone();
        u.set(vec![0; self.bounds.rank()], C::zero());
        let mut out = TruncSeries::zero(self.bounds.clone());
        let mut power = TruncSeries::one(self.bounds.clone());
        for k in 1..=max {
            power = power.mul(&u).expect("same box");
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&ratio(sign, k as i64))).expect("same box");
        }
        out
    }

    /// Plethystic exponential `Exp(f) = exp(sum_l psi_l(f)/l)`.
    pub fn pleth_exp(&self, scope: AdamsScope) -> Result<Self, Error> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let max = self.bounds.max_height() as usize;
        let mut arg = TruncSeries::zero(self.bounds.clone());
        for l in 1..=max.max(1) {
            let psi = self.adams(l, scope)?;
            if psi.is_zero() {
                continue;
            }
            arg = arg.add(&psi.scale(&ratio(1, l as i64)))?;
        }
        Ok(arg.exp())
    }

    /// Plethystic logarithm `Log(f) = sum_l mu(l)/l psi_l(log f)`.
    pub fn pleth_log(&self, scope: AdamsScope) -> Result<Self, Error> {
        if !self.constant_term().is_one() {
            return Err(Error::InvalidInput("Log requires constant term 1".into()));
        }
        let lg = self.log();
        let max = self.bounds.max_height() as usize;
        let mut out = TruncSeries::zero(self.bounds.clone());
        for l in 1..=max.max(1) {
            let mu = mobius(l as u64)?;
            if mu == 0 {
                continue;
            }
            let psi = lg.adams(l, scope)?;
            if psi.is_zero() {
                continue;
            }
            out = out.add(&psi.scale(&ratio(mu, l as i64)))?;
        }
        Ok(out)
    }
}

impl TruncSeries<RatPoly> {
    /// JSON wire form: exponent strings "e1,e2,..." mapped to polynomial arrays.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (e, c) in self.terms() {
            let key = e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            map.insert(key, c.to_json());
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(bounds: BoxBounds, v: &serde_json::Value) -> Result<Self, Error> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("series must be a JSON object".into()))?;
        let mut out = TruncSeries::zero(bounds);
        for (key, val) in obj {
            let e: DimVec = key
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| Error::InvalidInput(format!("bad exponent key {key:?}")))?;
            out.set(e, RatPoly::from_json(val)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn b(bounds: &[u32]) -> BoxBounds {
        BoxBounds::new(bounds.to_vec())
    }

    fn zpow(bounds: &BoxBounds, k: u32) -> DimVec {
        assert_eq!(bounds.rank(), 1);
        vec![k]
    }

    #[test]
    fn mul_basic_identities() {
        let bx = b(&[3]);
        // (1+z)(1-z) = 1 - z^2
        let mut f = TruncSeries::one(bx.clone());
        f.set(vec![1], RatPoly::one());
        let mut g = TruncSeries::one(bx.clone());
        g.set(vec![1], -&RatPoly::one());
        let p = f.mul(&g).unwrap();
        let mut expect = TruncSeries::one(bx.clone());
        expect.set(vec![2], -&RatPoly::one());
        assert_eq!(p, expect);
        // f * 1 = f
        assert_eq!(f.mul(&TruncSeries::one(bx.clone())).unwrap(), f);
        // telescoping: (1 + z + z^2 + z^3)(1 - z) = 1 within box 3
        let mut h = TruncSeries::zero(bx.clone());
        for k in 0..=3 {
            h.set(zpow(&bx, k), RatPoly::one());
        }
        assert_eq!(h.mul(&g).unwrap(), TruncSeries::one(bx));
    }

    #[test]
    fn mul_rejects_box_mismatch() {
        let f: TruncSeries = TruncSeries::one(b(&[2]));
        let g = TruncSeries::one(b(&[3]));
        assert!(matches!(f.mul(&g), Err(Error::BoxMismatch)));
    }

    #[test]
    fn inverse_geometric() {
        let bx = b(&[4]);
        let mut f = TruncSeries::one(bx.clone());
        f.set(vec![1], -&RatPoly::one());
        let inv = f.inverse().unwrap();
        for k in 0..=4 {
            assert_eq!(inv.coeff(&[k]), RatPoly::one());
        }
        assert_eq!(f.mul(&inv).unwrap(), TruncSeries::one(bx.clone()));
        assert_eq!(TruncSeries::<RatPoly>::one(bx.clone()).inverse().unwrap(), TruncSeries::one(bx));
    }

    #[test]
    fn inverse_geometric_polynomial_ratio() {
        // 1 - (t^2+t) z, box 3
        let bx = b(&[3]);
        let q = RatPoly::from_ints(&[0, 1, 1]);
        let mut f = TruncSeries::one(bx.clone());
        f.set(vec![1], -&q);
        let inv = f.inverse().unwrap();
        let mut pow = RatPoly::one();
        for k in 0..=3 {
            assert_eq!(inv.coeff(&[k]), pow);
            pow = &pow * &q;
        }
    }

    #[test]
    fn inverse_requires_unit_constant() {
        let bx = b(&[2]);
        let f = TruncSeries::monomial(bx, vec![1], RatPoly::one());
        assert!(matches!(f.inverse(), Err(Error::NotInvertible)));
    }

    #[test]
    fn adams_scopes() {
        let bx = b(&[4]);
        let f = TruncSeries::monomial(bx.clone(), vec![1], RatPoly::t());
        let tz2 = f.adams(2, AdamsScope::TAndZ).unwrap();
        assert_eq!(tz2.coeff(&[2]), RatPoly::monomial(rat(1), 2));
        let z2 = f.adams(2, AdamsScope::ZOnly).unwrap();
        assert_eq!(z2.coeff(&[2]), RatPoly::t());
        assert_eq!(f.adams(1, AdamsScope::TAndZ).unwrap(), f);
        assert!(f.adams(0, AdamsScope::ZOnly).is_err());
    }

    #[test]
    fn exp_of_z_is_geometric_series() {
        let bx = b(&[5]);
        let f = TruncSeries::monomial(bx.clone(), vec![1], RatPoly::one());
        let e = f.pleth_exp(AdamsScope::ZOnly).unwrap();
        for k in 0..=5 {
            assert_eq!(e.coeff(&[k]), RatPoly::one(), "k = {k}");
        }
    }

    #[test]
    fn exp_tz_is_one_over_one_minus_tz() {
        let bx = b(&[5]);
        let f = TruncSeries::monomial(bx.clone(), vec![1], RatPoly::t());
        let e = f.pleth_exp(AdamsScope::TAndZ).unwrap();
        for k in 0..=5usize {
            assert_eq!(e.coeff(&[k as u32]), RatPoly::monomial(rat(1), k), "k = {k}");
        }
    }

    #[test]
    fn exp_z_of_tz_plus_tz2() {
        // Exp_z fixes t, so Exp_z(tz + tz^2) = (1-z)^{-t} (1-z^2)^{-t}.
        // Hand expansion to order z^2: 1 + t z + (t(t+1)/2 + t) z^2.
        let bx = b(&[2]);
        let mut f = TruncSeries::zero(bx.clone());
        f.set(vec![1], RatPoly::t());
        f.set(vec![2], RatPoly::t());
        let e = f.pleth_exp(AdamsScope::ZOnly).unwrap();
        assert_eq!(e.coeff(&[0]), RatPoly::one());
        assert_eq!(e.coeff(&[1]), RatPoly::t());
        let expect = RatPoly::from_coeffs(vec![rat(0), crate::exact::ratio(3, 2), crate::exact::ratio(1, 2)]);
        assert_eq!(e.coeff(&[2]), expect);
        // The same input under Exp_{t,z} gives 1 + t z + (t^2 + t) z^2.
        let etz = f.pleth_exp(AdamsScope::TAndZ).unwrap();
        assert_eq!(etz.coeff(&[2]), RatPoly::from_ints(&[0, 1, 1]));
    }

    #[test]
    fn exp_requires_zero_constant_term() {
        let bx = b(&[2]);
        let f: TruncSeries = TruncSeries::one(bx);
        assert!(matches!(f.pleth_exp(AdamsScope::ZOnly), Err(Error::NonzeroConstantTerm)));
    }

    #[test]
    fn log_inverts_exp_examples() {
        let bx = b(&[4]);
        // Log_z(1/(1-z)) = z
        let mut geom = TruncSeries::zero(bx.clone());
        for k in 0..=4 {
            geom.set(vec![k], RatPoly::one());
        }
        let lg = geom.pleth_log(AdamsScope::ZOnly).unwrap();
        assert_eq!(lg, TruncSeries::monomial(bx.clone(), vec![1], RatPoly::one()));
        // Log_z((1-z)^{-2}) = 2z
        let sq = geom.mul(&geom).unwrap();
        let lg2 = sq.pleth_log(AdamsScope::ZOnly).unwrap();
        assert_eq!(lg2, TruncSeries::monomial(bx.clone(), vec![1], RatPoly::from_ints(&[2])));
        // Log_{t,z}(1/(1-tz)) = tz
        let mut gtz = TruncSeries::zero(bx.clone());
        for k in 0..=4usize {
            gtz.set(vec![k as u32], RatPoly::monomial(rat(1), k));
        }
        let lg3 = gtz.pleth_log(AdamsScope::TAndZ).unwrap();
        assert_eq!(lg3, TruncSeries::monomial(bx, vec![1], RatPoly::t()));
    }

    #[test]
    fn adams_composition() {
        let bx = b(&[8, 8]);
        let mut f = TruncSeries::zero(bx.clone());
        f.set(vec![1, 0], RatPoly::t());
        f.set(vec![0, 1], RatPoly::from_ints(&[1, 2]));
        f.set(vec![1, 1], RatPoly::from_ints(&[0, 0, 3]));
        for scope in [AdamsScope::ZOnly, AdamsScope::TAndZ] {
            for l in 1..=4usize {
                for m in 1..=4usize {
                    let a = f.adams(l, scope).unwrap().adams(m, scope).unwrap();
                    let b = f.adams(l * m, scope).unwrap();
                    assert_eq!(a, b, "l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn exp_binomial_bridge() {
        // Exp_z(-P(t) z^2) = sum_k binomial_poly(P,k) (-z^2)^k
        use crate::exact::binomial_poly;
        let bx = b(&[7]);
        let p = RatPoly::from_ints(&[1, 2, 1]);
        let f = TruncSeries::monomial(bx.clone(), vec![2], -&p);
        let e = f.pleth_exp(AdamsScope::ZOnly).unwrap();
        for k in 0..=3usize {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let expect = binomial_poly(&p, k).scale(&rat(sign));
            assert_eq!(e.coeff(&[2 * k as u32]), expect, "k = {k}");
        }
        assert_eq!(e.coeff(&[1]), RatPoly::zero());
        assert_eq!(e.coeff(&[3]), RatPoly::zero());
    }

    #[test]
    fn series_json_roundtrip() {
        let bx = b(&[2, 2]);
        let mut f = TruncSeries::zero(bx.clone());
        f.set(vec![1, 0], RatPoly::from_ints(&[1, -2]));
        f.set(vec![2, 2], RatPoly::t());
        let v = f.to_json();
        assert_eq!(TruncSeries::from_json(bx, &v).unwrap(), f);
    }
}
