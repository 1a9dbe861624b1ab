//! Denominator-formula engine for Borcherds-type root data attached to a
//! quiver: enumeration of the Weyl group with its rho-shifts, the correction
//! series `S` coming from imaginary simple roots (charged, optionally
//! t-graded), the denominator `sum_w sign(w) z^(rho - w rho) w(S)`, and the
//! character of the enveloping algebra as its inverse.

use std::collections::{BTreeMap, HashSet};

use crate::exact::{binomial_poly, Rat, RatPoly};
use crate::quiver::Quiver;
use crate::series::{AdamsScope, BoxBounds, DimVec, TruncSeries};
use crate::Error;

/// Kind of a simple root, as read off from the symmetrized form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleKind {
    Real,
    Isotropic,
    Hyperbolic,
}

/// Charge table: dimension vector of a simple root, its charge polynomial,
/// and its kind. Real entries carry charge 1 and drive the Weyl group;
/// imaginary entries feed the correction series.
#[derive(Clone, Debug, Default)]
pub struct SimpleTable {
    entries: BTreeMap<DimVec, (RatPoly, SimpleKind)>,
}

impl SimpleTable {
    pub fn new() -> Self {
        SimpleTable { entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, d: DimVec, charge: RatPoly, kind: SimpleKind) {
        self.entries.insert(d, (charge, kind));
    }

    pub fn entries(&self) -> impl Iterator<Item = (&DimVec, &RatPoly, SimpleKind)> {
        self.entries.iter().map(|(d, (c, k))| (d, c, *k))
    }

    pub fn get(&self, d: &[u32]) -> Option<(&RatPoly, SimpleKind)> {
        self.entries.get(d).map(|(c, k)| (c, *k))
    }

    /// Vertices `i` whose unit vector is a real entry; these generate the
    /// active Weyl group.
    pub fn real_vertices(&self, rank: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (d, _, kind) in self.entries() {
            if kind == SimpleKind::Real {
                let i = d.iter().position(|&x| x == 1).expect("validated real entry");
                let _ = rank;
                out.push(i);
            }
        }
        out.sort_unstable();
        out
    }

    /// Check each entry's kind against the symmetrized form of `q` and each
    /// real entry's shape and charge.
    pub fn validate(&self, q: &Quiver) -> Result<(), Error> {
        for (d, charge, kind) in self.entries() {
            if d.len() != q.num_vertices() {
                return Err(Error::BoxMismatch);
            }
            let norm = q.sym_form(d, d)?;
            let ok = match kind {
                SimpleKind::Real => {
                    norm == 2
                        && d.iter().sum::<u32>() == 1
                        && d.iter().all(|&x| x <= 1)
                        && charge.is_one()
                }
                SimpleKind::Isotropic => norm == 0,
                SimpleKind::Hyperbolic => norm < 0,
            };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "simple-root entry {d:?} labelled {kind:?} is inconsistent (self-pairing {norm})"
                )));
            }
        }
        Ok(())
    }
}

/// An element of the Weyl group, together with the data the denominator
/// formula needs: its matrix action on Z^I, the shift `rho - w rho`
/// (expressed in simple-root coordinates), and its sign.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub word: Vec<usize>,
    /// Row-major rank x rank matrix; column `j` is `w(e_j)`.
    pub action: Vec<i64>,
    pub shift: DimVec,
    pub sign: i64,
}

impl WeylElement {
    fn identity(rank: usize) -> Self {
        let mut action = vec![0i64; rank * rank];
        for i in 0..rank {
            action[i * rank + i] = 1;
        }
        WeylElement { word: Vec::new(), action, shift: vec![0; rank], sign: 1 }
    }

    /// Column `j` of the action matrix, i.e. the image of the unit vector.
    fn column(&self, rank: usize, j: usize) -> Vec<i64> {
        (0..rank).map(|i| self.action[i * rank + j]).collect()
    }

    /// Image of a nonnegative vector under `w`.
    pub fn apply(&self, e: &[u32]) -> Vec<i64> {
        let rank = e.len();
        (0..rank)
            .map(|i| (0..rank).map(|j| self.action[i * rank + j] * e[j] as i64).sum())
            .collect()
    }
}

/// All Weyl elements whose shift fits in the box, for the reflection
/// generators at the given real vertices. Breadth-first from the identity:
/// `w` extends to `w s_i` exactly when `w(e_i)` is still a nonnegative
/// vector (so the word stays reduced), and the shift grows by `w(e_i)`;
/// elements are deduplicated by their action matrix.
pub fn weyl_enumerate_subset(
    q: &Quiver,
    generators: &[usize],
    bounds: &BoxBounds,
) -> Vec<WeylElement> {
    let rank = q.num_vertices();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = vec![WeylElement::identity(rank)];
    seen.insert(out[0].action.clone());
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        let w = out[idx].clone();
        for &i in generators {
            let col = w.column(rank, i);
            if col.iter().any(|&x| x < 0) {
                continue; // w s_i is shorter than w
            }
            let mut shift = w.shift.clone();
            let mut fits = true;
            for (s, &c) in shift.iter_mut().zip(&col) {
                *s += c as u32;
            }
            for (s, &b) in shift.iter().zip(bounds.bounds()) {
                if *s > b {
                    fits = false;
                }
            }
            if !fits {
                continue; // shifts only grow along reduced words
            }
            // action of w s_i: column j becomes col_j(w) - c_{ij} col_i(w)
            let mut action = w.action.clone();
            for j in 0..rank {
                let c = q.cartan_entry(i, j);
                for r in 0..rank {
                    action[r * rank + j] -= c * w.action[r * rank + i];
                }
            }
            if seen.insert(action.clone()) {
                let mut word = w.word.clone();
                word.push(i);
                out.push(WeylElement { word, action, shift, sign: -w.sign });
                frontier.push(out.len() - 1);
            }
        }
    }
    out
}

/// [`weyl_enumerate_subset`] with every real vertex of the quiver active.
pub fn weyl_enumerate(q: &Quiver, bounds: &BoxBounds) -> Vec<WeylElement> {
    weyl_enumerate_subset(q, &q.real_vertices(), bounds)
}

/// The contribution of one imaginary simple entry to the correction series:
/// `-charge * z^gamma` for hyperbolic entries, and the plethystic
/// exponential `Exp(-charge * z^gamma) - 1` for isotropic ones (full t-and-z
/// scope when graded, z-only otherwise).
fn imaginary_term(
    d: &DimVec,
    charge: &RatPoly,
    kind: SimpleKind,
    bounds: &BoxBounds,
    graded: bool,
) -> Result<TruncSeries, Error> {
    match kind {
        SimpleKind::Real => unreachable!("imaginary entries only"),
        SimpleKind::Hyperbolic => Ok(TruncSeries::monomial(
            bounds.clone(),
            d.clone(),
            charge.scale(&Rat::from_integer((-1).into())),
        )),
        SimpleKind::Isotropic => {
            let scope = if graded { AdamsScope::TAndZ } else { AdamsScope::ZOnly };
            let arg = TruncSeries::monomial(
                bounds.clone(),
                d.clone(),
                charge.scale(&Rat::from_integer((-1).into())),
            );
            let mut term = arg.pleth_exp(scope)?;
            let zero = vec![0u32; bounds.rank()];
            term.set(zero, RatPoly::zero());
            Ok(term)
        }
    }
}

/// Isotropic term by direct binomial expansion of the product formulas,
/// `(1 - z^gamma)^charge - 1` ungraded and
/// `prod_j (1 - t^j z^gamma)^(a_j) - 1` graded (requiring the charge
/// `sum_j a_j t^j` to have integer coefficients). Must agree with the
/// plethystic-exponential form; kept as an independent cross-check.
pub fn isotropic_term_product(
    d: &DimVec,
    charge: &RatPoly,
    bounds: &BoxBounds,
    graded: bool,
) -> Result<TruncSeries, Error> {
    let max_mult = bounds
        .bounds()
        .iter()
        .zip(d)
        .filter(|&(_, &di)| di > 0)
        .map(|(&b, &di)| b / di)
        .min()
        .unwrap_or(0) as usize;
    let mut out = if graded {
        // Expand each (1 - t^j z^gamma)^(a_j) by the binomial theorem.
        let mut acc = TruncSeries::one(bounds.clone());
        for (j, a) in charge.coeffs().iter().enumerate() {
            if a.is_integer() && *a.numer() >= 0.into() {
                let aj = RatPoly::constant(a.clone());
                let mut factor = TruncSeries::zero(bounds.clone());
                for k in 0..=max_mult {
                    let mut e = vec![0u32; bounds.rank()];
                    for (x, &di) in e.iter_mut().zip(d) {
                        *x = di * k as u32;
                    }
                    // (-1)^k C(a_j, k) t^(jk)
                    let mut c = binomial_poly(&aj, k);
                    if k % 2 == 1 {
                        c = c.scale(&Rat::from_integer((-1).into()));
                    }
                    let c = &RatPoly::monomial(Rat::from_integer(1.into()), j * k) * &c;
                    factor.set(e, c);
                }
                acc = acc.mul(&factor)?;
            } else if !a.is_integer() || *a.numer() < 0.into() {
                return Err(Error::InvalidInput(
                    "graded isotropic product form needs a charge in N[t]".into(),
                ));
            }
        }
        acc
    } else {
        // (1 - z^gamma)^charge = sum_k (-1)^k C(charge, k) z^(k gamma).
        let mut acc = TruncSeries::zero(bounds.clone());
        for k in 0..=max_mult {
            let mut e = vec![0u32; bounds.rank()];
            for (x, &di) in e.iter_mut().zip(d) {
                *x = di * k as u32;
            }
            let mut c = binomial_poly(charge, k);
            if k % 2 == 1 {
                c = c.scale(&Rat::from_integer((-1).into()));
            }
            acc.set(e, c);
        }
        acc
    };
    let zero = vec![0u32; bounds.rank()];
    out.set(zero, RatPoly::zero());
    Ok(out)
}

/// The correction series `S`: sum over finite sets of distinct, pairwise
/// orthogonal imaginary entries of the table of the product of their terms,
/// the empty set contributing 1.
pub fn s_series(
    q: &Quiver,
    table: &SimpleTable,
    bounds: &BoxBounds,
    graded: bool,
) -> Result<TruncSeries, Error> {
    table.validate(q)?;
    let imaginary: Vec<(&DimVec, &RatPoly, SimpleKind)> = table
        .entries()
        .filter(|(_, _, k)| *k != SimpleKind::Real)
        .collect();
    let terms: Vec<TruncSeries> = imaginary
        .iter()
        .map(|(d, c, k)| imaginary_term(d, c, *k, bounds, graded))
        .collect::<Result<_, _>>()?;
    // Pairwise orthogonality, precomputed.
    let n = imaginary.len();
    let mut orth = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = q.sym_form(imaginary[i].0, imaginary[j].0)?;
            orth[i][j] = v == 0;
            orth[j][i] = orth[i][j];
        }
    }

    let mut total = TruncSeries::one(bounds.clone());
    // DFS over subsets; prune on the height of the chosen exponents.
    fn go(
        start: usize,
        chosen: &mut Vec<usize>,
        used: &DimVec,
        product: &TruncSeries,
        imaginary: &[(&DimVec, &RatPoly, SimpleKind)],
        terms: &[TruncSeries],
        orth: &[Vec<bool>],
        bounds: &BoxBounds,
        total: &mut TruncSeries,
    ) -> Result<(), Error> {
        for i in start..imaginary.len() {
            if chosen.iter().any(|&j| !orth[j][i]) {
                continue;
            }
            let mut next_used = used.clone();
            let mut fits = true;
            for (u, &di) in next_used.iter_mut().zip(imaginary[i].0.iter()) {
                *u += di;
            }
            for (u, &b) in next_used.iter().zip(bounds.bounds()) {
                if *u > b {
                    fits = false;
                }
            }
            if !fits {
                continue;
            }
            let next_product = product.mul(&terms[i])?;
            *total = total.add(&next_product)?;
            chosen.push(i);
            go(i + 1, chosen, &next_used, &next_product, imaginary, terms, orth, bounds, total)?;
            chosen.pop();
        }
        Ok(())
    }
    let mut chosen = Vec::new();
    let one = TruncSeries::one(bounds.clone());
    go(
        0,
        &mut chosen,
        &vec![0; bounds.rank()],
        &one,
        &imaginary,
        &terms,
        &orth,
        bounds,
        &mut total,
    )?;
    Ok(total)
}

/// The denominator `sum_w sign(w) z^(rho - w rho) w(S)`, truncated to the
/// box. The active reflections are exactly the real entries of the table.
pub fn denominator_series(
    q: &Quiver,
    table: &SimpleTable,
    bounds: &BoxBounds,
    graded: bool,
) -> Result<TruncSeries, Error> {
    table.validate(q)?;
    let s = s_series(q, table, bounds, graded)?;
    let weyl = weyl_enumerate_subset(q, &table.real_vertices(q.num_vertices()), bounds);
    let mut out = TruncSeries::zero(bounds.clone());
    for w in &weyl {
        for (e, c) in s.terms() {
            if c.is_zero() {
                continue;
            }
            let image = w.apply(e);
            if image.iter().any(|&x| x < 0) {
                return Err(Error::NegativeExponent);
            }
            let mut exponent = w.shift.clone();
            let mut fits = true;
            for ((x, &im), &b) in exponent.iter_mut().zip(&image).zip(bounds.bounds()) {
                *x += im as u32;
                if *x > b {
                    fits = false;
                }
            }
            if !fits {
                continue;
            }
            let signed = if w.sign < 0 {
                c.scale(&Rat::from_integer((-1).into()))
            } else {
                c.clone()
            };
            out.add_to(&exponent, &signed);
        }
    }
    Ok(out)
}

/// Character of the enveloping algebra: inverse of the denominator.
pub fn univ_env_char(
    q: &Quiver,
    table: &SimpleTable,
    bounds: &BoxBounds,
    graded: bool,
) -> Result<TruncSeries, Error> {
    denominator_series(q, table, bounds, graded)?.inverse()
}
