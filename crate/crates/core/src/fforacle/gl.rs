//! Conjugacy classes of `GL_n(F_p)` via rational canonical form.
//!
//! A class is a finite multiset of pairs (monic irreducible `f != x`,
//! partition), with total weighted degree `n`. Class sizes come from the
//! standard centralizer-order formula; representatives are block-diagonal
//! companion matrices of the `f^part` factors.

use num::bigint::BigUint;
use num::One;

use super::fp::{irreducibles_by_degree, FpMat, FpPoly, PrimeField};
use crate::exact::{partitions_of, Partition};
use crate::Error;

/// Largest matrix size supported by the oracle.
pub const MAX_GL_DIM: usize = 4;

/// A conjugacy class of `GL_n(F_p)`.
#[derive(Clone, Debug)]
pub struct GLClass {
    pub n: usize,
    /// Block companion representative.
    pub rep: FpMat,
    /// Exact class cardinality.
    pub size: BigUint,
    /// Elementary divisors: (irreducible id, degree, partition), sorted by id.
    /// The id is `(degree << 32) | index` with a canonical per-degree order,
    /// so ids are comparable across different matrix sizes.
    pub factors: Vec<(u64, u32, Partition)>,
}

/// `|GL_n(F_p)| = prod_{k=0}^{n-1} (p^n - p^k)`.
pub fn gl_order(n: usize, p: u64) -> BigUint {
    let pn = BigUint::from(p).pow(n as u32);
    let mut order = BigUint::one();
    for k in 0..n {
        order *= &pn - BigUint::from(p).pow(k as u32);
    }
    order
}

/// Order of the centralizer of a primary block with partition `lambda` over
/// the field with `q` elements:
/// `q^{sum conj(lambda)_j^2} * prod_i phi_{m_i}(1/q)` as an exact integer.
fn primary_centralizer_order(lambda: &Partition, q: &BigUint) -> BigUint {
    let conj = lambda.conjugate();
    let s: u32 = conj.parts().iter().map(|&c| c * c).sum();
    let mut shift: u32 = 0;
    let mut prod = BigUint::one();
    for (_, m) in lambda.multiplicities() {
        for k in 1..=m {
            prod *= q.pow(k) - BigUint::one();
            shift += k;
        }
    }
    q.pow(s - shift) * prod
}

/// All conjugacy classes of `GL_n(F_p)`, each exactly once.
pub fn gl_classes(n: usize, p: u64) -> Result<Vec<GLClass>, Error> {
    if n > MAX_GL_DIM {
        return Err(Error::UnsupportedDimension(format!("GL_{n} over F_{p}")));
    }
    let f = PrimeField::new(p);
    if n == 0 {
        // Trivial group: the empty matrix.
        return Ok(vec![GLClass {
            n: 0,
            rep: FpMat::zero(0),
            size: BigUint::one(),
            factors: Vec::new(),
        }]);
    }
    let irreds = irreducibles_by_degree(p, n);
    let partitions: Vec<Vec<Partition>> =
        (0..=n as u32).map(partitions_of).collect();
    let group_order = gl_order(n, p);

    let mut out = Vec::new();
    // DFS over degrees; within a degree, irreducibles are chosen with
    // strictly increasing index so every multiset appears exactly once.
    let mut chosen: Vec<(usize, usize, Partition)> = Vec::new(); // (deg, index, partition)
    fn go(
        deg: usize,
        next_index: usize,
        remaining: usize,
        irreds: &[Vec<FpPoly>],
        partitions: &[Vec<Partition>],
        chosen: &mut Vec<(usize, usize, Partition)>,
        out: &mut Vec<Vec<(usize, usize, Partition)>>,
    ) {
        if remaining == 0 {
            out.push(chosen.clone());
            return;
        }
        if deg > irreds.len() || deg > remaining {
            return;
        }
        // Option 1: done with this degree, move on.
        go(deg + 1, 0, remaining, irreds, partitions, chosen, out);
        // Option 2: pick irreducible `i >= next_index` of this degree with a
        // nonempty partition of weight w, deg * w <= remaining.
        let polys = &irreds[deg - 1];
        for i in next_index..polys.len() {
            for w in 1..=remaining / deg {
                for lambda in &partitions[w] {
                    chosen.push((deg, i, lambda.clone()));
                    go(deg, i + 1, remaining - deg * w, irreds, partitions, chosen, out);
                    chosen.pop();
                }
            }
        }
    }
    let mut assignments = Vec::new();
    go(1, 0, n, &irreds, &partitions, &mut chosen, &mut assignments);

    for assignment in assignments {
        let mut centralizer = BigUint::one();
        let mut blocks = Vec::new();
        let mut factors = Vec::new();
        for (deg, idx, lambda) in &assignment {
            let poly = &irreds[deg - 1][*idx];
            let q = BigUint::from(p).pow(*deg as u32);
            centralizer *= primary_centralizer_order(lambda, &q);
            for &part in lambda.parts() {
                blocks.push(poly.pow(part, f).companion(f));
            }
            let id = ((*deg as u64) << 32) | *idx as u64;
            factors.push((id, *deg as u32, lambda.clone()));
        }
        factors.sort_by_key(|(id, _, _)| *id);
        let size = &group_order / centralizer;
        out.push(GLClass { n, rep: FpMat::block_diag(&blocks), size, factors });
    }
    // Sizes must tile the group.
    let total: BigUint = out.iter().map(|c| c.size.clone()).sum();
    if total != group_order {
        return Err(Error::OracleInconsistency(format!(
            "class sizes sum to {total}, expected |GL_{n}(F_{p})| = {group_order}"
        )));
    }
    Ok(out)
}

/// Intertwiner dimension `dim {X : g_t X = X g_s}` from the elementary
/// divisor data: shared irreducibles `f` contribute
/// `deg f * sum_{i,j} min(lambda_i, mu_j)`.
pub fn hom_dim(a: &GLClass, b: &GLClass) -> u32 {
    let mut total = 0u32;
    let (mut i, mut j) = (0, 0);
    while i < a.factors.len() && j < b.factors.len() {
        let (ida, dega, la) = &a.factors[i];
        let (idb, _, lb) = &b.factors[j];
        match ida.cmp(idb) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let mut s = 0u32;
                for &x in la.parts() {
                    for &y in lb.parts() {
                        s += x.min(y);
                    }
                }
                total += dega * s;
                i += 1;
                j += 1;
            }
        }
    }
    total
}

/// Intertwiner dimension by exact Gaussian elimination on the matrix of
/// `X -> g_t X - X g_s`; the independent cross-check for [`hom_dim`].
pub fn hom_dim_kernel(g_s: &FpMat, g_t: &FpMat, p: u64) -> u32 {
    let f = PrimeField::new(p);
    let (ds, dt) = (g_s.n, g_t.n);
    let dim = ds * dt;
    if dim == 0 {
        return 0;
    }
    // X is dt x ds; entry index (i, j) -> i * ds + j.
    let mut m = vec![0u64; dim * dim];
    for i in 0..dt {
        for j in 0..ds {
            let row = i * ds + j;
            // (g_t X)_{ij} = sum_k g_t[i][k] X[k][j]
            for k in 0..dt {
                let col = k * ds + j;
                m[row * dim + col] = f.add(m[row * dim + col], g_t.get(i, k));
            }
            // -(X g_s)_{ij} = -sum_l X[i][l] g_s[l][j]
            for l in 0..ds {
                let col = i * ds + l;
                m[row * dim + col] = f.sub(m[row * dim + col], g_s.get(l, j));
            }
        }
    }
    (dim - super::fp::rank_of(&mut m, dim, dim, f)) as u32
}

/// Conjugacy classes by brute force: orbits of the conjugation action,
/// explored with a generating set. Only for small `(n, p)`; used to validate
/// [`gl_classes`].
pub fn brute_force_classes(n: usize, p: u64) -> Vec<(FpMat, u64)> {
    let f = PrimeField::new(p);
    // Transvections + a scaling matrix generate GL_n(F_p).
    let mut gens: Vec<FpMat> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut t = FpMat::identity(n);
                t.set(i, j, 1);
                gens.push(t);
            }
        }
    }
    if p > 2 {
        let root = (2..p).find(|&g| {
            // primitive root mod p
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u64;
            for _ in 0..p - 1 {
                x = f.mul(x, g);
                seen.insert(x);
            }
            seen.len() as u64 == p - 1
        });
        let mut d = FpMat::identity(n);
        d.set(0, 0, root.unwrap_or(p - 1));
        gens.push(d);
    }
    let gen_invs: Vec<FpMat> = gens.iter().map(|g| g.inverse(f).unwrap()).collect();

    // All invertible matrices.
    let total = p.pow((n * n) as u32);
    let mut all = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut m = FpMat::zero(n);
        for k in 0..n * n {
            m.data[k] = c % p;
            c /= p;
        }
        if m.is_invertible(f) {
            all.push(m);
        }
    }
    let index: std::collections::HashMap<FpMat, usize> =
        all.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();

    let mut seen = vec![false; all.len()];
    let mut classes = Vec::new();
    for start in 0..all.len() {
        if seen[start] {
            continue;
        }
        let mut queue = vec![start];
        seen[start] = true;
        let mut orbit = 0u64;
        while let Some(cur) = queue.pop() {
            orbit += 1;
            for (g, ginv) in gens.iter().zip(&gen_invs) {
                let conj = g.mul(&all[cur], f).mul(ginv, f);
                let idx = index[&conj];
                if !seen[idx] {
                    seen[idx] = true;
                    queue.push(idx);
                }
            }
        }
        classes.push((all[start].clone(), orbit));
    }
    classes
}
