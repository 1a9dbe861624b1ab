//! Arithmetic over prime fields: residues, dense matrices, polynomials.

/// Residues are kept reduced mod `p`; all entries fit in u64 (p is small).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p), "characteristic must be prime");
        PrimeField { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Unbounded iterator over the primes 2, 3, 5, ...
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

/// Dense row-major square matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpMat {
    pub n: usize,
    pub data: Vec<u64>,
}

impl FpMat {
    pub fn zero(n: usize) -> Self {
        FpMat { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FpMat::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &FpMat, f: PrimeField) -> FpMat {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = FpMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j) % f.p;
                    out.set(i, j, v % f.p);
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination; also usable as an invertibility test.
    pub fn rank(&self, f: PrimeField) -> usize {
        rank_of(&mut self.data.clone(), self.n, self.n, f)
    }

    pub fn is_invertible(&self, f: PrimeField) -> bool {
        self.rank(f) == self.n
    }

    pub fn inverse(&self, f: PrimeField) -> Option<FpMat> {
        let n = self.n;
        // [A | I] row reduction.
        let mut aug = vec![0u64; n * 2 * n];
        for i in 0..n {
            for j in 0..n {
                aug[i * 2 * n + j] = self.get(i, j);
            }
            aug[i * 2 * n + n + i] = 1;
        }
        let w = 2 * n;
        for col in 0..n {
            let pivot = (col..n).find(|&r| aug[r * w + col] != 0)?;
            aug.swap_chunks(pivot, col, w);
            let inv = f.inv(aug[col * w + col]);
            for j in 0..w {
                aug[col * w + j] = f.mul(aug[col * w + j], inv);
            }
            for r in 0..n {
                if r != col && aug[r * w + col] != 0 {
                    let factor = aug[r * w + col];
                    for j in 0..w {
                        let v = f.sub(aug[r * w + j], f.mul(factor, aug[col * w + j]));
                        aug[r * w + j] = v;
                    }
                }
            }
        }
        let mut out = FpMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug[i * w + n + j]);
            }
        }
        Some(out)
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[FpMat]) -> FpMat {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut out = FpMat::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        out
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, w: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, a: usize, b: usize, w: usize) {
        if a == b {
            return;
        }
        for j in 0..w {
            self.swap(a * w + j, b * w + j);
        }
    }
}

/// Rank of an `rows x cols` row-major matrix, destroying the buffer.
pub fn rank_of(data: &mut [u64], rows: usize, cols: usize, f: PrimeField) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| data[r * cols + col] % f.p != 0);
        let Some(pivot) = pivot else { continue };
        for j in 0..cols {
            data.swap(pivot * cols + j, rank * cols + j);
        }
        let inv = f.inv(data[rank * cols + col]);
        for j in col..cols {
            data[rank * cols + j] = f.mul(data[rank * cols + j], inv);
        }
        for r in 0..rows {
            if r != rank && data[r * cols + col] % f.p != 0 {
                let factor = data[r * cols + col] % f.p;
                for j in col..cols {
                    let v = f.sub(data[r * cols + j], f.mul(factor, data[rank * cols + j]));
                    data[r * cols + j] = v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Monic polynomial over `F_p`, coefficients lowest first, leading coeff 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FpPoly {
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: u64, f: PrimeField) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Remainder of `self` modulo `m` (both over `F_p`); used for
    /// irreducibility testing of quartics.
    fn rem(&self, m: &FpPoly, f: PrimeField) -> Vec<u64> {
        let mut r = self.coeffs.clone();
        let dm = m.degree();
        while r.len() > dm {
            let lead = *r.last().unwrap() % f.p;
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (j, &c) in m.coeffs.iter().enumerate() {
                    r[shift + j] = f.sub(r[shift + j], f.mul(lead, c));
                }
            }
            r.pop();
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    /// Irreducibility over `F_p` for degrees up to 4: no roots for degrees
    /// 2 and 3; no roots and no irreducible quadratic factors for degree 4.
    pub fn is_irreducible(&self, f: PrimeField, irred_quadratics: &[FpPoly]) -> bool {
        match self.degree() {
            0 => false,
            1 => true,
            2 | 3 => (0..f.p).all(|x| self.eval(x, f) != 0),
            4 => {
                (0..f.p).all(|x| self.eval(x, f) != 0)
                    && irred_quadratics.iter().all(|q| !self.rem(q, f).is_empty())
            }
            d => unimplemented!("irreducibility test for degree {d}"),
        }
    }

    /// `self^m` as a monic polynomial.
    pub fn pow(&self, m: u32, f: PrimeField) -> FpPoly {
        let mut acc = FpPoly { coeffs: vec![1] };
        for _ in 0..m {
            acc = acc.mul(self, f);
        }
        acc
    }

    pub fn mul(&self, other: &FpPoly, f: PrimeField) -> FpPoly {
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        FpPoly { coeffs }
    }

    /// Companion matrix of this monic polynomial.
    pub fn companion(&self, f: PrimeField) -> FpMat {
        let n = self.degree();
        let mut m = FpMat::zero(n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(self.coeffs[i]));
        }
        m
    }
}

/// All monic irreducibles over `F_p` of each degree `1..=max_degree`,
/// excluding `x` itself (eigenvalue zero cannot occur in `GL_n`). Sorted by
/// coefficient vector within each degree, so enumeration order is canonical.
pub fn irreducibles_by_degree(p: u64, max_degree: usize) -> Vec<Vec<FpPoly>> {
    let f = PrimeField::new(p);
    let mut by_degree: Vec<Vec<FpPoly>> = Vec::new();
    let mut irred_quadratics: Vec<FpPoly> = Vec::new();
    for d in 1..=max_degree {
        let mut polys = Vec::new();
        // Enumerate all monic polynomials of degree d by their low coefficients.
        let total = p.pow(d as u32);
        for mut code in 0..total {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(code % p);
                code /= p;
            }
            coeffs.push(1);
            if coeffs[0] == 0 {
                continue; // divisible by x
            }
            let poly = FpPoly { coeffs };
            if d == 1 || poly.is_irreducible(f, &irred_quadratics) {
                polys.push(poly);
            }
        }
        polys.sort();
        if d == 2 {
            irred_quadratics = polys.clone();
        }
        by_degree.push(polys);
    }
    by_degree
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_spot_check() {
        for p in [2u64, 3, 5, 7, 11] {
            let f = PrimeField::new(p);
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
            for a in 0..p {
                for b in 0..p {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
        }
    }

    #[test]
    fn primes_iterator() {
        let first: Vec<u64> = primes().take(8).collect();
        assert_eq!(first, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let f = PrimeField::new(7);
        let mut m = FpMat::zero(3);
        m.data = vec![1, 2, 3, 0, 1, 4, 5, 6, 0];
        let inv = m.inverse(f).unwrap();
        assert_eq!(m.mul(&inv, f), FpMat::identity(3));
        let singular = FpMat::zero(2);
        assert!(singular.inverse(f).is_none());
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // #monic irreducibles of degree d over F_p (excluding x for d = 1)
        // is (1/d) sum_{l | d} mu(l) p^{d/l}; minus one linear factor for x.
        use crate::exact::mobius;
        for p in [2u64, 3, 5, 7] {
            let table = irreducibles_by_degree(p, 4);
            for (idx, polys) in table.iter().enumerate() {
                let d = (idx + 1) as u64;
                let mut count: i64 = 0;
                for l in 1..=d {
                    if d % l == 0 {
                        count += mobius(l).unwrap() * (p.pow((d / l) as u32) as i64);
                    }
                }
                count /= d as i64;
                let expected = if d == 1 { count - 1 } else { count };
                assert_eq!(polys.len() as i64, expected, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn companion_matrix_has_right_char_poly_roots() {
        let f = PrimeField::new(5);
        // x^2 + 1 is irreducible over F_5? 2^2 = 4, eval at x: x^2+1
        let poly = FpPoly { coeffs: vec![1, 0, 1] };
        let c = poly.companion(f);
        // Cayley-Hamilton: c^2 + I = 0
        let sq = c.mul(&c, f);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { f.neg(1) } else { 0 };
                assert_eq!(sq.get(i, j), expect);
            }
        }
    }

    #[test]
    fn rank_examples() {
        let f = PrimeField::new(3);
        let mut data = vec![1, 2, 0, 2, 4 % 3, 0, 0, 0, 1];
        assert_eq!(rank_of(&mut data, 3, 3, f), 2);
    }
}
