//! Quiver data model, Euler forms, vertex classification, simple reflections.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::series::DimVec;
use crate::Error;

/// How a vertex (viewed as a simple root) sits with respect to the
/// symmetrized Euler form: `(eps_i, eps_i) = 2 - 2 g_i`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VertexKind {
    /// No loops; `(eps_i, eps_i) = 2`.
    Real,
    /// Exactly one loop; `(eps_i, eps_i) = 0`.
    Isotropic,
    /// Two or more loops; `(eps_i, eps_i) < 0`.
    Hyperbolic,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<(String, String)>,
}

/// A quiver: ordered vertex list (canonically sorted) plus an arrow multiset.
/// Loops and parallel arrows are allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    /// Arrows as (source index, target index), sorted for canonical hashing.
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(mut vertices: Vec<String>, named_arrows: &[(String, String)]) -> Result<Self, Error> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput("empty quiver".into()));
        }
        vertices.sort();
        vertices.dedup();
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidInput(format!("arrow endpoint {name:?} is not a declared vertex")))
        };
        let mut arrows = Vec::with_capacity(named_arrows.len());
        for (s, t) in named_arrows {
            arrows.push((index(s)?, index(t)?));
        }
        arrows.sort();
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor with numbered vertices `v0..v{n-1}`.
    pub fn from_arrows(num_vertices: usize, arrows: &[(usize, usize)]) -> Result<Self, Error> {
        let vertices: Vec<String> = (0..num_vertices).map(|i| format!("v{i}")).collect();
        let named: Vec<(String, String)> = arrows
            .iter()
            .map(|&(s, t)| (format!("v{s}"), format!("v{t}")))
            .collect();
        Quiver::new(vertices, &named)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Number of loops at vertex `i`.
    pub fn loops_at(&self, i: usize) -> usize {
        self.arrows.iter().filter(|&&(s, t)| s == i && t == i).count()
    }

    /// The quiver with every arrow reversed (same vertex set).
    pub fn reversed(&self) -> Quiver {
        let mut arrows: Vec<(usize, usize)> = self.arrows.iter().map(|&(s, t)| (t, s)).collect();
        arrows.sort();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Full subquiver on the loop-free (real) vertices, keeping the original
    /// vertex indices alongside.
    pub fn real_subquiver(&self) -> (Quiver, Vec<usize>) {
        let kept: Vec<usize> =
            (0..self.num_vertices()).filter(|&i| self.loops_at(i) == 0).collect();
        let vertices: Vec<String> = kept.iter().map(|&i| self.vertices[i].clone()).collect();
        let arrows: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .filter_map(|&(s, t)| {
                let ns = kept.iter().position(|&k| k == s)?;
                let nt = kept.iter().position(|&k| k == t)?;
                Some((ns, nt))
            })
            .collect();
        (Quiver { vertices, arrows }, kept)
    }

    fn check_dim(&self, d: &[u32]) -> Result<(), Error> {
        if d.len() != self.num_vertices() {
            return Err(Error::InvalidInput(format!(
                "dimension vector length {} does not match vertex count {}",
                d.len(),
                self.num_vertices()
            )));
        }
        Ok(())
    }

    /// Euler form `<d, n> = sum_i d_i n_i - sum_{arrows} d_s n_t`.
    pub fn euler_form(&self, d: &[u32], n: &[u32]) -> Result<i64, Error> {
        self.check_dim(d)?;
        self.check_dim(n)?;
        let diag: i64 = d.iter().zip(n).map(|(&a, &b)| a as i64 * b as i64).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] as i64 * n[t] as i64).sum();
        Ok(diag - off)
    }

    /// Symmetrized Euler form `(d, n) = <d, n> + <n, d>`.
    pub fn sym_form(&self, d: &[u32], n: &[u32]) -> Result<i64, Error> {
        Ok(self.euler_form(d, n)? + self.euler_form(n, d)?)
    }

    /// Symmetrized form on unit vectors, `a_ij = (eps_i, eps_j)`.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2 - 2 * self.loops_at(i) as i64
        } else {
            -(self
                .arrows
                .iter()
                .filter(|&&(s, t)| (s, t) == (i, j) || (s, t) == (j, i))
                .count() as i64)
        }
    }

    /// Per-vertex classification with loop counts.
    pub fn classify_vertices(&self) -> Vec<(VertexKind, usize)> {
        (0..self.num_vertices())
            .map(|i| {
                let g = self.loops_at(i);
                let kind = match g {
                    0 => VertexKind::Real,
                    1 => VertexKind::Isotropic,
                    _ => VertexKind::Hyperbolic,
                };
                (kind, g)
            })
            .collect()
    }

    pub fn real_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&i| self.loops_at(i) == 0).collect()
    }

    /// True iff `(eps_i, eps_j) < 0` for all vertex pairs, including `i = j`.
    pub fn is_totally_negative(&self) -> bool {
        let n = self.num_vertices();
        (0..n).all(|i| (0..n).all(|j| self.cartan_entry(i, j) < 0))
    }

    /// Simple reflection `s_i(d) = d - (d, eps_i) eps_i` at a real vertex.
    /// Entries may go negative, so the result is a signed vector.
    pub fn reflect(&self, d: &[i64], i: usize) -> Result<Vec<i64>, Error> {
        if self.loops_at(i) != 0 {
            return Err(Error::ReflectionAtImaginaryVertex);
        }
        if d.len() != self.num_vertices() {
            return Err(Error::InvalidInput("dimension vector length mismatch".into()));
        }
        let pairing: i64 = (0..self.num_vertices())
            .map(|j| self.cartan_entry(j, i) * d[j])
            .sum();
        let mut out = d.to_vec();
        out[i] -= pairing;
        Ok(out)
    }

    /// Canonical JSON bytes (sorted vertices and arrows).
    pub fn canonical_json(&self) -> String {
        let named = QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| (self.vertices[s].clone(), self.vertices[t].clone()))
                .collect(),
        };
        serde_json::to_string(&named).expect("quiver serialization cannot fail")
    }

    /// SHA-256 of the canonical bytes, used as the cache key.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.canonical_json().as_bytes());
        format!("{:x}", hasher.finalize())
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let parsed: QuiverJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad quiver JSON: {e}")))?;
        Quiver::new(parsed.vertices, &parsed.arrows)
    }
}

/// Height (sum of entries) of a dimension vector.
pub fn height(d: &[u32]) -> u32 {
    d.iter().sum()
}

/// True when the entries of `d` have gcd 1.
pub fn is_primitive(d: &[u32]) -> bool {
    let mut g = 0u32;
    for &x in d {
        g = num::integer::gcd(g, x);
    }
    g == 1
}

/// Largest `l` such that `d = l * e` for some integer vector `e`, with the
/// primitive part `e`; the zero vector returns (0, zeros).
pub fn primitive_part(d: &[u32]) -> (u32, DimVec) {
    let mut g = 0u32;
    for &x in d {
        g = num::integer::gcd(g, x);
    }
    if g == 0 {
        return (0, d.to_vec());
    }
    (g, d.iter().map(|&x| x / g).collect())
}

/// Stock quivers used throughout the tests and examples.
pub mod presets {
    use super::Quiver;

    /// One vertex, one loop.
    pub fn jordan() -> Quiver {
        Quiver::from_arrows(1, &[(0, 0)]).unwrap()
    }

    /// One vertex, `g` loops.
    pub fn s_g(g: usize) -> Quiver {
        let arrows: Vec<(usize, usize)> = (0..g).map(|_| (0, 0)).collect();
        Quiver::from_arrows(1, &arrows).unwrap()
    }

    /// Two vertices joined by `arrows` parallel arrows.
    pub fn kronecker(arrows: usize) -> Quiver {
        let a: Vec<(usize, usize)> = (0..arrows).map(|_| (0, 1)).collect();
        Quiver::from_arrows(2, &a).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::presets::{jordan, kronecker, s_g};
    use super::*;

    #[test]
    fn euler_form_examples() {
        assert_eq!(jordan().euler_form(&[1], &[1]).unwrap(), 0);
        assert_eq!(s_g(3).euler_form(&[1], &[1]).unwrap(), -2);
        assert_eq!(kronecker(3).euler_form(&[1, 0], &[0, 1]).unwrap(), -3);
    }

    #[test]
    fn sym_form_examples() {
        assert_eq!(jordan().sym_form(&[1], &[1]).unwrap(), 0);
        assert_eq!(s_g(2).sym_form(&[1], &[1]).unwrap(), -2);
        assert_eq!(kronecker(2).sym_form(&[1, 1], &[1, 1]).unwrap(), 0);
    }

    #[test]
    fn classification() {
        let a2 = Quiver::from_arrows(2, &[(0, 1)]).unwrap();
        assert!(a2.classify_vertices().iter().all(|&(k, g)| k == VertexKind::Real && g == 0));
        assert_eq!(jordan().classify_vertices(), vec![(VertexKind::Isotropic, 1)]);
        assert_eq!(s_g(2).classify_vertices(), vec![(VertexKind::Hyperbolic, 2)]);
    }

    #[test]
    fn totally_negative() {
        assert!(s_g(2).is_totally_negative());
        assert!(!jordan().is_totally_negative());
        assert!(!kronecker(3).is_totally_negative());
        // totally negative implies every vertex hyperbolic
        for g in 2..5 {
            let q = s_g(g);
            assert!(q.is_totally_negative());
            assert!(q.classify_vertices().iter().all(|&(k, _)| k == VertexKind::Hyperbolic));
        }
    }

    #[test]
    fn reflections() {
        let a1 = Quiver::from_arrows(1, &[]).unwrap();
        assert_eq!(a1.reflect(&[1], 0).unwrap(), vec![-1]);
        let k3 = kronecker(3);
        assert_eq!(k3.reflect(&[0, 1], 0).unwrap(), vec![3, 1]);
        let k2 = kronecker(2);
        assert_eq!(k2.reflect(&[1, 1], 0).unwrap(), vec![1, 1]);
        assert!(jordan().reflect(&[1], 0).is_err());
    }

    #[test]
    fn reflection_is_involutive() {
        let k3 = kronecker(3);
        for a in 0..4i64 {
            for b in 0..4i64 {
                for i in 0..2 {
                    let d = vec![a, b];
                    let r = k3.reflect(&k3.reflect(&d, i).unwrap(), i).unwrap();
                    assert_eq!(r, d);
                }
            }
        }
    }

    #[test]
    fn sym_form_is_symmetric_bilinear() {
        let q = Quiver::from_arrows(3, &[(0, 1), (1, 2), (2, 2), (0, 0)]).unwrap();
        let vs = [[1u32, 2, 0], [0, 1, 3], [2, 2, 1]];
        for d in &vs {
            for n in &vs {
                assert_eq!(q.sym_form(d, n).unwrap(), q.sym_form(n, d).unwrap());
            }
        }
        // bilinearity on a sum
        let sum: Vec<u32> = vs[0].iter().zip(&vs[1]).map(|(a, b)| a + b).collect();
        assert_eq!(
            q.sym_form(&sum, &vs[2]).unwrap(),
            q.sym_form(&vs[0], &vs[2]).unwrap() + q.sym_form(&vs[1], &vs[2]).unwrap()
        );
    }

    #[test]
    fn canonicalization_and_hash() {
        let q1 = Quiver::new(
            vec!["b".into(), "a".into()],
            &[("b".into(), "a".into()), ("a".into(), "b".into())],
        )
        .unwrap();
        let q2 = Quiver::new(
            vec!["a".into(), "b".into()],
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        )
        .unwrap();
        assert_eq!(q1.hash(), q2.hash());
        assert!(Quiver::new(vec![], &[]).is_err());
    }

    #[test]
    fn json_parse() {
        let q = Quiver::from_json_str(
            r#"{"vertices": ["x", "y"], "arrows": [["x", "y"], ["x", "y"]]}"#,
        )
        .unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.arrows().len(), 2);
        assert!(Quiver::from_json_str("not json").is_err());
    }

    #[test]
    fn primitivity_helpers() {
        assert!(is_primitive(&[2, 3]));
        assert!(!is_primitive(&[2, 4]));
        assert_eq!(primitive_part(&[4, 6]), (2, vec![2, 3]));
        assert_eq!(primitive_part(&[0, 0]), (0, vec![0, 0]));
    }
}
