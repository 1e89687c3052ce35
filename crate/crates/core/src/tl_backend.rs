//! Temperley–Lieb planar algebra at a rational modulus `δ >= 2`.
//!
//! `P_k` has the basis of non-crossing perfect matchings on points `1..=2k`
//! numbered clockwise from the basepoint. In the rectangle picture the top
//! edge carries points `1..=k` left to right and bottom position `j` is point
//! `2k+1-j`. Internally points are 0-based.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{fmt_q, pow_q, q, RationalMatrix, Q};
use crate::strands::StrandGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(String),
    #[error("mismatched k: {0} vs {1}")]
    KMismatch(usize, usize),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("expected {expected} coefficients, got {found}")]
    Length { expected: usize, found: usize },
}

/// The loop value `δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus(Q);

impl Modulus {
    pub fn new(delta: Q) -> Result<Self, TlError> {
        if delta < q(2) {
            return Err(TlError::ModulusTooSmall(fmt_q(&delta)));
        }
        Ok(Modulus(delta))
    }

    pub fn value(&self) -> &Q {
        &self.0
    }
}

impl Default for Modulus {
    fn default() -> Self {
        Modulus(q(2))
    }
}

/// A non-crossing perfect matching on `2k` points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    k: usize,
    partner: Vec<u8>,
}

impl TLDiagram {
    pub fn identity(k: usize) -> Self {
        let n = 2 * k;
        TLDiagram {
            k,
            partner: (0..n).map(|p| (n - 1 - p) as u8).collect(),
        }
    }

    /// Builds from 1-based point pairs, checking matching, planarity and parity.
    pub fn from_pairs(k: usize, pairs: &[(usize, usize)]) -> Result<Self, TlError> {
        let n = 2 * k;
        let mut partner = vec![u8::MAX; n];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(TlError::InvalidDiagram(format!("bad pair ({a}, {b})")));
            }
            if partner[a - 1] != u8::MAX || partner[b - 1] != u8::MAX {
                return Err(TlError::InvalidDiagram(format!("point reused in ({a}, {b})")));
            }
            partner[a - 1] = (b - 1) as u8;
            partner[b - 1] = (a - 1) as u8;
        }
        if partner.contains(&u8::MAX) {
            return Err(TlError::InvalidDiagram("not a perfect matching".into()));
        }
        Self::from_partner(k, partner)
    }

    pub(crate) fn from_partner(k: usize, partner: Vec<u8>) -> Result<Self, TlError> {
        let d = TLDiagram { k, partner };
        for (a, b) in d.pairs0() {
            if (a + b) % 2 == 0 {
                return Err(TlError::InvalidDiagram(format!(
                    "pair ({}, {}) joins points of equal parity",
                    a + 1,
                    b + 1
                )));
            }
        }
        for (a, b) in d.pairs0() {
            for (c, e) in d.pairs0() {
                if a < c && c < b && b < e {
                    return Err(TlError::InvalidDiagram(format!(
                        "pairs ({}, {}) and ({}, {}) cross",
                        a + 1,
                        b + 1,
                        c + 1,
                        e + 1
                    )));
                }
            }
        }
        Ok(d)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// 0-based partner of 0-based point `p`.
    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    fn pairs0(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a < b as usize)
            .map(|(a, &b)| (a, b as usize))
    }

    /// 1-based pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pairs0().map(|(a, b)| (a + 1, b + 1)).collect()
    }

    /// Reflection in the horizontal axis.
    pub fn star(&self) -> Self {
        let n = 2 * self.k;
        let mut partner = vec![0u8; n];
        for p in 0..n {
            partner[n - 1 - p] = (n - 1 - self.partner(p)) as u8;
        }
        TLDiagram { k: self.k, partner }
    }

    /// Loops formed by joining point `j` to `2k+1-j`.
    pub fn closure_loops(&self) -> usize {
        let n = 2 * self.k;
        let mut g = StrandGraph::new(n);
        for (a, b) in self.pairs0() {
            g.add_edge(a, b);
        }
        for j in 0..self.k {
            g.add_edge(j, n - 1 - j);
        }
        g.count_loops()
    }

    /// Stacks `self` over `other`; returns the product diagram and loop count.
    pub fn compose(&self, other: &Self) -> (TLDiagram, usize) {
        assert_eq!(self.k, other.k);
        let k = self.k;
        let n = 2 * k;
        let mut g = StrandGraph::new(2 * n);
        for (a, b) in self.pairs0() {
            g.add_edge(a, b);
        }
        for (a, b) in other.pairs0() {
            g.add_edge(n + a, n + b);
        }
        for j in 0..k {
            g.add_edge(n - 1 - j, n + j);
        }
        let traced = g.trace();
        let node_of = |p: usize| if p < k { p } else { n + p };
        let point_of = |v: usize| if v < n { v } else { v - n };
        let mut partner = vec![0u8; n];
        for p in 0..n {
            partner[p] = point_of(traced.partner[node_of(p)]) as u8;
        }
        (TLDiagram { k, partner }, traced.loops)
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl Serialize for TLDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            k: usize,
            pairs: Vec<(usize, usize)>,
        }
        Raw {
            k: self.k,
            pairs: self.pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TLDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            k: usize,
            pairs: Vec<(usize, usize)>,
        }
        let r = Raw::deserialize(d)?;
        TLDiagram::from_pairs(r.k, &r.pairs).map_err(serde::de::Error::custom)
    }
}

/// All non-crossing matchings on `2k` points, identity first.
pub fn enumerate_basis(k: usize) -> Vec<TLDiagram> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo > hi {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        let mut j = hi;
        loop {
            for inner in rec(lo + 1, j - 1) {
                for outer in rec(j + 1, hi) {
                    let mut v = vec![(lo, j)];
                    v.extend(inner.iter().copied());
                    v.extend(outer.iter().copied());
                    out.push(v);
                }
            }
            if j < lo + 3 {
                break;
            }
            j -= 2;
        }
        out
    }
    if k == 0 {
        return vec![TLDiagram { k: 0, partner: vec![] }];
    }
    rec(0, 2 * k - 1)
        .into_iter()
        .map(|pairs| {
            let mut partner = vec![0u8; 2 * k];
            for (a, b) in pairs {
                partner[a] = b as u8;
                partner[b] = a as u8;
            }
            TLDiagram { k, partner }
        })
        .collect()
}

/// `Catalan(k)`.
pub fn dimension(k: usize) -> usize {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c as usize
}

/// A formal rational combination of diagrams of one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLElement {
    k: usize,
    coeffs: BTreeMap<TLDiagram, Q>,
}

impl TLElement {
    pub fn zero(k: usize) -> Self {
        TLElement {
            k,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: TLDiagram) -> Self {
        let k = d.k;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(d, Q::one());
        TLElement { k, coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (TLDiagram, Q)>>(k: usize, terms: I) -> Self {
        let mut x = TLElement::zero(k);
        for (d, c) in terms {
            x.add_term(d, c);
        }
        x
    }

    pub fn add_term(&mut self, d: TLDiagram, c: Q) {
        assert_eq!(d.k, self.k, "diagram k does not match element k");
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(d).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, d: &TLDiagram) -> Q {
        self.coeffs.get(d).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &Q)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return TLElement::zero(self.k);
        }
        TLElement {
            k: self.k,
            coeffs: self.coeffs.iter().map(|(d, c)| (d.clone(), c * s)).collect(),
        }
    }

    /// Conjugate-linear star; over the rationals just the diagram reflection.
    pub fn star(&self) -> Self {
        TLElement::from_terms(self.k, self.coeffs.iter().map(|(d, c)| (d.star(), c.clone())))
    }
}

impl Serialize for TLElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            pairs: Vec<(usize, usize)>,
            coeff: String,
        }
        #[derive(Serialize)]
        struct Raw {
            k: usize,
            terms: Vec<Term>,
        }
        Raw {
            k: self.k,
            terms: self
                .terms()
                .map(|(d, c)| Term {
                    pairs: d.pairs(),
                    coeff: fmt_q(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// A functional on `P_k`, stored by its coefficients on the dual basis `e^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualTLElement {
    pub k: usize,
    pub coeffs: Vec<Q>,
}

impl DualTLElement {
    /// Pairs against a primal element given by dense coefficients.
    pub fn apply_dense(&self, x: &[Q]) -> Q {
        self.coeffs.iter().zip(x).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }
}

/// Precomputed data for one `P_k`.
#[derive(Debug)]
pub struct Level {
    pub k: usize,
    pub basis: Vec<TLDiagram>,
    index: HashMap<TLDiagram, usize>,
    /// `products[i * n + j] = (index of e_i e_j, loops)`.
    products: Vec<(usize, usize)>,
    /// `τ_k(e_i)`.
    pub traces: Vec<Q>,
    /// `G_ij = ⟨e_i, e_j⟩ = τ(e_j* e_i)`.
    pub gram: RationalMatrix,
    /// `T_ij = τ(e_i e_j)`.
    pub trace_form: RationalMatrix,
    pub trace_form_inv: RationalMatrix,
    pub gram_inv: RationalMatrix,
}

impl Level {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, d: &TLDiagram) -> usize {
        self.index[d]
    }

    pub fn product(&self, i: usize, j: usize) -> (usize, usize) {
        self.products[i * self.basis.len() + j]
    }
}

/// The backend: modulus plus a memoized per-`k` cache.
#[derive(Debug, Clone)]
pub struct TemperleyLieb {
    delta: Modulus,
    levels: Arc<RwLock<HashMap<usize, Arc<Level>>>>,
}

impl Default for TemperleyLieb {
    fn default() -> Self {
        TemperleyLieb::new(Modulus::default())
    }
}

impl TemperleyLieb {
    pub fn new(delta: Modulus) -> Self {
        TemperleyLieb {
            delta,
            levels: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    pub fn with_delta(delta: Q) -> Result<Self, TlError> {
        Ok(Self::new(Modulus::new(delta)?))
    }

    pub fn delta(&self) -> &Q {
        self.delta.value()
    }

    pub fn modulus(&self) -> &Modulus {
        &self.delta
    }

    /// `δ^n` for signed `n`.
    pub fn delta_pow(&self, n: i64) -> Q {
        pow_q(self.delta(), n)
    }

    pub fn dimension(&self, k: usize) -> usize {
        dimension(k)
    }

    pub fn level(&self, k: usize) -> Arc<Level> {
        if let Some(l) = self.levels.read().expect("level cache poisoned").get(&k) {
            return l.clone();
        }
        let built = Arc::new(self.build_level(k));
        self.levels
            .write()
            .expect("level cache poisoned")
            .entry(k)
            .or_insert(built)
            .clone()
    }

    fn build_level(&self, k: usize) -> Level {
        let basis = enumerate_basis(k);
        let n = basis.len();
        let index: HashMap<TLDiagram, usize> = basis.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let mut products = Vec::with_capacity(n * n);
        for a in &basis {
            for b in &basis {
                let (d, loops) = a.compose(b);
                products.push((index[&d], loops));
            }
        }
        let tau_diag = |d: &TLDiagram| self.delta_pow(d.closure_loops() as i64 - k as i64);
        let traces: Vec<Q> = basis.iter().map(tau_diag).collect();
        let tau_prod = |i: usize, j: usize| {
            let (d, loops) = products[i * n + j];
            &traces[d] * self.delta_pow(loops as i64)
        };
        let trace_form = RationalMatrix::from_fn(n, n, tau_prod);
        let stars: Vec<usize> = basis.iter().map(|d| index[&d.star()]).collect();
        let gram = RationalMatrix::from_fn(n, n, |i, j| tau_prod(stars[j], i));
        let trace_form_inv = trace_form.inverse().expect("trace form is nondegenerate for δ >= 2");
        let gram_inv = gram.inverse().expect("Gram matrix is nondegenerate for δ >= 2");
        Level {
            k,
            basis,
            index,
            products,
            traces,
            gram,
            trace_form,
            trace_form_inv,
            gram_inv,
        }
    }

    pub fn basis(&self, k: usize) -> Vec<TLDiagram> {
        self.level(k).basis.clone()
    }

    pub fn unit(&self, k: usize) -> TLElement {
        TLElement::from_diagram(TLDiagram::identity(k))
    }

    pub fn to_dense(&self, x: &TLElement) -> Vec<Q> {
        let level = self.level(x.k);
        let mut v = vec![Q::zero(); level.dim()];
        for (d, c) in x.terms() {
            v[level.index_of(d)] = c.clone();
        }
        v
    }

    pub fn from_dense(&self, k: usize, v: &[Q]) -> Result<TLElement, TlError> {
        let level = self.level(k);
        if v.len() != level.dim() {
            return Err(TlError::Length {
                expected: level.dim(),
                found: v.len(),
            });
        }
        Ok(TLElement::from_terms(
            k,
            level.basis.iter().cloned().zip(v.iter().cloned()),
        ))
    }

    pub fn multiply(&self, x: &TLElement, y: &TLElement) -> Result<TLElement, TlError> {
        if x.k != y.k {
            return Err(TlError::KMismatch(x.k, y.k));
        }
        let level = self.level(x.k);
        let mut out = TLElement::zero(x.k);
        for (a, ca) in x.terms() {
            let i = level.index_of(a);
            for (b, cb) in y.terms() {
                let (d, loops) = level.product(i, level.index_of(b));
                out.add_term(level.basis[d].clone(), ca * cb * self.delta_pow(loops as i64));
            }
        }
        Ok(out)
    }

    /// Normalized trace `τ_k`, with `τ_k(1) = 1`.
    pub fn trace(&self, x: &TLElement) -> Q {
        let level = self.level(x.k);
        x.terms()
            .fold(Q::zero(), |acc, (d, c)| acc + c * &level.traces[level.index_of(d)])
    }

    pub fn star(&self, x: &TLElement) -> TLElement {
        x.star()
    }

    /// `⟨x, y⟩ = τ(y* x)`.
    pub fn inner_product(&self, x: &TLElement, y: &TLElement) -> Result<Q, TlError> {
        Ok(self.trace(&self.multiply(&y.star(), x)?))
    }

    pub fn gram_matrix(&self, k: usize) -> RationalMatrix {
        self.level(k).gram.clone()
    }

    /// `β(x) = τ(x ·)` in dual-basis coefficients.
    pub fn beta(&self, x: &TLElement) -> DualTLElement {
        let level = self.level(x.k);
        DualTLElement {
            k: x.k,
            coeffs: level.trace_form.vec_mul(&self.to_dense(x)),
        }
    }

    pub fn beta_inv(&self, phi: &DualTLElement) -> Result<TLElement, TlError> {
        let level = self.level(phi.k);
        if phi.coeffs.len() != level.dim() {
            return Err(TlError::Length {
                expected: level.dim(),
                found: phi.coeffs.len(),
            });
        }
        self.from_dense(phi.k, &level.trace_form_inv.vec_mul(&phi.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_frac;

    fn tl() -> TemperleyLieb {
        TemperleyLieb::default()
    }

    fn cup_cap() -> TLElement {
        TLElement::from_diagram(TLDiagram::from_pairs(2, &[(1, 2), (3, 4)]).unwrap())
    }

    #[test]
    fn catalan_dimensions() {
        let dims: Vec<usize> = (0..7).map(dimension).collect();
        assert_eq!(dims, [1, 1, 2, 5, 14, 42, 132]);
        for k in 0..6 {
            assert_eq!(enumerate_basis(k).len(), dimension(k));
        }
    }

    #[test]
    fn basis_order_identity_first() {
        let b = enumerate_basis(2);
        assert_eq!(b[0], TLDiagram::identity(2));
        assert_eq!(b[1].pairs(), vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn rejects_bad_diagrams() {
        assert!(TLDiagram::from_pairs(2, &[(1, 3), (2, 4)]).is_err());
        assert!(TLDiagram::from_pairs(2, &[(1, 2)]).is_err());
        assert!(TLDiagram::from_pairs(3, &[(1, 4), (2, 3), (5, 6)]).is_ok());
    }

    #[test]
    fn multiplication_examples() {
        let t = tl();
        let one = t.unit(2);
        let e = cup_cap();
        assert_eq!(t.multiply(&one, &one).unwrap(), one);
        assert_eq!(t.multiply(&e, &e).unwrap(), e.scale(&q(2)));
        assert_eq!(t.multiply(&one, &e).unwrap(), e);
        assert!(t.multiply(&one, &t.unit(3)).is_err());
    }

    #[test]
    fn trace_examples() {
        let t = tl();
        let e = cup_cap();
        assert_eq!(t.trace(&t.unit(2)), q(1));
        assert_eq!(t.trace(&e), q_frac(1, 2));
        let x = e.scale(&q(2)).sub(&t.unit(2));
        assert_eq!(t.trace(&x), q(0));
    }

    #[test]
    fn star_examples() {
        let t = tl();
        assert_eq!(t.star(&t.unit(3)), t.unit(3));
        assert_eq!(t.star(&cup_cap()), cup_cap());
        let d = TLDiagram::from_pairs(3, &[(1, 2), (3, 6), (4, 5)]).unwrap();
        assert_eq!(d.star().pairs(), vec![(1, 4), (2, 3), (5, 6)]);
    }

    #[test]
    fn inner_products_and_gram() {
        let t = tl();
        let e = cup_cap();
        let one = t.unit(2);
        assert_eq!(t.inner_product(&one, &one).unwrap(), q(1));
        assert_eq!(t.inner_product(&e, &e).unwrap(), q(1));
        assert_eq!(t.inner_product(&one, &e).unwrap(), q_frac(1, 2));
        let g = t.gram_matrix(2);
        assert_eq!(g.to_strings(), vec![vec!["1/1", "1/2"], vec!["1/2", "1/1"]]);
        assert_eq!(g.determinant(), q_frac(3, 4));
    }

    #[test]
    fn gram_positive_definite_up_to_four() {
        let t = tl();
        for k in 0..=4 {
            assert!(t.gram_matrix(k).is_positive_definite(), "k = {k}");
        }
    }

    #[test]
    fn beta_of_unit() {
        let t = tl();
        let b = t.beta(&t.unit(2));
        assert_eq!(b.coeffs, vec![q(1), q_frac(1, 2)]);
        assert_eq!(t.beta_inv(&b).unwrap(), t.unit(2));
    }

    #[test]
    fn dual_basis_expansion_recovers_element() {
        // Σ_i τ(e_i z) β^{-1}(e^i) = z for z = E.
        let t = tl();
        let z = cup_cap();
        let level = t.level(2);
        let mut acc = TLElement::zero(2);
        for (i, e) in level.basis.iter().enumerate() {
            let coeff = t.trace(&t.multiply(&TLElement::from_diagram(e.clone()), &z).unwrap());
            let mut unit = vec![q(0); level.dim()];
            unit[i] = q(1);
            let back = t.beta_inv(&DualTLElement { k: 2, coeffs: unit }).unwrap();
            acc = acc.add(&back.scale(&coeff));
        }
        assert_eq!(acc, z);
    }

    #[test]
    fn modulus_bounds() {
        assert!(Modulus::new(q_frac(3, 2)).is_err());
        assert!(Modulus::new(q_frac(5, 2)).is_ok());
    }
}
