//! The functor `V`: objects to tensor spaces, morphisms to linear maps.
//!
//! Every circle of a piece carries one leg. A barred circle is good and its
//! leg is dual; an unbarred circle is bad and its leg is primal. The
//! coefficients of `ζ` for a piece are network evaluations over basis
//! substitutions; good circles read the substituted diagram from the basepoint,
//! bad circles from one step after it, and bad legs are then pulled through
//! the inverse trace form. Glue pairs are contracted by index summation with a
//! factor `δ^{-k}` each.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cobordism::{BoundaryRole, CobordismError, MorphismDiagram, Piece};
use crate::colors::{Color, ObjectSignature};
use crate::linalg::{fmt_q, pow_q, sqrt_q, RationalMatrix, Q};
use crate::strands::StrandGraph;
use crate::tangle::advance;
use crate::tl_backend::{TemperleyLieb, TlError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TqftError {
    #[error(transparent)]
    Cobordism(#[from] CobordismError),
    #[error("morphism is not closed: domain {domain}, codomain {codomain}")]
    NotClosed {
        domain: ObjectSignature,
        codomain: ObjectSignature,
    },
    #[error(transparent)]
    Tl(#[from] TlError),
}

/// One leg: the circle it comes from and its colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LegLabel {
    pub role: BoundaryRole,
    pub piece: usize,
    pub circle: usize,
    pub color: Color,
    /// Set exactly when `color` is barred.
    pub dual: bool,
}

impl LegLabel {
    pub fn new(role: BoundaryRole, piece: usize, circle: usize, color: Color) -> Self {
        LegLabel {
            role,
            piece,
            circle,
            color,
            dual: color.barred,
        }
    }

    /// The colour this leg contributes to the domain or codomain signature.
    pub fn object_color(&self) -> Color {
        match self.role {
            BoundaryRole::Domain(_) => self.color.bar(),
            _ => self.color,
        }
    }

    fn sort_key(&self) -> (u8, Color, usize) {
        match self.role {
            BoundaryRole::Domain(s) => (0, self.object_color(), s),
            BoundaryRole::Codomain(s) => (1, self.object_color(), s),
            BoundaryRole::Glue(e) => (2, self.color, e as usize),
        }
    }
}

impl PartialOrd for LegLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Domain before codomain, then object colour, then slot.
impl Ord for LegLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| (self.piece, self.circle).cmp(&(other.piece, other.circle)))
    }
}

impl fmt::Display for LegLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            BoundaryRole::Domain(s) => write!(f, "domain[{s}]:{}", self.object_color()),
            BoundaryRole::Codomain(s) => write!(f, "codomain[{s}]:{}", self.object_color()),
            BoundaryRole::Glue(e) => write!(f, "glue[{e}]:{}", self.color),
        }
    }
}

/// Dense coefficients over labelled legs; leg 0 is the slowest index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledTensor {
    legs: Vec<LegLabel>,
    dims: Vec<usize>,
    data: Vec<Q>,
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

impl LabelledTensor {
    pub fn scalar(x: Q) -> Self {
        LabelledTensor {
            legs: vec![],
            dims: vec![],
            data: vec![x],
        }
    }

    pub fn new(legs: Vec<LegLabel>, dims: Vec<usize>, data: Vec<Q>) -> Self {
        assert_eq!(legs.len(), dims.len());
        assert_eq!(data.len(), dims.iter().product::<usize>());
        LabelledTensor { legs, dims, data }
    }

    pub fn legs(&self) -> &[LegLabel] {
        &self.legs
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[Q] {
        &self.data
    }

    pub fn get(&self, idx: &[usize]) -> &Q {
        let s = strides(&self.dims);
        &self.data[idx.iter().zip(&s).map(|(i, s)| i * s).sum::<usize>()]
    }

    pub fn position(&self, role: BoundaryRole) -> Option<usize> {
        self.legs.iter().position(|l| l.role == role)
    }

    pub fn scale(&self, s: &Q) -> Self {
        LabelledTensor {
            legs: self.legs.clone(),
            dims: self.dims.clone(),
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Reorders legs; `order[new] = old`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let dims: Vec<usize> = order.iter().map(|&i| self.dims[i]).collect();
        let old = strides(&self.dims);
        let mapped: Vec<usize> = order.iter().map(|&i| old[i]).collect();
        let mut data = Vec::with_capacity(self.data.len());
        let mut idx = vec![0; dims.len()];
        if dims.iter().all(|&d| d > 0) {
            loop {
                let at: usize = idx.iter().zip(&mapped).map(|(i, s)| i * s).sum();
                data.push(self.data[at].clone());
                if !advance(&mut idx, &dims) {
                    break;
                }
            }
        }
        LabelledTensor {
            legs: order.iter().map(|&i| self.legs[i]).collect(),
            dims,
            data,
        }
    }

    /// Legs sorted by their canonical order.
    pub fn canonical(&self) -> Self {
        let mut order: Vec<usize> = (0..self.legs.len()).collect();
        order.sort_by_key(|&i| self.legs[i]);
        self.permuted(&order)
    }

    fn as_matrix(&self, split: usize) -> RationalMatrix {
        let rows = self.dims[..split].iter().product();
        let cols = self.dims[split..].iter().product();
        RationalMatrix::from_vec(rows, cols, self.data.clone())
    }

    pub fn outer(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        LabelledTensor {
            legs: self.legs.iter().chain(&other.legs).copied().collect(),
            dims: self.dims.iter().chain(&other.dims).copied().collect(),
            data,
        }
    }

    /// Sums leg `i` of `self` against leg `j` of `other`.
    pub fn contract(&self, i: usize, other: &Self, j: usize) -> Self {
        assert_eq!(self.dims[i], other.dims[j], "contracted legs differ in dimension");
        let mut oa: Vec<usize> = (0..self.legs.len()).filter(|&x| x != i).collect();
        oa.push(i);
        let mut ob = vec![j];
        ob.extend((0..other.legs.len()).filter(|&x| x != j));
        let a = self.permuted(&oa);
        let b = other.permuted(&ob);
        let prod = a.as_matrix(a.legs.len() - 1).mul(&b.as_matrix(1));
        LabelledTensor {
            legs: a.legs[..a.legs.len() - 1].iter().chain(&b.legs[1..]).copied().collect(),
            dims: a.dims[..a.dims.len() - 1].iter().chain(&b.dims[1..]).copied().collect(),
            data: prod.into_data(),
        }
    }

    /// Sums the diagonal of legs `i` and `j`.
    pub fn trace(&self, i: usize, j: usize) -> Self {
        assert_ne!(i, j);
        let mut order: Vec<usize> = (0..self.legs.len()).filter(|&x| x != i && x != j).collect();
        order.extend([i, j]);
        let t = self.permuted(&order);
        let d = self.dims[i];
        let rest = t.data.len() / (d * d).max(1);
        let data = (0..rest)
            .map(|r| (0..d).fold(Q::zero(), |acc, c| acc + &t.data[r * d * d + c * d + c]))
            .collect();
        let n = t.legs.len() - 2;
        LabelledTensor {
            legs: t.legs[..n].to_vec(),
            dims: t.dims[..n].to_vec(),
            data,
        }
    }

    /// Replaces leg `i`'s index `y` by `z` with weight `m[(y, z)]`.
    pub fn apply_to_leg(&self, i: usize, m: &RationalMatrix) -> Self {
        let mut order: Vec<usize> = (0..self.legs.len()).filter(|&x| x != i).collect();
        order.push(i);
        let t = self.permuted(&order);
        let out = t.as_matrix(t.legs.len() - 1).mul(m);
        let moved = LabelledTensor {
            legs: t.legs,
            dims: t.dims,
            data: out.into_data(),
        };
        let mut back = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            back[old] = new;
        }
        moved.permuted(&back)
    }
}

impl Serialize for LabelledTensor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LabelledTensor", 3)?;
        st.serialize_field("legs", &self.legs.iter().map(|l| l.to_string()).collect::<Vec<_>>())?;
        st.serialize_field("dims", &self.dims)?;
        st.serialize_field("data", &self.data.iter().map(fmt_q).collect::<Vec<_>>())?;
        st.end()
    }
}

/// `δ^{h/2} · matrix` with `h ∈ {0, 1}`; `h = 1` only when `δ` has no
/// rational square root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledMatrix {
    delta: Q,
    half_power: u8,
    matrix: RationalMatrix,
}

impl ScaledMatrix {
    /// `δ^{h/2} · matrix` for any signed `h`.
    pub fn new(delta: &Q, h: i64, matrix: RationalMatrix) -> Self {
        let whole = h.div_euclid(2);
        let mut matrix = matrix.scale(&pow_q(delta, whole));
        let mut half_power = h.rem_euclid(2) as u8;
        if half_power == 1 {
            if let Some(r) = sqrt_q(delta) {
                matrix = matrix.scale(&r);
                half_power = 0;
            }
        }
        ScaledMatrix {
            delta: delta.clone(),
            half_power,
            matrix,
        }
    }

    pub fn rational(delta: &Q, matrix: RationalMatrix) -> Self {
        Self::new(delta, 0, matrix)
    }

    pub fn delta(&self) -> &Q {
        &self.delta
    }

    pub fn half_power(&self) -> u8 {
        self.half_power
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// The exact matrix when no irrational factor remains.
    pub fn to_rational(&self) -> Option<RationalMatrix> {
        (self.half_power == 0).then(|| self.matrix.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.half_power == 0 && self.matrix.is_identity()
    }

    /// Multiplies by `δ^{h/2}`.
    pub fn scale_sqrt_delta(&self, h: i64) -> Self {
        Self::new(&self.delta, self.half_power as i64 + h, self.matrix.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.delta,
            (self.half_power + other.half_power) as i64,
            self.matrix.mul(&other.matrix),
        )
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self::new(
            &self.delta,
            (self.half_power + other.half_power) as i64,
            self.matrix.kron(&other.matrix),
        )
    }

    pub fn transpose(&self) -> Self {
        ScaledMatrix {
            delta: self.delta.clone(),
            half_power: self.half_power,
            matrix: self.matrix.transpose(),
        }
    }

    /// `left · self · right` with rational factors.
    pub fn sandwich(&self, left: &RationalMatrix, right: &RationalMatrix) -> Self {
        ScaledMatrix {
            delta: self.delta.clone(),
            half_power: self.half_power,
            matrix: left.mul(&self.matrix).mul(right),
        }
    }
}

impl fmt::Display for ScaledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_power == 1 {
            writeln!(f, "sqrt({}) *", fmt_q(&self.delta))?;
        }
        for r in 0..self.matrix.rows() {
            let row: Vec<String> = self.matrix.row(r).iter().map(fmt_q).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for ScaledMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ScaledMatrix", 2)?;
        st.serialize_field("sqrt_delta_power", &self.half_power)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.end()
    }
}

/// Leg layout of `V(X_f)`: one leg per component in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Space {
    pub legs: Vec<Color>,
    pub dims: Vec<usize>,
    pub dimension: usize,
}

/// The TQFT over a Temperley–Lieb backend.
#[derive(Debug, Clone, Default)]
pub struct Tqft {
    tl: TemperleyLieb,
}

impl Tqft {
    pub fn new(tl: TemperleyLieb) -> Self {
        Tqft { tl }
    }

    pub fn with_delta(delta: Q) -> Result<Self, TqftError> {
        Ok(Self::new(TemperleyLieb::with_delta(delta)?))
    }

    pub fn backend(&self) -> &TemperleyLieb {
        &self.tl
    }

    pub fn delta(&self) -> &Q {
        self.tl.delta()
    }

    pub fn space_of(&self, f: &ObjectSignature) -> Space {
        let legs = f.colors();
        let dims: Vec<usize> = legs.iter().map(|c| self.tl.dimension(c.size())).collect();
        let dimension = dims.iter().product();
        Space { legs, dims, dimension }
    }

    /// Gram matrix of `V(X_f)`: `G_k` on `P_k`, `G_k⁻¹` on `P_k̄ = P_k*`.
    pub fn gram(&self, f: &ObjectSignature) -> RationalMatrix {
        f.colors().into_iter().fold(RationalMatrix::identity(1), |acc, c| {
            let level = self.tl.level(c.size());
            let g = if c.barred { &level.gram_inv } else { &level.gram };
            acc.kron(g)
        })
    }

    /// `ζ` of one piece, with legs in circle order.
    pub fn zeta_piece(&self, piece_id: usize, p: &Piece) -> LabelledTensor {
        let t = &p.tangle;
        let circles = t.circles();
        let mut node = std::collections::HashMap::new();
        for c in circles {
            for &q in &c.points {
                let next = node.len();
                node.insert(q, next);
            }
        }
        let levels: Vec<_> = circles.iter().map(|c| self.tl.level(c.color.size())).collect();
        // Edges each basis diagram adds on each circle.
        let placements: Vec<Vec<Vec<(usize, usize)>>> = circles
            .iter()
            .zip(&levels)
            .map(|(c, level)| {
                let shift = if c.is_good() { 0 } else { 1 };
                level
                    .basis
                    .iter()
                    .map(|d| {
                        d.pairs()
                            .into_iter()
                            .map(|(a, b)| {
                                let at = |x: usize| node[&c.at(x as i64 - 1 + shift)];
                                (at(a), at(b))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = levels.iter().map(|l| l.dim()).collect();
        let mut base = StrandGraph::new(node.len());
        for [a, b] in t.strings() {
            base.add_edge(node[a], node[b]);
        }
        let mut data = Vec::with_capacity(dims.iter().product());
        let mut idx = vec![0; dims.len()];
        loop {
            let mut g = base.clone();
            for (ci, &j) in idx.iter().enumerate() {
                for &(a, b) in &placements[ci][j] {
                    g.add_edge(a, b);
                }
            }
            let loops = g.trace().loops as i64 + t.loops() as i64;
            data.push(self.tl.delta_pow(loops));
            if !advance(&mut idx, &dims) {
                break;
            }
        }
        let legs = circles
            .iter()
            .enumerate()
            .map(|(ci, c)| LegLabel::new(p.roles[ci], piece_id, ci, c.color))
            .collect();
        let mut out = LabelledTensor::new(legs, dims, data);
        for (ci, c) in circles.iter().enumerate() {
            if !c.is_good() && c.color.size() > 0 {
                out = out.apply_to_leg(ci, &levels[ci].trace_form_inv);
            }
        }
        out
    }

    /// `ζ` of a morphism: glue pairs contracted in ascending edge order, legs
    /// in canonical order.
    pub fn zeta(&self, m: &MorphismDiagram) -> Result<LabelledTensor, TqftError> {
        m.validate()?;
        let mut tensors: Vec<LabelledTensor> = m
            .pieces()
            .iter()
            .enumerate()
            .map(|(i, p)| self.zeta_piece(i, p))
            .collect();
        let mut pairs: Vec<[u32; 2]> = m.glue_pairs().iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect();
        pairs.sort_unstable();
        let mut kappa = 0i64;
        for [a, b] in pairs {
            let find = |ts: &[LabelledTensor], e: u32| {
                ts.iter()
                    .enumerate()
                    .find_map(|(ti, t)| t.position(BoundaryRole::Glue(e)).map(|li| (ti, li)))
                    .ok_or(CobordismError::DanglingGlue(e))
            };
            let (ta, la) = find(&tensors, a)?;
            let (tb, lb) = find(&tensors, b)?;
            kappa += tensors[ta].legs[la].color.size() as i64;
            if ta == tb {
                tensors[ta] = tensors[ta].trace(la, lb);
            } else {
                let joined = tensors[ta].contract(la, &tensors[tb], lb);
                let (lo, hi) = (ta.min(tb), ta.max(tb));
                tensors.remove(hi);
                tensors[lo] = joined;
            }
        }
        let all = tensors
            .iter()
            .fold(LabelledTensor::scalar(Q::one()), |acc, t| acc.outer(t));
        Ok(all.scale(&self.tl.delta_pow(-kappa)).canonical())
    }

    /// `Z_0(M)`: `ζ` reshaped with codomain legs as rows, domain legs as columns.
    pub fn z0(&self, m: &MorphismDiagram) -> Result<RationalMatrix, TqftError> {
        Ok(materialize(&self.zeta(m)?))
    }

    /// `a ⊗ b` for `a = Z(ma)` and `b = Z(mb)`, with legs in the canonical
    /// order of `ma ∐ mb`.
    pub fn tensor_product(
        &self,
        ma: &MorphismDiagram,
        a: &ScaledMatrix,
        mb: &MorphismDiagram,
        b: &ScaledMatrix,
    ) -> ScaledMatrix {
        let labels = |f: &ObjectSignature, offset: usize, domain: bool| -> Vec<LegLabel> {
            f.colors()
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    if domain {
                        LegLabel::new(BoundaryRole::Domain(offset + i), 0, 0, c.bar())
                    } else {
                        LegLabel::new(BoundaryRole::Codomain(offset + i), 0, 0, c)
                    }
                })
                .collect()
        };
        let legs: Vec<LegLabel> = [
            labels(ma.codomain(), 0, false),
            labels(mb.codomain(), ma.codomain().components(), false),
            labels(ma.domain(), 0, true),
            labels(mb.domain(), ma.domain().components(), true),
        ]
        .concat();
        let dims = legs.iter().map(|l| self.tl.dimension(l.color.size())).collect();
        let k = a.kron(b);
        let t = LabelledTensor::new(legs, dims, k.matrix().data().to_vec());
        ScaledMatrix::new(self.delta(), k.half_power() as i64, materialize(&t.canonical()))
    }

    /// `Z_M = δ^{-½ Σ|k|} Z_0(M)`, the sum over every boundary circle.
    #[allow(non_snake_case)]
    pub fn Z(&self, m: &MorphismDiagram) -> Result<ScaledMatrix, TqftError> {
        let z0 = self.z0(m)?;
        let h = -((m.domain().norm() + m.codomain().norm()) as i64);
        Ok(ScaledMatrix::new(self.delta(), h, z0))
    }

    /// `Z(M) = δ^{(|X_{f0}| - |X_{f1}|)/2} Z_M = δ^{-|X_{f1}|} Z_0(M)`.
    #[allow(non_snake_case)]
    pub fn Z_normalized(&self, m: &MorphismDiagram) -> Result<RationalMatrix, TqftError> {
        let z0 = self.z0(m)?;
        Ok(z0.scale(&self.tl.delta_pow(-(m.codomain().norm() as i64))))
    }

    pub fn closed_invariant(&self, m: &MorphismDiagram) -> Result<Q, TqftError> {
        if !m.is_closed() {
            return Err(TqftError::NotClosed {
                domain: m.domain().clone(),
                codomain: m.codomain().clone(),
            });
        }
        Ok(self.z0(m)?[(0, 0)].clone())
    }
}

/// Codomain legs as rows, domain legs as columns; legs must be canonical.
fn materialize(z: &LabelledTensor) -> RationalMatrix {
    let split = z
        .legs
        .iter()
        .filter(|l| matches!(l.role, BoundaryRole::Domain(_)))
        .count();
    let n = z.legs.len();
    let mut order: Vec<usize> = (split..n).collect();
    order.extend(0..split);
    z.permuted(&order).as_matrix(n - split)
}

#[cfg(test)]
mod tests;
