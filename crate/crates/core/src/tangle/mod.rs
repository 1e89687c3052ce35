//! Combinatorial planar tangles.
//!
//! A tangle is a sphere with holes. Each hole is a [`Circle`] whose endpoints
//! are listed in the boundary orientation induced by the surface (surface on
//! the left), which doubles as the rotation system. Circle 0 is the external
//! circle. Endpoints are joined in pairs by strings; closed loops are counted.
//!
//! In a Jones tangle the external circle has an unbarred colour `k` and every
//! internal circle a barred colour. Internal circles list their points
//! clockwise from the basepoint; the external circle lists them anticlockwise,
//! so its clockwise numbering is the reverse read from the basepoint.

mod named;

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colors::{BaseColor, Color};
use crate::linalg::{RationalMatrix, Q};
use crate::strands::StrandGraph;
use crate::tl_backend::{TLDiagram, TLElement, TemperleyLieb, TlError};

pub use named::NamedTangle;

pub type PointId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shade {
    Black,
    White,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("parity: circle {circle} has an odd number of endpoints ({count})")]
    OddEndpoints { circle: usize, count: usize },
    #[error("circle {circle} of colour {color} needs {expected} endpoints, found {found}")]
    EndpointCount {
        circle: usize,
        color: Color,
        expected: usize,
        found: usize,
    },
    #[error("circle {circle}: basepoint index {basepoint} out of range")]
    Basepoint { circle: usize, basepoint: usize },
    #[error("endpoint {0} appears on more than one circle position")]
    DuplicateEndpoint(PointId),
    #[error("string uses unknown endpoint {0}")]
    UnknownEndpoint(PointId),
    #[error("endpoint {0} is not matched by exactly one string")]
    Unmatched(PointId),
    #[error("genus: component containing circle {circle} has genus {genus}")]
    Genus { circle: usize, genus: i64 },
    #[error("shading inconsistency at circle {circle}")]
    Shading { circle: usize },
    #[error("shading inconsistency: 0-circles {a} and {b} lie in one region with different shades")]
    ZeroShading { a: usize, b: usize },
    #[error("tangle has no external circle")]
    NoExternal,
    #[error("colour mismatch: expected {expected}, found {found}")]
    ColorMismatch { expected: Color, found: Color },
    #[error("no internal circle {0}")]
    NoSuchCircle(usize),
    #[error("not a Jones tangle: external circle must be unbarred and internal circles barred")]
    NotJones,
    #[error("expected {expected} inputs, got {found}")]
    InputCount { expected: usize, found: usize },
    #[error("network not closed")]
    NotClosed,
    #[error(transparent)]
    Tl(#[from] TlError),
}

/// A boundary circle: colour, endpoints in induced order, basepoint index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circle {
    pub color: Color,
    #[serde(default)]
    pub points: Vec<PointId>,
    #[serde(default)]
    pub basepoint: usize,
}

impl Circle {
    pub fn empty(color: Color) -> Self {
        Circle {
            color,
            points: vec![],
            basepoint: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Endpoint `offset` steps after the basepoint in induced order.
    pub fn at(&self, offset: i64) -> PointId {
        let n = self.points.len() as i64;
        self.points[(self.basepoint as i64 + offset).rem_euclid(n) as usize]
    }

    /// Endpoints in induced order starting `start` steps after the basepoint.
    pub fn read_from(&self, start: i64) -> Vec<PointId> {
        (0..self.points.len() as i64).map(|t| self.at(start + t)).collect()
    }

    /// A good circle carries a barred colour.
    pub fn is_good(&self) -> bool {
        self.color.barred
    }

    /// Shade of the region touching the arc that leaves induced position `pos`.
    pub fn arc_shade(&self, pos: usize) -> Shade {
        let n = self.points.len();
        let t = (pos + n - self.basepoint % n.max(1)) % n;
        let even = t.is_multiple_of(2);
        match (self.color.barred, even) {
            (true, true) | (false, false) => Shade::Black,
            _ => Shade::White,
        }
    }

    /// Shade of the region around a circle without endpoints.
    pub fn zero_shade(&self) -> Shade {
        match self.color.base {
            BaseColor::ZeroMinus => Shade::Black,
            _ => Shade::White,
        }
    }

    /// Moves the basepoint `steps` positions along the induced order. An odd
    /// move swaps the shading after the basepoint, so the colour is barred; on
    /// a circle without endpoints it toggles the basepoint value.
    pub fn rotated(&self, steps: i64) -> Circle {
        let n = self.points.len() as i64;
        let basepoint = if n == 0 {
            0
        } else {
            (self.basepoint as i64 + steps).rem_euclid(n) as usize
        };
        Circle {
            color: if steps.rem_euclid(2) == 1 {
                self.color.bar()
            } else {
                self.color
            },
            points: self.points.clone(),
            basepoint,
        }
    }

    /// Opposite orientation, same basepoint endpoint, barred colour.
    pub fn reversed(&self) -> Circle {
        Circle {
            color: self.color.bar(),
            points: (0..self.len() as i64).map(|t| self.at(-t)).collect(),
            basepoint: 0,
        }
    }
}

/// A genus-0 decorated surface piece.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarTangle {
    circles: Vec<Circle>,
    strings: Vec<[PointId; 2]>,
    loops: u32,
}

#[derive(Serialize, Deserialize)]
struct TangleRepr {
    external: Circle,
    #[serde(default)]
    internal: Vec<Circle>,
    #[serde(default)]
    strings: Vec<[PointId; 2]>,
    #[serde(default)]
    loops: u32,
}

impl Serialize for PlanarTangle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TangleRepr {
            external: self.circles[0].clone(),
            internal: self.circles[1..].to_vec(),
            strings: self.strings.clone(),
            loops: self.loops,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanarTangle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = TangleRepr::deserialize(d)?;
        let mut circles = vec![r.external];
        circles.extend(r.internal);
        Ok(PlanarTangle {
            circles,
            strings: r.strings,
            loops: r.loops,
        })
    }
}

/// Endpoint location: `(circle, induced position)`.
type Loc = (usize, usize);

impl PlanarTangle {
    /// Unchecked constructor; call [`PlanarTangle::validate`] before use.
    pub fn from_parts(circles: Vec<Circle>, strings: Vec<[PointId; 2]>, loops: u32) -> Self {
        PlanarTangle {
            circles,
            strings,
            loops,
        }
    }

    /// Builds a Jones tangle from strings given in clockwise numbering:
    /// `((circle, point), (circle, point))` with 1-based points.
    pub fn jones(
        external: BaseColor,
        internal: &[BaseColor],
        strings: &[((usize, usize), (usize, usize))],
        loops: u32,
    ) -> Self {
        let mut colors = vec![Color::new(external)];
        colors.extend(internal.iter().map(|&b| Color::barred(b)));
        let mut offsets = Vec::with_capacity(colors.len());
        let mut next = 0u32;
        let mut circles = Vec::with_capacity(colors.len());
        for (c, color) in colors.iter().enumerate() {
            let n = 2 * color.size() as u32;
            offsets.push(next);
            let mut points: Vec<PointId> = (next..next + n).collect();
            if c == 0 && n > 0 {
                points[1..].reverse();
            }
            circles.push(Circle {
                color: *color,
                points,
                basepoint: 0,
            });
            next += n;
        }
        let id = |(c, p): (usize, usize)| offsets[c] + p as u32 - 1;
        let strings = strings.iter().map(|&(a, b)| [id(a), id(b)]).collect();
        PlanarTangle::from_parts(circles, strings, loops).canonical()
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn circle(&self, i: usize) -> &Circle {
        &self.circles[i]
    }

    pub fn external(&self) -> &Circle {
        &self.circles[0]
    }

    pub fn internal(&self) -> &[Circle] {
        &self.circles[1..]
    }

    pub fn strings(&self) -> &[[PointId; 2]] {
        &self.strings
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    pub fn num_points(&self) -> usize {
        self.circles.iter().map(Circle::len).sum()
    }

    pub fn is_jones(&self) -> bool {
        !self.circles.is_empty() && !self.circles[0].color.barred && self.circles[1..].iter().all(|c| c.color.barred)
    }

    /// Clockwise Jones numbering of a circle's endpoints (index 0 is point 1).
    pub fn clockwise_points(&self, i: usize) -> Vec<PointId> {
        let c = &self.circles[i];
        if i == 0 {
            (0..c.len() as i64).map(|t| c.at(-t)).collect()
        } else {
            c.read_from(0)
        }
    }

    /// Rotates every circle to basepoint 0, relabels endpoints `0..n` in circle
    /// order and sorts strings.
    pub fn canonical(&self) -> Self {
        let mut relabel = HashMap::new();
        let mut circles = Vec::with_capacity(self.circles.len());
        for c in &self.circles {
            let pts: Vec<PointId> = if c.is_empty() { vec![] } else { c.read_from(0) };
            let points = pts
                .iter()
                .map(|p| {
                    let next = relabel.len() as PointId;
                    *relabel.entry(*p).or_insert(next)
                })
                .collect();
            circles.push(Circle {
                color: c.color,
                points,
                basepoint: 0,
            });
        }
        let mut strings: Vec<[PointId; 2]> = self
            .strings
            .iter()
            .map(|[a, b]| {
                let (a, b) = (relabel[a], relabel[b]);
                [a.min(b), a.max(b)]
            })
            .collect();
        strings.sort_unstable();
        PlanarTangle {
            circles,
            strings,
            loops: self.loops,
        }
    }

    fn locations(&self) -> Result<HashMap<PointId, Loc>, TangleError> {
        let mut loc = HashMap::new();
        for (ci, c) in self.circles.iter().enumerate() {
            for (pos, &p) in c.points.iter().enumerate() {
                if loc.insert(p, (ci, pos)).is_some() {
                    return Err(TangleError::DuplicateEndpoint(p));
                }
            }
        }
        Ok(loc)
    }

    fn matching(&self, loc: &HashMap<PointId, Loc>) -> Result<HashMap<PointId, PointId>, TangleError> {
        let mut m = HashMap::new();
        for &[a, b] in &self.strings {
            for p in [a, b] {
                if !loc.contains_key(&p) {
                    return Err(TangleError::UnknownEndpoint(p));
                }
            }
            if a == b || m.insert(a, b).is_some() || m.insert(b, a).is_some() {
                return Err(TangleError::Unmatched(a));
            }
        }
        if let Some(p) = loc.keys().filter(|p| !m.contains_key(p)).min() {
            return Err(TangleError::Unmatched(*p));
        }
        Ok(m)
    }

    /// Checks parity, point counts, the matching, genus 0 and the shading.
    pub fn validate(&self) -> Result<(), TangleError> {
        if self.circles.is_empty() {
            return Err(TangleError::NoExternal);
        }
        for (i, c) in self.circles.iter().enumerate() {
            if c.len() % 2 == 1 {
                return Err(TangleError::OddEndpoints {
                    circle: i,
                    count: c.len(),
                });
            }
            if c.len() != 2 * c.color.size() {
                return Err(TangleError::EndpointCount {
                    circle: i,
                    color: c.color,
                    expected: 2 * c.color.size(),
                    found: c.len(),
                });
            }
            if c.basepoint >= c.len().max(1) {
                return Err(TangleError::Basepoint {
                    circle: i,
                    basepoint: c.basepoint,
                });
            }
        }
        let loc = self.locations()?;
        let m = self.matching(&loc)?;
        let faces = self.faces(&loc, &m);
        self.check_genus(&loc, &faces)?;
        self.check_shading(&faces)?;
        Ok(())
    }

    /// Face label of every arc, arcs keyed by their starting endpoint.
    fn faces(&self, loc: &HashMap<PointId, Loc>, m: &HashMap<PointId, PointId>) -> HashMap<PointId, usize> {
        let next = |p: PointId| {
            let (c, pos) = loc[&p];
            let circle = &self.circles[c];
            circle.points[(pos + 1) % circle.len()]
        };
        let mut face = HashMap::new();
        let mut ids: Vec<PointId> = loc.keys().copied().collect();
        ids.sort_unstable();
        let mut count = 0;
        for start in ids {
            if face.contains_key(&start) {
                continue;
            }
            let mut a = start;
            while !face.contains_key(&a) {
                face.insert(a, count);
                a = m[&next(a)];
            }
            count += 1;
        }
        face
    }

    fn check_genus(&self, loc: &HashMap<PointId, Loc>, faces: &HashMap<PointId, usize>) -> Result<(), TangleError> {
        let n = self.circles.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for [a, b] in &self.strings {
            let (ra, rb) = (find(&mut parent, loc[a].0), find(&mut parent, loc[b].0));
            parent[ra] = rb;
        }
        let mut v: BTreeMap<usize, i64> = BTreeMap::new();
        let mut e: BTreeMap<usize, i64> = BTreeMap::new();
        let mut f: BTreeMap<usize, std::collections::BTreeSet<usize>> = BTreeMap::new();
        for c in 0..n {
            let r = find(&mut parent, c);
            *v.entry(r).or_default() += 1;
            f.entry(r).or_default();
        }
        for [a, _] in &self.strings {
            let r = find(&mut parent, loc[a].0);
            *e.entry(r).or_default() += 1;
        }
        for (p, &face) in faces {
            let r = find(&mut parent, loc[p].0);
            f.get_mut(&r).expect("component").insert(face);
        }
        for (&r, &vc) in &v {
            let ec = e.get(&r).copied().unwrap_or(0);
            // A circle without endpoints bounds one face on its own.
            let fc = (f[&r].len() as i64).max(1);
            let chi = vc - ec + fc;
            if chi != 2 {
                return Err(TangleError::Genus {
                    circle: r,
                    genus: (2 - chi) / 2,
                });
            }
        }
        Ok(())
    }

    fn check_shading(&self, faces: &HashMap<PointId, usize>) -> Result<(), TangleError> {
        let mut shade_of_face: HashMap<usize, Shade> = HashMap::new();
        for (ci, c) in self.circles.iter().enumerate() {
            for (pos, p) in c.points.iter().enumerate() {
                let s = c.arc_shade(pos);
                if *shade_of_face.entry(faces[p]).or_insert(s) != s {
                    return Err(TangleError::Shading { circle: ci });
                }
            }
        }
        if self.strings.is_empty() && self.loops == 0 {
            let zero: Vec<(usize, Shade)> = self
                .circles
                .iter()
                .enumerate()
                .map(|(i, c)| (i, c.zero_shade()))
                .collect();
            if let Some(w) = zero.windows(2).find(|w| w[0].1 != w[1].1) {
                return Err(TangleError::ZeroShading { a: w[0].0, b: w[1].0 });
            }
        }
        Ok(())
    }

    /// Every circle reversed: the same surface with opposite orientation.
    pub fn reversed(&self) -> Self {
        PlanarTangle {
            circles: self.circles.iter().map(Circle::reversed).collect(),
            strings: self.strings.clone(),
            loops: self.loops,
        }
        .canonical()
    }

    /// Moves the basepoint of circle `i` by `steps` along its induced order.
    pub fn rotate_basepoint(&self, i: usize, steps: i64) -> Self {
        let mut t = self.clone();
        t.circles[i] = t.circles[i].rotated(steps);
        t.canonical()
    }

    /// Reorders circles; `order[new] = old`.
    pub fn reorder_circles(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.circles.len());
        PlanarTangle {
            circles: order.iter().map(|&i| self.circles[i].clone()).collect(),
            strings: self.strings.clone(),
            loops: self.loops,
        }
        .canonical()
    }

    /// The adjoint tangle `T*`: basepoints of internal circles move one step
    /// against the induced order and the external basepoint one step along it,
    /// then every orientation is reversed. Colours are preserved.
    pub fn adjoint(&self) -> Self {
        let circles = self
            .circles
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let step = if i == 0 { ADJOINT_STEP } else { -ADJOINT_STEP };
                c.rotated(step).reversed()
            })
            .collect();
        PlanarTangle {
            circles,
            strings: self.strings.clone(),
            loops: self.loops,
        }
        .canonical()
    }

    /// Jones composition: glues the external circle of `s` into internal
    /// circle `i` (1-based) of `self`.
    pub fn compose(&self, i: usize, s: &PlanarTangle) -> Result<Self, TangleError> {
        if i == 0 || i >= self.circles.len() {
            return Err(TangleError::NoSuchCircle(i));
        }
        let expected = s.circles[0].color.bar();
        if self.circles[i].color != expected {
            return Err(TangleError::ColorMismatch {
                expected,
                found: self.circles[i].color,
            });
        }
        let spliced = splice(self, i, s, 0);
        let mut circles: Vec<Circle> = self.circles[..i].to_vec();
        circles.extend(spliced.b_circles[1..].iter().cloned());
        circles.extend(self.circles[i + 1..].iter().cloned());
        Ok(PlanarTangle {
            circles,
            strings: spliced.strings,
            loops: self.loops + s.loops + spliced.new_loops,
        }
        .canonical())
    }

    /// The partition function `δ^{loops}` of a closed network.
    pub fn evaluate_network(&self, tl: &TemperleyLieb) -> Result<Q, TangleError> {
        if self.circles.len() != 1 || !self.circles[0].is_empty() {
            return Err(TangleError::NotClosed);
        }
        Ok(tl.delta_pow(self.loops as i64))
    }

    /// The multilinear operator of a Jones tangle applied to one input per
    /// internal circle.
    pub fn action(&self, inputs: &[TLElement], tl: &TemperleyLieb) -> Result<TLElement, TangleError> {
        if !self.is_jones() {
            return Err(TangleError::NotJones);
        }
        let b = self.circles.len() - 1;
        if inputs.len() != b {
            return Err(TangleError::InputCount {
                expected: b,
                found: inputs.len(),
            });
        }
        for (i, x) in inputs.iter().enumerate() {
            let c = self.circles[i + 1].color;
            if x.k() != c.size() {
                return Err(TangleError::ColorMismatch {
                    expected: c,
                    found: Color::barred(BaseColor::from_size(x.k())),
                });
            }
        }
        let ev = JonesEvaluator::new(self);
        let k0 = self.circles[0].color.size();
        let mut out = TLElement::zero(k0);
        let terms: Vec<Vec<(&TLDiagram, &Q)>> = inputs.iter().map(|x| x.terms().collect()).collect();
        if terms.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let mut idx = vec![0usize; b];
        loop {
            let mut coeff = Q::from_integer(1.into());
            let ds: Vec<&TLDiagram> = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    coeff *= terms[i][j].1;
                    terms[i][j].0
                })
                .collect();
            if !coeff.is_zero() {
                let (d, loops) = ev.evaluate(&ds);
                out.add_term(d, coeff * tl.delta_pow(loops as i64 + self.loops as i64));
            }
            if !advance(&mut idx, &terms.iter().map(Vec::len).collect::<Vec<_>>()) {
                break;
            }
        }
        Ok(out)
    }
}

impl PlanarTangle {
    /// Internal circle indices (1-based) ordered by colour, then position:
    /// the order of domain legs when the tangle is a morphism.
    pub fn canonical_inputs(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (1..self.circles.len()).collect();
        order.sort_by_key(|&i| (self.circles[i].color.bar(), i));
        order
    }

    /// The action on basis inputs as a matrix: one column per basis tuple,
    /// tuples enumerated over [`PlanarTangle::canonical_inputs`].
    pub fn action_matrix(&self, tl: &TemperleyLieb) -> Result<RationalMatrix, TangleError> {
        let order = self.canonical_inputs();
        let ks: Vec<usize> = order.iter().map(|&i| self.circles[i].color.size()).collect();
        let dims: Vec<usize> = ks.iter().map(|&k| tl.dimension(k)).collect();
        let k0 = self.circles[0].color.size();
        let mut cols = Vec::new();
        let mut idx = vec![0; dims.len()];
        loop {
            let mut inputs = vec![TLElement::zero(0); order.len()];
            for (pos, &i) in order.iter().enumerate() {
                inputs[i - 1] = TLElement::from_diagram(tl.level(ks[pos]).basis[idx[pos]].clone());
            }
            cols.push(tl.to_dense(&self.action(&inputs, tl)?));
            if !advance(&mut idx, &dims) {
                break;
            }
        }
        Ok(RationalMatrix::from_fn(tl.dimension(k0), cols.len(), |r, c| {
            cols[c][r].clone()
        }))
    }
}

/// Step used by [`PlanarTangle::adjoint`] on the external circle.
const ADJOINT_STEP: i64 = 1;

/// Odometer increment; false once every index has wrapped.
pub(crate) fn advance(idx: &mut [usize], dims: &[usize]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < dims[i] {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Output of gluing circle `ca` of `a` to circle `cb` of `b`.
pub(crate) struct Spliced {
    /// Circles of `b` with endpoint ids shifted into a disjoint range.
    pub b_circles: Vec<Circle>,
    /// Strings among the endpoints of both tangles not on the glued circles.
    pub strings: Vec<[PointId; 2]>,
    pub new_loops: u32,
}

/// Identifies `a`'s point at offset `t` from the basepoint with `b`'s point at
/// offset `-t`, then traces the joined strings.
pub(crate) fn splice(a: &PlanarTangle, ca: usize, b: &PlanarTangle, cb: usize) -> Spliced {
    let shift = a
        .circles
        .iter()
        .flat_map(|c| c.points.iter())
        .max()
        .map_or(0, |m| m + 1);
    let b_circles: Vec<Circle> = b
        .circles
        .iter()
        .map(|c| Circle {
            color: c.color,
            points: c.points.iter().map(|p| p + shift).collect(),
            basepoint: c.basepoint,
        })
        .collect();
    let mut ids: Vec<PointId> = a.circles.iter().flat_map(|c| c.points.iter().copied()).collect();
    ids.extend(b_circles.iter().flat_map(|c| c.points.iter().copied()));
    let node: HashMap<PointId, usize> = ids.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut g = StrandGraph::new(ids.len());
    for [x, y] in &a.strings {
        g.add_edge(node[x], node[y]);
    }
    for [x, y] in &b.strings {
        g.add_edge(node[&(x + shift)], node[&(y + shift)]);
    }
    let (ga, gb) = (&a.circles[ca], &b_circles[cb]);
    for t in 0..ga.len() as i64 {
        g.add_edge(node[&ga.at(t)], node[&gb.at(-t)]);
    }
    let traced = g.trace();
    let glued: std::collections::HashSet<PointId> = ga.points.iter().chain(gb.points.iter()).copied().collect();
    let mut strings = Vec::new();
    for (i, &p) in ids.iter().enumerate() {
        if glued.contains(&p) {
            continue;
        }
        let j = traced.partner[i];
        if i < j {
            strings.push([p, ids[j]]);
        }
    }
    Spliced {
        b_circles,
        strings,
        new_loops: traced.loops as u32,
    }
}

/// Reusable evaluator for substituting diagrams into a Jones tangle.
struct JonesEvaluator {
    k0: usize,
    nodes: usize,
    base: StrandGraph,
    /// Node of clockwise point `j` on each internal circle.
    inner: Vec<Vec<usize>>,
    /// Clockwise index on the external circle of each node, if external.
    outer_index: Vec<Option<usize>>,
    outer_nodes: Vec<usize>,
}

impl JonesEvaluator {
    fn new(t: &PlanarTangle) -> Self {
        let ids: Vec<PointId> = t.circles.iter().flat_map(|c| c.points.iter().copied()).collect();
        let node: HashMap<PointId, usize> = ids.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut base = StrandGraph::new(ids.len());
        for [x, y] in &t.strings {
            base.add_edge(node[x], node[y]);
        }
        let inner = (1..t.circles.len())
            .map(|i| t.clockwise_points(i).iter().map(|p| node[p]).collect())
            .collect();
        let outer_nodes: Vec<usize> = t.clockwise_points(0).iter().map(|p| node[p]).collect();
        let mut outer_index = vec![None; ids.len()];
        for (j, &v) in outer_nodes.iter().enumerate() {
            outer_index[v] = Some(j);
        }
        JonesEvaluator {
            k0: t.circles[0].color.size(),
            nodes: ids.len(),
            base,
            inner,
            outer_index,
            outer_nodes,
        }
    }

    fn evaluate(&self, ds: &[&TLDiagram]) -> (TLDiagram, usize) {
        let mut g = self.base.clone();
        for (pts, d) in self.inner.iter().zip(ds) {
            for (a, &va) in pts.iter().enumerate() {
                let b = d.partner(a);
                if a < b {
                    g.add_edge(va, pts[b]);
                }
            }
        }
        debug_assert_eq!(g.len(), self.nodes);
        let traced = g.trace();
        let partner = self
            .outer_nodes
            .iter()
            .map(|&v| self.outer_index[traced.partner[v]].expect("open strand ends on the external circle") as u8)
            .collect();
        let d = TLDiagram::from_partner(self.k0, partner).expect("planar output diagram");
        (d, traced.loops)
    }
}

#[cfg(test)]
mod tests;
