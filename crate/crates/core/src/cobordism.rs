//! Morphisms of the decorated cobordism category as glued planar pieces.
//!
//! A morphism is a list of genus-0 pieces. Every circle of every piece has a
//! role: a domain slot, a codomain slot, or one side of a glue pair. A domain
//! circle of colour `c` contributes `c̄` to the domain signature; a codomain
//! circle contributes its own colour. Glued circles carry bar-related colours
//! and are identified by `a.at(t) ↔ b.at(-t)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colors::{Color, ObjectSignature};
use crate::tangle::{splice, Circle, NamedTangle, PlanarTangle, PointId, Shade, TangleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryRole {
    Domain(usize),
    Codomain(usize),
    Glue(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error("piece {piece}: {source}")]
    Piece {
        piece: usize,
        #[source]
        source: TangleError,
    },
    #[error("piece {piece}: {found} roles for {expected} circles")]
    RoleCount {
        piece: usize,
        expected: usize,
        found: usize,
    },
    #[error("{kind} slots must be exactly 0..{count}, got {slots:?}")]
    Slots {
        kind: &'static str,
        count: usize,
        slots: Vec<usize>,
    },
    #[error("dangling glue edge {0}")]
    DanglingGlue(u32),
    #[error("glue edge {0} used more than once")]
    DuplicateGlue(u32),
    #[error("glue colour mismatch: edge {a} has colour {ca}, edge {b} has colour {cb}")]
    GlueColorMismatch { a: u32, b: u32, ca: Color, cb: Color },
    #[error("{kind} signature mismatch: declared {declared}, found {found}")]
    Signature {
        kind: &'static str,
        declared: ObjectSignature,
        found: ObjectSignature,
    },
    #[error("cannot compose: codomain {codomain} differs from domain {domain}")]
    Compose {
        codomain: ObjectSignature,
        domain: ObjectSignature,
    },
    #[error("no glue edge {0}")]
    NoSuchEdge(u32),
    #[error("essential circle: merging edge {edge} would create genus {genus}")]
    EssentialCircle { edge: u32, genus: i64 },
    #[error("no piece {0}")]
    NoSuchPiece(usize),
    #[error("curve not realizable: {0}")]
    NotRealizable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub tangle: PlanarTangle,
    pub roles: Vec<BoundaryRole>,
}

impl Piece {
    /// Sorts circles by role and canonicalizes the tangle.
    pub fn canonical(&self) -> Piece {
        let mut order: Vec<usize> = (0..self.roles.len()).collect();
        order.sort_by_key(|&i| self.roles[i]);
        Piece {
            tangle: self.tangle.reorder_circles(&order),
            roles: order.iter().map(|&i| self.roles[i]).collect(),
        }
    }
}

/// A morphism `X_domain -> X_codomain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDiagram {
    pieces: Vec<Piece>,
    glue_pairs: Vec<[u32; 2]>,
    domain: ObjectSignature,
    codomain: ObjectSignature,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct MorphismRepr {
    #[serde(default)]
    pub pieces: Vec<PieceRepr>,
    #[serde(default)]
    pub glue_pairs: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<ObjectSignature>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain: Option<ObjectSignature>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PieceRepr {
    pub tangle: TangleSpec,
    pub roles: Vec<BoundaryRole>,
}

/// A tangle written out, or a library entry by name.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TangleSpec {
    Named(NamedTangle),
    Explicit(PlanarTangle),
}

impl TangleSpec {
    pub fn expand(&self) -> PlanarTangle {
        match self {
            TangleSpec::Named(n) => n.tangle(),
            TangleSpec::Explicit(t) => t.clone(),
        }
    }
}

impl Serialize for MorphismDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MorphismRepr {
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceRepr {
                    tangle: TangleSpec::Explicit(p.tangle.clone()),
                    roles: p.roles.clone(),
                })
                .collect(),
            glue_pairs: self.glue_pairs.clone(),
            domain: Some(self.domain.clone()),
            codomain: Some(self.codomain.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MorphismDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MorphismRepr::deserialize(d)?;
        let pieces: Vec<Piece> = r
            .pieces
            .into_iter()
            .map(|p| Piece {
                tangle: p.tangle.expand(),
                roles: p.roles,
            })
            .collect();
        let (domain, codomain) = derived_signatures(&pieces);
        Ok(MorphismDiagram {
            pieces,
            glue_pairs: r.glue_pairs,
            domain: r.domain.unwrap_or(domain),
            codomain: r.codomain.unwrap_or(codomain),
        })
    }
}

fn derived_signatures(pieces: &[Piece]) -> (ObjectSignature, ObjectSignature) {
    let mut domain = ObjectSignature::empty();
    let mut codomain = ObjectSignature::empty();
    for p in pieces {
        for (c, r) in p.tangle.circles().iter().zip(&p.roles) {
            match r {
                BoundaryRole::Domain(_) => domain.add(c.color.bar(), 1),
                BoundaryRole::Codomain(_) => codomain.add(c.color, 1),
                BoundaryRole::Glue(_) => {}
            }
        }
    }
    (domain, codomain)
}

/// `(piece, circle)` of a role.
pub type CircleRef = (usize, usize);

impl MorphismDiagram {
    /// Builds and validates a morphism; signatures are derived from roles.
    pub fn new(pieces: Vec<Piece>, glue_pairs: Vec<[u32; 2]>) -> Result<Self, CobordismError> {
        let (domain, codomain) = derived_signatures(&pieces);
        let m = MorphismDiagram {
            pieces,
            glue_pairs,
            domain,
            codomain,
        };
        m.validate()?;
        Ok(m)
    }

    fn unchecked(pieces: Vec<Piece>, glue_pairs: Vec<[u32; 2]>) -> Self {
        let (domain, codomain) = derived_signatures(&pieces);
        MorphismDiagram {
            pieces,
            glue_pairs,
            domain,
            codomain,
        }
    }

    pub fn empty() -> Self {
        Self::unchecked(vec![], vec![])
    }

    /// A Jones tangle viewed as a morphism: internal circle `i` is domain
    /// slot `i - 1`, the external circle is codomain slot 0.
    pub fn from_tangle(t: PlanarTangle) -> Self {
        let roles = (0..t.circles().len())
            .map(|i| {
                if i == 0 {
                    BoundaryRole::Codomain(0)
                } else {
                    BoundaryRole::Domain(i - 1)
                }
            })
            .collect();
        Self::unchecked(vec![Piece { tangle: t, roles }], vec![])
    }

    /// A single piece with explicit roles.
    pub fn from_piece(tangle: PlanarTangle, roles: Vec<BoundaryRole>) -> Result<Self, CobordismError> {
        Self::new(vec![Piece { tangle, roles }], vec![])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn glue_pairs(&self) -> &[[u32; 2]] {
        &self.glue_pairs
    }

    pub fn domain(&self) -> &ObjectSignature {
        &self.domain
    }

    pub fn codomain(&self) -> &ObjectSignature {
        &self.codomain
    }

    /// `∂M = bar(domain) ∐ codomain`.
    pub fn boundary(&self) -> ObjectSignature {
        self.domain.bar().disjoint_union(&self.codomain)
    }

    pub fn is_closed(&self) -> bool {
        self.domain.is_empty() && self.codomain.is_empty()
    }

    pub fn find_role(&self, role: BoundaryRole) -> Option<CircleRef> {
        self.pieces
            .iter()
            .enumerate()
            .find_map(|(pi, p)| p.roles.iter().position(|&r| r == role).map(|ci| (pi, ci)))
    }

    pub fn circle(&self, (p, c): CircleRef) -> &Circle {
        self.pieces[p].tangle.circle(c)
    }

    fn max_glue_id(&self) -> Option<u32> {
        self.pieces
            .iter()
            .flat_map(|p| p.roles.iter())
            .filter_map(|r| match r {
                BoundaryRole::Glue(e) => Some(*e),
                _ => None,
            })
            .chain(self.glue_pairs.iter().flatten().copied())
            .max()
    }

    pub fn validate(&self) -> Result<(), CobordismError> {
        let mut domain_slots = Vec::new();
        let mut codomain_slots = Vec::new();
        let mut glue: HashMap<u32, CircleRef> = HashMap::new();
        for (pi, p) in self.pieces.iter().enumerate() {
            p.tangle
                .validate()
                .map_err(|source| CobordismError::Piece { piece: pi, source })?;
            let n = p.tangle.circles().len();
            if p.roles.len() != n {
                return Err(CobordismError::RoleCount {
                    piece: pi,
                    expected: n,
                    found: p.roles.len(),
                });
            }
            for (ci, r) in p.roles.iter().enumerate() {
                match *r {
                    BoundaryRole::Domain(s) => domain_slots.push(s),
                    BoundaryRole::Codomain(s) => codomain_slots.push(s),
                    BoundaryRole::Glue(e) => {
                        if glue.insert(e, (pi, ci)).is_some() {
                            return Err(CobordismError::DuplicateGlue(e));
                        }
                    }
                }
            }
        }
        for (kind, mut slots) in [("domain", domain_slots), ("codomain", codomain_slots)] {
            slots.sort_unstable();
            if slots.iter().enumerate().any(|(i, &s)| i != s) {
                return Err(CobordismError::Slots {
                    kind,
                    count: slots.len(),
                    slots,
                });
            }
        }
        let mut paired = HashSet::new();
        for &[a, b] in &self.glue_pairs {
            for e in [a, b] {
                if !glue.contains_key(&e) {
                    return Err(CobordismError::DanglingGlue(e));
                }
                if !paired.insert(e) {
                    return Err(CobordismError::DuplicateGlue(e));
                }
            }
            let (ca, cb) = (self.circle(glue[&a]).color, self.circle(glue[&b]).color);
            if ca.bar() != cb {
                return Err(CobordismError::GlueColorMismatch { a, b, ca, cb });
            }
        }
        if let Some(e) = glue.keys().filter(|e| !paired.contains(e)).min() {
            return Err(CobordismError::DanglingGlue(*e));
        }
        let (domain, codomain) = derived_signatures(&self.pieces);
        for (kind, declared, found) in [("domain", &self.domain, domain), ("codomain", &self.codomain, codomain)] {
            if *declared != found {
                return Err(CobordismError::Signature {
                    kind,
                    declared: declared.clone(),
                    found,
                });
            }
        }
        Ok(())
    }

    /// One identity cylinder per component of `f`.
    pub fn identity(f: &ObjectSignature) -> Self {
        let pieces = f
            .colors()
            .into_iter()
            .enumerate()
            .map(|(slot, c)| {
                let tangle = NamedTangle::Identity { k: c.base }.tangle();
                let roles = if c.barred {
                    vec![BoundaryRole::Domain(slot), BoundaryRole::Codomain(slot)]
                } else {
                    vec![BoundaryRole::Codomain(slot), BoundaryRole::Domain(slot)]
                };
                Piece { tangle, roles }
            })
            .collect();
        Self::unchecked(pieces, vec![])
    }

    /// `m2 ∘ m1`: codomain slots of `m1` are glued to domain slots of `m2`,
    /// matched by colour and then by slot order.
    pub fn compose(m1: &Self, m2: &Self) -> Result<Self, CobordismError> {
        if m1.codomain != m2.domain {
            return Err(CobordismError::Compose {
                codomain: m1.codomain.clone(),
                domain: m2.domain.clone(),
            });
        }
        let shift = m1.max_glue_id().map_or(0, |x| x + 1);
        let mut pieces = m1.pieces.clone();
        let mut glue_pairs = m1.glue_pairs.clone();
        let second: Vec<Piece> = m2
            .pieces
            .iter()
            .map(|p| Piece {
                tangle: p.tangle.clone(),
                roles: p
                    .roles
                    .iter()
                    .map(|r| match *r {
                        BoundaryRole::Glue(e) => BoundaryRole::Glue(e + shift),
                        other => other,
                    })
                    .collect(),
            })
            .collect();
        glue_pairs.extend(m2.glue_pairs.iter().map(|[a, b]| [a + shift, b + shift]));
        let mut next = shift + m2.max_glue_id().map_or(0, |x| x + 1);
        let outs = slots_by_color(&m1.pieces, |r, c| match r {
            BoundaryRole::Codomain(s) => Some((c, s)),
            _ => None,
        });
        let ins = slots_by_color(&second, |r, c| match r {
            BoundaryRole::Domain(s) => Some((c.bar(), s)),
            _ => None,
        });
        pieces.extend(second);
        let offset = m1.pieces.len();
        for (a, b) in outs.into_iter().zip(ins) {
            let (ea, eb) = (next, next + 1);
            next += 2;
            pieces[a.0].roles[a.1] = BoundaryRole::Glue(ea);
            pieces[offset + b.0].roles[b.1] = BoundaryRole::Glue(eb);
            glue_pairs.push([ea, eb]);
        }
        Ok(Self::unchecked(pieces, glue_pairs))
    }

    pub fn disjoint_union(m1: &Self, m2: &Self) -> Self {
        let nd = m1.domain.components();
        let nc = m1.codomain.components();
        let shift = m1.max_glue_id().map_or(0, |x| x + 1);
        let mut pieces = m1.pieces.clone();
        pieces.extend(m2.pieces.iter().map(|p| {
            Piece {
                tangle: p.tangle.clone(),
                roles: p
                    .roles
                    .iter()
                    .map(|r| match *r {
                        BoundaryRole::Domain(s) => BoundaryRole::Domain(s + nd),
                        BoundaryRole::Codomain(s) => BoundaryRole::Codomain(s + nc),
                        BoundaryRole::Glue(e) => BoundaryRole::Glue(e + shift),
                    })
                    .collect(),
            }
        }));
        let mut glue_pairs = m1.glue_pairs.clone();
        glue_pairs.extend(m2.glue_pairs.iter().map(|[a, b]| [a + shift, b + shift]));
        Self::unchecked(pieces, glue_pairs)
    }

    /// Orientation reversal: every circle reversed, domain and codomain swapped.
    pub fn adjoint(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                tangle: p.tangle.reversed(),
                roles: p
                    .roles
                    .iter()
                    .map(|r| match *r {
                        BoundaryRole::Domain(s) => BoundaryRole::Codomain(s),
                        BoundaryRole::Codomain(s) => BoundaryRole::Domain(s),
                        g => g,
                    })
                    .collect(),
            })
            .collect();
        Self::unchecked(pieces, self.glue_pairs.clone())
    }

    /// Representation independent of piece order, circle order and endpoint
    /// labels; glue ids are kept.
    pub fn canonical(&self) -> Self {
        let mut pieces: Vec<Piece> = self.pieces.iter().map(Piece::canonical).collect();
        pieces.sort_by(|a, b| a.roles.first().cmp(&b.roles.first()));
        let mut glue_pairs: Vec<[u32; 2]> = self.glue_pairs.iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect();
        glue_pairs.sort_unstable();
        Self::unchecked(pieces, glue_pairs)
    }

    fn glue_pair(&self, edge: u32) -> Result<[u32; 2], CobordismError> {
        self.glue_pairs
            .iter()
            .copied()
            .find(|p| p.contains(&edge))
            .ok_or(CobordismError::NoSuchEdge(edge))
    }

    /// The Type III move: splices the two circles of a glue pair into one piece.
    pub fn merge(&self, edge: u32) -> Result<Self, CobordismError> {
        let [ea, eb] = self.glue_pair(edge)?;
        let (pa, ca) = self
            .find_role(BoundaryRole::Glue(ea))
            .ok_or(CobordismError::DanglingGlue(ea))?;
        let (pb, cb) = self
            .find_role(BoundaryRole::Glue(eb))
            .ok_or(CobordismError::DanglingGlue(eb))?;
        if pa == pb {
            // Both circles bound the same sphere: gluing them adds a handle.
            return Err(CobordismError::EssentialCircle { edge, genus: 1 });
        }
        let (a, b) = (&self.pieces[pa], &self.pieces[pb]);
        let spliced = splice(&a.tangle, ca, &b.tangle, cb);
        let mut circles = Vec::new();
        let mut roles = Vec::new();
        for (i, c) in a.tangle.circles().iter().enumerate().filter(|&(i, _)| i != ca) {
            circles.push(c.clone());
            roles.push(a.roles[i]);
        }
        for (i, c) in spliced.b_circles.iter().enumerate().filter(|&(i, _)| i != cb) {
            circles.push(c.clone());
            roles.push(b.roles[i]);
        }
        let loops = a.tangle.loops() + b.tangle.loops() + spliced.new_loops;
        let tangle = PlanarTangle::from_parts(circles, spliced.strings, loops).canonical();
        let merged = Piece { tangle, roles };
        let (lo, hi) = (pa.min(pb), pa.max(pb));
        let mut pieces = self.pieces.clone();
        pieces.remove(hi);
        pieces[lo] = merged;
        let glue_pairs = self.glue_pairs.iter().copied().filter(|p| *p != [ea, eb]).collect();
        Ok(Self::unchecked(pieces, glue_pairs))
    }

    /// The inverse Type III move: cuts one piece along a circle.
    pub fn split(&self, curve: &SplitCurve) -> Result<Self, CobordismError> {
        let piece = self
            .pieces
            .get(curve.piece)
            .ok_or(CobordismError::NoSuchPiece(curve.piece))?;
        let t = &piece.tangle;
        let n = t.circles().len();
        let side: BTreeSet<usize> = curve.side.iter().copied().collect();
        if side.is_empty() || side.len() == n || side.iter().any(|&c| c >= n) {
            return Err(CobordismError::NotRealizable(
                "the curve must separate the circles into two nonempty sets".into(),
            ));
        }
        if curve.loops > t.loops() {
            return Err(CobordismError::NotRealizable("more loops than the piece has".into()));
        }
        let circle_of = point_circles(t);
        let partner: HashMap<PointId, PointId> = t.strings().iter().flat_map(|&[a, b]| [(a, b), (b, a)]).collect();
        let cut: BTreeSet<PointId> = circle_of
            .iter()
            .filter(|(p, c)| side.contains(c) && !side.contains(&circle_of[&partner[p]]))
            .map(|(p, _)| *p)
            .collect();
        let given: BTreeSet<PointId> = curve.crossings.iter().copied().collect();
        if given != cut || given.len() != curve.crossings.len() {
            return Err(CobordismError::NotRealizable(
                "crossings must list each string leaving the side exactly once".into(),
            ));
        }
        let m = curve.crossings.len();
        if m % 2 == 1 {
            return Err(CobordismError::NotRealizable("odd number of crossings".into()));
        }
        if m > 0 && curve.basepoint >= m {
            return Err(CobordismError::NotRealizable("basepoint out of range".into()));
        }
        let mut next_id = circle_of.keys().max().map_or(0, |x| x + 1);
        let xs: Vec<PointId> = (0..m as u32).map(|i| next_id + i).collect();
        next_id += m as u32;
        let ys: Vec<PointId> = (0..m as u32).map(|i| next_id + i).collect();

        let mut a_circles = Vec::new();
        let mut a_roles = Vec::new();
        let mut b_circles = Vec::new();
        let mut b_roles = Vec::new();
        for (i, c) in t.circles().iter().enumerate() {
            if side.contains(&i) {
                a_circles.push(c.clone());
                a_roles.push(piece.roles[i]);
            } else {
                b_circles.push(c.clone());
                b_roles.push(piece.roles[i]);
            }
        }
        let mut a_strings = Vec::new();
        let mut b_strings = Vec::new();
        for &[p, q] in t.strings() {
            match (side.contains(&circle_of[&p]), side.contains(&circle_of[&q])) {
                (true, true) => a_strings.push([p, q]),
                (false, false) => b_strings.push([p, q]),
                _ => {}
            }
        }
        for (i, u) in curve.crossings.iter().enumerate() {
            a_strings.push([*u, xs[i]]);
        }
        // y_j is glued to x_{b-j}.
        for j in 0..m {
            let i = (curve.basepoint + m - j) % m;
            b_strings.push([ys[j], partner[&curve.crossings[i]]]);
        }
        let k = m / 2;
        let gamma_color = |barred: bool| {
            let base = if k == 0 {
                match curve.shade {
                    Shade::White => crate::colors::BaseColor::ZeroPlus,
                    Shade::Black => crate::colors::BaseColor::ZeroMinus,
                }
            } else {
                crate::colors::BaseColor::from_size(k)
            };
            Color { barred, base }
        };
        let [ea, eb] = {
            let base = self.max_glue_id().map_or(0, |x| x + 1);
            [base, base + 1]
        };
        a_roles.push(BoundaryRole::Glue(ea));
        b_roles.push(BoundaryRole::Glue(eb));
        let loops_b = t.loops() - curve.loops;
        let build_a = |barred: bool| {
            let mut circles = a_circles.clone();
            circles.push(Circle {
                color: gamma_color(barred),
                points: xs.clone(),
                basepoint: if m == 0 { 0 } else { curve.basepoint },
            });
            PlanarTangle::from_parts(circles, a_strings.clone(), curve.loops)
        };
        let (a_tangle, barred) = match build_a(false).validate() {
            Ok(()) => (build_a(false), false),
            Err(_) if m > 0 => {
                let alt = build_a(true);
                alt.validate()
                    .map_err(|e| CobordismError::NotRealizable(format!("side piece is invalid: {e}")))?;
                (alt, true)
            }
            Err(e) => return Err(CobordismError::NotRealizable(format!("side piece is invalid: {e}"))),
        };
        let mut circles = b_circles;
        circles.push(Circle {
            color: gamma_color(barred).bar(),
            points: ys,
            basepoint: 0,
        });
        let b_tangle = PlanarTangle::from_parts(circles, b_strings, loops_b);
        b_tangle
            .validate()
            .map_err(|e| CobordismError::NotRealizable(format!("complementary piece is invalid: {e}")))?;
        let mut pieces = self.pieces.clone();
        pieces[curve.piece] = Piece {
            tangle: a_tangle.canonical(),
            roles: a_roles,
        };
        pieces.insert(
            curve.piece + 1,
            Piece {
                tangle: b_tangle.canonical(),
                roles: b_roles,
            },
        );
        let mut glue_pairs = self.glue_pairs.clone();
        glue_pairs.push([ea, eb]);
        Ok(Self::unchecked(pieces, glue_pairs))
    }
}

fn point_circles(t: &PlanarTangle) -> BTreeMap<PointId, usize> {
    t.circles()
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| c.points.iter().map(move |&p| (p, ci)))
        .collect()
}

/// `(piece, circle)` pairs selected by `pick`, ordered by colour then slot.
fn slots_by_color(pieces: &[Piece], pick: impl Fn(BoundaryRole, Color) -> Option<(Color, usize)>) -> Vec<CircleRef> {
    let mut found: Vec<((Color, usize), CircleRef)> = Vec::new();
    for (pi, p) in pieces.iter().enumerate() {
        for (ci, (r, c)) in p.roles.iter().zip(p.tangle.circles()).enumerate() {
            if let Some(key) = pick(*r, c.color) {
                found.push((key, (pi, ci)));
            }
        }
    }
    found.sort();
    found.into_iter().map(|(_, r)| r).collect()
}

/// A circle cutting one piece in two.
///
/// `side` lists the circles that end up on the new piece `A`. `crossings`
/// lists, in the induced order of `A`'s new boundary circle, the `side`
/// endpoint of each string the curve crosses; `basepoint` indexes into it.
/// `shade` fixes the region when nothing is crossed. `loops` of the piece's
/// closed loops go to `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCurve {
    pub piece: usize,
    pub side: Vec<usize>,
    pub crossings: Vec<PointId>,
    pub basepoint: usize,
    pub shade: Shade,
    pub loops: u32,
}

impl SplitCurve {
    /// The curve running just outside the region formed by `side` and the
    /// strings among its circles. Fails when that region's boundary is not a
    /// single circle.
    pub fn around(m: &MorphismDiagram, piece: usize, side: &[usize]) -> Result<SplitCurve, CobordismError> {
        let p = m.pieces.get(piece).ok_or(CobordismError::NoSuchPiece(piece))?;
        let t = &p.tangle;
        let set: BTreeSet<usize> = side.iter().copied().collect();
        if set.is_empty() || set.len() >= t.circles().len() {
            return Err(CobordismError::NotRealizable(
                "the curve must separate the circles into two nonempty sets".into(),
            ));
        }
        let circle_of = point_circles(t);
        let partner: HashMap<PointId, PointId> = t.strings().iter().flat_map(|&[a, b]| [(a, b), (b, a)]).collect();
        let position: HashMap<PointId, usize> = t
            .circles()
            .iter()
            .flat_map(|c| c.points.iter().enumerate().map(|(i, &q)| (q, i)))
            .collect();
        let next = |q: PointId| {
            let c = t.circle(circle_of[&q]);
            c.points[(position[&q] + 1) % c.len()]
        };
        let is_cut = |q: PointId| set.contains(&circle_of[&q]) && !set.contains(&circle_of[&partner[&q]]);
        let cut: Vec<PointId> = circle_of.keys().copied().filter(|&q| is_cut(q)).collect();
        let mut walk = Vec::new();
        if let Some(&start) = cut.first() {
            walk.push(start);
            let mut q = next(start);
            let limit = 4 * circle_of.len() + 4;
            for _ in 0..limit {
                if is_cut(q) {
                    if q == start {
                        break;
                    }
                    walk.push(q);
                    q = next(q);
                } else {
                    q = next(partner[&q]);
                }
            }
        }
        if walk.len() != cut.len() {
            return Err(CobordismError::NotRealizable(
                "the side's outer boundary is not a single circle".into(),
            ));
        }
        walk.reverse();
        let mut curve = SplitCurve {
            piece,
            side: set.into_iter().collect(),
            crossings: walk,
            basepoint: 0,
            shade: Shade::White,
            loops: 0,
        };
        if curve.crossings.is_empty() && m.split(&curve).is_err() {
            curve.shade = Shade::Black;
        }
        Ok(curve)
    }
}
