//! Seeded generators of tangles, pieces and morphisms.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cobordism::{BoundaryRole, MorphismDiagram, Piece, SplitCurve};
use crate::tangle::{NamedTangle, PlanarTangle};
use crate::tl_backend::dimension;

pub use rand::SeedableRng;
pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for generated morphisms.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_color: usize,
    pub max_pieces: usize,
    pub max_glue: usize,
    /// Bound on `dim V(domain) · dim V(codomain)`.
    pub max_boundary_dim: usize,
    /// Bound on the tensor size of any single piece.
    pub max_piece_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_color: 3,
            max_pieces: 4,
            max_glue: 4,
            max_boundary_dim: 200,
            max_piece_dim: 125,
        }
    }
}

fn piece_dim(t: &PlanarTangle) -> usize {
    t.circles().iter().map(|c| dimension(c.color.size())).product()
}

/// A Jones tangle: a library operation with up to one further operation
/// composed into an internal circle.
pub fn jones_tangle(rng: &mut Rng64, max_color: usize) -> PlanarTangle {
    let ops: Vec<NamedTangle> = NamedTangle::all(max_color)
        .into_iter()
        .filter(NamedTangle::is_operation)
        .collect();
    let mut t = ops.choose(rng).expect("library is nonempty").tangle();
    let slots = t.circles().len() - 1;
    if slots > 0 && rng.gen_bool(0.4) {
        let i = rng.gen_range(1..=slots);
        let want = t.circle(i).color.bar();
        let fits: Vec<&NamedTangle> = ops.iter().filter(|o| o.tangle().external().color == want).collect();
        if let Some(s) = fits.choose(rng) {
            t = t.compose(i, &s.tangle()).expect("colours match");
        }
    }
    t
}

/// A genus-0 piece tangle: a Jones tangle or one of the other library
/// entries, optionally reversed, with random basepoint moves and circle order.
pub fn piece_tangle(rng: &mut Rng64, max_color: usize, max_dim: usize) -> PlanarTangle {
    loop {
        let mut t = if rng.gen_bool(0.25) {
            let k = rng.gen_range(1..=max_color);
            let others = [
                NamedTangle::RotationUnitary { k },
                NamedTangle::RotationUnitaryBar { k },
                NamedTangle::Trinion { k },
            ];
            others.choose(rng).expect("nonempty").tangle()
        } else {
            jones_tangle(rng, max_color)
        };
        if rng.gen_bool(0.3) {
            t = t.reversed();
        }
        let n = t.circles().len();
        for _ in 0..rng.gen_range(0..=2) {
            let i = rng.gen_range(0..n);
            let steps = rng.gen_range(-2..=2);
            t = t.rotate_basepoint(i, steps);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        t = t.reorder_circles(&order);
        debug_assert!(t.validate().is_ok());
        if piece_dim(&t) <= max_dim {
            return t;
        }
    }
}

/// Circles of `tangles` as `(piece, circle)`.
fn all_circles(tangles: &[PlanarTangle]) -> Vec<(usize, usize)> {
    tangles
        .iter()
        .enumerate()
        .flat_map(|(p, t)| (0..t.circles().len()).map(move |c| (p, c)))
        .collect()
}

/// Picks up to `max_pairs` bar-compatible circle pairs.
fn pick_pairs(rng: &mut Rng64, tangles: &[PlanarTangle], max_pairs: usize) -> Vec<[(usize, usize); 2]> {
    let mut free = all_circles(tangles);
    free.shuffle(rng);
    let mut pairs = Vec::new();
    let target = rng.gen_range(max_pairs.min(1)..=max_pairs);
    let mut i = 0;
    while i < free.len() && pairs.len() < target {
        let a = free[i];
        let ca = tangles[a.0].circle(a.1).color;
        let partner = free[i + 1..]
            .iter()
            .position(|&b| tangles[b.0].circle(b.1).color == ca.bar());
        if let Some(j) = partner {
            let b = free.remove(i + 1 + j);
            free.remove(i);
            pairs.push([a, b]);
        } else {
            i += 1;
        }
    }
    pairs
}

fn boundary_dim(m: &MorphismDiagram) -> usize {
    let dims =
        |f: &crate::colors::ObjectSignature| -> usize { f.colors().iter().map(|c| dimension(c.size())).product() };
    dims(m.domain()) * dims(m.codomain())
}

/// Assigns roles: listed pairs are glued, other circles become domain or
/// codomain according to `side`, with shuffled slots.
fn assemble(
    rng: &mut Rng64,
    tangles: Vec<PlanarTangle>,
    pairs: &[[(usize, usize); 2]],
    side: impl Fn(&mut Rng64, (usize, usize)) -> bool,
) -> MorphismDiagram {
    let mut roles: Vec<Vec<Option<BoundaryRole>>> = tangles.iter().map(|t| vec![None; t.circles().len()]).collect();
    let mut glue_pairs = Vec::new();
    for (e, [a, b]) in pairs.iter().enumerate() {
        let (ea, eb) = (2 * e as u32, 2 * e as u32 + 1);
        roles[a.0][a.1] = Some(BoundaryRole::Glue(ea));
        roles[b.0][b.1] = Some(BoundaryRole::Glue(eb));
        glue_pairs.push([ea, eb]);
    }
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    for (p, c) in all_circles(&tangles) {
        if roles[p][c].is_none() {
            if side(rng, (p, c)) {
                cod.push((p, c));
            } else {
                dom.push((p, c));
            }
        }
    }
    for (list, make) in [
        (dom, BoundaryRole::Domain as fn(usize) -> BoundaryRole),
        (cod, BoundaryRole::Codomain as fn(usize) -> BoundaryRole),
    ] {
        let mut slots: Vec<usize> = (0..list.len()).collect();
        slots.shuffle(rng);
        for ((p, c), s) in list.into_iter().zip(slots) {
            roles[p][c] = Some(make(s));
        }
    }
    let pieces = tangles
        .into_iter()
        .zip(roles)
        .map(|(tangle, r)| Piece {
            tangle,
            roles: r.into_iter().map(|x| x.expect("every circle has a role")).collect(),
        })
        .collect();
    MorphismDiagram::new(pieces, glue_pairs).expect("generated morphism is valid")
}

/// A random morphism. Glue pairs may join circles of one piece, giving genus.
pub fn morphism(rng: &mut Rng64, lim: &Limits) -> MorphismDiagram {
    loop {
        let n = rng.gen_range(1..=lim.max_pieces);
        let tangles: Vec<PlanarTangle> = (0..n)
            .map(|_| piece_tangle(rng, lim.max_color, lim.max_piece_dim))
            .collect();
        let pairs = pick_pairs(rng, &tangles, lim.max_glue);
        let m = assemble(rng, tangles, &pairs, |r, _| r.gen_bool(0.5));
        if boundary_dim(&m) <= lim.max_boundary_dim {
            return m;
        }
    }
}

/// A composable pair `(m1, m2)`: pieces are split into two groups and the
/// glue pairs between the groups become the interface.
pub fn composable_pair(rng: &mut Rng64, lim: &Limits) -> (MorphismDiagram, MorphismDiagram) {
    loop {
        let n1 = rng.gen_range(1..=lim.max_pieces);
        let n2 = rng.gen_range(1..=lim.max_pieces);
        let tangles: Vec<PlanarTangle> = (0..n1 + n2)
            .map(|_| piece_tangle(rng, lim.max_color, lim.max_piece_dim))
            .collect();
        let pairs = pick_pairs(rng, &tangles, lim.max_glue + 2);
        let in_first = |p: usize| p < n1;
        let mut inner1 = Vec::new();
        let mut inner2 = Vec::new();
        let mut interface = Vec::new();
        for [a, b] in pairs {
            match (in_first(a.0), in_first(b.0)) {
                (true, true) => inner1.push([a, b]),
                (false, false) => inner2.push([(a.0 - n1, a.1), (b.0 - n1, b.1)]),
                (true, false) => interface.push((a, (b.0 - n1, b.1))),
                (false, true) => interface.push((b, (a.0 - n1, a.1))),
            }
        }
        if interface.is_empty() {
            continue;
        }
        let out1: Vec<(usize, usize)> = interface.iter().map(|x| x.0).collect();
        let in2: Vec<(usize, usize)> = interface.iter().map(|x| x.1).collect();
        let second = tangles[n1..].to_vec();
        let first = tangles[..n1].to_vec();
        let m1 = assemble(rng, first, &inner1, |_, c| out1.contains(&c));
        let m2 = assemble(rng, second, &inner2, |_, c| !in2.contains(&c));
        let total = boundary_dim(&m1).max(boundary_dim(&m2));
        if total <= lim.max_boundary_dim {
            return (m1, m2);
        }
    }
}

/// A random split of a random piece with at least two circles.
pub fn split_curve(rng: &mut Rng64, m: &MorphismDiagram) -> Option<SplitCurve> {
    let candidates: Vec<usize> = (0..m.pieces().len())
        .filter(|&p| m.pieces()[p].roles.len() >= 2)
        .collect();
    for _ in 0..20 {
        let &p = candidates.choose(rng)?;
        let n = m.pieces()[p].roles.len();
        let mask = rng.gen_range(1..(1usize << n) - 1);
        let side: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if let Ok(mut curve) = SplitCurve::around(m, p, &side) {
            let len = curve.crossings.len();
            if len > 0 {
                curve.basepoint = rng.gen_range(0..len);
            }
            let loops = m.pieces()[p].tangle.loops();
            curve.loops = rng.gen_range(0..=loops);
            if m.split(&curve).is_ok() {
                return Some(curve);
            }
        }
    }
    None
}
