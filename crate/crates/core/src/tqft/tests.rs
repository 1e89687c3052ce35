use super::*;
use crate::colors::BaseColor;
use crate::linalg::{q, q_frac};
use crate::tangle::NamedTangle;
use crate::tl_backend::{dimension, TLElement};

fn sig(s: &str) -> ObjectSignature {
    s.parse().unwrap()
}

fn tq(d: Q) -> Tqft {
    Tqft::with_delta(d).unwrap()
}

fn deltas() -> Vec<Q> {
    vec![q(2), q_frac(5, 2), q(3)]
}

fn disc(k: BaseColor) -> MorphismDiagram {
    MorphismDiagram::from_tangle(NamedTangle::Unit { k }.tangle())
}

fn sphere(k: BaseColor) -> MorphismDiagram {
    let d = disc(k);
    MorphismDiagram::compose(&d, &d.adjoint()).unwrap()
}

#[test]
fn space_dimensions() {
    let z = Tqft::default();
    assert_eq!(z.space_of(&sig("2")).dimension, 2);
    assert_eq!(z.space_of(&ObjectSignature::empty()).dimension, 1);
    assert_eq!(z.space_of(&sig("2,2~")).dimension, 4);
    assert_eq!(z.space_of(&sig("3,3")).dims, vec![5, 5]);
}

#[test]
fn zeta_of_identity_is_scaled_identity() {
    let z = Tqft::default();
    let id = MorphismDiagram::identity(&sig("2"));
    let m = z.z0(&id).unwrap();
    assert_eq!(m, RationalMatrix::identity(2).scale(&q(4)));
    let twice = MorphismDiagram::compose(&id, &id).unwrap();
    assert_eq!(z.zeta(&twice).unwrap().data(), z.zeta(&id).unwrap().data());
}

#[test]
fn spheres() {
    for d in deltas() {
        let z = tq(d.clone());
        assert_eq!(z.closed_invariant(&sphere(BaseColor::ZeroPlus)).unwrap(), q(1));
        assert_eq!(z.closed_invariant(&sphere(BaseColor::ZeroMinus)).unwrap(), q(1));
        let s = sphere(BaseColor::Pos(1));
        assert_eq!(z.closed_invariant(&s).unwrap(), d);
        assert_eq!(z.closed_invariant(&s.adjoint()).unwrap(), d);
    }
}

#[test]
fn closed_invariant_needs_closed_input() {
    let z = Tqft::default();
    assert!(matches!(
        z.closed_invariant(&disc(BaseColor::Pos(1))),
        Err(TqftError::NotClosed { .. })
    ));
}

#[test]
fn identities_are_identity_matrices() {
    for d in deltas() {
        let z = tq(d);
        for s in ["0+", "0-", "1", "2", "3", "0+~", "0-~", "1~", "2~", "3~", "1,2~"] {
            let f = sig(s);
            let m = z.Z(&MorphismDiagram::identity(&f)).unwrap();
            assert!(m.is_identity(), "{s}");
            assert_eq!(m.matrix().rows(), z.space_of(&f).dimension);
        }
    }
}

#[test]
fn trinion_is_the_triple_trace() {
    let z = Tqft::default();
    let tl = z.backend();
    let t = NamedTangle::Trinion { k: 2 }.tangle();
    let piece = MorphismDiagram::from_tangle(t).pieces()[0].clone();
    let zeta = z.zeta_piece(0, &piece);
    let basis: Vec<TLElement> = tl.basis(2).into_iter().map(TLElement::from_diagram).collect();
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            for (l, w) in basis.iter().enumerate() {
                let uvw = tl.multiply(&tl.multiply(u, v).unwrap(), w).unwrap();
                assert_eq!(zeta.get(&[i, j, l]), &(q(4) * tl.trace(&uvw)));
            }
        }
    }
}

#[test]
fn jones_tangles_act_as_the_backend() {
    for d in [q(2), q_frac(5, 2)] {
        let z = tq(d);
        for nt in NamedTangle::all(3).into_iter().filter(NamedTangle::is_operation) {
            let t = nt.tangle();
            let m = MorphismDiagram::from_tangle(t.clone());
            assert_eq!(
                z.Z_normalized(&m).unwrap(),
                t.action_matrix(z.backend()).unwrap(),
                "{}",
                nt.name()
            );
        }
    }
}

#[test]
fn multiplication_matrix() {
    let z = Tqft::default();
    let m = MorphismDiagram::from_tangle(NamedTangle::Multiplication { k: BaseColor::Pos(2) }.tangle());
    let zm = z.Z_normalized(&m).unwrap();
    // Columns (1,1), (1,E), (E,1), (E,E).
    let expected = RationalMatrix::from_vec(2, 4, vec![q(1), q(0), q(0), q(0), q(0), q(1), q(1), q(2)]);
    assert_eq!(zm, expected);
}

#[test]
fn trace_tangle_gives_scaled_traces() {
    let z = Tqft::default();
    let m = MorphismDiagram::from_tangle(NamedTangle::Trace { k: 2 }.tangle());
    assert_eq!(
        z.Z_normalized(&m).unwrap(),
        RationalMatrix::from_vec(1, 2, vec![q(4), q(2)])
    );
}

#[test]
fn pairing_annulus_is_the_trace_form() {
    for d in deltas() {
        let z = tq(d);
        for k in 1..=3 {
            let s = NamedTangle::RotationUnitary { k }.tangle();
            let pairing =
                MorphismDiagram::from_piece(s, vec![BoundaryRole::Domain(1), BoundaryRole::Domain(0)]).unwrap();
            let got = z.Z(&pairing).unwrap().to_rational().unwrap();
            let level = z.backend().level(k);
            let n = level.dim();
            let expected = RationalMatrix::from_fn(1, n * n, |_, c| level.trace_form[(c / n, c % n)].clone());
            assert_eq!(got, expected, "k={k}");
        }
    }
}

#[test]
fn rotation_unitaries() {
    for d in deltas() {
        let z = tq(d);
        for k in 1..=3 {
            let s = MorphismDiagram::from_tangle(NamedTangle::RotationUnitary { k }.tangle());
            let sbar = MorphismDiagram::from_tangle(NamedTangle::RotationUnitaryBar { k }.tangle());
            assert_eq!(sbar.canonical(), s.adjoint().canonical());
            let zs = z.Z(&s).unwrap().to_rational().unwrap();
            // Z_S(x) = β(x) = x·T.
            assert_eq!(zs, z.backend().level(k).trace_form.transpose());
            let both = MorphismDiagram::compose(&s, &sbar).unwrap();
            assert!(z.Z(&both).unwrap().is_identity(), "k={k}");
        }
    }
}

#[test]
fn torus_is_the_dimension() {
    for d in deltas() {
        let z = tq(d);
        for k in 0..=3 {
            let id = MorphismDiagram::identity(&ObjectSignature::single(Color::pos(k)));
            let mut p = id.pieces()[0].clone();
            p.roles = vec![BoundaryRole::Glue(0), BoundaryRole::Glue(1)];
            let torus = MorphismDiagram::new(vec![p], vec![[0, 1]]).unwrap();
            assert_eq!(z.closed_invariant(&torus).unwrap(), q(dimension(k) as i64));
        }
    }
}

#[test]
fn adjoint_is_the_gram_adjoint() {
    let z = Tqft::default();
    for nt in NamedTangle::all(3) {
        let m = MorphismDiagram::from_tangle(nt.tangle());
        let zm = z.Z(&m).unwrap();
        let za = z.Z(&m.adjoint()).unwrap();
        let gd = z.gram(m.domain()).inverse().unwrap();
        let gc = z.gram(m.codomain());
        assert_eq!(zm.transpose().sandwich(&gd, &gc), za, "{}", nt.name());
    }
}

#[test]
fn zeta_ignores_which_circle_is_external() {
    let z = Tqft::default();
    for nt in NamedTangle::all(3) {
        let m = MorphismDiagram::from_tangle(nt.tangle());
        let p = &m.pieces()[0];
        let n = p.roles.len();
        let order: Vec<usize> = (0..n).rev().collect();
        let moved = Piece {
            tangle: p.tangle.reorder_circles(&order),
            roles: order.iter().map(|&i| p.roles[i]).collect(),
        };
        let m2 = MorphismDiagram::new(vec![moved], vec![]).unwrap();
        assert_eq!(z.zeta(&m2).unwrap().data(), z.zeta(&m).unwrap().data(), "{}", nt.name());
    }
}

#[test]
fn swapping_domain_slots_permutes_columns() {
    let z = Tqft::default();
    let m = MorphismDiagram::from_tangle(NamedTangle::Multiplication { k: BaseColor::Pos(2) }.tangle());
    let mut p = m.pieces()[0].clone();
    p.roles.swap(1, 2);
    let swapped = MorphismDiagram::new(vec![p], vec![]).unwrap();
    let a = z.Z_normalized(&m).unwrap();
    let b = z.Z_normalized(&swapped).unwrap();
    for c in 0..4 {
        let c2 = (c % 2) * 2 + c / 2;
        for r in 0..2 {
            assert_eq!(a[(r, c)], b[(r, c2)]);
        }
    }
}

#[test]
fn scaled_matrix_folds_square_roots() {
    let m = RationalMatrix::identity(1);
    let a = ScaledMatrix::new(&q(4), 1, m.clone());
    assert_eq!(a.to_rational().unwrap()[(0, 0)], q(2));
    let b = ScaledMatrix::new(&q(2), -3, m.clone());
    assert_eq!(b.half_power(), 1);
    assert_eq!(b.matrix()[(0, 0)], q_frac(1, 4));
    assert_eq!(b.mul(&b).to_rational().unwrap()[(0, 0)], q_frac(1, 8));
}

#[test]
fn disjoint_union_is_the_tensor_product() {
    let z = Tqft::default();
    let a = MorphismDiagram::from_tangle(NamedTangle::Multiplication { k: BaseColor::Pos(2) }.tangle());
    let b = MorphismDiagram::from_tangle(NamedTangle::Inclusion { k: 1 }.tangle());
    for (x, y) in [(&a, &b), (&b, &a)] {
        let u = MorphismDiagram::disjoint_union(x, y);
        let expected = z.tensor_product(x, &z.Z(x).unwrap(), y, &z.Z(y).unwrap());
        assert_eq!(z.Z(&u).unwrap(), expected);
    }
}
