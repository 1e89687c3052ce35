use super::*;
use crate::linalg::{q, q_frac};

fn tl() -> TemperleyLieb {
    TemperleyLieb::default()
}

fn basis_elements(k: usize) -> Vec<TLElement> {
    tl().basis(k).into_iter().map(TLElement::from_diagram).collect()
}

fn cup_cap() -> TLElement {
    TLElement::from_diagram(TLDiagram::from_pairs(2, &[(1, 2), (3, 4)]).unwrap())
}

#[test]
fn library_is_valid() {
    for t in NamedTangle::all(4) {
        t.tangle().validate().unwrap_or_else(|e| panic!("{}: {e}", t.name()));
    }
}

#[test]
fn jones_tangles_are_flagged() {
    for t in NamedTangle::all(3) {
        assert_eq!(t.tangle().is_jones(), t.is_operation(), "{}", t.name());
    }
}

#[test]
fn parity_error() {
    let c = Circle {
        color: Color::pos(2),
        points: vec![0, 1, 2],
        basepoint: 0,
    };
    let t = PlanarTangle::from_parts(vec![c], vec![[0, 1]], 0);
    assert!(matches!(t.validate(), Err(TangleError::OddEndpoints { .. })));
    assert!(t.validate().unwrap_err().to_string().contains("parity"));
}

#[test]
fn crossing_matching_has_genus_one() {
    // Four points on one circle joined 1-3, 2-4.
    let c = Circle {
        color: Color::pos(2),
        points: vec![0, 1, 2, 3],
        basepoint: 0,
    };
    let t = PlanarTangle::from_parts(vec![c], vec![[0, 2], [1, 3]], 0);
    let err = t.validate().unwrap_err();
    assert!(matches!(err, TangleError::Genus { genus: 1, .. }), "{err}");
}

#[test]
fn wrong_shading_is_rejected() {
    // Identity tangle with the inner colour unbarred: faces disagree.
    let t = NamedTangle::Identity { k: BaseColor::Pos(2) }.tangle();
    let mut circles = t.circles().to_vec();
    circles[1].color = circles[1].color.bar();
    let bad = PlanarTangle::from_parts(circles, t.strings().to_vec(), 0);
    assert!(matches!(bad.validate(), Err(TangleError::Shading { .. })));
}

#[test]
fn zero_circles_share_a_region() {
    let ok = PlanarTangle::from_parts(
        vec![Circle::empty(Color::ZERO_PLUS), Circle::empty(Color::ZERO_PLUS.bar())],
        vec![],
        0,
    );
    assert!(ok.validate().is_ok());
    let bad = PlanarTangle::from_parts(
        vec![Circle::empty(Color::ZERO_PLUS), Circle::empty(Color::ZERO_MINUS)],
        vec![],
        0,
    );
    assert!(bad.validate().is_err());
    let with_loop = PlanarTangle::from_parts(
        vec![Circle::empty(Color::ZERO_PLUS), Circle::empty(Color::ZERO_MINUS)],
        vec![],
        1,
    );
    assert!(with_loop.validate().is_ok());
}

#[test]
fn unit_composed_into_multiplication_is_identity() {
    let m1 = NamedTangle::Multiplication { k: BaseColor::Pos(1) }.tangle();
    let unit = NamedTangle::Unit { k: BaseColor::Pos(1) }.tangle();
    let id = NamedTangle::Identity { k: BaseColor::Pos(1) }.tangle();
    assert_eq!(m1.compose(1, &unit).unwrap(), id);
    assert_eq!(m1.compose(2, &unit).unwrap(), id);
}

#[test]
fn identity_composition_law() {
    for k in 1..=3 {
        let id = NamedTangle::Identity {
            k: BaseColor::Pos(k as u32),
        }
        .tangle();
        for t in NamedTangle::all(3) {
            let t = t.tangle();
            if t.is_jones() && t.external().color.size() == k {
                assert_eq!(id.compose(1, &t).unwrap(), t);
            }
        }
    }
}

#[test]
fn compose_checks_colours() {
    let id2 = NamedTangle::Identity { k: BaseColor::Pos(2) }.tangle();
    let unit3 = NamedTangle::Unit { k: BaseColor::Pos(3) }.tangle();
    assert!(matches!(id2.compose(1, &unit3), Err(TangleError::ColorMismatch { .. })));
}

#[test]
fn trace_of_cup_cap_network() {
    let tr = NamedTangle::Trace { k: 2 }.tangle();
    let e = NamedTangle::JonesProjection { k: 2, i: 1 }.tangle();
    let net = tr.compose(1, &e).unwrap();
    assert_eq!(net.loops(), 1);
    assert_eq!(net.evaluate_network(&tl()).unwrap(), q(2));
}

#[test]
fn networks() {
    let t = tl();
    let empty = PlanarTangle::from_parts(vec![Circle::empty(Color::ZERO_PLUS)], vec![], 0);
    assert_eq!(empty.evaluate_network(&t).unwrap(), q(1));
    let one = PlanarTangle::from_parts(vec![Circle::empty(Color::ZERO_PLUS)], vec![], 1);
    assert_eq!(one.evaluate_network(&t).unwrap(), q(2));
    let two = PlanarTangle::from_parts(vec![Circle::empty(Color::ZERO_MINUS)], vec![], 2);
    assert_eq!(two.evaluate_network(&t).unwrap(), q(4));
    let open = NamedTangle::Identity { k: BaseColor::Pos(1) }.tangle();
    assert!(open.evaluate_network(&t).is_err());
}

#[test]
fn identity_action() {
    let t = tl();
    for k in 0..=3 {
        let id = NamedTangle::Identity {
            k: BaseColor::from_size(k),
        }
        .tangle();
        for x in basis_elements(k) {
            assert_eq!(id.action(std::slice::from_ref(&x), &t).unwrap(), x);
        }
    }
}

#[test]
fn multiplication_action() {
    let t = tl();
    let m = NamedTangle::Multiplication { k: BaseColor::Pos(2) }.tangle();
    for u in basis_elements(2) {
        for v in basis_elements(2) {
            assert_eq!(
                m.action(&[u.clone(), v.clone()], &t).unwrap(),
                t.multiply(&u, &v).unwrap()
            );
        }
    }
}

#[test]
fn trace_action() {
    let t = tl();
    let tr = NamedTangle::Trace { k: 2 }.tangle();
    for x in basis_elements(2) {
        let out = tr.action(std::slice::from_ref(&x), &t).unwrap();
        assert_eq!(out.k(), 0);
        let value = out.coefficient(&TLDiagram::identity(0));
        assert_eq!(value, q(4) * t.trace(&x));
    }
    let out = tr.action(&[cup_cap()], &t).unwrap();
    assert_eq!(out.coefficient(&TLDiagram::identity(0)), q(2));
}

#[test]
fn unit_and_projection_outputs() {
    let t = tl();
    let unit = NamedTangle::Unit { k: BaseColor::Pos(3) }.tangle();
    assert_eq!(unit.action(&[], &t).unwrap(), t.unit(3));
    let e = NamedTangle::JonesProjection { k: 2, i: 1 }.tangle();
    assert_eq!(e.action(&[], &t).unwrap(), cup_cap());
}

#[test]
fn conditional_expectation_of_unit() {
    // Capping one strand of the identity gives a loop: δ·1.
    let t = tl();
    let ce = NamedTangle::ConditionalExpectation { k: 2 }.tangle();
    assert_eq!(ce.action(&[t.unit(3)], &t).unwrap(), t.unit(2).scale(&q(2)));
    let inc = NamedTangle::Inclusion { k: 2 }.tangle();
    assert_eq!(inc.action(&[t.unit(2)], &t).unwrap(), t.unit(3));
}

#[test]
fn rotation_has_order_k() {
    let t = tl();
    let rot = NamedTangle::Rotation { k: 3 }.tangle();
    for x in basis_elements(3) {
        let mut y = x.clone();
        for _ in 0..3 {
            y = rot.action(&[y], &t).unwrap();
        }
        assert_eq!(y, x);
    }
}

#[test]
fn adjoint_of_identity_and_involution() {
    for t in NamedTangle::all(3) {
        let t = t.tangle();
        assert_eq!(t.adjoint().adjoint(), t);
        t.adjoint().validate().unwrap();
    }
    let id = NamedTangle::Identity { k: BaseColor::Pos(2) }.tangle();
    assert_eq!(id.adjoint(), id);
}

#[test]
fn adjoint_of_multiplication_is_opposite() {
    let m = NamedTangle::Multiplication { k: BaseColor::Pos(2) }.tangle();
    let op = m.reorder_circles(&[0, 2, 1]);
    assert_eq!(m.adjoint(), op);
}

#[test]
fn star_compatibility_of_library() {
    let t = tl();
    for nt in NamedTangle::all(3).into_iter().filter(NamedTangle::is_operation) {
        let tg = nt.tangle();
        let adj = tg.adjoint();
        let ks: Vec<usize> = tg.internal().iter().map(|c| c.color.size()).collect();
        let mut idx = vec![0; ks.len()];
        let dims: Vec<usize> = ks.iter().map(|&k| t.dimension(k)).collect();
        loop {
            let xs: Vec<TLElement> = idx
                .iter()
                .zip(&ks)
                .map(|(&i, &k)| TLElement::from_diagram(t.basis(k)[i].clone()))
                .collect();
            let stars: Vec<TLElement> = xs.iter().map(|x| x.star()).collect();
            assert_eq!(
                adj.action(&stars, &t).unwrap(),
                tg.action(&xs, &t).unwrap().star(),
                "{}",
                nt.name()
            );
            if !advance(&mut idx, &dims) {
                break;
            }
        }
    }
}

#[test]
fn half_loop_value_at_other_delta() {
    let t = TemperleyLieb::with_delta(q_frac(5, 2)).unwrap();
    let tr = NamedTangle::Trace { k: 1 }.tangle();
    let out = tr.action(&[t.unit(1)], &t).unwrap();
    assert_eq!(out.coefficient(&TLDiagram::identity(0)), q_frac(5, 2));
}

#[test]
fn json_round_trip() {
    let m = NamedTangle::Multiplication { k: BaseColor::Pos(2) }.tangle();
    let s = serde_json::to_string(&m).unwrap();
    let back: PlanarTangle = serde_json::from_str(&s).unwrap();
    assert_eq!(back, m);
    let n: NamedTangle = serde_json::from_str(r#"{"named":"M","k":2}"#).unwrap();
    assert_eq!(n, NamedTangle::Multiplication { k: BaseColor::Pos(2) });
    let n: NamedTangle = serde_json::from_str(r#"{"named":"e","k":3,"i":2}"#).unwrap();
    assert_eq!(n, NamedTangle::JonesProjection { k: 3, i: 2 });
}
