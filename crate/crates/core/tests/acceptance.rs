//! End-to-end acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::Rng;

use planar_tqft::cobordism::MorphismDiagram;
use planar_tqft::colors::{BaseColor, Color, ObjectSignature};
use planar_tqft::linalg::{fmt_q, pow_q, q, q_frac, RationalMatrix, Q};
use planar_tqft::random;
use planar_tqft::reconstruct::{self, sphere, sphere_reversed, Options};
use planar_tqft::suites::{self, Suite, SuiteConfig};
use planar_tqft::tangle::NamedTangle;
use planar_tqft::tl_backend::{DualTLElement, TLElement, TemperleyLieb};
use planar_tqft::tqft::Tqft;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tqft(d: &Q) -> Tqft {
    Tqft::with_delta(d.clone()).expect("δ ≥ 2")
}

fn deltas() -> [Q; 2] {
    [q(2), q_frac(5, 2)]
}

fn catalan(k: usize) -> usize {
    // C_k = binom(2k, k) / (k + 1), computed without the TL basis.
    let mut c: usize = 1;
    for i in 0..k {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

fn sphere_is_delta() -> Check {
    for d in [q(2), q_frac(5, 2), q(3)] {
        let z = tqft(&d);
        for (name, s) in [("sphere", sphere()), ("reversed shading", sphere_reversed())] {
            let v = z.closed_invariant(&s).map_err(|e| e.to_string())?;
            ensure(v == d, || format!("{name} at δ = {}: got {}", fmt_q(&d), fmt_q(&v)))?;
        }
    }
    Ok("δ ∈ {2/1, 5/2, 3/1}, both shadings".into())
}

fn identities() -> Check {
    let bases = [
        BaseColor::ZeroPlus,
        BaseColor::ZeroMinus,
        BaseColor::Pos(1),
        BaseColor::Pos(2),
        BaseColor::Pos(3),
    ];
    let mut n = 0;
    for d in deltas() {
        let z = tqft(&d);
        for b in bases {
            for c in [Color::new(b), Color::barred(b)] {
                let zm = z
                    .Z(&MorphismDiagram::identity(&ObjectSignature::single(c)))
                    .map_err(|e| e.to_string())?;
                let size = catalan(b.size());
                ensure(zm.is_identity() && zm.matrix().rows() == size, || {
                    format!("Z(id {c}) at δ = {} is not I_{size}:\n{zm}", fmt_q(&d))
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} identities, sizes 1, 1, 1, 2, 5"))
}

fn trinion() -> Check {
    for d in deltas() {
        let z = tqft(&d);
        let tl = z.backend();
        let m = MorphismDiagram::from_tangle(NamedTangle::Trinion { k: 2 }.tangle());
        let eta = z.zeta_piece(0, &m.pieces()[0]);
        let basis: Vec<TLElement> = tl.basis(2).into_iter().map(TLElement::from_diagram).collect();
        ensure(eta.dims() == [2, 2, 2], || format!("dims {:?}", eta.dims()))?;
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                for (l, w) in basis.iter().enumerate() {
                    let uvw = tl.multiply(&tl.multiply(u, v).unwrap(), w).unwrap();
                    let expected = &d * &d * tl.trace(&uvw);
                    ensure(eta.get(&[i, j, l]) == &expected, || {
                        format!("triple ({i},{j},{l}) at δ = {}", fmt_q(&d))
                    })?;
                }
            }
        }
    }
    Ok("8 basis triples at δ ∈ {2/1, 5/2}".into())
}

/// Matrix of `x ↦ f(x)` over the basis of `P_k`, in dual-basis coordinates.
fn dual_columns(tl: &TemperleyLieb, k: usize, cols: Vec<DualTLElement>) -> RationalMatrix {
    RationalMatrix::from_fn(tl.dimension(k), cols.len(), |r, c| cols[c].coeffs[r].clone())
}

/// The backend's direct realization of a library tangle.
fn backend_action(nt: &NamedTangle, tl: &TemperleyLieb) -> Result<RationalMatrix, String> {
    let basis = |k: usize| -> Vec<TLElement> { tl.basis(k).into_iter().map(TLElement::from_diagram).collect() };
    match *nt {
        NamedTangle::RotationUnitary { k } => Ok(dual_columns(tl, k, basis(k).iter().map(|x| tl.beta(x)).collect())),
        NamedTangle::RotationUnitaryBar { k } => {
            let n = tl.dimension(k);
            let mut cols = Vec::new();
            for j in 0..n {
                let mut coeffs = vec![Q::zero(); n];
                coeffs[j] = Q::one();
                let x = tl.beta_inv(&DualTLElement { k, coeffs }).map_err(|e| e.to_string())?;
                cols.push(tl.to_dense(&x));
            }
            Ok(RationalMatrix::from_fn(n, n, |r, c| cols[c][r].clone()))
        }
        NamedTangle::Trinion { k } => {
            let b = basis(k);
            let mut cols = Vec::new();
            for v in &b {
                for w in &b {
                    cols.push(tl.beta(&tl.multiply(v, w).map_err(|e| e.to_string())?));
                }
            }
            Ok(dual_columns(tl, k, cols))
        }
        _ => nt.tangle().action_matrix(tl).map_err(|e| e.to_string()),
    }
}

fn operad_recovery() -> Check {
    let mut n = 0;
    for d in deltas() {
        let z = tqft(&d);
        let tl = z.backend();
        for nt in NamedTangle::all(3) {
            let m = MorphismDiagram::from_tangle(nt.tangle());
            let zn = z.Z_normalized(&m).map_err(|e| e.to_string())?;
            let act = backend_action(&nt, tl)?;
            ensure(zn == act, || format!("{} at δ = {}", nt.name(), fmt_q(&d)))?;
            n += 1;
        }
        for k in 1..=3 {
            let tr = MorphismDiagram::from_tangle(NamedTangle::Trace { k }.tangle());
            let zn = z.Z_normalized(&tr).map_err(|e| e.to_string())?;
            let scaled: Vec<Q> = tl.level(k).traces.iter().map(|t| t * pow_q(&d, k as i64)).collect();
            ensure(zn.row(0) == scaled.as_slice(), || format!("tr_{k} is not δ^k τ_{k}"))?;
            let s = MorphismDiagram::from_tangle(NamedTangle::RotationUnitary { k }.tangle());
            let sb = MorphismDiagram::from_tangle(NamedTangle::RotationUnitaryBar { k }.tangle());
            for (name, c) in [
                ("S̄∘S", MorphismDiagram::compose(&s, &sb)),
                ("S∘S̄", MorphismDiagram::compose(&sb, &s)),
            ] {
                let c = c.map_err(|e| e.to_string())?;
                ensure(z.Z(&c).map_err(|e| e.to_string())?.is_identity(), || {
                    format!("{name} ≠ id for k = {k}")
                })?;
            }
        }
    }
    Ok(format!("{n} library tangles; tr_k = δ^k τ_k and S̄∘S = id for k ≤ 3"))
}

fn suite(s: Suite, count: usize) -> Check {
    let cfg = SuiteConfig {
        count: Some(count),
        ..SuiteConfig::default()
    };
    let r = suites::run(s, &cfg).map_err(|e| e.to_string())?;
    match r.failures.first() {
        None => Ok(format!("{} cases, seed {}", r.cases, r.seed)),
        Some(f) => Err(format!(
            "{} of {} failed; first: case {}: {}",
            r.failures.len(),
            r.cases,
            f.case,
            f.detail
        )),
    }
}

fn reconstruction() -> Check {
    for d in deltas() {
        let z = tqft(&d);
        let rep = reconstruct::rebuild_and_compare(&z, z.backend(), &Options::default());
        if let Some(s) = rep
            .steps
            .iter()
            .find(|s| !matches!(s.status, reconstruct::Status::Pass | reconstruct::Status::Recorded))
        {
            return Err(format!(
                "δ = {}: step ({}) {:?}: {}",
                fmt_q(&d),
                s.step,
                s.status,
                s.detail
            ));
        }
        ensure(rep.delta_recovered == d, || {
            format!("report recovered {}", fmt_q(&rep.delta_recovered))
        })?;
    }
    for d in [q(2), q_frac(5, 2), q(3)] {
        let got = reconstruct::recover_delta(&tqft(&d))?;
        ensure(got == d, || {
            format!("recover_delta gave {} for {}", fmt_q(&got), fmt_q(&d))
        })?;
    }
    Ok("all steps at δ ∈ {2/1, 5/2}; δ round-trips for 2/1, 5/2, 3/1".into())
}

fn random_element(rng: &mut random::Rng64, tl: &TemperleyLieb, k: usize) -> TLElement {
    let v: Vec<Q> = (0..tl.dimension(k))
        .map(|_| q_frac(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
        .collect();
    tl.from_dense(k, &v).expect("right length")
}

fn algebra_axioms() -> Check {
    let g2 = reconstruct::gram_determinant(&Tqft::default(), 2);
    ensure(g2 == q_frac(3, 4), || format!("det Gram_2 = {} at δ = 2/1", fmt_q(&g2)))?;
    let mut rng = random::rng(suites::DEFAULT_SEED);
    for d in deltas() {
        let z = tqft(&d);
        let rep = reconstruct::rebuild_and_compare(
            &z,
            z.backend(),
            &Options {
                seed: 11,
                samples: 6,
                ..Options::default()
            },
        );
        for step in ["6", "8", "9", "10", "11", "12"] {
            let s = rep.step(step).ok_or_else(|| format!("no step ({step})"))?;
            ensure(s.status == reconstruct::Status::Pass, || {
                format!("step ({step}): {}", s.detail)
            })?;
        }
        let tl = z.backend();
        for k in 0..=3 {
            let det = reconstruct::gram_determinant(&z, k);
            ensure(!det.is_zero(), || format!("Gram_{k} is singular at δ = {}", fmt_q(&d)))?;
            for _ in 0..8 {
                let x = random_element(&mut rng, tl, k);
                let y = random_element(&mut rng, tl, k);
                let a = random_element(&mut rng, tl, k);
                let xy = tl.multiply(&x, &y).unwrap();
                let yx = tl.multiply(&y, &x).unwrap();
                ensure(tl.trace(&xy) == tl.trace(&yx), || format!("τ_{k} not tracial"))?;
                ensure(tl.star(&xy) == tl.multiply(&tl.star(&y), &tl.star(&x)).unwrap(), || {
                    format!("(xy)* ≠ y*x* in P_{k}")
                })?;
                ensure(tl.star(&tl.star(&x)) == x, || format!("x** ≠ x in P_{k}"))?;
                ensure(tl.trace(&tl.star(&x)) == tl.trace(&x), || {
                    format!("τ(x*) ≠ τ(x) in P_{k}")
                })?;
                let ax = tl.multiply(&a, &x).unwrap();
                let asy = tl.multiply(&tl.star(&a), &y).unwrap();
                ensure(
                    tl.inner_product(&ax, &y).unwrap() == tl.inner_product(&x, &asy).unwrap(),
                    || format!("⟨ax, y⟩ ≠ ⟨x, a*y⟩ in P_{k}"),
                )?;
            }
        }
    }
    Ok("det Gram_2 = 3/4; steps (6), (8)-(12) and random backend checks for k ≤ 3".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 11] = [
        ("sphere invariant", sphere_is_delta),
        ("identity", identities),
        ("trinion", trinion),
        ("planar-operad recovery", operad_recovery),
        ("functoriality", || suite(Suite::Functoriality, 100)),
        ("unitarity", || suite(Suite::Unitarity, 100)),
        ("monoidality", || suite(Suite::Monoidality, 50)),
        ("move invariance", || suite(Suite::Moves, 100)),
        ("oracle equivalence", || suite(Suite::Oracle, 50)),
        ("reconstruction", reconstruction),
        ("algebra axioms", algebra_axioms),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} criterion {:>2} {name}: {detail} ({:.2}s)",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    let total = start.elapsed().as_secs_f64();
    let within = total < 60.0;
    println!(
        "{} runtime: {total:.2}s (limit 60s)",
        if within { "PASS" } else { "FAIL" }
    );
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 && within {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
