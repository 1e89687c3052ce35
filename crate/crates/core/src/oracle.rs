//! Brute-force `ζ`: every entry is a sum over all glue-index assignments of
//! products of piece coefficients. Shares only `zeta_piece` with the engine.

use num_traits::{One, Zero};

use crate::cobordism::{BoundaryRole, MorphismDiagram};
use crate::linalg::Q;
use crate::tangle::advance;
use crate::tqft::{LabelledTensor, LegLabel, Tqft, TqftError};

pub fn dense_zeta(z: &Tqft, m: &MorphismDiagram) -> Result<LabelledTensor, TqftError> {
    m.validate()?;
    let pieces: Vec<LabelledTensor> = m.pieces().iter().enumerate().map(|(i, p)| z.zeta_piece(i, p)).collect();
    // Where each leg's index comes from: a boundary position or a glue pair.
    let mut boundary: Vec<LegLabel> = pieces
        .iter()
        .flat_map(|t| t.legs().iter().copied())
        .filter(|l| !matches!(l.role, BoundaryRole::Glue(_)))
        .collect();
    boundary.sort();
    let pairs = m.glue_pairs();
    let source = |l: &LegLabel| -> (bool, usize) {
        match l.role {
            BoundaryRole::Glue(e) => (false, pairs.iter().position(|p| p.contains(&e)).expect("validated")),
            _ => (true, boundary.iter().position(|b| b == l).expect("collected")),
        }
    };
    let sources: Vec<Vec<(bool, usize)>> = pieces.iter().map(|t| t.legs().iter().map(source).collect()).collect();
    let dim_of = |l: &LegLabel| crate::tl_backend::dimension(l.color.size());
    let bdims: Vec<usize> = boundary.iter().map(dim_of).collect();
    let glue_legs: Vec<&LegLabel> = pairs
        .iter()
        .map(|&[a, _]| {
            pieces
                .iter()
                .flat_map(|t| t.legs())
                .find(|l| l.role == BoundaryRole::Glue(a))
                .expect("validated")
        })
        .collect();
    let gdims: Vec<usize> = glue_legs.iter().map(|l| dim_of(l)).collect();
    let kappa: i64 = glue_legs.iter().map(|l| l.color.size() as i64).sum();
    let scale = z.backend().delta_pow(-kappa);
    let mut data = Vec::new();
    let mut bi = vec![0; bdims.len()];
    loop {
        let mut total = Q::zero();
        let mut gi = vec![0; gdims.len()];
        loop {
            let mut term = Q::one();
            for (t, src) in pieces.iter().zip(&sources) {
                let idx: Vec<usize> = src.iter().map(|&(is_b, i)| if is_b { bi[i] } else { gi[i] }).collect();
                term *= t.get(&idx);
                if term.is_zero() {
                    break;
                }
            }
            total += term;
            if !advance(&mut gi, &gdims) {
                break;
            }
        }
        data.push(total * &scale);
        if !advance(&mut bi, &bdims) {
            break;
        }
    }
    Ok(LabelledTensor::new(boundary, bdims, data))
}
