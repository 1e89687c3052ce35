//! A fixed library of tangles.
//!
//! Strings are listed in clockwise numbering. Point `j <= k` on a circle of
//! colour `k` is top position `j`; point `2k+1-j` is bottom position `j`.

use serde::{Deserialize, Serialize};

use super::PlanarTangle;
use crate::colors::BaseColor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "named")]
pub enum NamedTangle {
    /// `I_k^k`.
    #[serde(rename = "I")]
    Identity { k: BaseColor },
    /// `M_k`: first input on top.
    #[serde(rename = "M")]
    Multiplication { k: BaseColor },
    /// Caps every strand of the input; the external colour is `0+`.
    #[serde(rename = "tr")]
    Trace { k: usize },
    /// `1^k`: the unit of `P_k`.
    #[serde(rename = "1")]
    Unit { k: BaseColor },
    /// The Jones projection `E_i` in `P_k` (unnormalized cup-cap), `1 <= i < k`.
    #[serde(rename = "e")]
    JonesProjection { k: usize, i: usize },
    /// `P_{k+1} -> P_k`, capping the rightmost strand.
    #[serde(rename = "cond")]
    ConditionalExpectation { k: usize },
    /// `P_k -> P_{k+1}`, adding a through-strand on the right.
    #[serde(rename = "inc")]
    Inclusion { k: usize },
    /// Rotation by two points.
    #[serde(rename = "rot")]
    Rotation { k: usize },
    /// Annulus with both circles good; as a morphism `P_k -> P_k*` it is `β`.
    #[serde(rename = "S")]
    RotationUnitary { k: usize },
    /// Orientation reversal of [`NamedTangle::RotationUnitary`].
    #[serde(rename = "Sbar")]
    RotationUnitaryBar { k: usize },
    /// `M_k` with all three circles good.
    #[serde(rename = "trinion")]
    Trinion { k: usize },
}

fn pos(k: usize) -> BaseColor {
    BaseColor::from_size(k)
}

impl NamedTangle {
    /// Every library entry with all colours at most `max_k`.
    pub fn all(max_k: usize) -> Vec<NamedTangle> {
        use NamedTangle::*;
        let mut out = Vec::new();
        for k in [BaseColor::ZeroPlus, BaseColor::ZeroMinus] {
            out.extend([Identity { k }, Multiplication { k }, Unit { k }]);
        }
        for k in 1..=max_k {
            let b = pos(k);
            out.extend([
                Identity { k: b },
                Multiplication { k: b },
                Trace { k },
                Unit { k: b },
                Rotation { k },
                RotationUnitary { k },
                RotationUnitaryBar { k },
                Trinion { k },
            ]);
            out.extend((1..k).map(|i| JonesProjection { k, i }));
            if k < max_k {
                out.extend([ConditionalExpectation { k }, Inclusion { k }]);
            }
        }
        out
    }

    /// True for entries that are Jones tangles and so act on the algebra.
    pub fn is_operation(&self) -> bool {
        !matches!(
            self,
            NamedTangle::RotationUnitary { .. } | NamedTangle::RotationUnitaryBar { .. } | NamedTangle::Trinion { .. }
        )
    }

    pub fn name(&self) -> String {
        use NamedTangle::*;
        match self {
            Identity { k } => format!("I_{k}"),
            Multiplication { k } => format!("M_{k}"),
            Trace { k } => format!("tr_{k}"),
            Unit { k } => format!("1^{k}"),
            JonesProjection { k, i } => format!("E_{i} in P_{k}"),
            ConditionalExpectation { k } => format!("cond_{}->{}", k + 1, k),
            Inclusion { k } => format!("inc_{}->{}", k, k + 1),
            Rotation { k } => format!("rot_{k}"),
            RotationUnitary { k } => format!("S_{k}"),
            RotationUnitaryBar { k } => format!("Sbar_{k}"),
            Trinion { k } => format!("trinion_{k}"),
        }
    }

    pub fn tangle(&self) -> PlanarTangle {
        use NamedTangle::*;
        match *self {
            Identity { k } => {
                let n = 2 * k.size();
                let s: Vec<_> = (1..=n).map(|j| ((1, j), (0, j))).collect();
                PlanarTangle::jones(k, &[k], &s, 0)
            }
            Multiplication { k } => {
                let m = k.size();
                let mut s = Vec::new();
                for j in 1..=m {
                    s.push(((0, j), (1, j)));
                    s.push(((1, 2 * m + 1 - j), (2, j)));
                }
                for j in m + 1..=2 * m {
                    s.push(((2, j), (0, j)));
                }
                PlanarTangle::jones(k, &[k, k], &s, 0)
            }
            Trace { k } => {
                let s: Vec<_> = (1..=k).map(|j| ((1, j), (1, 2 * k + 1 - j))).collect();
                PlanarTangle::jones(BaseColor::ZeroPlus, &[pos(k)], &s, 0)
            }
            Unit { k } => {
                let m = k.size();
                let s: Vec<_> = (1..=m).map(|j| ((0, j), (0, 2 * m + 1 - j))).collect();
                PlanarTangle::jones(k, &[], &s, 0)
            }
            JonesProjection { k, i } => {
                assert!(1 <= i && i < k, "Jones projection index out of range");
                let bottom = |j: usize| 2 * k + 1 - j;
                let mut s = vec![((0, i), (0, i + 1)), ((0, bottom(i)), (0, bottom(i + 1)))];
                for j in (1..=k).filter(|&j| j != i && j != i + 1) {
                    s.push(((0, j), (0, bottom(j))));
                }
                PlanarTangle::jones(pos(k), &[], &s, 0)
            }
            ConditionalExpectation { k } => {
                let mut s = Vec::new();
                for j in 1..=k {
                    s.push(((1, j), (0, j)));
                    s.push(((1, 2 * k + 3 - j), (0, 2 * k + 1 - j)));
                }
                s.push(((1, k + 1), (1, k + 2)));
                PlanarTangle::jones(pos(k), &[pos(k + 1)], &s, 0)
            }
            Inclusion { k } => {
                let mut s = Vec::new();
                for j in 1..=k {
                    s.push(((1, j), (0, j)));
                    s.push(((1, 2 * k + 1 - j), (0, 2 * k + 3 - j)));
                }
                s.push(((0, k + 1), (0, k + 2)));
                PlanarTangle::jones(pos(k + 1), &[pos(k)], &s, 0)
            }
            Rotation { k } => {
                let n = 2 * k;
                let s: Vec<_> = (1..=n).map(|j| ((1, j), (0, (j + 1) % n + 1))).collect();
                PlanarTangle::jones(pos(k), &[pos(k)], &s, 0)
            }
            RotationUnitary { k } => Identity { k: pos(k) }.tangle().rotate_basepoint(0, 1),
            RotationUnitaryBar { k } => RotationUnitary { k }.tangle().reversed(),
            Trinion { k } => Multiplication { k: pos(k) }.tangle().rotate_basepoint(0, 1),
        }
    }
}
