//! Colours and object signatures.
//!
//! A colour is an element of `C ∪ C̄` where `C = {0+, 0-, 1, 2, ...}`. Objects of
//! the cobordism category are finitely supported multiplicity maps on colours.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorParseError {
    #[error("empty colour string")]
    Empty,
    #[error("invalid colour `{0}`")]
    Invalid(String),
    #[error("invalid signature entry `{0}`")]
    Signature(String),
}

/// Element of `C`. The derived order is the canonical one: `0+ < 0- < 1 < 2 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseColor {
    ZeroPlus,
    ZeroMinus,
    /// A positive colour `k >= 1`.
    Pos(u32),
}

impl BaseColor {
    /// `|k|`: zero for `0±`, the integer otherwise.
    pub fn size(self) -> usize {
        match self {
            BaseColor::ZeroPlus | BaseColor::ZeroMinus => 0,
            BaseColor::Pos(k) => k as usize,
        }
    }

    /// Positive colour `k`, or `0+` when `k == 0`.
    pub fn from_size(k: usize) -> BaseColor {
        if k == 0 {
            BaseColor::ZeroPlus
        } else {
            BaseColor::Pos(k as u32)
        }
    }

    pub fn is_zero(self) -> bool {
        self.size() == 0
    }
}

impl fmt::Display for BaseColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseColor::ZeroPlus => f.write_str("0+"),
            BaseColor::ZeroMinus => f.write_str("0-"),
            BaseColor::Pos(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for BaseColor {
    type Err = ColorParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "" => Err(ColorParseError::Empty),
            "0+" => Ok(BaseColor::ZeroPlus),
            "0-" => Ok(BaseColor::ZeroMinus),
            t => match t.parse::<u32>() {
                Ok(k) if k >= 1 => Ok(BaseColor::Pos(k)),
                _ => Err(ColorParseError::Invalid(s.to_string())),
            },
        }
    }
}

impl Serialize for BaseColor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            BaseColor::Pos(k) => s.serialize_u32(*k),
            _ => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BaseColor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(0) => Ok(BaseColor::ZeroPlus),
            Raw::Num(k) => u32::try_from(k).map(BaseColor::Pos).map_err(serde::de::Error::custom),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A colour in `Col = C ∪ C̄`.
///
/// Field order matters for the derived `Ord`: all unbarred colours sort before
/// all barred ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color {
    pub barred: bool,
    pub base: BaseColor,
}

impl Color {
    pub const ZERO_PLUS: Color = Color::new(BaseColor::ZeroPlus);
    pub const ZERO_MINUS: Color = Color::new(BaseColor::ZeroMinus);

    pub const fn new(base: BaseColor) -> Color {
        Color { barred: false, base }
    }

    pub const fn barred(base: BaseColor) -> Color {
        Color { barred: true, base }
    }

    /// Unbarred positive colour `k` (`0+` for `k == 0`).
    pub fn pos(k: usize) -> Color {
        Color::new(BaseColor::from_size(k))
    }

    pub fn bar(self) -> Color {
        Color {
            barred: !self.barred,
            base: self.base,
        }
    }

    pub fn size(self) -> usize {
        self.base.size()
    }
}

/// Involution on colours.
pub fn bar_color(k: Color) -> Color {
    k.bar()
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, if self.barred { "~" } else { "" })
    }
}

impl FromStr for Color {
    type Err = ColorParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.strip_suffix('~') {
            Some(rest) => Ok(Color::barred(rest.parse()?)),
            None => Ok(Color::new(t.parse()?)),
        }
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Object `X_f`: a finitely supported map from colours to multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectSignature {
    counts: BTreeMap<Color, u32>,
}

impl ObjectSignature {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(c: Color) -> Self {
        let mut s = Self::default();
        s.add(c, 1);
        s
    }

    pub fn from_colors<I: IntoIterator<Item = Color>>(it: I) -> Self {
        let mut s = Self::default();
        for c in it {
            s.add(c, 1);
        }
        s
    }

    pub fn add(&mut self, c: Color, n: u32) {
        if n > 0 {
            *self.counts.entry(c).or_insert(0) += n;
        }
    }

    pub fn count(&self, c: Color) -> u32 {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of circle components.
    pub fn components(&self) -> usize {
        self.counts.values().map(|&n| n as usize).sum()
    }

    /// `|X_f| = Σ f(k)|k|`.
    pub fn norm(&self) -> usize {
        self.counts.iter().map(|(c, &n)| c.size() * n as usize).sum()
    }

    pub fn bar(&self) -> Self {
        ObjectSignature {
            counts: self.counts.iter().map(|(c, &n)| (c.bar(), n)).collect(),
        }
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&c, &n) in &other.counts {
            out.add(c, n);
        }
        out
    }

    /// `(colour, multiplicity)` pairs in canonical colour order.
    pub fn iter(&self) -> impl Iterator<Item = (Color, u32)> + '_ {
        self.counts.iter().map(|(&c, &n)| (c, n))
    }

    /// One colour per component, canonical order.
    pub fn colors(&self) -> Vec<Color> {
        self.iter()
            .flat_map(|(c, n)| std::iter::repeat_n(c, n as usize))
            .collect()
    }
}

/// Pointwise sum of multiplicities.
pub fn disjoint_union(a: &ObjectSignature, b: &ObjectSignature) -> ObjectSignature {
    a.disjoint_union(b)
}

pub fn bar_signature(f: &ObjectSignature) -> ObjectSignature {
    f.bar()
}

pub fn norm(f: &ObjectSignature) -> usize {
    f.norm()
}

impl fmt::Display for ObjectSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        f.write_str("{")?;
        for (i, (c, n)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}:{n}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for ObjectSignature {
    type Err = ColorParseError;

    /// Accepts `"2,2,1~"`, `"2:2,1~:1"`, `"{2:2, 1~:1}"` or an empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut out = ObjectSignature::empty();
        for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (c, n) = match part.rsplit_once(':') {
                Some((c, n)) => {
                    let n = n
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| ColorParseError::Signature(part.to_string()))?;
                    (c.trim().trim_matches('"'), n)
                }
                None => (part.trim_matches('"'), 1),
            };
            out.add(c.parse()?, n);
        }
        Ok(out)
    }
}

impl Serialize for ObjectSignature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.counts.len()))?;
        for (c, n) in self.iter() {
            m.serialize_entry(&c.to_string(), &n)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for ObjectSignature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, u32>::deserialize(d)?;
        let mut out = ObjectSignature::empty();
        for (c, n) in m {
            out.add(c.parse().map_err(serde::de::Error::custom)?, n);
        }
        Ok(out)
    }
}
