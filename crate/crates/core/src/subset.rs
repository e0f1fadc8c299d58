use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest color count a [`SubsetVector`] supports (2^12 - 1 coordinates).
pub const MAX_SUBSET_COLORS: usize = 12;

/// Nonnegative real vector indexed by the nonempty subsets of `{1, ..., q}`.
///
/// Subsets are bitmasks: bit `i` stands for color `i + 1`, so mask `0b101`
/// is `{1, 3}` and the full set is `2^q - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsetVector {
    q: usize,
    entries: Vec<f64>,
}

impl SubsetVector {
    pub fn zeros(q: usize) -> Result<Self> {
        if q == 0 || q > MAX_SUBSET_COLORS {
            return Err(Error::invalid(format!(
                "color count must be in 1..={MAX_SUBSET_COLORS}, got {q}"
            )));
        }
        Ok(SubsetVector {
            q,
            entries: vec![0.0; (1 << q) - 1],
        })
    }

    /// Builds a vector from `(mask, value)` pairs; unspecified entries are 0.
    pub fn from_entries(q: usize, entries: &[(u32, f64)]) -> Result<Self> {
        let mut v = SubsetVector::zeros(q)?;
        for &(mask, val) in entries {
            v.set(mask, val)?;
        }
        Ok(v)
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn full_mask(&self) -> u32 {
        (1u32 << self.q) - 1
    }

    /// Number of coordinates, `2^q - 1`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if mask == 0 || mask > self.full_mask() {
            return Err(Error::invalid(format!(
                "subset mask {mask:#b} is not a nonempty subset of [{}]",
                self.q
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn get(&self, mask: u32) -> f64 {
        if mask == 0 || mask > self.full_mask() {
            return 0.0;
        }
        self.entries[mask as usize - 1]
    }

    pub fn set(&mut self, mask: u32, value: f64) -> Result<()> {
        self.check_mask(mask)?;
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::invalid(format!(
                "entry for {} must be a finite nonnegative number, got {value}",
                subset_label(mask)
            )));
        }
        self.entries[mask as usize - 1] = value;
        Ok(())
    }

    /// Raw coordinates; index `i` holds the entry of mask `i + 1`.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    /// Builds a vector from raw coordinates (index `i` is mask `i + 1`).
    pub fn from_slice(q: usize, values: &[f64]) -> Result<Self> {
        let mut v = SubsetVector::zeros(q)?;
        if values.len() != v.len() {
            return Err(Error::invalid(format!(
                "expected {} coordinates, got {}",
                v.len(),
                values.len()
            )));
        }
        for (i, &x) in values.iter().enumerate() {
            v.set(i as u32 + 1, x)?;
        }
        Ok(v)
    }

    /// Nonzero entries in increasing mask order.
    pub fn nonzero(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0.0)
            .map(|(i, &x)| (i as u32 + 1, x))
    }

    /// Masks with entry strictly above `tol`.
    pub fn support(&self, tol: f64) -> Vec<u32> {
        self.nonzero().filter(|&(_, x)| x > tol).map(|(m, _)| m).collect()
    }

    pub fn scaled(&self, t: f64) -> SubsetVector {
        SubsetVector {
            q: self.q,
            entries: self.entries.iter().map(|x| x * t).collect(),
        }
    }

    /// Parses `"{3}=0.3,{1,2}=0.5"` style text.
    pub fn parse(q: usize, text: &str) -> Result<Self> {
        let mut v = SubsetVector::zeros(q)?;
        let mut rest = text.trim();
        let mut offset = text.len() - text.trim_start().len();
        while !rest.is_empty() {
            let close = rest
                .find('}')
                .ok_or_else(|| Error::parse(offset, "expected '}'"))?;
            let mask = parse_subset(&rest[..=close], q).map_err(|m| Error::parse(offset, m))?;
            let after = rest[close + 1..].trim_start();
            let after = after
                .strip_prefix('=')
                .ok_or_else(|| Error::parse(offset + close + 1, "expected '='"))?;
            let end = after.find(',').unwrap_or(after.len());
            let value: f64 = after[..end]
                .trim()
                .parse()
                .map_err(|_| Error::parse(offset + close + 1, "bad number"))?;
            v.set(mask, value)?;
            let consumed = rest.len() - after.len() + end;
            let tail = &rest[consumed..];
            let tail = tail.strip_prefix(',').unwrap_or(tail);
            offset += rest.len() - tail.trim_start().len();
            rest = tail.trim_start();
        }
        Ok(v)
    }
}

impl fmt::Display for SubsetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero()
            .map(|(m, x)| format!("{}={}", subset_label(m), x))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// `{1,3}` style label of a subset mask.
pub fn subset_label(mask: u32) -> String {
    let colors: Vec<String> = (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", colors.join(","))
}

/// Mask of a set of 1-based colors.
pub fn subset_mask(colors: &[usize]) -> u32 {
    colors.iter().fold(0, |m, &c| m | 1 << (c - 1))
}

fn parse_subset(text: &str, q: usize) -> std::result::Result<u32, String> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| format!("expected a subset like {{1,2}}, got {text:?}"))?;
    let mut mask = 0u32;
    for tok in inner.split(',') {
        let c: usize = tok
            .trim()
            .parse()
            .map_err(|_| format!("bad color {tok:?}"))?;
        if c == 0 || c > q {
            return Err(format!("color {c} outside 1..={q}"));
        }
        mask |= 1 << (c - 1);
    }
    Ok(mask)
}

impl Serialize for SubsetVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, f64> = self
            .nonzero()
            .map(|(m, x)| (subset_label(m), x))
            .collect();
        #[derive(Serialize)]
        struct Repr<'a> {
            q: usize,
            entries: &'a BTreeMap<String, f64>,
        }
        Repr {
            q: self.q,
            entries: &map,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubsetVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            q: usize,
            entries: BTreeMap<String, f64>,
        }
        let r = Repr::deserialize(d)?;
        let mut v = SubsetVector::zeros(r.q).map_err(serde::de::Error::custom)?;
        for (k, x) in r.entries {
            let mask = parse_subset(&k, r.q).map_err(serde::de::Error::custom)?;
            v.set(mask, x).map_err(serde::de::Error::custom)?;
        }
        Ok(v)
    }
}
