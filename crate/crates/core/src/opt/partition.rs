use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::MAX_SUBSET_COLORS;

/// Multiset of part sizes, stored in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SizePartition {
    sizes: Vec<usize>,
}

impl SizePartition {
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::invalid("a partition needs at least one part"));
        }
        if sizes.iter().any(|&s| s == 0) {
            return Err(Error::invalid("part sizes must be positive"));
        }
        let q: usize = sizes.iter().sum();
        if q > MAX_SUBSET_COLORS {
            return Err(Error::invalid(format!(
                "partitions of q > {MAX_SUBSET_COLORS} are not supported (q = {q})"
            )));
        }
        sizes.sort_unstable();
        Ok(SizePartition { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn q(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn parts(&self) -> usize {
        self.sizes.len()
    }

    /// Lexicographically first set partition with these sizes: consecutive
    /// colors, smallest parts first.
    pub fn masks(&self) -> Vec<u32> {
        let mut next = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let m = ((1u32 << s) - 1) << next;
                next += s;
                m
            })
            .collect()
    }

    /// All partitions of `q` into at least two parts, by number of parts and
    /// then lexicographically.
    pub fn all_with_two_or_more_parts(q: usize) -> Result<Vec<SizePartition>> {
        if q < 2 || q > MAX_SUBSET_COLORS {
            return Err(Error::invalid(format!("q must be in 2..={MAX_SUBSET_COLORS}, got {q}")));
        }
        let mut out = Vec::new();
        for parts in 2..=q {
            let mut cur = Vec::with_capacity(parts);
            fill(q, parts, 1, &mut cur, &mut out);
        }
        Ok(out)
    }
}

fn fill(left: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<SizePartition>) {
    if parts == 0 {
        if left == 0 {
            out.push(SizePartition { sizes: cur.clone() });
        }
        return;
    }
    let mut s = min;
    while s * parts <= left {
        cur.push(s);
        fill(left - s, parts - 1, s, cur, out);
        cur.pop();
        s += 1;
    }
}

impl fmt::Display for SizePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.sizes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for SizePartition {
    type Err = Error;

    /// Accepts `2,2,3` or `{2,2,3}`.
    fn from_str(s: &str) -> Result<Self> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        let (body, base) = match t.strip_prefix('{') {
            Some(rest) => (
                rest.strip_suffix('}')
                    .ok_or_else(|| Error::parse(lead + t.len(), "missing closing brace"))?,
                lead + 1,
            ),
            None => (t, lead),
        };
        let mut sizes = Vec::new();
        let mut offset = base;
        for tok in body.split(',') {
            let n: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::parse(offset, format!("bad part size {:?}", tok.trim())))?;
            sizes.push(n);
            offset += tok.len() + 1;
        }
        SizePartition::new(sizes)
    }
}

impl Serialize for SizePartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SizePartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p: SizePartition = "3,2,2".parse().unwrap();
        assert_eq!(p.sizes(), &[2, 2, 3]);
        assert_eq!(p.to_string(), "{2,2,3}");
        assert_eq!("{2,2,3}".parse::<SizePartition>().unwrap(), p);
        assert!(matches!("2,x".parse::<SizePartition>(), Err(Error::Parse { offset: 2, .. })));
        assert!("2,0".parse::<SizePartition>().is_err());
        assert!("{2,3".parse::<SizePartition>().is_err());
    }

    #[test]
    fn masks_are_consecutive() {
        let p: SizePartition = "1,2,3".parse().unwrap();
        assert_eq!(p.masks(), vec![0b1, 0b110, 0b111000]);
    }

    #[test]
    fn enumeration_order_and_counts() {
        let p3 = SizePartition::all_with_two_or_more_parts(3).unwrap();
        let labels: Vec<String> = p3.iter().map(|p| p.to_string()).collect();
        assert_eq!(labels, ["{1,2}", "{1,1,1}"]);
        // p(q) - 1
        let counts: Vec<usize> = (2..=12)
            .map(|q| SizePartition::all_with_two_or_more_parts(q).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 2, 4, 6, 10, 14, 21, 29, 41, 55, 76]);
    }
}
