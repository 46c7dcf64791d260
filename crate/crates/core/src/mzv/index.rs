use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ncseries::{Word, X0, X1};

/// Index `(k_1, ..., k_m)` of
/// `zeta(k_1, ..., k_m) = sum_{0 < n_1 < ... < n_m} 1 / (n_1^k_1 ... n_m^k_m)`.
///
/// The last entry goes with the largest summation variable, so the series
/// converges iff `k_m > 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MzvIndex(Vec<u32>);

impl MzvIndex {
    pub fn new(k: Vec<u32>) -> Result<Self> {
        if k.is_empty() || k.contains(&0) {
            return Err(Error::Parse(format!("an MZV index needs positive entries, got {k:?}")));
        }
        Ok(MzvIndex(k))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_some_and(|&k| k > 1)
    }

    /// `X0^{k_m-1} X1 ... X0^{k_1-1} X1`, whose coefficient in the Drinfeld
    /// associator is `(-1)^m zeta(k_1, ..., k_m)`.
    pub fn to_word(&self) -> Word {
        let mut w = Word::empty();
        for &k in self.0.iter().rev() {
            for _ in 1..k {
                w.push(X0);
            }
            w.push(X1);
        }
        w
    }

    /// Inverse of [`MzvIndex::to_word`]; `None` unless `w` ends in `X1`.
    pub fn from_word(w: &Word) -> Option<Self> {
        if w.last() != Some(X1) {
            return None;
        }
        let mut k = Vec::new();
        let mut run = 1;
        for &l in w.letters() {
            if l == X0 {
                run += 1;
            } else {
                k.push(run);
                run = 1;
            }
        }
        k.reverse();
        Some(MzvIndex(k))
    }

    /// Variable name used in symbolic expressions, e.g. `z_2_3`.
    pub fn symbol(&self) -> String {
        let mut s = String::from("z");
        for k in &self.0 {
            s.push('_');
            s.push_str(&k.to_string());
        }
        s
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        let body = s.strip_prefix("z_")?;
        let k = body.split('_').map(|p| p.parse().ok()).collect::<Option<Vec<u32>>>()?;
        MzvIndex::new(k).ok()
    }

    /// `(2, ..., 2)` with `n` entries.
    pub fn twos(n: usize) -> Self {
        MzvIndex(vec![2; n])
    }
}

impl fmt::Display for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({self})")
    }
}

impl FromStr for MzvIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let k = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad MZV index `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        MzvIndex::new(k)
    }
}

impl Serialize for MzvIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MzvIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_follow_the_expansion() {
        let idx: MzvIndex = "2".parse().unwrap();
        assert_eq!(idx.to_word(), Word::from_letters(&[X0, X1]));
        // zeta(1,2): k_m = 2 is read first
        let idx: MzvIndex = "1,2".parse().unwrap();
        assert_eq!(idx.to_word(), Word::from_letters(&[X0, X1, X1]));
        assert!(idx.is_admissible());
        assert!(!"2,1".parse::<MzvIndex>().unwrap().is_admissible());
        assert_eq!(MzvIndex::from_word(&idx.to_word()), Some(idx.clone()));
        assert_eq!(MzvIndex::from_word(&Word::from_letters(&[X1, X0])), None);
        assert_eq!(MzvIndex::from_symbol(&idx.symbol()), Some(idx));
    }

    #[test]
    fn parse_rejects_zero_and_garbage() {
        assert!("0,2".parse::<MzvIndex>().is_err());
        assert!("".parse::<MzvIndex>().is_err());
        assert!("2;3".parse::<MzvIndex>().is_err());
    }
}
