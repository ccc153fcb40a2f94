//! Bipartitions of a ring of `n` sites into groups A and B.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Named family of a bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    /// Sites with even 1-based label (odd 0-based index) form A.
    EvenOdd,
    /// A is the contiguous (cyclic) half starting at `offset`.
    HalfHalf { offset: usize },
    /// Split `n/2 - m : n/2 + m`; A is the first `n/2 - m` sites.
    Contiguous { m: usize },
    /// Only site `site` is in A.
    OneVsRest { site: usize },
    Custom,
}

impl PartitionKind {
    /// Short tag used in tables: `e:o`, `h:h`, `1:n-1`, ...
    pub fn tag(&self) -> String {
        match self {
            PartitionKind::EvenOdd => "e:o".into(),
            PartitionKind::HalfHalf { offset: 0 } => "h:h".into(),
            PartitionKind::HalfHalf { offset } => format!("h:h@{offset}"),
            PartitionKind::Contiguous { m } => format!("contiguous:{m}"),
            PartitionKind::OneVsRest { site: 0 } => "1:n-1".into(),
            PartitionKind::OneVsRest { site } => format!("1:n-1@{site}"),
            PartitionKind::Custom => "custom".into(),
        }
    }
}

impl fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Parses the tags produced by [`PartitionKind::tag`] plus the long names
/// `even-odd`, `half-half[:offset]`, `one-vs-rest[:site]`, `contiguous:m`.
impl FromStr for PartitionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadPartitionParams(format!("unknown partition `{s}`"));
        match s {
            "e:o" | "even-odd" => return Ok(PartitionKind::EvenOdd),
            "h:h" | "half-half" => return Ok(PartitionKind::HalfHalf { offset: 0 }),
            "1:n-1" | "one-vs-rest" => return Ok(PartitionKind::OneVsRest { site: 0 }),
            _ => {}
        }
        let argument = |prefixes: &[&str]| {
            prefixes
                .iter()
                .find_map(|p| s.strip_prefix(p))
                .map(|v| v.parse::<usize>().map_err(|_| bad()))
        };
        if let Some(offset) = argument(&["h:h@", "half-half:"]) {
            return Ok(PartitionKind::HalfHalf { offset: offset? });
        }
        if let Some(site) = argument(&["1:n-1@", "one-vs-rest:"]) {
            return Ok(PartitionKind::OneVsRest { site: site? });
        }
        if let Some(m) = argument(&["contiguous:"]) {
            return Ok(PartitionKind::Contiguous { m: m? });
        }
        Err(bad())
    }
}

/// Assignment of every site to group A (`+1`) or B (`-1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<i8>,
    kind: PartitionKind,
}

impl Partition {
    pub fn new(kind: PartitionKind, n: usize) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::BadPartitionParams(format!(
                "site count {n} must be even and at least 2"
            )));
        }
        let half = n / 2;
        let labels: Vec<i8> = match kind {
            PartitionKind::EvenOdd => (0..n).map(|i| if i % 2 == 1 { 1 } else { -1 }).collect(),
            PartitionKind::HalfHalf { offset } => {
                if offset >= n {
                    return Err(Error::BadPartitionParams(format!(
                        "offset {offset} outside [0, {n})"
                    )));
                }
                (0..n)
                    .map(|i| if (i + n - offset) % n < half { 1 } else { -1 })
                    .collect()
            }
            PartitionKind::Contiguous { m } => {
                if m >= half {
                    return Err(Error::BadPartitionParams(format!(
                        "m = {m} outside [0, {}]",
                        half - 1
                    )));
                }
                (0..n).map(|i| if i < half - m { 1 } else { -1 }).collect()
            }
            PartitionKind::OneVsRest { site } => {
                if site >= n {
                    return Err(Error::BadPartitionParams(format!(
                        "site {site} outside [0, {n})"
                    )));
                }
                (0..n).map(|i| if i == site { 1 } else { -1 }).collect()
            }
            PartitionKind::Custom => {
                return Err(Error::BadPartitionParams(
                    "custom partitions are built with Partition::from_labels".into(),
                ))
            }
        };
        Ok(Self { labels, kind })
    }

    pub fn even_odd(n: usize) -> Result<Self> {
        Self::new(PartitionKind::EvenOdd, n)
    }

    pub fn half_half(n: usize, offset: usize) -> Result<Self> {
        Self::new(PartitionKind::HalfHalf { offset }, n)
    }

    pub fn contiguous(n: usize, m: usize) -> Result<Self> {
        Self::new(PartitionKind::Contiguous { m }, n)
    }

    pub fn one_vs_rest(n: usize, site: usize) -> Result<Self> {
        Self::new(PartitionKind::OneVsRest { site }, n)
    }

    /// Arbitrary labels in `{+1, -1}`; both groups must be nonempty.
    pub fn from_labels(labels: Vec<i8>) -> Result<Self> {
        if labels.iter().any(|&l| l != 1 && l != -1) {
            return Err(Error::BadPartitionParams("labels must be +1 or -1".into()));
        }
        let in_a = labels.iter().filter(|&&l| l == 1).count();
        if in_a == 0 || in_a == labels.len() {
            return Err(Error::BadPartitionParams(
                "both groups must be nonempty".into(),
            ));
        }
        Ok(Self {
            labels,
            kind: PartitionKind::Custom,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    /// `+1` for group A, `-1` for group B.
    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn in_a(&self, site: usize) -> bool {
        self.labels[site] == 1
    }

    pub fn sites_a(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.in_a(i)).collect()
    }

    /// Bit mask of group A with site `i` at bit `i`.
    pub fn mask_a(&self) -> usize {
        self.sites_a().iter().fold(0, |acc, &i| acc | (1 << i))
    }

    /// True when the two sites sit on opposite sides of the cut.
    pub fn separates(&self, i: usize, j: usize) -> bool {
        self.labels[i] != self.labels[j]
    }

    /// A 1 : n−1 cut of Gaussian modes is separable exactly when it is PPT.
    pub fn ppt_implies_separable(&self) -> bool {
        let in_a = self.sites_a().len();
        in_a == 1 || in_a == self.n() - 1
    }
}

/// Offset of a half-half cut that puts sites `i ≠ j` on opposite sides.
///
/// On a ring one always exists: with `d = (j - i) mod n`, the half starting
/// at `i + 1` holds `j` but not `i` when `d ≤ n/2`, otherwise the half
/// starting at `i` holds `i` but not `j`.
pub fn separating_half_offset(n: usize, i: usize, j: usize) -> usize {
    let d = (j + n - i) % n;
    if d <= n / 2 {
        (i + 1) % n
    } else {
        i
    }
}

/// Checks, pair by pair, that every two sites are split by some half-half cut.
pub fn half_cuts_cover_all_pairs(n: usize) -> bool {
    (0..n).all(|i| {
        (0..n).filter(|&j| j != i).all(|j| {
            let offset = separating_half_offset(n, i, j);
            let inside = |site: usize| (site + n - offset) % n < n / 2;
            inside(i) != inside(j)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constructors() {
        assert_eq!(Partition::even_odd(4).unwrap().labels(), &[-1, 1, -1, 1]);
        assert_eq!(Partition::half_half(4, 0).unwrap().labels(), &[1, 1, -1, -1]);
        assert_eq!(Partition::half_half(4, 3).unwrap().labels(), &[1, -1, -1, 1]);
        assert_eq!(
            Partition::contiguous(10, 0).unwrap().labels(),
            Partition::half_half(10, 0).unwrap().labels()
        );
        assert_eq!(
            Partition::contiguous(10, 4).unwrap().labels(),
            Partition::one_vs_rest(10, 0).unwrap().labels()
        );
        assert_eq!(Partition::one_vs_rest(4, 2).unwrap().labels(), &[-1, -1, 1, -1]);
    }

    #[test]
    fn bad_parameters() {
        assert!(Partition::half_half(4, 4).is_err());
        assert!(Partition::contiguous(8, 4).is_err());
        assert!(Partition::one_vs_rest(6, 6).is_err());
        assert!(Partition::even_odd(5).is_err());
        assert!(Partition::from_labels(vec![1, 1, 1]).is_err());
        assert!(Partition::from_labels(vec![1, 0, -1]).is_err());
        assert!(Partition::from_labels(vec![1, -1, -1]).is_ok());
    }

    #[test]
    fn mask_and_separation() {
        let p = Partition::even_odd(6).unwrap();
        assert_eq!(p.mask_a(), 0b101010);
        assert!(p.separates(0, 1));
        assert!(!p.separates(1, 3));
        assert!(Partition::one_vs_rest(6, 2).unwrap().ppt_implies_separable());
        assert!(!p.ppt_implies_separable());
    }

    #[test]
    fn tags_round_trip() {
        let kinds = [
            PartitionKind::EvenOdd,
            PartitionKind::HalfHalf { offset: 0 },
            PartitionKind::HalfHalf { offset: 3 },
            PartitionKind::Contiguous { m: 2 },
            PartitionKind::OneVsRest { site: 0 },
            PartitionKind::OneVsRest { site: 5 },
        ];
        for kind in kinds {
            assert_eq!(kind.tag().parse::<PartitionKind>().unwrap(), kind);
        }
        assert_eq!("even-odd".parse::<PartitionKind>().unwrap(), PartitionKind::EvenOdd);
        assert_eq!(
            "half-half:2".parse::<PartitionKind>().unwrap(),
            PartitionKind::HalfHalf { offset: 2 }
        );
        assert!("diagonal".parse::<PartitionKind>().is_err());
        assert!("contiguous".parse::<PartitionKind>().is_err());
        assert!("h:h@x".parse::<PartitionKind>().is_err());
    }

    #[test]
    fn pair_coverage_holds_on_rings() {
        for n in [2, 4, 6, 10, 64] {
            assert!(half_cuts_cover_all_pairs(n));
        }
    }
}
