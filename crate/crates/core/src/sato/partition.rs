use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Weakly decreasing list of positive parts; the empty list is the empty
/// partition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is an error.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::input(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// `lambda_i` with 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// All partitions of `n`, lexicographically increasing.
    pub fn of_weight(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in 1..=rest.min(max) {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of weight at most `n`, by weight and then lexicographically.
    pub fn up_to_weight(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Partition::of_weight).collect()
    }

    /// Partition of a sorted 0-based `k`-subset of `0..n`, the one whose
    /// Young diagram fits in `k x (n - k)`: `lambda_p = i_{k-p} - (k - p)`.
    pub fn from_subset(i: &[usize]) -> Result<Self> {
        if i.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("subset must be strictly increasing"));
        }
        let k = i.len();
        Partition::new((1..=k).map(|p| i[k - p] - (k - p)).collect())
    }

    /// Does the Young diagram fit in `rows x cols`?
    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.part(1) <= cols
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `"(2,1)"`, `"2,1"`, `"21"` (single digits) or `"()"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<usize>, _> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<usize>()).collect()
        } else {
            s.chars().map(|c| c.to_string().parse::<usize>()).collect()
        };
        Partition::new(parts.map_err(|e| Error::Parse(format!("partition {s:?}: {e}")))?)
    }
}

/// Strictly decreasing sequence `m_i = lambda_i - i`, stored up to the last
/// part; beyond that `m_i = -i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MayaDiagram(Vec<i64>);

impl MayaDiagram {
    /// Entry `m_i` for 1-based `i`.
    pub fn entry(&self, i: usize) -> i64 {
        self.0.get(i - 1).copied().unwrap_or(-(i as i64))
    }

    pub fn prefix(&self) -> &[i64] {
        &self.0
    }

    /// Build from any strictly decreasing prefix that ends in the default
    /// tail, i.e. `m_i >= -i` throughout.
    pub fn from_prefix(prefix: Vec<i64>) -> Result<Self> {
        if prefix.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::input("Maya diagram must be strictly decreasing"));
        }
        if prefix.iter().enumerate().any(|(i, &m)| m < -(i as i64 + 1)) {
            return Err(Error::input("Maya diagram entries must satisfy m_i >= -i"));
        }
        let mut p = prefix;
        while let Some(&last) = p.last() {
            if last == -(p.len() as i64) {
                p.pop();
            } else {
                break;
            }
        }
        Ok(MayaDiagram(p))
    }

    pub fn to_partition(&self) -> Partition {
        Partition(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &m)| (m + i as i64 + 1) as usize)
                .collect(),
        )
    }
}

pub fn maya(lambda: &Partition) -> MayaDiagram {
    MayaDiagram(
        lambda
            .0
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 - i as i64 - 1)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::of_weight(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        let p3: Vec<String> = Partition::of_weight(3)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(p3, vec!["(1,1,1)", "(2,1)", "(3)"]);
    }

    #[test]
    fn maya_examples() {
        assert_eq!(maya(&Partition::empty()).entry(3), -3);
        let m = maya(&"21".parse().unwrap());
        assert_eq!(
            (1..=4).map(|i| m.entry(i)).collect::<Vec<_>>(),
            vec![1, -1, -3, -4]
        );
        let m = maya(&"(3,3,1)".parse().unwrap());
        assert_eq!(
            (1..=4).map(|i| m.entry(i)).collect::<Vec<_>>(),
            vec![2, 1, -2, -4]
        );
    }

    #[test]
    fn maya_round_trip() {
        for p in Partition::up_to_weight(12) {
            assert_eq!(maya(&p).to_partition(), p);
            assert_eq!(
                MayaDiagram::from_prefix(maya(&p).prefix().to_vec()).unwrap(),
                maya(&p)
            );
        }
    }

    #[test]
    fn subsets() {
        assert_eq!(
            Partition::from_subset(&[0, 1, 2]).unwrap(),
            Partition::empty()
        );
        assert_eq!(
            Partition::from_subset(&[1, 3, 5]).unwrap().to_string(),
            "(3,2,1)"
        );
        assert_eq!(
            Partition::from_subset(&[3, 4, 5]).unwrap().to_string(),
            "(3,3,3)"
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 0]).unwrap().to_string(), "(2)");
        assert!(MayaDiagram::from_prefix(vec![0, 1]).is_err());
    }
}
