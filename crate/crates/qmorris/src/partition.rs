//! Partition combinatorics: orderings, conjugation, strips, statistics,
//! and bounded enumeration.

use std::fmt;
use std::str::FromStr;

/// An integer partition: weakly decreasing positive parts, trailing zeros
/// suppressed. The empty partition is the zero partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Self {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        for w in parts.windows(2) {
            assert!(w[0] >= w[1], "parts must be weakly decreasing");
        }
        assert!(parts.last().is_none_or(|&p| p >= 1), "parts must be positive");
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// `lambda_i` with 1-based index; reads 0 beyond the length.
    pub fn part(&self, i: usize) -> i64 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// |lambda|: sum of the parts.
    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// `n(lambda) = sum (i-1) lambda_i`.
    pub fn nstat(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as i64 * p)
            .sum()
    }

    /// (size, length, nstat) in one call.
    pub fn stats(&self) -> (i64, usize, i64) {
        (self.size(), self.length(), self.nstat())
    }

    /// Conjugate partition (column lengths of the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let mut cols = Vec::new();
        if let Some(&first) = self.parts.first() {
            for j in 1..=first {
                cols.push(self.parts.iter().filter(|&&p| p >= j).count() as i64);
            }
        }
        Partition { parts: cols }
    }

    /// Containment of diagrams: `mu ⊂ self` iff `mu_i <= self_i` for all i.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.parts
            .iter()
            .enumerate()
            .all(|(i, &p)| p <= self.part(i + 1))
    }

    /// Dominance order on partitions of the same size: `self <= lambda` iff
    /// all prefix sums of `self` are bounded by those of `lambda`.
    ///
    /// # Panics
    /// Panics if the sizes differ.
    pub fn dominance_leq(&self, lambda: &Partition) -> bool {
        assert_eq!(
            self.size(),
            lambda.size(),
            "dominance order compares partitions of equal size"
        );
        let n = self.parts.len().max(lambda.parts.len());
        let mut s = 0i64;
        let mut l = 0i64;
        for i in 1..=n {
            s += self.part(i);
            l += lambda.part(i);
            if s > l {
                return false;
            }
        }
        true
    }

    /// True iff `self/mu` is a horizontal r-strip: containment, size
    /// difference r, and at most one square per column.
    pub fn is_horizontal_strip(&self, mu: &Partition, r: i64) -> bool {
        if !self.contains(mu) || self.size() - mu.size() != r {
            return false;
        }
        let sc = self.conjugate();
        let mc = mu.conjugate();
        (1..=sc.length()).all(|i| sc.part(i) - mc.part(i) <= 1)
    }

    /// Append a copy with `delta` added to every one of the first `n` rows
    /// (rows beyond the current length read as 0). Panics if the result is
    /// not a partition.
    pub fn pad_add(&self, n: usize, delta: i64) -> Partition {
        let parts: Vec<i64> = (1..=n).map(|i| self.part(i) + delta).collect();
        Partition::new(parts)
    }
}

/// All partitions with size <= `maxsize`, length <= `maxlen`, and every part
/// <= `maxpart`, each exactly once (lexicographic order, empty first).
pub fn enumerate(maxsize: i64, maxlen: usize, maxpart: i64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack: Vec<i64> = Vec::new();
    fn rec(
        out: &mut Vec<Partition>,
        stack: &mut Vec<i64>,
        remaining: i64,
        maxlen: usize,
        cap: i64,
    ) {
        out.push(Partition::new(stack.clone()));
        if stack.len() == maxlen {
            return;
        }
        let cap = cap.min(remaining);
        for p in (1..=cap).rev() {
            stack.push(p);
            rec(out, stack, remaining - p, maxlen, p);
            stack.pop();
        }
    }
    rec(&mut out, &mut stack, maxsize, maxlen, maxpart);
    out.sort();
    out.dedup();
    out
}

/// Partitions of exactly `size` (length/parts unbounded beyond `size`).
pub fn partitions_of(size: i64) -> Vec<Partition> {
    enumerate(size, size.max(0) as usize, size)
        .into_iter()
        .filter(|p| p.size() == size)
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Error when parsing a partition literal.
#[derive(Debug, Clone, thiserror::Error)]
#[error("invalid partition literal: {0}")]
pub struct ParsePartitionError(pub String);

impl FromStr for Partition {
    type Err = ParsePartitionError;

    /// Accepts comma-separated parts (`"3,1,1"`); the empty string or `"0"`
    /// is the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: i64 = tok
                .trim()
                .parse()
                .map_err(|_| ParsePartitionError(s.to_string()))?;
            if p < 0 {
                return Err(ParsePartitionError(s.to_string()));
            }
            parts.push(p);
        }
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(ParsePartitionError(format!(
                    "{s} (parts not weakly decreasing)"
                )));
            }
        }
        Ok(Partition::new(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn stats_examples() {
        assert_eq!(p(&[7, 4, 3, 1]).stats(), (15, 4, 13));
        assert_eq!(Partition::empty().stats(), (0, 0, 0));
        assert_eq!(p(&[3, 3]).stats(), (6, 2, 3));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3]).conjugate(), p(&[1, 1, 1]));
        // Count columns of the (7,4,3,1) diagram directly.
        let lam = p(&[7, 4, 3, 1]);
        let mut cols = Vec::new();
        for j in 1..=7 {
            cols.push(lam.parts().iter().filter(|&&x| x >= j).count() as i64);
        }
        assert_eq!(lam.conjugate(), Partition::new(cols));
        assert_eq!(lam.conjugate(), p(&[4, 3, 3, 2, 1, 1, 1]));
    }

    #[test]
    fn contains_and_dominance() {
        assert!(p(&[7, 4, 3, 1]).contains(&p(&[4, 3, 1])));
        assert!(p(&[2, 2]).dominance_leq(&p(&[3, 1])));
        assert!(!p(&[3, 1]).dominance_leq(&p(&[2, 2])));
    }

    #[test]
    #[should_panic]
    fn dominance_size_mismatch_panics() {
        let _ = p(&[2]).dominance_leq(&p(&[2, 1]));
    }

    #[test]
    fn horizontal_strips() {
        assert!(p(&[7, 4, 3, 1]).is_horizontal_strip(&p(&[4, 3, 1]), 7));
        assert!(p(&[2, 1]).is_horizontal_strip(&p(&[2, 1]), 0));
        // (2,2)/(1) has two squares in column 2.
        assert!(!p(&[2, 2]).is_horizontal_strip(&p(&[1]), 3));
    }

    #[test]
    fn enumerate_examples() {
        let got = enumerate(2, 2, 2);
        assert_eq!(
            got,
            vec![Partition::empty(), p(&[1]), p(&[1, 1]), p(&[2])]
        );
        let got = enumerate(3, 1, 3);
        assert_eq!(got, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[3])]);
        assert_eq!(enumerate(4, 4, 4).len(), 12);
    }

    #[test]
    fn conjugate_involution_all_small() {
        for lam in enumerate(6, 6, 6) {
            assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }

    #[test]
    fn containment_conjugate_duality() {
        let all = enumerate(5, 5, 5);
        for a in &all {
            for b in &all {
                assert_eq!(
                    a.contains(b),
                    a.conjugate().contains(&b.conjugate()),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn dominance_conjugate_antitone() {
        for n in 0..=5 {
            let all = partitions_of(n);
            for a in &all {
                for b in &all {
                    assert_eq!(
                        b.dominance_leq(a),
                        a.conjugate().dominance_leq(&b.conjugate()),
                        "a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn strip_implies_contains_and_size() {
        let all = enumerate(5, 5, 5);
        for a in &all {
            for b in &all {
                for r in 0..=5 {
                    if a.is_horizontal_strip(b, r) {
                        assert!(a.contains(b));
                        assert_eq!(a.size() - b.size(), r);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_literals() {
        assert_eq!("3,1,1".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }
}
