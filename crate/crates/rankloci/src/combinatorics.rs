//! Integer combinatorics: binomials (with the `binom(a,b) = 0` for `b < 0`
//! convention), partitions in a box, and strictly decreasing flags.

use std::fmt;

/// Weakly decreasing sequence of positive parts; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// i-th part, 0 beyond the stored length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.parts.len() <= rows && self.parts.first().is_none_or(|&p| p <= cols)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition::new(parts)
    }

    /// Reversed complement inside a rows x cols box; the Poincare dual index.
    pub fn complement_in_box(&self, rows: usize, cols: u32) -> Partition {
        assert!(self.fits_in_box(rows, cols), "partition exceeds the box");
        let parts = (0..rows).rev().map(|i| cols - self.part(i)).collect();
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Binomial coefficient; 0 whenever k < 0 or k > n. Negative n is rejected.
pub fn binomial(n: i64, k: i64) -> i64 {
    assert!(n >= 0, "binomial: negative n = {n}");
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as i128 / i as i128;
    }
    i64::try_from(acc).expect("binomial overflows i64")
}

/// All partitions with at most `rows` parts, each part at most `cols`,
/// in graded lexicographic order.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    fn gen(prefix: &mut Vec<u32>, maxpart: u32, rows_left: usize, out: &mut Vec<Partition>) {
        out.push(Partition::new(prefix.clone()));
        if rows_left == 0 {
            return;
        }
        for p in 1..=maxpart {
            prefix.push(p);
            gen(prefix, p, rows_left - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    gen(&mut Vec::new(), cols, rows, &mut out);
    out.sort_by_key(|p| (p.weight(), p.parts.clone()));
    out
}

/// Strictly decreasing integer sequence, entries bounded below by a stated k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecreasingFlag {
    entries: Vec<i64>,
}

impl DecreasingFlag {
    pub fn new(entries: Vec<i64>) -> Self {
        assert!(
            entries.windows(2).all(|w| w[0] > w[1]),
            "flag entries must strictly decrease: {entries:?}"
        );
        DecreasingFlag { entries }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn last(&self) -> Option<i64> {
        self.entries.last().copied()
    }
}

/// All strictly decreasing sequences n > mu_1 > ... > mu_l >= k, including the
/// empty one. Sorted by (length, entries). The recursive expansion of the
/// obstruction table only consumes the flags ending exactly at k; see
/// `engine::euler_from_sm`.
pub fn decreasing_flags(n: i64, k: i64) -> Vec<DecreasingFlag> {
    assert!(n >= k && k >= 0, "decreasing_flags: need n >= k >= 0");
    let width = (n - k) as usize;
    assert!(width <= 40, "decreasing_flags: range too wide to enumerate");
    let mut out = Vec::with_capacity(1 << width);
    for mask in 0u64..(1u64 << width) {
        let mut entries = Vec::new();
        for off in (0..width).rev() {
            if mask >> off & 1 == 1 {
                entries.push(k + off as i64);
            }
        }
        out.push(DecreasingFlag::new(entries));
    }
    out.sort_by_key(|f| (f.entries.len(), f.entries.clone()));
    out
}
