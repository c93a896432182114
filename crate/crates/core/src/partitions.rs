//! Integer and set partitions.
//!
//! Set partitions index the flats of the braid arrangement and the
//! coincidence patterns of points; integer partitions are their shapes.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Rational, Result};

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    /// Sorts the parts; rejects zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::OutOfRange("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// True for the one-part partition `(n)`.
    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first and
/// `(1,…,1)` last. `n = 0` yields the single empty partition.
pub fn integer_partitions(n: usize) -> Vec<IntegerPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(n, n, &mut current, &mut out);
    out
}

fn fill_partitions(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
    if remaining == 0 {
        out.push(IntegerPartition { parts: current.clone() });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill_partitions(remaining - part, part, current, out);
        current.pop();
    }
}

/// Partition of `{1, …, n}` into nonempty blocks, each block sorted and the
/// blocks ordered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates that `blocks` cover `{1..n}` disjointly and canonicalizes
    /// the ordering.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::OutOfRange("empty block in set partition".into()));
            }
            for &i in block {
                if i == 0 || i > n || seen[i] {
                    return Err(Error::OutOfRange(format!("index {i} repeated or outside 1..={n}")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::OutOfRange("blocks do not cover 1..=n".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Size of the underlying set.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block sizes, weakly decreasing.
    pub fn shape(&self) -> IntegerPartition {
        let mut parts: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts }
    }

    /// True when every block is a singleton.
    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    fn from_growth_string(rgs: &[usize]) -> Self {
        let k = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        Self { blocks }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// Visit every set partition of `{1..n}` as a restricted growth string in
/// lexicographic order, without materializing the list.
pub fn for_each_set_partition<F: FnMut(&[usize])>(n: usize, mut visit: F) {
    if n == 0 {
        visit(&[]);
        return;
    }
    // rgs[i] <= 1 + max(rgs[..i]); prefix_max[i] = max(rgs[..=i])
    let mut rgs = vec![0usize; n];
    let mut prefix_max = vec![0usize; n];
    loop {
        visit(&rgs);
        // find the rightmost position that can be incremented
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if rgs[i] <= prefix_max[i - 1] {
                break;
            }
            i -= 1;
        }
        rgs[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
}

/// All `Bell(n)` set partitions of `{1..n}`, in restricted-growth-string
/// lexicographic order (the single-block partition comes first).
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    for_each_set_partition(n, |rgs| out.push(SetPartition::from_growth_string(rgs)));
    out
}

/// Level sets of a point: `i` and `j` share a block iff `q_i == q_j`.
pub fn set_partition_of_point(q: &[Rational]) -> SetPartition {
    let mut first_index: BTreeMap<&Rational, usize> = BTreeMap::new();
    let mut rgs = Vec::with_capacity(q.len());
    for value in q {
        let next = first_index.len();
        rgs.push(*first_index.entry(value).or_insert(next));
    }
    SetPartition::from_growth_string(&rgs)
}

/// Shape of a set partition.
pub fn shape(p: &SetPartition) -> IntegerPartition {
    p.shape()
}
