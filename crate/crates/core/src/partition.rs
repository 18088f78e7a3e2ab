//! Set partitions of the initial segment `{0, …, k-1}`.
//!
//! A [`Partition`] is always held in canonical form: every block is sorted
//! ascending and the blocks are ordered by their minimum element. Structural
//! equality is therefore the same thing as equality of the underlying
//! equivalence relations.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest ground set [`Partition::enumerate`] accepts. B(16) is about 10^10,
/// well past anything an exhaustive test can consume.
pub const ENUMERATION_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("element {element} is missing from every block")]
    Missing { element: usize },
    #[error("element {element} appears in two distinct blocks")]
    Overlap { element: usize },
    #[error("index {index} out of range for a ground set of size {size}")]
    Range { index: usize, size: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("index list must be strictly increasing")]
    Unsorted,
    #[error("enumeration of partitions of {requested} elements exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

impl PartitionError {
    /// True for the two coverage failures (missing or overlapping element).
    pub fn is_coverage(&self) -> bool {
        matches!(self, Self::Missing { .. } | Self::Overlap { .. })
    }
}

/// A partition of `{0, …, ground_size-1}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// The finest partition: `k` singletons.
    pub fn discrete(k: usize) -> Self {
        Self {
            ground_size: k,
            blocks: (0..k).map(|i| vec![i]).collect(),
        }
    }

    /// The coarsest partition: one block holding everything (no blocks when `k = 0`).
    pub fn indiscrete(k: usize) -> Self {
        let blocks = if k == 0 {
            Vec::new()
        } else {
            vec![(0..k).collect()]
        };
        Self {
            ground_size: k,
            blocks,
        }
    }

    /// Builds a canonical partition from blocks in any order.
    ///
    /// Repeats inside one block are collapsed, and empty blocks are dropped.
    /// Every element of the ground set must land in exactly one block.
    pub fn from_blocks<B, I>(ground_size: usize, raw_blocks: B) -> Result<Self, PartitionError>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut owner: Vec<Option<usize>> = vec![None; ground_size];
        let mut blocks = Vec::new();
        for (b, raw) in raw_blocks.into_iter().enumerate() {
            let mut block = Vec::new();
            for x in raw {
                if x >= ground_size {
                    return Err(PartitionError::Range {
                        index: x,
                        size: ground_size,
                    });
                }
                match owner[x] {
                    Some(o) if o == b => {}
                    Some(_) => return Err(PartitionError::Overlap { element: x }),
                    None => {
                        owner[x] = Some(b);
                        block.push(x);
                    }
                }
            }
            if !block.is_empty() {
                block.sort_unstable();
                blocks.push(block);
            }
        }
        if let Some(missing) = owner.iter().position(Option::is_none) {
            return Err(PartitionError::Missing { element: missing });
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self {
            ground_size,
            blocks,
        })
    }

    /// Builds a partition from a block label per element. Elements sharing a
    /// label share a block; labels may be arbitrary.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first_seen: Vec<(usize, usize)> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            match first_seen.iter().find(|(label, _)| *label == l) {
                Some(&(_, b)) => blocks[b].push(x),
                None => {
                    first_seen.push((l, blocks.len()));
                    blocks.push(vec![x]);
                }
            }
        }
        // Blocks are discovered in order of their minimum, and elements are
        // pushed in ascending order, so this is already canonical.
        Self {
            ground_size: labels.len(),
            blocks,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing each element.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.ground_size];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x] = b;
            }
        }
        labels
    }

    /// The finest partition coarser than both `self` and `other`.
    pub fn join(&self, other: &Partition) -> Result<Partition, PartitionError> {
        if self.ground_size != other.ground_size {
            return Err(PartitionError::SizeMismatch {
                expected: self.ground_size,
                found: other.ground_size,
            });
        }
        let mut uf = UnionFind::new(self.ground_size);
        for block in self.blocks.iter().chain(other.blocks.iter()) {
            uf.union_all(block);
        }
        Ok(uf.into_partition())
    }

    /// Intersects every block with `keep` and renumbers the survivors by their
    /// position in `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Result<Partition, PartitionError> {
        check_increasing(keep, self.ground_size)?;
        let labels = self.labels();
        let kept: Vec<usize> = keep.iter().map(|&x| labels[x]).collect();
        Ok(Partition::from_labels(&kept))
    }

    /// Places `self` on `positions` of a larger ground set; untouched
    /// elements become singletons.
    pub fn embed(
        &self,
        positions: &[usize],
        target_size: usize,
    ) -> Result<Partition, PartitionError> {
        if positions.len() != self.ground_size {
            return Err(PartitionError::SizeMismatch {
                expected: self.ground_size,
                found: positions.len(),
            });
        }
        check_increasing(positions, target_size)?;
        let mut uf = UnionFind::new(target_size);
        for block in &self.blocks {
            let mapped: Vec<usize> = block.iter().map(|&x| positions[x]).collect();
            uf.union_all(&mapped);
        }
        Ok(uf.into_partition())
    }

    /// Disjoint union: `other` is shifted past `self`.
    pub fn disjoint_union(&self, other: &Partition) -> Partition {
        let shift = self.ground_size;
        let mut blocks = self.blocks.clone();
        blocks.extend(
            other
                .blocks
                .iter()
                .map(|b| b.iter().map(|&x| x + shift).collect::<Vec<_>>()),
        );
        Self {
            ground_size: self.ground_size + other.ground_size,
            blocks,
        }
    }

    /// Relabels elements: element `x` becomes `perm[x]`. `perm` must be a
    /// permutation of the ground set.
    pub fn permute(&self, perm: &[usize]) -> Result<Partition, PartitionError> {
        if perm.len() != self.ground_size {
            return Err(PartitionError::SizeMismatch {
                expected: self.ground_size,
                found: perm.len(),
            });
        }
        Partition::from_blocks(
            self.ground_size,
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&x| perm[x]).collect::<Vec<_>>()),
        )
    }

    /// Every partition of `{0, …, k-1}`, each exactly once, in canonical form.
    pub fn enumerate(k: usize) -> Result<Partitions, PartitionError> {
        if k > ENUMERATION_CAP {
            return Err(PartitionError::CapExceeded {
                requested: k,
                cap: ENUMERATION_CAP,
            });
        }
        Ok(Partitions {
            growth: vec![0; k],
            done: false,
        })
    }

    /// Does the block structure refine `other`? (every block of `self` sits inside one of `other`)
    pub fn refines(&self, other: &Partition) -> bool {
        if self.ground_size != other.ground_size {
            return false;
        }
        let theirs = other.labels();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| theirs[x] == theirs[b[0]]))
    }
}

fn check_increasing(indices: &[usize], size: usize) -> Result<(), PartitionError> {
    if let Some(&bad) = indices.iter().find(|&&x| x >= size) {
        return Err(PartitionError::Range { index: bad, size });
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PartitionError::Unsorted);
    }
    Ok(())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
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
        Ok(())
    }
}

/// Stream of partitions driven by restricted growth strings in
/// lexicographic order. Growth strings number blocks by first occurrence,
/// so the output needs no canonicalization.
#[derive(Debug, Clone)]
pub struct Partitions {
    growth: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition::from_labels(&self.growth);

        // Advance: bump the rightmost position that may still grow.
        let k = self.growth.len();
        let mut prefix_max = vec![0; k];
        for i in 1..k {
            prefix_max[i] = prefix_max[i - 1].max(self.growth[i - 1]);
        }
        match (1..k).rev().find(|&i| self.growth[i] <= prefix_max[i]) {
            Some(i) => {
                self.growth[i] += 1;
                self.growth[i + 1..].iter_mut().for_each(|g| *g = 0);
            }
            None => self.done = true,
        }
        Some(current)
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    pub(crate) fn union_all(&mut self, elements: &[usize]) {
        if let Some((&first, rest)) = elements.split_first() {
            for &x in rest {
                self.union(first, x);
            }
        }
    }

    pub(crate) fn into_partition(mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}
