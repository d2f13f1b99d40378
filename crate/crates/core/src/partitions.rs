//! Interval partitions of `[n] = {1, …, n}` encoded by their cut sets.
//!
//! A cut at position `c` (with `1 ≤ c ≤ n − 1`) separates `c` from `c + 1`.
//! Blocks are recovered on demand. In this encoding the lattice operations are
//! set operations on cuts: `π ≤ ρ` iff `cuts(ρ) ⊆ cuts(π)`, the join intersects
//! cut sets and the meet unites them.

use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND_SET: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalPartition {
    n: usize,
    // bit c-1 set <=> cut at position c
    mask: u64,
}

impl IntervalPartition {
    /// Builds a partition of `[n]` from explicit cut positions.
    pub fn new(n: usize, cuts: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_ground_set(n)?;
        let mut mask = 0u64;
        for cut in cuts {
            if cut == 0 || cut >= n {
                return Err(Error::CutOutOfRange { cut, n });
            }
            mask |= 1 << (cut - 1);
        }
        Ok(Self { n, mask })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        check_ground_set(n)?;
        if mask & !full_mask(n) != 0 {
            let cut = 64 - mask.leading_zeros() as usize;
            return Err(Error::CutOutOfRange { cut, n });
        }
        Ok(Self { n, mask })
    }

    /// Partition into consecutive blocks of the given sizes.
    pub fn from_block_sizes(sizes: &[usize]) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::InvalidArgument("block sizes must be positive".into()));
        }
        let n: usize = sizes.iter().sum();
        let mut cuts = Vec::with_capacity(sizes.len());
        let mut pos = 0;
        for size in &sizes[..sizes.len().saturating_sub(1)] {
            pos += size;
            cuts.push(pos);
        }
        Self::new(n, cuts)
    }

    /// The one-block partition `1̂_n`.
    pub fn one(n: usize) -> Result<Self> {
        Self::from_mask(n, 0)
    }

    /// The all-singletons partition `0̂_n`.
    pub fn zero(n: usize) -> Result<Self> {
        check_ground_set(n)?;
        Ok(Self { n, mask: full_mask(n) })
    }

    /// The standard matching `{(1,2),(3,4),…,(2r−1,2r)}` of `[2r]`.
    pub fn standard_matching(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::EmptyGroundSet);
        }
        Self::new(2 * r, (1..r).map(|j| 2 * j))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn has_cut(&self, c: usize) -> bool {
        c >= 1 && c < self.n && self.mask & (1 << (c - 1)) != 0
    }

    pub fn cuts(&self) -> Vec<usize> {
        (1..self.n).filter(|&c| self.has_cut(c)).collect()
    }

    pub fn num_blocks(&self) -> usize {
        self.mask.count_ones() as usize + 1
    }

    /// Blocks as 1-based inclusive ranges, in order.
    pub fn blocks(&self) -> Vec<RangeInclusive<usize>> {
        let mut blocks = Vec::with_capacity(self.num_blocks());
        let mut start = 1;
        for c in self.cuts() {
            blocks.push(start..=c);
            start = c + 1;
        }
        blocks.push(start..=self.n);
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks().iter().map(|b| b.end() - b.start() + 1).collect()
    }

    /// Number of singleton blocks, `#Sing(π)`.
    pub fn num_singletons(&self) -> usize {
        self.block_sizes().iter().filter(|&&s| s == 1).count()
    }

    fn same_ground_set(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// `self ≤ other` in refinement order.
    pub fn refines(&self, other: &Self) -> Result<bool> {
        self.same_ground_set(other)?;
        Ok(other.mask & !self.mask == 0)
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_ground_set(other)?;
        Ok(Self { n: self.n, mask: self.mask & other.mask })
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_ground_set(other)?;
        Ok(Self { n: self.n, mask: self.mask | other.mask })
    }

    /// `self ∨ other = 1̂_n`.
    pub fn join_is_top(&self, other: &Self) -> Result<bool> {
        Ok(self.join(other)?.mask == 0)
    }

    /// Image under the bijection `I(r+1) → {π̂ ∈ I(2r) : π̂ ∨ 1̂_2^r = 1̂_2r}`,
    /// sending a cut `c` to the cut `2c − 1`.
    pub fn lift_matching(&self) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::InvalidArgument("lift_matching needs a partition of r + 1 elements with r >= 1".into()));
        }
        let r = self.n - 1;
        Self::new(2 * r, self.cuts().into_iter().map(|c| 2 * c - 1))
    }

    /// Inverse of [`lift_matching`](Self::lift_matching); fails unless every cut is odd.
    pub fn project_matching(&self) -> Result<Self> {
        if !self.n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("project_matching needs an even ground set, got {}", self.n)));
        }
        let cuts = self.cuts();
        if let Some(even) = cuts.iter().find(|&&c| c % 2 == 0) {
            return Err(Error::InvalidArgument(format!(
                "cut {even} is even; the partition does not join the standard matching to 1̂"
            )));
        }
        Self::new(self.n / 2 + 1, cuts.into_iter().map(|c| c.div_ceil(2)))
    }

    /// True iff `indices` is constant on every block (`ker indices ≥ π`).
    pub fn kernel_refines<T: PartialEq>(&self, indices: &[T]) -> Result<bool> {
        if indices.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: indices.len() });
        }
        Ok(self.blocks().into_iter().all(|b| indices[b.start() - 1..*b.end()].windows(2).all(|w| w[0] == w[1])))
    }

    /// Block-start positions and the trailing positions of each non-singleton block.
    pub fn closure_structure(&self) -> ClosureStructure {
        let mut outer = Vec::new();
        let mut inner = Vec::new();
        for block in self.blocks() {
            outer.push(*block.start());
            if block.end() > block.start() {
                inner.push((block.start() + 1..=*block.end()).collect());
            }
        }
        ClosureStructure { outer, inner }
    }
}

impl fmt::Display for IntervalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.blocks() {
            write!(f, "(")?;
            for (k, p) in block.enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Outer block of the closed interval complement together with its nested inner blocks.
///
/// `outer` holds the first position of every block of the source partition;
/// `inner` holds, for every block of size at least two, its remaining positions.
/// An inner list sits between the outer position that starts its block and the
/// next outer position (or after the last one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureStructure {
    pub outer: Vec<usize>,
    pub inner: Vec<Vec<usize>>,
}

impl ClosureStructure {
    /// Pairs each outer position with the inner list nested right after it (empty for singletons).
    pub fn segments(&self) -> Vec<(usize, &[usize])> {
        self.outer
            .iter()
            .map(|&o| {
                let nested = self
                    .inner
                    .iter()
                    .find(|list| list.first() == Some(&(o + 1)))
                    .map(|list| list.as_slice())
                    .unwrap_or(&[]);
                (o, nested)
            })
            .collect()
    }
}

fn check_ground_set(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::EmptyGroundSet),
        n if n > MAX_GROUND_SET => Err(Error::GroundSetTooLarge(n)),
        _ => Ok(()),
    }
}

fn full_mask(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        u64::MAX >> (64 - (n - 1))
    }
}

/// All `2^(n−1)` interval partitions of `[n]`, ordered by the binary value of
/// the cut mask (cut `c` is bit `c − 1`), so `∅, {1}, {2}, {1,2}, …`.
pub fn enumerate_interval(n: usize) -> Result<Vec<IntervalPartition>> {
    check_ground_set(n)?;
    if n > 31 {
        return Err(Error::InvalidArgument(format!("refusing to materialize 2^{} partitions", n - 1)));
    }
    Ok((0..1u64 << (n - 1)).map(|mask| IntervalPartition { n, mask }).collect())
}

/// Partitions `π ∈ I(2r)` with `π ∨ 1̂_2^r = 1̂_2r`, in the order induced from `I(r+1)`.
pub fn matching_connected(r: usize) -> Result<Vec<IntervalPartition>> {
    if r == 0 {
        return Err(Error::EmptyGroundSet);
    }
    enumerate_interval(r + 1)?.iter().map(IntervalPartition::lift_matching).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cuts: &[usize]) -> IntervalPartition {
        IntervalPartition::new(n, cuts.iter().copied()).unwrap()
    }

    #[test]
    fn enumeration_order_and_size() {
        let all = enumerate_interval(3).unwrap();
        let cuts: Vec<_> = all.iter().map(|p| p.cuts()).collect();
        assert_eq!(cuts, vec![vec![], vec![1], vec![2], vec![1, 2]]);
        assert_eq!(enumerate_interval(1).unwrap(), vec![p(1, &[])]);
        for n in 1..=12 {
            assert_eq!(enumerate_interval(n).unwrap().len(), 1 << (n - 1));
        }
        assert_eq!(enumerate_interval(0), Err(Error::EmptyGroundSet));
    }

    #[test]
    fn five_element_count_matches_subsets() {
        // every subset of {1,2,3,4} appears exactly once
        let mut seen: Vec<Vec<usize>> = enumerate_interval(5).unwrap().iter().map(|p| p.cuts()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn block_views() {
        let pi = p(6, &[3]);
        assert_eq!(pi.blocks(), vec![1..=3, 4..=6]);
        assert_eq!(pi.block_sizes(), vec![3, 3]);
        assert_eq!(pi.num_blocks(), 2);
        assert_eq!(pi.to_string(), "(1,2,3)(4,5,6)");
        assert_eq!(IntervalPartition::from_block_sizes(&[1, 2, 1]).unwrap(), p(4, &[1, 3]));
        assert!(IntervalPartition::new(3, [3]).is_err());
        assert!(IntervalPartition::new(3, [0]).is_err());
    }

    #[test]
    fn refinement_examples() {
        let zero = IntervalPartition::zero(3).unwrap();
        let one = IntervalPartition::one(3).unwrap();
        assert!(zero.refines(&p(3, &[2])).unwrap());
        assert!(!p(3, &[2]).refines(&p(3, &[1])).unwrap());
        for pi in enumerate_interval(3).unwrap() {
            assert!(pi.refines(&one).unwrap());
        }
        assert!(zero.refines(&p(4, &[])).is_err());
    }

    #[test]
    fn join_examples() {
        assert!(p(3, &[1]).join_is_top(&p(3, &[2])).unwrap());
        assert!(!p(3, &[1]).join_is_top(&p(3, &[1, 2])).unwrap());
        let one = IntervalPartition::one(4).unwrap();
        for rho in enumerate_interval(4).unwrap() {
            assert!(one.join_is_top(&rho).unwrap());
        }
        assert!(p(3, &[1]).join_is_top(&p(2, &[1])).is_err());
    }

    #[test]
    fn lift_examples() {
        let zero3 = IntervalPartition::zero(3).unwrap();
        let lifted = zero3.lift_matching().unwrap();
        assert_eq!(lifted.cuts(), vec![1, 3]);
        assert_eq!(lifted.blocks(), vec![1..=1, 2..=3, 4..=4]);
        assert_eq!(IntervalPartition::one(4).unwrap().lift_matching().unwrap(), IntervalPartition::one(6).unwrap());
        let lifted = p(4, &[2]).lift_matching().unwrap();
        assert_eq!(lifted.cuts(), vec![3]);
        assert_eq!(lifted.block_sizes(), vec![3, 3]);
        assert_eq!(lifted.num_singletons(), 0);
        assert!(IntervalPartition::one(1).unwrap().lift_matching().is_err());
        assert!(p(4, &[2]).project_matching().is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(!p(3, &[2]).kernel_refines(&[1, 2, 1]).unwrap());
        for pi in enumerate_interval(3).unwrap() {
            assert!(pi.kernel_refines(&[7, 7, 7]).unwrap());
        }
        assert!(p(4, &[1, 3]).kernel_refines(&[1, 2, 2, 1]).unwrap());
        assert!(p(3, &[]).kernel_refines(&[1, 1]).is_err());
    }

    #[test]
    fn closure_examples() {
        let cs = p(6, &[3]).closure_structure();
        assert_eq!(cs.outer, vec![1, 4]);
        assert_eq!(cs.inner, vec![vec![2, 3], vec![5, 6]]);
        let cs = IntervalPartition::zero(5).unwrap().closure_structure();
        assert_eq!(cs.outer, vec![1, 2, 3, 4, 5]);
        assert!(cs.inner.is_empty());
        let cs = IntervalPartition::one(4).unwrap().closure_structure();
        assert_eq!(cs.outer, vec![1]);
        assert_eq!(cs.inner, vec![vec![2, 3, 4]]);
        let segments = p(6, &[3]).closure_structure();
        let segments = segments.segments();
        assert_eq!(segments[0], (1, &[2usize, 3][..]));
        assert_eq!(segments[1], (4, &[5usize, 6][..]));
    }
}
