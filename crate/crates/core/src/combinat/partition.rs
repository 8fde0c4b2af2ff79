use std::fmt;

use crate::{Error, Result};

/// Largest ground set for which partitions are enumerated (Bell(12) = 4 213 597).
pub const MAX_PARTITION_SIZE: usize = 12;

/// A set partition of `{1, …, size}` in canonical form: every block sorted,
/// blocks ordered by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    size: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalises `blocks` as a partition of `{1, …, size}`.
    pub fn new(size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; size + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::domain("set partition with an empty block"));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > size {
                    return Err(Error::domain(format!("element {x} outside 1..={size}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::domain(format!("element {x} appears in two blocks")));
                }
            }
        }
        if let Some(missing) = (1..=size).find(|&x| !seen[x]) {
            return Err(Error::domain(format!("element {missing} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { size, blocks })
    }

    /// The one-block partition `{{1, …, size}}`.
    pub fn coarsest(size: usize) -> Self {
        SetPartition {
            size,
            blocks: if size == 0 { vec![] } else { vec![(1..=size).collect()] },
        }
    }

    /// The all-singletons partition.
    pub fn finest(size: usize) -> Self {
        SetPartition {
            size,
            blocks: (1..=size).map(|x| vec![x]).collect(),
        }
    }

    /// Builds the partition from a restricted growth string (`rgs[i]` is the
    /// block label of element `i + 1`, labels in order of first appearance).
    pub(crate) fn from_rgs(rgs: &[usize]) -> Self {
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &label) in rgs.iter().enumerate() {
            blocks[label].push(i + 1);
        }
        SetPartition { size: rgs.len(), blocks }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn contains_block(&self, block: &[usize]) -> bool {
        self.blocks.iter().any(|b| b == block)
    }

    /// Canonical byte encoding, e.g. `{1,2}{3}`.
    pub fn encode(&self) -> String {
        self.blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(ToString::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect()
    }

    /// Block label of each element (index 0 unused).
    fn labels(&self) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.size + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                labels[x] = i;
            }
        }
        labels
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.encode())
    }
}

/// Streams the partitions of `{1, …, size}` in restricted-growth-string order.
pub struct SetPartitions {
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[0..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(size: usize) -> Self {
        SetPartitions {
            rgs: vec![0; size],
            prefix_max: vec![0; size],
            started: false,
            done: false,
        }
    }

    /// Advances to the next restricted growth string; false when exhausted.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }

    /// Calls `visit(rgs, block_count)` for every partition without allocating.
    pub(crate) fn for_each_rgs(size: usize, mut visit: impl FnMut(&[usize], usize)) {
        let mut it = SetPartitions::new(size);
        while it.advance() {
            let blocks = it.prefix_max.last().map_or(0, |m| m + 1);
            visit(&it.rgs, blocks);
        }
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        if self.advance() {
            Some(SetPartition::from_rgs(&self.rgs))
        } else {
            self.done = true;
            None
        }
    }
}

pub(crate) fn guard_size(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::SizeGuard {
            what,
            value: value as u64,
            limit: limit as u64,
        })
    } else {
        Ok(())
    }
}

/// Every partition of `{1, …, b}`, canonical and duplicate free.
pub fn enumerate_partitions(b: usize) -> Result<Vec<SetPartition>> {
    if b == 0 {
        return Err(Error::SizeGuard {
            what: "partition ground set size",
            value: 0,
            limit: MAX_PARTITION_SIZE as u64,
        });
    }
    guard_size("partition ground set size", b, MAX_PARTITION_SIZE)?;
    Ok(SetPartitions::new(b).collect())
}

/// `ν ≤ λ`: every block of `ν` lies inside a block of `λ`.
pub fn refines(nu: &SetPartition, lambda: &SetPartition) -> Result<bool> {
    if nu.size != lambda.size {
        return Err(Error::domain(format!(
            "partitions of different ground sets ({} vs {})",
            nu.size, lambda.size
        )));
    }
    let labels = lambda.labels();
    Ok(nu
        .blocks
        .iter()
        .all(|b| b.iter().all(|&x| labels[x] == labels[b[0]])))
}

/// Number of blocks of `ν` whose union is the block `τ` of `λ`.
pub fn multiplicity(nu: &SetPartition, lambda: &SetPartition, tau: &[usize]) -> Result<usize> {
    if !refines(nu, lambda)? {
        return Err(Error::domain(format!("{nu} does not refine {lambda}")));
    }
    let mut tau = tau.to_vec();
    tau.sort_unstable();
    if !lambda.contains_block(&tau) {
        return Err(Error::domain(format!("{tau:?} is not a block of {lambda}")));
    }
    Ok(nu
        .blocks
        .iter()
        .filter(|b| tau.binary_search(&b[0]).is_ok())
        .count())
}

/// All refinements of `α` with exactly `i` more blocks, sorted canonically.
pub fn cuts(alpha: &SetPartition, i: usize) -> Vec<SetPartition> {
    // For each block: its partitions, indexed by the number of extra blocks they add.
    let per_block: Vec<Vec<Vec<Vec<Vec<usize>>>>> = alpha
        .blocks
        .iter()
        .map(|block| {
            let mut by_extra = vec![Vec::new(); block.len()];
            for sub in SetPartitions::new(block.len()) {
                let mapped: Vec<Vec<usize>> = sub
                    .blocks
                    .iter()
                    .map(|b| b.iter().map(|&x| block[x - 1]).collect())
                    .collect();
                by_extra[sub.len() - 1].push(mapped);
            }
            by_extra
        })
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    distribute_cuts(&per_block, 0, i, &mut chosen, alpha.size, &mut out);
    out.sort();
    out
}

fn distribute_cuts(
    per_block: &[Vec<Vec<Vec<Vec<usize>>>>],
    idx: usize,
    remaining: usize,
    chosen: &mut Vec<Vec<usize>>,
    size: usize,
    out: &mut Vec<SetPartition>,
) {
    if idx == per_block.len() {
        if remaining == 0 {
            let mut blocks = chosen.clone();
            blocks.sort_unstable_by_key(|b| b[0]);
            out.push(SetPartition { size, blocks });
        }
        return;
    }
    let options = &per_block[idx];
    for extra in 0..options.len().min(remaining + 1) {
        for sub in &options[extra] {
            let mark = chosen.len();
            chosen.extend(sub.iter().cloned());
            distribute_cuts(per_block, idx + 1, remaining - extra, chosen, size, out);
            chosen.truncate(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(size: usize, blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(size, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    /// Bell numbers from the Bell triangle, independent of enumeration.
    fn bell_triangle(n: usize) -> u64 {
        let mut row = vec![1u64];
        for _ in 1..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let last = *next.last().unwrap();
                next.push(last + x);
            }
            row = next;
        }
        *row.last().unwrap()
    }

    #[test]
    fn three_element_partitions() {
        let parts = enumerate_partitions(3).unwrap();
        let expected = [
            sp(3, &[&[1, 2, 3]]),
            sp(3, &[&[1, 2], &[3]]),
            sp(3, &[&[1, 3], &[2]]),
            sp(3, &[&[2, 3], &[1]]),
            sp(3, &[&[1], &[2], &[3]]),
        ];
        assert_eq!(parts.len(), 5);
        for e in &expected {
            assert!(parts.contains(e), "missing {e}");
        }
    }

    #[test]
    fn single_element() {
        assert_eq!(enumerate_partitions(1).unwrap(), vec![sp(1, &[&[1]])]);
    }

    #[test]
    fn counts_match_bell_triangle() {
        assert_eq!(enumerate_partitions(6).unwrap().len(), 203);
        for b in 1..=8 {
            let parts = enumerate_partitions(b).unwrap();
            assert_eq!(parts.len() as u64, bell_triangle(b), "b = {b}");
            let mut enc: Vec<String> = parts.iter().map(SetPartition::encode).collect();
            enc.sort();
            enc.dedup();
            assert_eq!(enc.len(), parts.len(), "duplicates at b = {b}");
        }
    }

    #[test]
    fn size_guard() {
        assert!(matches!(enumerate_partitions(13), Err(Error::SizeGuard { .. })));
        assert!(matches!(enumerate_partitions(0), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = SetPartition::new(4, vec![vec![4, 2], vec![3, 1]]).unwrap();
        let b = SetPartition::new(4, vec![vec![1, 3], vec![2, 4]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.encode(), "{1,3}{2,4}");
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2, 3], vec![]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2, 4]]).is_err());
    }

    #[test]
    fn refinement_examples() {
        let nu = sp(6, &[&[1, 2], &[3], &[4], &[5], &[6]]);
        let lambda = sp(6, &[&[1, 2, 3], &[4, 5, 6]]);
        assert!(refines(&nu, &lambda).unwrap());
        assert!(refines(&lambda, &lambda).unwrap());
        assert!(!refines(&sp(3, &[&[1, 3], &[2]]), &sp(3, &[&[1, 2], &[3]])).unwrap());
        assert!(refines(&sp(2, &[&[1, 2]]), &sp(3, &[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let nu = sp(6, &[&[1, 2], &[3], &[4], &[5], &[6]]);
        let lambda = sp(6, &[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(multiplicity(&nu, &lambda, &[1, 2, 3]).unwrap(), 2);
        assert_eq!(multiplicity(&nu, &lambda, &[4, 5, 6]).unwrap(), 3);
        assert_eq!(multiplicity(&lambda, &lambda, &[4, 5, 6]).unwrap(), 1);
        assert!(multiplicity(&nu, &lambda, &[1, 2]).is_err());
        assert!(multiplicity(&lambda, &nu, &[1, 2]).is_err());
    }

    #[test]
    fn refinement_is_a_partial_order() {
        for b in 1..=5 {
            let all = enumerate_partitions(b).unwrap();
            for x in &all {
                assert!(refines(x, x).unwrap());
                for y in &all {
                    let xy = refines(x, y).unwrap();
                    if xy && refines(y, x).unwrap() {
                        assert_eq!(x, y);
                    }
                    if !xy {
                        continue;
                    }
                    for z in &all {
                        if refines(y, z).unwrap() {
                            assert!(refines(x, z).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cut_examples() {
        let alpha = sp(5, &[&[1, 2], &[3, 4, 5]]);
        let beta = sp(5, &[&[1], &[2], &[4], &[3, 5]]);
        assert!(cuts(&alpha, 2).contains(&beta));
        assert_eq!(cuts(&alpha, 0), vec![alpha.clone()]);
        assert_eq!(cuts(&SetPartition::coarsest(4), 1).len(), 7);
        assert!(cuts(&alpha, 4).is_empty());
    }

    #[test]
    fn cuts_agree_with_filtered_enumeration() {
        for b in 1..=6 {
            let all = enumerate_partitions(b).unwrap();
            for alpha in all.iter().step_by(7) {
                for i in 0..b {
                    let mut brute: Vec<SetPartition> = all
                        .iter()
                        .filter(|beta| beta.len() == alpha.len() + i && refines(beta, alpha).unwrap())
                        .cloned()
                        .collect();
                    brute.sort();
                    assert_eq!(cuts(alpha, i), brute, "alpha = {alpha}, i = {i}");
                }
            }
        }
    }
}
