//! Partitions of a labelled ground set, kept in canonical form.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total map between point labels.
pub type PointMap = BTreeMap<String, String>;

/// A partition of a finite set of labels.
///
/// Always canonical: the ground set is sorted, every block is sorted and
/// blocks are ordered by their least element. Equality is therefore
/// structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    ground: Vec<String>,
    blocks: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct RawPartition {
    ground: Vec<String>,
    blocks: Vec<Vec<String>>,
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPartition::deserialize(d)?;
        Partition::new(raw.ground, raw.blocks).map_err(serde::de::Error::custom)
    }
}

impl Partition {
    /// Builds a partition, checking that `blocks` are non-empty, pairwise
    /// disjoint and cover `ground` exactly.
    pub fn new(ground: Vec<String>, blocks: Vec<Vec<String>>) -> Result<Self> {
        let ground_set: BTreeSet<String> = ground.iter().cloned().collect();
        if ground_set.len() != ground.len() {
            let mut seen = BTreeSet::new();
            for g in &ground {
                if !seen.insert(g) {
                    return Err(Error::DuplicateLabel(g.clone()));
                }
            }
        }
        let mut covered = BTreeSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for x in block {
                if !ground_set.contains(x) {
                    return Err(Error::UnknownLabel(x.clone()));
                }
                if !covered.insert(x.clone()) {
                    return Err(Error::DuplicateLabel(x.clone()));
                }
            }
        }
        if covered.len() != ground_set.len() {
            let missing = ground_set.difference(&covered).next().unwrap();
            return Err(Error::InvalidArgument(format!(
                "label `{missing}` is not covered by any block"
            )));
        }
        Ok(Self::canonical(ground, blocks))
    }

    fn canonical(mut ground: Vec<String>, mut blocks: Vec<Vec<String>>) -> Self {
        ground.sort();
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort_by(|a, b| a[0].cmp(&b[0]));
        Self { ground, blocks }
    }

    /// Builds a partition from groups of indices into `labels`. The groups
    /// must already form a partition of `0..labels.len()`.
    pub(crate) fn from_index_groups(labels: &[String], groups: &[Vec<usize>]) -> Self {
        let blocks = groups
            .iter()
            .map(|g| g.iter().map(|&i| labels[i].clone()).collect())
            .collect();
        Self::canonical(labels.to_vec(), blocks)
    }

    pub fn singletons(labels: &[String]) -> Self {
        let blocks = labels.iter().map(|l| vec![l.clone()]).collect();
        Self::canonical(labels.to_vec(), blocks)
    }

    pub fn one_block(labels: &[String]) -> Self {
        let blocks = if labels.is_empty() {
            Vec::new()
        } else {
            vec![labels.to_vec()]
        };
        Self::canonical(labels.to_vec(), blocks)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_single_block(&self) -> bool {
        self.blocks.len() <= 1
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.ground.len()
    }

    /// Map from each label to the index of its block.
    pub fn block_index(&self) -> BTreeMap<&str, usize> {
        let mut out = BTreeMap::new();
        for (i, b) in self.blocks.iter().enumerate() {
            for x in b {
                out.insert(x.as_str(), i);
            }
        }
        out
    }

    pub fn same_block(&self, a: &str, b: &str) -> bool {
        self.blocks
            .iter()
            .any(|blk| blk.iter().any(|x| x == a) && blk.iter().any(|x| x == b))
    }

    /// `true` iff every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        if self.ground != coarser.ground {
            return Err(Error::GroundMismatch);
        }
        let idx = coarser.block_index();
        Ok(self.blocks.iter().all(|b| {
            let first = idx[b[0].as_str()];
            b.iter().all(|x| idx[x.as_str()] == first)
        }))
    }

    /// Partition of `f`'s domain whose blocks are the non-empty preimages
    /// `f^{-1}(B)` of the blocks of `self`.
    pub fn pullback(&self, f: &PointMap) -> Result<Partition> {
        let idx = self.block_index();
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (x, y) in f {
            let b = *idx
                .get(y.as_str())
                .ok_or_else(|| Error::UnknownLabel(y.clone()))?;
            groups.entry(b).or_default().push(x.clone());
        }
        let ground = f.keys().cloned().collect();
        Ok(Self::canonical(ground, groups.into_values().collect()))
    }

    /// Renames every label through `rename`, which must be injective on the
    /// ground set.
    pub fn relabel(&self, rename: &PointMap) -> Result<Partition> {
        let map = |x: &String| {
            rename
                .get(x)
                .cloned()
                .ok_or_else(|| Error::UnknownLabel(x.clone()))
        };
        let ground = self.ground.iter().map(map).collect::<Result<Vec<_>>>()?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(map).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Partition::new(ground, blocks)
    }
}

/// Free-function form of [`Partition::refines`].
pub fn refines(p: &Partition, q: &Partition) -> Result<bool> {
    p.refines(q)
}

/// Free-function form of [`Partition::pullback`].
pub fn pullback_partition(f: &PointMap, target: &Partition) -> Result<Partition> {
    target.pullback(f)
}
