//! The six conjugates of a quasigroup and the identities that make them equal.
//!
//! A quasigroup is viewed as the triple set `{(x, y, x·y)}`. Each conjugate
//! permutes the three roles (row, column, symbol) of every triple:
//!
//! | index | operation          | role permutation |
//! |-------|--------------------|------------------|
//! | 0     | `x·y`              | identity         |
//! | 1     | `x∘₁y = z ⟺ x·z=y` | (23)             |
//! | 2     | `x∘₂y = z ⟺ z·y=x` | (13)             |
//! | 3     | `x∘₃y = z ⟺ z·x=y` | (132)            |
//! | 4     | `x∘₄y = z ⟺ y·z=x` | (123)            |
//! | 5     | `x∘₅y = z ⟺ y·x=z` | (12)             |

use std::fmt;

use crate::quasigroup::Quasigroup;

/// Names `Q` (0) or one of its conjugates `Q₁..Q₅`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParastropheIndex(u8);

// SOURCES[i][k]: which coordinate of a triple of Q lands in position k of
// the corresponding triple of Q_i.
const SOURCES: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [2, 1, 0],
    [1, 2, 0],
    [2, 0, 1],
    [1, 0, 2],
];

const CYCLE_NOTATION: [&str; 6] = ["()", "(23)", "(13)", "(132)", "(123)", "(12)"];

impl ParastropheIndex {
    pub const IDENTITY: Self = Self(0);
    pub const ALL: [Self; 6] = [Self(0), Self(1), Self(2), Self(3), Self(4), Self(5)];

    pub fn new(index: usize) -> Option<Self> {
        (index < 6).then_some(Self(index as u8))
    }

    pub fn get(self) -> usize {
        usize::from(self.0)
    }

    /// The role permutation in cycle notation on positions 1, 2, 3.
    pub fn sigma(self) -> &'static str {
        CYCLE_NOTATION[self.get()]
    }

    fn sources(self) -> [usize; 3] {
        SOURCES[self.get()]
    }

    /// The index `k` with `(Q_self)_next = Q_k` for every quasigroup.
    pub fn then(self, next: Self) -> Self {
        let (a, b) = (self.sources(), next.sources());
        let composed = [a[b[0]], a[b[1]], a[b[2]]];
        let k = SOURCES
            .iter()
            .position(|s| *s == composed)
            .expect("S3 is closed under composition");
        Self(k as u8)
    }
}

impl fmt::Display for ParastropheIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<usize> for ParastropheIndex {
    type Error = usize;

    fn try_from(value: usize) -> Result<Self, Self::Error> {
        Self::new(value).ok_or(value)
    }
}

/// `compose_parastrophes(i, j) = k` where `(Q_i)_j = Q_k`.
pub fn compose_parastrophes(i: ParastropheIndex, j: ParastropheIndex) -> ParastropheIndex {
    i.then(j)
}

pub fn parastrophe(q: &Quasigroup, index: ParastropheIndex) -> Quasigroup {
    if index == ParastropheIndex::IDENTITY {
        return q.clone();
    }
    let n = q.order();
    let src = index.sources();
    let mut table = vec![0; n * n];
    for t in q.triples() {
        table[t[src[0]] * n + t[src[1]]] = t[src[2]];
    }
    Quasigroup::from_flat(n, table).expect("conjugates of a Latin square are Latin")
}

/// All six conjugates, indexed by `ParastropheIndex::get`.
pub fn parastrophes(q: &Quasigroup) -> [Quasigroup; 6] {
    ParastropheIndex::ALL.map(|i| parastrophe(q, i))
}

/// A partition of the six conjugate indices into blocks.
///
/// Blocks are kept sorted internally and ordered by their smallest member, so
/// two partitions compare equal iff they group the indices identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

/// Blocks of conjugates that are equal as tables.
pub type EqualityPartition = Partition;

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Self {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        blocks.sort();
        Self { blocks }
    }

    /// Groups `0..6` by a label function.
    pub fn from_labels(labels: [usize; 6]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of_label: Vec<(usize, usize)> = Vec::new();
        for (i, label) in labels.into_iter().enumerate() {
            match block_of_label.iter().find(|(l, _)| *l == label) {
                Some(&(_, b)) => blocks[b].push(i),
                None => {
                    block_of_label.push((label, blocks.len()));
                    blocks.push(vec![i]);
                }
            }
        }
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block sizes in non-increasing order.
    pub fn shape(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.blocks
            .iter()
            .any(|blk| blk.contains(&a) && blk.contains(&b))
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|blk| blk.iter().all(|&i| coarser.same_block(blk[0], i)))
    }

    /// Covers exactly `0..6` with disjoint blocks.
    pub fn is_partition_of_six(&self) -> bool {
        let mut seen = [false; 6];
        for &i in self.blocks.iter().flatten() {
            if i >= 6 || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Inverse of the `Display` encoding, e.g. `0|5;1|3;2|4`.
    pub fn parse(s: &str) -> Option<Self> {
        let blocks = s
            .split(';')
            .map(|blk| blk.split('|').map(|m| m.trim().parse().ok()).collect())
            .collect::<Option<Vec<Vec<usize>>>>()?;
        Some(Self::new(blocks))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, blk) in self.blocks.iter().enumerate() {
            if b > 0 {
                f.write_str(";")?;
            }
            for (m, i) in blk.iter().enumerate() {
                if m > 0 {
                    f.write_str("|")?;
                }
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

pub fn equality_partition(q: &Quasigroup) -> EqualityPartition {
    let conj = parastrophes(q);
    let mut labels = [0; 6];
    for i in 0..6 {
        labels[i] = (0..=i).find(|&j| conj[j] == conj[i]).unwrap_or(i);
    }
    Partition::from_labels(labels)
}

/// Identities with all permutations trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlainIdentity {
    /// `x·yx = y`
    XyxLeft,
    /// `xy·x = y`
    XyxRight,
    /// `yx·x = y`
    RightKey,
    /// `x·xy = y`
    LeftKey,
    /// `xy = yx`
    Comm,
}

impl PlainIdentity {
    pub const ALL: [PlainIdentity; 5] = [
        PlainIdentity::XyxLeft,
        PlainIdentity::XyxRight,
        PlainIdentity::RightKey,
        PlainIdentity::LeftKey,
        PlainIdentity::Comm,
    ];

    /// The conjugate that equals `Q` exactly when the identity holds.
    pub fn equal_parastrophe(self) -> ParastropheIndex {
        let i = match self {
            PlainIdentity::XyxLeft => 4,
            PlainIdentity::XyxRight => 3,
            PlainIdentity::RightKey => 2,
            PlainIdentity::LeftKey => 1,
            PlainIdentity::Comm => 5,
        };
        ParastropheIndex(i)
    }

    pub fn formula(self) -> &'static str {
        match self {
            PlainIdentity::XyxLeft => "x·yx=y",
            PlainIdentity::XyxRight => "xy·x=y",
            PlainIdentity::RightKey => "yx·x=y",
            PlainIdentity::LeftKey => "x·xy=y",
            PlainIdentity::Comm => "xy=yx",
        }
    }
}

impl fmt::Display for PlainIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.formula())
    }
}

/// Evaluates the identity pointwise over all `x, y`.
pub fn satisfies_plain_identity(q: &Quasigroup, id: PlainIdentity) -> bool {
    let n = q.order();
    let m = |a, b| q.multiply(a, b);
    let holds = |x: usize, y: usize| match id {
        PlainIdentity::XyxLeft => m(x, m(y, x)) == y,
        PlainIdentity::XyxRight => m(m(x, y), x) == y,
        PlainIdentity::RightKey => m(m(y, x), x) == y,
        PlainIdentity::LeftKey => m(x, m(x, y)) == y,
        PlainIdentity::Comm => m(x, y) == m(y, x),
    };
    (0..n).all(|x| (0..n).all(|y| holds(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{builtin, Fixture};

    fn idx(i: usize) -> ParastropheIndex {
        ParastropheIndex::new(i).unwrap()
    }

    #[test]
    fn index_bounds() {
        assert!(ParastropheIndex::new(6).is_none());
        assert_eq!(ParastropheIndex::try_from(7), Err(7));
        assert_eq!(idx(3).sigma(), "(132)");
    }

    #[test]
    fn composition_table() {
        assert_eq!(compose_parastrophes(idx(1), idx(2)), idx(3));
        assert_eq!(compose_parastrophes(idx(2), idx(1)), idx(4));
        // Q5 = ((Q1)2)1 = ((Q2)1)2
        assert_eq!(idx(1).then(idx(2)).then(idx(1)), idx(5));
        assert_eq!(idx(2).then(idx(1)).then(idx(2)), idx(5));
        for i in ParastropheIndex::ALL {
            assert_eq!(compose_parastrophes(i, ParastropheIndex::IDENTITY), i);
            assert_eq!(compose_parastrophes(ParastropheIndex::IDENTITY, i), i);
        }
    }

    #[test]
    fn definitions_pointwise() {
        let q = builtin(Fixture::PaperQ2, 6).unwrap();
        let c = parastrophes(&q);
        for x in 0..6 {
            for y in 0..6 {
                let z = q.multiply(x, y);
                assert_eq!(c[1].multiply(x, z), y);
                assert_eq!(c[2].multiply(z, y), x);
                assert_eq!(c[3].multiply(y, z), x);
                assert_eq!(c[4].multiply(z, x), y);
                assert_eq!(c[5].multiply(y, x), z);
            }
        }
    }

    #[test]
    fn printed_conjugates_of_the_dloop() {
        let q = builtin(Fixture::PaperDLoop, 6).unwrap();
        assert_eq!(
            parastrophe(&q, idx(1)),
            builtin(Fixture::PaperQ1, 6).unwrap()
        );
        assert_eq!(
            parastrophe(&q, idx(2)),
            builtin(Fixture::PaperQ2, 6).unwrap()
        );
        assert_eq!(parastrophe(&q, idx(5)), q.transpose());
        assert_eq!(parastrophe(&parastrophe(&q, idx(1)), idx(1)), q);
    }

    #[test]
    fn equality_partitions() {
        let boolean = builtin(Fixture::ElementaryAbelian2, 2).unwrap();
        assert_eq!(equality_partition(&boolean).to_string(), "0|1|2|3|4|5");
        let dloop = builtin(Fixture::PaperDLoop, 6).unwrap();
        assert_eq!(equality_partition(&dloop).to_string(), "0|5;1|3;2|4");
        // Z5 is commutative, so Q = Q5 and the conjugates pair up
        let z5 = builtin(Fixture::Cyclic, 5).unwrap();
        let conj = parastrophes(&z5);
        let brute: Vec<(usize, usize)> = (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .filter(|&(i, j)| conj[i].to_rows() == conj[j].to_rows())
            .collect();
        assert_eq!(brute, vec![(0, 5), (1, 3), (2, 4)]);
        assert_eq!(equality_partition(&z5).to_string(), "0|5;1|3;2|4");
    }

    #[test]
    fn plain_identities() {
        let z2 = builtin(Fixture::Cyclic, 2).unwrap();
        let z3 = builtin(Fixture::Cyclic, 3).unwrap();
        let steiner = builtin(Fixture::Steiner3, 3).unwrap();
        assert!(satisfies_plain_identity(&z2, PlainIdentity::LeftKey));
        assert!(!satisfies_plain_identity(&z3, PlainIdentity::LeftKey));
        for id in PlainIdentity::ALL {
            assert!(satisfies_plain_identity(&steiner, id), "{id}");
        }
    }

    #[test]
    fn partition_encoding() {
        let p = Partition::new(vec![vec![4, 2], vec![5, 0], vec![3, 1]]);
        assert_eq!(p.to_string(), "0|5;1|3;2|4");
        assert_eq!(Partition::parse("0|5;1|3;2|4"), Some(p.clone()));
        assert!(p.is_partition_of_six());
        assert_eq!(p.shape(), vec![2, 2, 2]);
        assert!(!Partition::new(vec![vec![0, 1], vec![1, 2, 3, 4, 5]]).is_partition_of_six());
        let coarse = Partition::new(vec![vec![0, 5, 1, 3], vec![2, 4]]);
        assert!(p.refines(&coarse));
        assert!(!coarse.refines(&p));
        assert_eq!(Partition::parse("0|x"), None);
    }
}
