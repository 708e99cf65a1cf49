//! Classification of quasigroups by how their six conjugates fall into
//! isotopy classes, together with the special classes that force a type.
//!
//! Five anti-isotopy tests `Q∼Q, Q∼Q₁, .., Q∼Q₄` decide the type:
//!
//! | type | isotopy classes                         | true relations     |
//! |------|-----------------------------------------|--------------------|
//! | A    | `{0,1,2,3,4,5}`                         | all five           |
//! | B    | `{0,3,4} {1,2,5}`                       | `Q∼Q₁`, `Q∼Q₂`     |
//! | C    | `{0,2} {1,4} {3,5}`                     | `Q∼Q₃`             |
//! | D    | `{0,1} {2,3} {4,5}`                     | `Q∼Q₄`             |
//! | E    | `{0,5} {1,3} {2,4}`                     | `Q∼Q`              |
//! | F    | six singletons                          | none               |

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::isotopy::{find_anti_isotopism_with, find_isotopism_with, Budget, IsotopyError};
use crate::parastrophe::{
    parastrophe, parastrophes, satisfies_plain_identity, ParastropheIndex, Partition, PlainIdentity,
};
use crate::quasigroup::Quasigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("anti-isotopy relations {0:?} match no type")]
    InconsistentRelations([bool; 5]),
    #[error(transparent)]
    Isotopy(#[from] IsotopyError),
}

/// Blocks of mutually isotopic conjugates.
pub type IsotopyPartition = Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeClass {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl TypeClass {
    pub const ALL: [TypeClass; 6] = [
        TypeClass::A,
        TypeClass::B,
        TypeClass::C,
        TypeClass::D,
        TypeClass::E,
        TypeClass::F,
    ];

    /// Maps `[Q∼Q, Q∼Q₁, Q∼Q₂, Q∼Q₃, Q∼Q₄]` to a type.
    pub fn from_relations(rel: [bool; 5]) -> Result<Self, ClassifyError> {
        let t = match rel {
            [true, true, true, true, true] => TypeClass::A,
            [false, true, true, false, false] => TypeClass::B,
            [false, false, false, true, false] => TypeClass::C,
            [false, false, false, false, true] => TypeClass::D,
            [true, false, false, false, false] => TypeClass::E,
            [false, false, false, false, false] => TypeClass::F,
            _ => return Err(ClassifyError::InconsistentRelations(rel)),
        };
        Ok(t)
    }

    pub fn expected_partition(self) -> Partition {
        let blocks: &[&[usize]] = match self {
            TypeClass::A => &[&[0, 1, 2, 3, 4, 5]],
            TypeClass::B => &[&[0, 3, 4], &[1, 2, 5]],
            TypeClass::C => &[&[0, 2], &[1, 4], &[3, 5]],
            TypeClass::D => &[&[0, 1], &[2, 3], &[4, 5]],
            TypeClass::E => &[&[0, 5], &[1, 3], &[2, 4]],
            TypeClass::F => &[&[0], &[1], &[2], &[3], &[4], &[5]],
        };
        Partition::new(blocks.iter().map(|b| b.to_vec()).collect())
    }

    pub fn class_count(self) -> usize {
        match self {
            TypeClass::A => 1,
            TypeClass::B => 2,
            TypeClass::C | TypeClass::D | TypeClass::E => 3,
            TypeClass::F => 6,
        }
    }

    /// Which permuted identities hold for a quasigroup of this type.
    pub fn permuted_identities(self) -> [bool; 5] {
        use PermutedIdentity::*;
        let holds = |id: PermutedIdentity| match self {
            TypeClass::A => true,
            TypeClass::B => matches!(id, I1 | I2),
            TypeClass::C => id == I3,
            TypeClass::D => id == I4,
            TypeClass::E => id == I5,
            TypeClass::F => false,
        };
        PermutedIdentity::ALL.map(holds)
    }

    pub fn letter(self) -> char {
        match self {
            TypeClass::A => 'A',
            TypeClass::B => 'B',
            TypeClass::C => 'C',
            TypeClass::D => 'D',
            TypeClass::E => 'E',
            TypeClass::F => 'F',
        }
    }
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for TypeClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TypeClass::ALL
            .into_iter()
            .find(|t| t.letter().to_string() == s)
            .ok_or_else(|| format!("unknown type {s:?}"))
    }
}

fn idx(i: usize) -> ParastropheIndex {
    ParastropheIndex::new(i).expect("index below 6")
}

/// `[Q∼Q, Q∼Q₁, Q∼Q₂, Q∼Q₃, Q∼Q₄]`.
pub fn anti_isotopy_relations(q: &Quasigroup, budget: Budget) -> Result<[bool; 5], ClassifyError> {
    let mut rel = [false; 5];
    for (i, r) in rel.iter_mut().enumerate() {
        let qi = parastrophe(q, idx(i));
        *r = find_anti_isotopism_with(q, &qi, budget)?.is_some();
    }
    Ok(rel)
}

pub fn classify_type(q: &Quasigroup) -> Result<TypeClass, ClassifyError> {
    classify_type_with(q, Budget::default())
}

pub fn classify_type_with(q: &Quasigroup, budget: Budget) -> Result<TypeClass, ClassifyError> {
    TypeClass::from_relations(anti_isotopy_relations(q, budget)?)
}

pub fn isotopy_partition(q: &Quasigroup) -> Result<IsotopyPartition, ClassifyError> {
    isotopy_partition_with(q, Budget::default())
}

/// Pairwise isotopy tests over all six conjugates, merged with union-find.
pub fn isotopy_partition_with(
    q: &Quasigroup,
    budget: Budget,
) -> Result<IsotopyPartition, ClassifyError> {
    let conj = parastrophes(q);
    let mut sets = DisjointSets::new(6);
    for i in 0..6 {
        for j in i + 1..6 {
            if sets.find(i) == sets.find(j) {
                continue;
            }
            if find_isotopism_with(&conj[i], &conj[j], budget)?.is_some() {
                sets.union(i, j);
            }
        }
    }
    let labels = std::array::from_fn(|i| sets.find(i));
    Ok(Partition::from_labels(labels))
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Identities with arbitrary permutations `α_i, β_i, γ_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PermutedIdentity {
    /// `α(x)·β(yx) = γ(y)`
    I1,
    /// `β(xy)·α(x) = γ(y)`
    I2,
    /// `β(yx)·α(x) = γ(y)`
    I3,
    /// `α(x)·β(xy) = γ(y)`
    I4,
    /// `β(xy) = γ(y)·α(x)`
    I5,
}

impl PermutedIdentity {
    pub const ALL: [PermutedIdentity; 5] = [
        PermutedIdentity::I1,
        PermutedIdentity::I2,
        PermutedIdentity::I3,
        PermutedIdentity::I4,
        PermutedIdentity::I5,
    ];

    /// The `i` with: identity holds ⟺ `Q ≈ Q_i`.
    pub fn isotopic_parastrophe(self) -> ParastropheIndex {
        idx(match self {
            PermutedIdentity::I1 => 3,
            PermutedIdentity::I2 => 4,
            PermutedIdentity::I3 => 2,
            PermutedIdentity::I4 => 1,
            PermutedIdentity::I5 => 5,
        })
    }

    /// The `i` with: identity holds ⟺ `Q_i ∼ Q`.
    pub fn anti_isotopic_parastrophe(self) -> ParastropheIndex {
        idx(match self {
            PermutedIdentity::I1 => 1,
            PermutedIdentity::I2 => 2,
            PermutedIdentity::I3 => 3,
            PermutedIdentity::I4 => 4,
            PermutedIdentity::I5 => 0,
        })
    }

    pub fn formula(self) -> &'static str {
        match self {
            PermutedIdentity::I1 => "α(x)·β(yx)=γ(y)",
            PermutedIdentity::I2 => "β(xy)·α(x)=γ(y)",
            PermutedIdentity::I3 => "β(yx)·α(x)=γ(y)",
            PermutedIdentity::I4 => "α(x)·β(xy)=γ(y)",
            PermutedIdentity::I5 => "β(xy)=γ(y)·α(x)",
        }
    }
}

impl fmt::Display for PermutedIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.formula())
    }
}

pub fn satisfies_permuted_identity(
    q: &Quasigroup,
    id: PermutedIdentity,
) -> Result<bool, ClassifyError> {
    satisfies_permuted_identity_with(q, id, Budget::default())
}

/// Decided as isotopy between `Q` and the matching conjugate.
pub fn satisfies_permuted_identity_with(
    q: &Quasigroup,
    id: PermutedIdentity,
    budget: Budget,
) -> Result<bool, ClassifyError> {
    let qi = parastrophe(q, id.isotopic_parastrophe());
    Ok(find_isotopism_with(q, &qi, budget)?.is_some())
}

/// Type letter predicted from the plain identities; it names the shape of the
/// equality partition. `None` if the identities hold in an impossible pattern.
pub fn plain_identity_class(q: &Quasigroup) -> Option<TypeClass> {
    use PlainIdentity::*;
    let holds = |id| satisfies_plain_identity(q, id);
    // x·yx=y and xy·x=y always agree; either stands for the pair.
    let pair = holds(XyxLeft);
    if pair != holds(XyxRight) {
        return None;
    }
    TypeClass::from_relations([holds(Comm), pair, pair, holds(RightKey), holds(LeftKey)]).ok()
}

/// Inverse property: every left translation has its inverse among the left
/// translations, and likewise for right translations.
pub fn is_ip(q: &Quasigroup) -> bool {
    let n = q.order();
    let rows: Vec<Vec<usize>> = (0..n).map(|x| q.row(x).to_vec()).collect();
    let cols: Vec<Vec<usize>> = (0..n).map(|y| q.column(y)).collect();
    let closed = |maps: &[Vec<usize>]| {
        maps.iter().all(|m| {
            let mut inv = vec![0; n];
            for (a, &b) in m.iter().enumerate() {
                inv[b] = a;
            }
            maps.contains(&inv)
        })
    };
    closed(&rows) && closed(&cols)
}

/// Loop with two-sided inverses satisfying `(xy)⁻¹ = y⁻¹x⁻¹`.
pub fn is_dloop(q: &Quasigroup) -> bool {
    let Some(e) = q.identity_element() else {
        return false;
    };
    let n = q.order();
    let mut inv = vec![0; n];
    for (x, slot) in inv.iter_mut().enumerate() {
        let right = q.left_divide(x, e);
        let left = q.right_divide(e, x);
        if left != right {
            return false;
        }
        *slot = right;
    }
    (0..n).all(|x| (0..n).all(|y| inv[q.multiply(x, y)] == q.multiply(inv[y], inv[x])))
}

/// Principal loop isotope `x∘y = (x/b)·(a\y)` for `a = b = 0`.
pub fn principal_isotope(q: &Quasigroup) -> Quasigroup {
    let n = q.order();
    let table = (0..n)
        .flat_map(|x| (0..n).map(move |y| q.multiply(q.right_divide(x, 0), q.left_divide(0, y))))
        .collect();
    Quasigroup::from_flat(n, table).expect("isotopes of a Latin square are Latin")
}

pub fn is_associative(q: &Quasigroup) -> bool {
    let n = q.order();
    let m = |a, b| q.multiply(a, b);
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| m(m(x, y), z) == m(x, m(y, z)))))
}

/// A quasigroup is isotopic to a group iff one (equivalently every) principal
/// loop isotope is associative.
pub fn is_group_isotopic(q: &Quasigroup) -> bool {
    is_associative(&principal_isotope(q))
}
