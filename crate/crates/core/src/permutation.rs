use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("image {image} out of range for degree {degree}")]
    OutOfRange { image: usize, degree: usize },
    #[error("image {0} occurs more than once")]
    Repeated(usize),
}

/// A bijection on `{0..n-1}`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, PermutationError> {
        let degree = map.len();
        let mut seen = vec![false; degree];
        for &image in &map {
            if image >= degree {
                return Err(PermutationError::OutOfRange { image, degree });
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(PermutationError::Repeated(image));
            }
        }
        Ok(Self { map })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            map: (0..degree).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..degree).collect();
        map.shuffle(rng);
        Self { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Self { map: inv }
    }

    /// `self` first, then `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        }
    }

    /// Cycle lengths in non-increasing order; fixed points count as 1-cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        cycle_type_of(&self.map)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

pub(crate) fn cycle_type_of(map: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; map.len()];
    let mut lengths = Vec::new();
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = map[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::new(vec![0, 3, 1]),
            Err(PermutationError::OutOfRange {
                image: 3,
                degree: 3
            })
        );
        assert_eq!(
            Permutation::new(vec![1, 1, 0]),
            Err(PermutationError::Repeated(1))
        );
    }

    #[test]
    fn inverse_and_composition() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
        let q = Permutation::new(vec![1, 0, 2, 3]).unwrap();
        let pq = p.then(&q);
        for x in 0..4 {
            assert_eq!(pq.apply(x), q.apply(p.apply(x)));
        }
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(3).cycle_type(), vec![1, 1, 1]);
        assert_eq!(
            Permutation::new(vec![1, 2, 0, 4, 3, 5])
                .unwrap()
                .cycle_type(),
            vec![3, 2, 1]
        );
        assert!(Permutation::identity(0).cycle_type().is_empty());
    }
}
