//! Exhaustive enumeration of reduced Latin squares, per-square classification
//! records, and a seeded sampler for larger orders.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{
    classify_type_with, is_dloop, is_group_isotopic, is_ip, isotopy_partition_with, ClassifyError,
    IsotopyPartition, TypeClass,
};
use crate::fixtures::cyclic;
use crate::isotopy::{apply_isotopism, Budget, Isotopism};
use crate::parastrophe::{equality_partition, EqualityPartition};
use crate::quasigroup::Quasigroup;

/// 16,942,080 reduced squares exist at order 7.
pub const MAX_ENUMERATION_ORDER: usize = 6;

pub const CSV_HEADER: &str =
    "order,square_id,type,equality_blocks,isotopy_blocks,intercalates,group_isotopic,dloop,ip";

const CHUNK: usize = 512;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("order {0} is outside 1..={MAX_ENUMERATION_ORDER}")]
    OrderTooLarge(usize),
    #[error("square {square_id}: {source}")]
    Classify {
        square_id: usize,
        #[source]
        source: ClassifyError,
    },
    #[error("square {square_id}: {detail}")]
    Inconsistent { square_id: usize, detail: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Yields every reduced Latin square of order `n` in lexicographic row-major
/// order.
pub fn enumerate_reduced(n: usize) -> Result<ReducedSquares, CensusError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(CensusError::OrderTooLarge(n));
    }
    Ok(ReducedSquares::new(n))
}

pub struct ReducedSquares {
    n: usize,
    grid: Vec<usize>,
    // bit s set: symbol s already used in that row / column
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    // free cells (r >= 1, c >= 1) in row-major order
    cells: Vec<(usize, usize)>,
    placed: Vec<bool>,
    pos: usize,
    started: bool,
    done: bool,
}

impl ReducedSquares {
    fn new(n: usize) -> Self {
        let mut grid = vec![0; n * n];
        let mut row_used = vec![0u32; n];
        let mut col_used = vec![0u32; n];
        for i in 0..n {
            grid[i] = i;
            grid[i * n] = i;
            row_used[i] |= 1 << i;
            col_used[i] |= 1 << i;
        }
        row_used[0] = (1 << n) - 1;
        col_used[0] = (1 << n) - 1;
        let cells: Vec<_> = (1..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
        let placed = vec![false; cells.len()];
        Self {
            n,
            grid,
            row_used,
            col_used,
            cells,
            placed,
            pos: 0,
            started: false,
            done: false,
        }
    }

    /// Moves the value at cell `k` to the next free symbol; false if none.
    fn advance(&mut self, k: usize) -> bool {
        let (r, c) = self.cells[k];
        let idx = r * self.n + c;
        let start = if self.placed[k] {
            let v = self.grid[idx];
            self.row_used[r] &= !(1 << v);
            self.col_used[c] &= !(1 << v);
            v + 1
        } else {
            0
        };
        let used = self.row_used[r] | self.col_used[c];
        match (start..self.n).find(|&v| used & (1 << v) == 0) {
            Some(v) => {
                self.grid[idx] = v;
                self.row_used[r] |= 1 << v;
                self.col_used[c] |= 1 << v;
                self.placed[k] = true;
                true
            }
            None => {
                self.placed[k] = false;
                false
            }
        }
    }

    fn current(&self) -> Quasigroup {
        Quasigroup::from_flat(self.n, self.grid.clone()).expect("completed grid is Latin")
    }
}

impl Iterator for ReducedSquares {
    type Item = Quasigroup;

    fn next(&mut self) -> Option<Quasigroup> {
        if self.done {
            return None;
        }
        let m = self.cells.len();
        if !self.started {
            self.started = true;
            if m == 0 {
                self.done = true;
                return Some(self.current());
            }
        } else {
            // resume from the last cell of the previous solution
            self.pos = m - 1;
        }
        loop {
            if self.advance(self.pos) {
                if self.pos + 1 == m {
                    return Some(self.current());
                }
                self.pos += 1;
            } else if self.pos == 0 {
                self.done = true;
                return None;
            } else {
                self.pos -= 1;
            }
        }
    }
}

/// One classified square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub order: usize,
    pub square_id: usize,
    pub type_class: TypeClass,
    pub equality_blocks: EqualityPartition,
    pub isotopy_blocks: IsotopyPartition,
    pub intercalates: usize,
    pub group_isotopic: bool,
    pub dloop: bool,
    pub ip: bool,
}

impl CensusRecord {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.order,
            self.square_id,
            self.type_class,
            self.equality_blocks,
            self.isotopy_blocks,
            self.intercalates,
            self.group_isotopic,
            self.dloop,
            self.ip
        )
    }

    pub fn from_csv_line(line: &str) -> Option<Self> {
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 9 {
            return None;
        }
        Some(Self {
            order: f[0].parse().ok()?,
            square_id: f[1].parse().ok()?,
            type_class: f[2].parse().ok()?,
            equality_blocks: crate::parastrophe::Partition::parse(f[3])?,
            isotopy_blocks: crate::parastrophe::Partition::parse(f[4])?,
            intercalates: f[5].parse().ok()?,
            group_isotopic: f[6].parse().ok()?,
            dloop: f[7].parse().ok()?,
            ip: f[8].parse().ok()?,
        })
    }

    /// Checks the record against the structural invariants.
    pub fn check(&self) -> Result<(), String> {
        if !self.equality_blocks.is_partition_of_six() || !self.isotopy_blocks.is_partition_of_six()
        {
            return Err("blocks do not partition 0..6".into());
        }
        if !self.equality_blocks.refines(&self.isotopy_blocks) {
            return Err(format!(
                "equality blocks {} do not refine isotopy blocks {}",
                self.equality_blocks, self.isotopy_blocks
            ));
        }
        if self.type_class.expected_partition() != self.isotopy_blocks {
            return Err(format!(
                "type {} predicts {} but isotopy blocks are {}",
                self.type_class,
                self.type_class.expected_partition(),
                self.isotopy_blocks
            ));
        }
        Ok(())
    }
}

pub fn classify_square(
    q: &Quasigroup,
    square_id: usize,
    budget: Budget,
) -> Result<CensusRecord, CensusError> {
    let wrap = |source| CensusError::Classify { square_id, source };
    let record = CensusRecord {
        order: q.order(),
        square_id,
        type_class: classify_type_with(q, budget).map_err(wrap)?,
        equality_blocks: equality_partition(q),
        isotopy_blocks: isotopy_partition_with(q, budget).map_err(wrap)?,
        intercalates: q.intercalate_count(),
        group_isotopic: is_group_isotopic(q),
        dloop: is_dloop(q),
        ip: is_ip(q),
    };
    record
        .check()
        .map_err(|detail| CensusError::Inconsistent { square_id, detail })?;
    Ok(record)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusSummary {
    pub order: usize,
    pub total: usize,
    pub counts: BTreeMap<TypeClass, usize>,
}

impl CensusSummary {
    pub fn count(&self, t: TypeClass) -> usize {
        self.counts.get(&t).copied().unwrap_or(0)
    }
}

impl fmt::Display for CensusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}: {} reduced squares", self.order, self.total)?;
        for t in TypeClass::ALL {
            writeln!(f, "{t}: {}", self.count(t))?;
        }
        Ok(())
    }
}

/// Classifies every reduced square of order `n`, writing one CSV row per
/// square in enumeration order. Classification runs on the rayon pool.
pub fn run_census<W: Write>(n: usize, sink: &mut W) -> Result<CensusSummary, CensusError> {
    run_census_with(n, sink, Budget::default())
}

pub fn run_census_with<W: Write>(
    n: usize,
    sink: &mut W,
    budget: Budget,
) -> Result<CensusSummary, CensusError> {
    let mut squares = enumerate_reduced(n)?.enumerate();
    writeln!(sink, "{CSV_HEADER}")?;
    let mut summary = CensusSummary {
        order: n,
        total: 0,
        counts: BTreeMap::new(),
    };
    loop {
        let chunk: Vec<(usize, Quasigroup)> = squares.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let records = chunk
            .par_iter()
            .map(|(id, q)| classify_square(q, *id, budget))
            .collect::<Result<Vec<_>, _>>()?;
        for r in records {
            writeln!(sink, "{}", r.to_csv_line())?;
            *summary.counts.entry(r.type_class).or_insert(0) += 1;
            summary.total += 1;
        }
    }
    sink.flush()?;
    Ok(summary)
}

/// Deterministic, non-uniform random quasigroup: a seeded isotope of `Z_n`
/// followed by `n³` random intercalate flips (while any intercalate exists).
pub fn random_quasigroup(n: usize, seed: u64) -> Quasigroup {
    assert!(n >= 1, "order must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iso = Isotopism::random(n, &mut rng);
    let mut q = apply_isotopism(&iso, &cyclic(n)).expect("degrees match");
    for _ in 0..n * n * n {
        let found = intercalates(&q);
        if found.is_empty() {
            break;
        }
        let [r1, r2, c1, c2] = found[rng.random_range(0..found.len())];
        let mut table = q.as_flat().to_vec();
        table.swap(r1 * n + c1, r1 * n + c2);
        table.swap(r2 * n + c1, r2 * n + c2);
        q = Quasigroup::from_flat(n, table).expect("intercalate flip keeps the square Latin");
    }
    q
}

// [r1, r2, c1, c2] with r1 < r2, c1 < c2
fn intercalates(q: &Quasigroup) -> Vec<[usize; 4]> {
    let n = q.order();
    let mut out = Vec::new();
    for r1 in 0..n {
        for r2 in r1 + 1..n {
            for c1 in 0..n {
                let c2 = q.left_divide(r1, q.multiply(r2, c1));
                if c2 > c1 && q.multiply(r2, c2) == q.multiply(r1, c1) {
                    out.push([r1, r2, c1, c2]);
                }
            }
        }
    }
    out
}
