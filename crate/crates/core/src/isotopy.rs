//! Isotopy and anti-isotopy between quasigroups of equal order.
//!
//! `find_isotopism` is a backtracking search over the row map `α` with the
//! column map `β` and symbol map `γ` forced by propagation through the
//! relation `P[α(x)][β(y)] = γ(Q[x][y])`. Anti-isotopy is always reduced to
//! isotopy onto the transpose.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::parastrophe::{parastrophe, ParastropheIndex};
use crate::permutation::{cycle_type_of, Permutation, PermutationError};
use crate::quasigroup::Quasigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsotopyError {
    #[error("permutation degree {found} does not match quasigroup order {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("order {order} exceeds the solver bound {bound}")]
    BudgetExceeded { order: usize, bound: usize },
}

/// Largest order the solver will attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_order: usize,
}

impl Budget {
    pub const DEFAULT_MAX_ORDER: usize = 8;

    pub fn new(max_order: usize) -> Self {
        Self { max_order }
    }

    fn check(self, order: usize) -> Result<(), IsotopyError> {
        if order > self.max_order {
            Err(IsotopyError::BudgetExceeded {
                order,
                bound: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MAX_ORDER)
    }
}

/// A triple `(α, β, γ)`. As an isotopism `Q → P` it satisfies
/// `α(x)∘β(y) = γ(x·y)`; as an anti-isotopism, `α(x)∘β(y) = γ(y·x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isotopism {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
}

impl Isotopism {
    pub fn new(
        alpha: Permutation,
        beta: Permutation,
        gamma: Permutation,
    ) -> Result<Self, IsotopyError> {
        let expected = alpha.degree();
        for p in [&beta, &gamma] {
            if p.degree() != expected {
                return Err(IsotopyError::DegreeMismatch {
                    expected,
                    found: p.degree(),
                });
            }
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn identity(degree: usize) -> Self {
        let id = Permutation::identity(degree);
        Self {
            alpha: id.clone(),
            beta: id.clone(),
            gamma: id,
        }
    }

    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        Self {
            alpha: Permutation::random(degree, rng),
            beta: Permutation::random(degree, rng),
            gamma: Permutation::random(degree, rng),
        }
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_identity() && self.beta.is_identity() && self.gamma.is_identity()
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.inverse(),
            beta: self.beta.inverse(),
            gamma: self.gamma.inverse(),
        }
    }

    /// `self` first, then `next`, componentwise.
    pub fn then(&self, next: &Self) -> Self {
        Self {
            alpha: self.alpha.then(&next.alpha),
            beta: self.beta.then(&next.beta),
            gamma: self.gamma.then(&next.gamma),
        }
    }

    /// Checks `α(x)∘β(y) = γ(x·y)` at every cell.
    pub fn is_isotopism(&self, q: &Quasigroup, p: &Quasigroup) -> bool {
        self.check(q, p, false)
    }

    /// Checks `α(x)∘β(y) = γ(y·x)` at every cell.
    pub fn is_anti_isotopism(&self, q: &Quasigroup, p: &Quasigroup) -> bool {
        self.check(q, p, true)
    }

    fn check(&self, q: &Quasigroup, p: &Quasigroup, anti: bool) -> bool {
        let n = q.order();
        if p.order() != n || self.degree() != n {
            return false;
        }
        (0..n).all(|x| {
            (0..n).all(|y| {
                let qxy = if anti {
                    q.multiply(y, x)
                } else {
                    q.multiply(x, y)
                };
                p.multiply(self.alpha.apply(x), self.beta.apply(y)) == self.gamma.apply(qxy)
            })
        })
    }
}

impl fmt::Display for Isotopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha: {}", self.alpha)?;
        writeln!(f, "beta: {}", self.beta)?;
        writeln!(f, "gamma: {}", self.gamma)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessParseError {
    #[error("expected a line starting with `{0}:`")]
    MissingLine(&'static str),
    #[error("bad image {0:?}")]
    BadImage(String),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error(transparent)]
    Isotopy(#[from] IsotopyError),
}

impl FromStr for Isotopism {
    type Err = WitnessParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut next = |key: &'static str| -> Result<Permutation, WitnessParseError> {
            let rest = lines
                .next()
                .and_then(|l| l.strip_prefix(key))
                .and_then(|l| l.strip_prefix(':'))
                .ok_or(WitnessParseError::MissingLine(key))?;
            let map = rest
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| WitnessParseError::BadImage(t.into())))
                .collect::<Result<Vec<usize>, _>>()?;
            Ok(Permutation::new(map)?)
        };
        let alpha = next("alpha")?;
        let beta = next("beta")?;
        let gamma = next("gamma")?;
        Ok(Isotopism::new(alpha, beta, gamma)?)
    }
}

/// Returns `P` with `P[α(x)][β(y)] = γ(Q[x][y])`.
pub fn apply_isotopism(iso: &Isotopism, q: &Quasigroup) -> Result<Quasigroup, IsotopyError> {
    let n = q.order();
    if iso.degree() != n {
        return Err(IsotopyError::DegreeMismatch {
            expected: n,
            found: iso.degree(),
        });
    }
    let mut table = vec![0; n * n];
    for [x, y, z] in q.triples() {
        table[iso.alpha.apply(x) * n + iso.beta.apply(y)] = iso.gamma.apply(z);
    }
    Ok(Quasigroup::from_flat(n, table).expect("isotopes of a Latin square are Latin"))
}

/// Isotopy invariants used to reject non-isotopic pairs cheaply.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub intercalate_count: usize,
    /// Cycle type of the row-to-row symbol map, counted over unordered row pairs.
    pub row_cycle_profile: BTreeMap<Vec<usize>, usize>,
}

pub fn fingerprint(q: &Quasigroup) -> Fingerprint {
    let n = q.order();
    let mut row_cycle_profile = BTreeMap::new();
    for r in 0..n {
        for s in r + 1..n {
            *row_cycle_profile
                .entry(row_pair_cycle_type(q, r, s))
                .or_insert(0) += 1;
        }
    }
    Fingerprint {
        order: n,
        intercalate_count: q.intercalate_count(),
        row_cycle_profile,
    }
}

// Symbol map Q[r][c] -> Q[s][c].
fn row_pair_cycle_type(q: &Quasigroup, r: usize, s: usize) -> Vec<usize> {
    let n = q.order();
    let map: Vec<usize> = (0..n).map(|z| q.multiply(s, q.left_divide(r, z))).collect();
    cycle_type_of(&map)
}

// Symbol map Q[r][c] -> Q[r][d].
fn column_pair_cycle_type(q: &Quasigroup, c: usize, d: usize) -> Vec<usize> {
    let n = q.order();
    let map: Vec<usize> = (0..n)
        .map(|z| q.multiply(q.right_divide(z, c), d))
        .collect();
    cycle_type_of(&map)
}

/// Searches for an isotopism `Q → P` under the default budget.
pub fn find_isotopism(q: &Quasigroup, p: &Quasigroup) -> Result<Option<Isotopism>, IsotopyError> {
    find_isotopism_with(q, p, Budget::default())
}

pub fn find_isotopism_with(
    q: &Quasigroup,
    p: &Quasigroup,
    budget: Budget,
) -> Result<Option<Isotopism>, IsotopyError> {
    let n = q.order();
    if p.order() != n {
        return Ok(None);
    }
    budget.check(n)?;
    if n == 1 {
        return Ok(Some(Isotopism::identity(1)));
    }
    if q == p {
        return Ok(Some(Isotopism::identity(n)));
    }
    if fingerprint(q) != fingerprint(p) {
        return Ok(None);
    }
    let found = Search::new(q, p).run();
    if let Some(iso) = &found {
        assert!(
            iso.is_isotopism(q, p),
            "solver produced an invalid isotopism"
        );
    }
    Ok(found)
}

pub fn is_isotopic(q: &Quasigroup, p: &Quasigroup) -> Result<bool, IsotopyError> {
    Ok(find_isotopism(q, p)?.is_some())
}

/// Searches for an anti-isotopism `Q → P` under the default budget.
pub fn find_anti_isotopism(
    q: &Quasigroup,
    p: &Quasigroup,
) -> Result<Option<Isotopism>, IsotopyError> {
    find_anti_isotopism_with(q, p, Budget::default())
}

/// `Q ∼ P` iff `Q ≈ P₅`: an isotopism `(α, β, γ)` onto the transpose gives
/// `P[β(y)][α(x)] = γ(x·y)`, i.e. the anti-isotopism `(β, α, γ)`.
pub fn find_anti_isotopism_with(
    q: &Quasigroup,
    p: &Quasigroup,
    budget: Budget,
) -> Result<Option<Isotopism>, IsotopyError> {
    let transposed = parastrophe(p, ParastropheIndex::new(5).expect("valid index"));
    let Some(iso) = find_isotopism_with(q, &transposed, budget)? else {
        return Ok(None);
    };
    let anti = Isotopism {
        alpha: iso.beta,
        beta: iso.alpha,
        gamma: iso.gamma,
    };
    assert!(
        anti.is_anti_isotopism(q, p),
        "anti-isotopism reduction produced an invalid witness"
    );
    Ok(Some(anti))
}

pub fn is_anti_isotopic(q: &Quasigroup, p: &Quasigroup) -> Result<bool, IsotopyError> {
    Ok(find_anti_isotopism(q, p)?.is_some())
}

const UNSET: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Default)]
struct PartialMap {
    fwd: Vec<usize>,
    inv: Vec<usize>,
}

impl PartialMap {
    fn new(n: usize) -> Self {
        Self {
            fwd: vec![UNSET; n],
            inv: vec![UNSET; n],
        }
    }
}

struct Search<'a> {
    q: &'a Quasigroup,
    p: &'a Quasigroup,
    n: usize,
    maps: [PartialMap; 3],
    trail: Vec<(Var, usize)>,
    queue: Vec<(Var, usize)>,
    // cycle-type ids of row pairs / column pairs, shared id space for Q and P
    q_rows: Vec<usize>,
    p_rows: Vec<usize>,
    q_cols: Vec<usize>,
    p_cols: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(q: &'a Quasigroup, p: &'a Quasigroup) -> Self {
        let n = q.order();
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut table = |sq: &Quasigroup, f: fn(&Quasigroup, usize, usize) -> Vec<usize>| {
            let mut out = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        let next = ids.len();
                        out[a * n + b] = *ids.entry(f(sq, a, b)).or_insert(next);
                    }
                }
            }
            out
        };
        let q_rows = table(q, row_pair_cycle_type);
        let p_rows = table(p, row_pair_cycle_type);
        let q_cols = table(q, column_pair_cycle_type);
        let p_cols = table(p, column_pair_cycle_type);
        Self {
            q,
            p,
            n,
            maps: [PartialMap::new(n), PartialMap::new(n), PartialMap::new(n)],
            trail: Vec::new(),
            queue: Vec::new(),
            q_rows,
            p_rows,
            q_cols,
            p_cols,
        }
    }

    fn map(&self, v: Var) -> &PartialMap {
        &self.maps[v as usize]
    }

    fn run(mut self) -> Option<Isotopism> {
        if self.solve() {
            let perm =
                |m: &PartialMap| Permutation::new(m.fwd.clone()).expect("complete bijection");
            Some(Isotopism {
                alpha: perm(self.map(Var::Alpha)),
                beta: perm(self.map(Var::Beta)),
                gamma: perm(self.map(Var::Gamma)),
            })
        } else {
            None
        }
    }

    /// Picks the next variable to branch on: `α(0)`, then `β(0)`, then the
    /// lowest unassigned row of `α`, falling back to `β` and `γ`.
    fn next_branch(&self) -> Option<(Var, usize)> {
        let alpha = &self.map(Var::Alpha).fwd;
        let beta = &self.map(Var::Beta).fwd;
        if alpha[0] == UNSET {
            return Some((Var::Alpha, 0));
        }
        if beta[0] == UNSET {
            return Some((Var::Beta, 0));
        }
        for v in [Var::Alpha, Var::Beta, Var::Gamma] {
            if let Some(i) = self.map(v).fwd.iter().position(|&x| x == UNSET) {
                return Some((v, i));
            }
        }
        None
    }

    fn solve(&mut self) -> bool {
        let Some((var, from)) = self.next_branch() else {
            return true;
        };
        for to in 0..self.n {
            if self.map(var).inv[to] != UNSET {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(var, from, to) && self.propagate() && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, from) = self.trail.pop().expect("trail above mark");
            let m = &mut self.maps[v as usize];
            let to = std::mem::replace(&mut m.fwd[from], UNSET);
            m.inv[to] = UNSET;
        }
        self.queue.clear();
    }

    /// Records `var(from) = to`; false on conflict with the current partial maps.
    fn assign(&mut self, var: Var, from: usize, to: usize) -> bool {
        let m = &self.maps[var as usize];
        if m.fwd[from] != UNSET {
            return m.fwd[from] == to;
        }
        if m.inv[to] != UNSET {
            return false;
        }
        let n = self.n;
        // new α / β images must preserve the pair cycle types against every
        // image already fixed
        let compatible = match var {
            Var::Alpha => (0..n).all(|x| {
                let r = m.fwd[x];
                r == UNSET || self.q_rows[from * n + x] == self.p_rows[to * n + r]
            }),
            Var::Beta => (0..n).all(|y| {
                let c = m.fwd[y];
                c == UNSET || self.q_cols[from * n + y] == self.p_cols[to * n + c]
            }),
            Var::Gamma => true,
        };
        if !compatible {
            return false;
        }
        let m = &mut self.maps[var as usize];
        m.fwd[from] = to;
        m.inv[to] = from;
        self.trail.push((var, from));
        self.queue.push((var, from));
        true
    }

    fn propagate(&mut self) -> bool {
        let (q, p, n) = (self.q, self.p, self.n);
        while let Some((var, from)) = self.queue.pop() {
            let to = self.maps[var as usize].fwd[from];
            for k in 0..n {
                let ok = match var {
                    Var::Alpha => {
                        let (x, r) = (from, to);
                        let mut ok = true;
                        let c = self.maps[Var::Beta as usize].fwd[k];
                        if c != UNSET {
                            ok &= self.assign(Var::Gamma, q.multiply(x, k), p.multiply(r, c));
                        }
                        let s = self.maps[Var::Gamma as usize].fwd[k];
                        if ok && s != UNSET {
                            ok &= self.assign(Var::Beta, q.left_divide(x, k), p.left_divide(r, s));
                        }
                        ok
                    }
                    Var::Beta => {
                        let (y, c) = (from, to);
                        let mut ok = true;
                        let r = self.maps[Var::Alpha as usize].fwd[k];
                        if r != UNSET {
                            ok &= self.assign(Var::Gamma, q.multiply(k, y), p.multiply(r, c));
                        }
                        let s = self.maps[Var::Gamma as usize].fwd[k];
                        if ok && s != UNSET {
                            ok &=
                                self.assign(Var::Alpha, q.right_divide(k, y), p.right_divide(s, c));
                        }
                        ok
                    }
                    Var::Gamma => {
                        let (z, s) = (from, to);
                        let mut ok = true;
                        let r = self.maps[Var::Alpha as usize].fwd[k];
                        if r != UNSET {
                            ok &= self.assign(Var::Beta, q.left_divide(k, z), p.left_divide(r, s));
                        }
                        let c = self.maps[Var::Beta as usize].fwd[k];
                        if ok && c != UNSET {
                            ok &=
                                self.assign(Var::Alpha, q.right_divide(z, k), p.right_divide(s, c));
                        }
                        ok
                    }
                };
                if !ok {
                    self.queue.clear();
                    return false;
                }
            }
        }
        true
    }
}
