//! Brute-force oracles, independent of the solver and the enumerator.
#![allow(dead_code)]

use quasigroup_core::{PermutedIdentity, Quasigroup};

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn m(q: &Quasigroup, x: usize, y: usize) -> usize {
    q.multiply(x, y)
}

/// Tries every `(α, β)`; `γ` is read off row 0 and checked on every cell.
/// With `anti`, the relation is `α(x)∘β(y) = γ(y·x)`.
pub fn brute_related(q: &Quasigroup, p: &Quasigroup, anti: bool) -> bool {
    let n = q.order();
    if p.order() != n {
        return false;
    }
    let qv = |x: usize, y: usize| if anti { m(q, y, x) } else { m(q, x, y) };
    let perms = all_permutations(n);
    for a in &perms {
        for b in &perms {
            let mut gamma = vec![usize::MAX; n];
            let mut ok = true;
            'cells: for x in 0..n {
                for y in 0..n {
                    let from = qv(x, y);
                    let to = m(p, a[x], b[y]);
                    if gamma[from] == usize::MAX {
                        gamma[from] = to;
                    } else if gamma[from] != to {
                        ok = false;
                        break 'cells;
                    }
                }
            }
            if ok {
                return true;
            }
        }
    }
    false
}

pub fn brute_isotopic(q: &Quasigroup, p: &Quasigroup) -> bool {
    brute_related(q, p, false)
}

pub fn brute_anti_isotopic(q: &Quasigroup, p: &Quasigroup) -> bool {
    brute_related(q, p, true)
}

/// Direct existential search for the permuted identity: all `(α, β)`, with
/// `γ` forced at `x = 0` and the identity checked at every `(x, y)`.
pub fn brute_permuted_identity(q: &Quasigroup, id: PermutedIdentity) -> bool {
    let n = q.order();
    let perms = all_permutations(n);
    let rd = |z: usize, y: usize| q.right_divide(z, y);
    for a in &perms {
        for b in &perms {
            // γ(y) from the identity at x = 0
            let gamma: Vec<usize> = (0..n)
                .map(|y| match id {
                    PermutedIdentity::I1 => m(q, a[0], b[m(q, y, 0)]),
                    PermutedIdentity::I2 => m(q, b[m(q, 0, y)], a[0]),
                    PermutedIdentity::I3 => m(q, b[m(q, y, 0)], a[0]),
                    PermutedIdentity::I4 => m(q, a[0], b[m(q, 0, y)]),
                    PermutedIdentity::I5 => rd(b[m(q, 0, y)], a[0]),
                })
                .collect();
            let holds = (0..n).all(|x| {
                (0..n).all(|y| match id {
                    PermutedIdentity::I1 => m(q, a[x], b[m(q, y, x)]) == gamma[y],
                    PermutedIdentity::I2 => m(q, b[m(q, x, y)], a[x]) == gamma[y],
                    PermutedIdentity::I3 => m(q, b[m(q, y, x)], a[x]) == gamma[y],
                    PermutedIdentity::I4 => m(q, a[x], b[m(q, x, y)]) == gamma[y],
                    PermutedIdentity::I5 => b[m(q, x, y)] == m(q, gamma[y], a[x]),
                })
            });
            let mut sorted = gamma.clone();
            sorted.sort_unstable();
            if holds && sorted == (0..n).collect::<Vec<_>>() {
                return true;
            }
        }
    }
    false
}

/// Reduced squares by choosing whole rows: row `r` is a permutation starting
/// with `r` that clashes with no earlier row in any column.
pub fn naive_reduced_squares(n: usize) -> Vec<Vec<Vec<usize>>> {
    let rows_by_first: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|r| {
            all_permutations(n)
                .into_iter()
                .filter(|p| p[0] == r)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut square = vec![(0..n).collect::<Vec<usize>>()];
    fn rec(
        n: usize,
        rows_by_first: &[Vec<Vec<usize>>],
        square: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let r = square.len();
        if r == n {
            out.push(square.clone());
            return;
        }
        for cand in &rows_by_first[r] {
            if square
                .iter()
                .all(|row| row.iter().zip(cand).all(|(a, b)| a != b))
            {
                square.push(cand.clone());
                rec(n, rows_by_first, square, out);
                square.pop();
            }
        }
    }
    rec(n, &rows_by_first, &mut square, &mut out);
    out
}

/// Group tables among the reduced squares (associative ones).
pub fn brute_group_isotopic(q: &Quasigroup) -> bool {
    let n = q.order();
    naive_reduced_squares(n)
        .into_iter()
        .map(|rows| Quasigroup::from_table(&rows).unwrap())
        .filter(|g| {
            (0..n)
                .all(|x| (0..n).all(|y| (0..n).all(|z| m(g, m(g, x, y), z) == m(g, x, m(g, y, z)))))
        })
        .any(|g| brute_isotopic(q, &g))
}

/// Every reduced square of order `1..=max_order`, as built by the library enumerator.
pub fn reduced_population(max_order: usize) -> Vec<Quasigroup> {
    (1..=max_order)
        .flat_map(|n| quasigroup_core::enumerate_reduced(n).unwrap())
        .collect()
}

/// Reduced squares of order ≤ 5 plus `random` seeded squares of order 6.
pub fn base_population(random: usize) -> Vec<Quasigroup> {
    let mut pop = reduced_population(5);
    pop.extend((0..random as u64).map(|s| quasigroup_core::random_quasigroup(6, s)));
    pop
}

/// Latin square built row by row with shuffled candidate symbols. Reaches
/// far more isotopy classes than `random_quasigroup`.
pub fn backtrack_latin_square(n: usize, seed: u64) -> Quasigroup {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fill(c: usize, rows: &[Vec<usize>], row: &mut Vec<usize>, rng: &mut ChaCha8Rng) -> bool {
        let n = row.len();
        if c == n {
            return true;
        }
        let mut cand: Vec<usize> = (0..n)
            .filter(|&v| !row[..c].contains(&v) && rows.iter().all(|r| r[c] != v))
            .collect();
        cand.shuffle(rng);
        for v in cand {
            row[c] = v;
            if fill(c + 1, rows, row, rng) {
                return true;
            }
        }
        false
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // any Latin rectangle extends, so a row can always be completed
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut row = vec![0; n];
        assert!(fill(0, &rows, &mut row, &mut rng));
        rows.push(row);
    }
    Quasigroup::from_table(&rows).unwrap()
}

pub fn diverse_population(n: usize, count: usize) -> Vec<Quasigroup> {
    (0..count as u64)
        .map(|s| backtrack_latin_square(n, s))
        .collect()
}

/// Cached `≈` / `∼` between the six conjugates of one quasigroup.
pub struct Relations {
    pub conj: [Quasigroup; 6],
    iso: [[bool; 6]; 6],
    anti: [[bool; 6]; 6],
}

impl Relations {
    pub fn new(q: &Quasigroup) -> Self {
        use quasigroup_core::{find_anti_isotopism, find_isotopism, parastrophes};
        let conj = parastrophes(q);
        let mut iso = [[false; 6]; 6];
        let mut anti = [[false; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                iso[i][j] = find_isotopism(&conj[i], &conj[j]).unwrap().is_some();
                anti[i][j] = find_anti_isotopism(&conj[i], &conj[j]).unwrap().is_some();
            }
        }
        Self { conj, iso, anti }
    }

    pub fn iso(&self, i: usize, j: usize) -> bool {
        self.iso[i][j]
    }

    pub fn anti(&self, i: usize, j: usize) -> bool {
        self.anti[i][j]
    }

    pub fn eq(&self, i: usize, j: usize) -> bool {
        self.conj[i] == self.conj[j]
    }

    /// Every conjugate relation law that must hold, as `(name, holds)`.
    pub fn laws(&self) -> Vec<(&'static str, bool)> {
        let c = &self.conj;
        let all_eq = |v: &[bool]| v.iter().all(|&b| b == v[0]);
        let commutative = {
            let q = &c[0];
            let n = q.order();
            (0..n).all(|x| (0..n).all(|y| q.multiply(x, y) == q.multiply(y, x)))
        };
        let pointwise_transpose = {
            let n = c[0].order();
            (0..n).all(|x| {
                (0..n).all(|y| {
                    c[0].multiply(x, y) == c[5].multiply(y, x)
                        && c[1].multiply(x, y) == c[4].multiply(y, x)
                        && c[2].multiply(x, y) == c[3].multiply(y, x)
                })
            })
        };
        let strong = self.anti(0, 0) && (1..=4).any(|i| self.anti(0, i));
        vec![
            (
                "transpose pairs Q/Q5, Q1/Q4, Q2/Q3 (pointwise)",
                pointwise_transpose,
            ),
            (
                "transpose pairs Q/Q5, Q1/Q4, Q2/Q3 (tables)",
                c[0].transpose() == c[5] && c[1].transpose() == c[4] && c[2].transpose() == c[3],
            ),
            (
                "Q∼Q5, Q1∼Q4, Q2∼Q3",
                self.anti(0, 5) && self.anti(1, 4) && self.anti(2, 3),
            ),
            (
                "xy=yx ⟺ Q=Q5 ⟺ Q1=Q3 ⟺ Q2=Q4",
                all_eq(&[commutative, self.eq(0, 5), self.eq(1, 3), self.eq(2, 4)]),
            ),
            (
                "Q1=Q ⟺ Q2=Q3 ⟺ Q4=Q5",
                all_eq(&[self.eq(1, 0), self.eq(2, 3), self.eq(4, 5)]),
            ),
            (
                "Q2=Q ⟺ Q1=Q4 ⟺ Q3=Q5",
                all_eq(&[self.eq(2, 0), self.eq(1, 4), self.eq(3, 5)]),
            ),
            (
                "Q∼Q ⟺ Q≈Q5 ⟺ Q1≈Q3 ⟺ Q2≈Q4",
                all_eq(&[
                    self.anti(0, 0),
                    self.iso(0, 5),
                    self.iso(1, 3),
                    self.iso(2, 4),
                ]),
            ),
            (
                "Q∼Q1 ⟺ Q∼Q2 ⟺ Q1≈Q2",
                all_eq(&[self.anti(0, 1), self.anti(0, 2), self.iso(1, 2)]),
            ),
            (
                "Q1∼Q ⟺ Q1∼Q3 ⟺ Q≈Q3 ⟺ Q1≈Q5",
                all_eq(&[
                    self.anti(1, 0),
                    self.anti(1, 3),
                    self.iso(0, 3),
                    self.iso(1, 5),
                ]),
            ),
            (
                "Q2∼Q ⟺ Q2∼Q4 ⟺ Q≈Q4 ⟺ Q2≈Q5",
                all_eq(&[
                    self.anti(2, 0),
                    self.anti(2, 4),
                    self.iso(0, 4),
                    self.iso(2, 5),
                ]),
            ),
            (
                "Q3∼Q ⟺ Q≈Q2 ⟺ Q1≈Q4 ⟺ Q3≈Q5",
                all_eq(&[
                    self.anti(3, 0),
                    self.iso(0, 2),
                    self.iso(1, 4),
                    self.iso(3, 5),
                ]),
            ),
            (
                "Q4∼Q ⟺ Q≈Q1 ⟺ Q2≈Q3 ⟺ Q4≈Q5",
                all_eq(&[
                    self.anti(4, 0),
                    self.iso(0, 1),
                    self.iso(2, 3),
                    self.iso(4, 5),
                ]),
            ),
            (
                "Q∼Q and Q∼Qi (i≤4) ⟹ all conjugates isotopic and Q∼Qj for all j",
                !strong
                    || ((0..6).all(|i| (0..6).all(|j| self.iso(i, j)))
                        && (1..=5).all(|j| self.anti(0, j))),
            ),
        ]
    }

    pub fn violations(&self) -> Vec<&'static str> {
        self.laws()
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect()
    }
}

/// Every Latin square of order `n` (row-by-row backtracking, no reduction).
pub fn naive_all_squares(n: usize) -> Vec<Quasigroup> {
    fn rec(perms: &[Vec<usize>], rows: &mut Vec<usize>, n: usize, out: &mut Vec<Quasigroup>) {
        if rows.len() == n {
            let table: Vec<Vec<usize>> = rows.iter().map(|&i| perms[i].clone()).collect();
            out.push(Quasigroup::from_table(&table).unwrap());
            return;
        }
        for (i, cand) in perms.iter().enumerate() {
            if rows
                .iter()
                .all(|&r| perms[r].iter().zip(cand).all(|(a, b)| a != b))
            {
                rows.push(i);
                rec(perms, rows, n, out);
                rows.pop();
            }
        }
    }
    let perms = all_permutations(n);
    let mut out = Vec::new();
    rec(&perms, &mut Vec::new(), n, &mut out);
    out
}

/// `x·y = a·x + b·y (mod n)`.
pub fn linear(n: usize, a: usize, b: usize) -> Quasigroup {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| (a * x + b * y) % n).collect())
        .collect();
    Quasigroup::from_table(&rows).unwrap()
}

pub fn load(name: &str) -> Quasigroup {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name);
    Quasigroup::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}
