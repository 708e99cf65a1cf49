//! Built-in tables used by tests, benchmarks and the CLI.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::quasigroup::Quasigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {name} is not defined for order {order}")]
    BadOrder { name: Fixture, order: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixture {
    /// Addition modulo `n`.
    Cyclic,
    /// `(Z_2)^k` under XOR; `n = 2^k`.
    ElementaryAbelian2,
    /// The order-6 D-loop from the literature.
    PaperDLoop,
    /// Its first parastrophe `x∘₁y = x\y`.
    PaperQ1,
    /// Its second parastrophe `x∘₂y = x/y`.
    PaperQ2,
    /// `x∘y = 2x + 2y (mod 3)`, totally symmetric.
    Steiner3,
}

impl Fixture {
    pub const ALL: [Fixture; 6] = [
        Fixture::Cyclic,
        Fixture::ElementaryAbelian2,
        Fixture::PaperDLoop,
        Fixture::PaperQ1,
        Fixture::PaperQ2,
        Fixture::Steiner3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Cyclic => "cyclic",
            Fixture::ElementaryAbelian2 => "elementary-abelian-2",
            Fixture::PaperDLoop => "paper-dloop",
            Fixture::PaperQ1 => "paper-q1",
            Fixture::PaperQ2 => "paper-q2",
            Fixture::Steiner3 => "steiner3",
        }
    }

    /// The only order the fixture exists in, if it is fixed.
    pub fn fixed_order(self) -> Option<usize> {
        match self {
            Fixture::PaperDLoop | Fixture::PaperQ1 | Fixture::PaperQ2 => Some(6),
            Fixture::Steiner3 => Some(3),
            Fixture::Cyclic | Fixture::ElementaryAbelian2 => None,
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FixtureError::UnknownFixture(s.to_owned()))
    }
}

// 1-based, exactly as printed.
const PAPER_DLOOP: [[usize; 6]; 6] = [
    [1, 2, 3, 4, 5, 6],
    [2, 1, 6, 5, 3, 4],
    [3, 6, 1, 2, 4, 5],
    [4, 5, 2, 1, 6, 3],
    [5, 3, 4, 6, 1, 2],
    [6, 4, 5, 3, 2, 1],
];

const PAPER_Q1: [[usize; 6]; 6] = [
    [1, 2, 3, 4, 5, 6],
    [2, 1, 5, 6, 4, 3],
    [3, 4, 1, 5, 6, 2],
    [4, 3, 6, 1, 2, 5],
    [5, 6, 2, 3, 1, 4],
    [6, 5, 4, 2, 3, 1],
];

const PAPER_Q2: [[usize; 6]; 6] = [
    [1, 2, 3, 4, 5, 6],
    [2, 1, 4, 3, 6, 5],
    [3, 5, 1, 6, 2, 4],
    [4, 6, 5, 1, 3, 2],
    [5, 4, 6, 2, 1, 3],
    [6, 3, 2, 5, 4, 1],
];

pub fn builtin(fixture: Fixture, order: usize) -> Result<Quasigroup, FixtureError> {
    let bad = || FixtureError::BadOrder {
        name: fixture,
        order,
    };
    if order == 0 || fixture.fixed_order().is_some_and(|n| n != order) {
        return Err(bad());
    }
    let q = match fixture {
        Fixture::Cyclic => cyclic(order),
        Fixture::ElementaryAbelian2 => {
            if !order.is_power_of_two() {
                return Err(bad());
            }
            Quasigroup::from_fn(order, |x, y| x ^ y)
        }
        Fixture::Steiner3 => Quasigroup::from_fn(3, |x, y| (2 * x + 2 * y) % 3),
        Fixture::PaperDLoop => paper_table(&PAPER_DLOOP),
        Fixture::PaperQ1 => paper_table(&PAPER_Q1),
        Fixture::PaperQ2 => paper_table(&PAPER_Q2),
    };
    Ok(q)
}

pub fn cyclic(order: usize) -> Quasigroup {
    Quasigroup::from_fn(order, |x, y| (x + y) % order)
}

fn paper_table(rows: &[[usize; 6]; 6]) -> Quasigroup {
    Quasigroup::from_table(rows).expect("printed table is Latin")
}
