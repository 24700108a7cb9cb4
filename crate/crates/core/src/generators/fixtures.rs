use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::poset::Poset;

/// Named posets used by the case analysis and the examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fixture {
    /// Rank 0 `{x=0, y=1, z0=2, t0=3}`, rank 1 `{x1=4, y1=5, z1=6, t1=7}`,
    /// rank 2 `{x2=8, y2=9, z2=10}`.
    Ladder,
    /// `0` and `1` below disjoint pairs `{2,3}` and `{4,5}`, each pair under
    /// its own pair of twins, all capped by `10`.
    S4,
    /// `0` below `{2,3}` and `1` below `{3,4}`, all three under `5` and `6`.
    S3,
    /// `0, 1` minimal; `2` covers `0`; `3` covers `0, 1`; `4` covers `2, 3`.
    Sib,
    /// Three complete levels of three elements.
    K333,
    /// Five complete levels of three elements.
    K333x5,
}

impl Fixture {
    pub const ALL: [Fixture; 6] = [
        Fixture::Ladder,
        Fixture::S4,
        Fixture::S3,
        Fixture::Sib,
        Fixture::K333,
        Fixture::K333x5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Ladder => "ladder",
            Fixture::S4 => "s4",
            Fixture::S3 => "s3",
            Fixture::Sib => "sib",
            Fixture::K333 => "k333",
            Fixture::K333x5 => "k333x5",
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown fixture {s:?}"))
    }
}

pub fn fixture(f: Fixture) -> Poset {
    match f {
        Fixture::Ladder => Poset::from_cover_list(
            11,
            &[
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 6),
                (3, 7),
                (4, 8),
                (4, 9),
                (5, 8),
                (5, 9),
                (6, 8),
                (6, 10),
                (7, 9),
                (7, 10),
            ],
        ),
        Fixture::S4 => Poset::from_cover_list(
            11,
            &[
                (0, 2),
                (0, 3),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 6),
                (3, 7),
                (4, 8),
                (4, 9),
                (5, 8),
                (5, 9),
                (6, 10),
                (7, 10),
                (8, 10),
                (9, 10),
            ],
        ),
        Fixture::S3 => Poset::from_cover_list(
            7,
            &[
                (0, 2),
                (0, 3),
                (1, 3),
                (1, 4),
                (2, 5),
                (2, 6),
                (3, 5),
                (3, 6),
                (4, 5),
                (4, 6),
            ],
        ),
        Fixture::Sib => Poset::from_cover_list(5, &[(0, 2), (0, 3), (1, 3), (2, 4), (3, 4)]),
        Fixture::K333 => return complete_levels(&[3, 3, 3]),
        Fixture::K333x5 => return complete_levels(&[3; 5]),
    }
    .expect("fixture covers are valid")
}

/// Levels of the given sizes, each element covering every element of the
/// level below. Elements are numbered level by level.
pub fn complete_levels(sizes: &[usize]) -> Poset {
    let mut covers = Vec::new();
    let mut start = 0;
    for pair in sizes.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        for i in 0..a {
            for j in 0..b {
                covers.push((start + i, start + a + j));
            }
        }
        start += a;
    }
    Poset::from_cover_list(sizes.iter().sum(), &covers).expect("complete levels are valid")
}
