//! Case analysis for two same-rank elements of a whidth-4 poset, each below
//! exactly two elements of the next rank.

use std::collections::BTreeMap;
use std::fmt;

use crate::grading::GradedInfo;
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairCase {
    /// The two pairs of upper covers are disjoint.
    S4,
    /// The upper covers share exactly one element.
    S3,
    /// Identical upper covers, with the rail structure that supports the swap map.
    S2Ladder,
    Inapplicable(String),
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairCase::S4 => f.write_str("S4"),
            PairCase::S3 => f.write_str("S3"),
            PairCase::S2Ladder => f.write_str("S2-ladder"),
            PairCase::Inapplicable(why) => write!(f, "inapplicable ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClassification {
    pub x: usize,
    pub y: usize,
    /// Elements of rank `r + 1` above `x` or `y`, ascending.
    pub s: Vec<usize>,
    pub case: PairCase,
    /// Named witness elements, e.g. `x1`, `y2`, `z1`, `t1` for the ladder or
    /// `x_{2,1}` for the rails of the disjoint case.
    pub witnesses: BTreeMap<String, usize>,
}

impl PairClassification {
    pub fn witness(&self, name: &str) -> Option<usize> {
        self.witnesses.get(name).copied()
    }

    fn inapplicable(x: usize, y: usize, s: Vec<usize>, why: impl Into<String>) -> Self {
        PairClassification {
            x,
            y,
            s,
            case: PairCase::Inapplicable(why.into()),
            witnesses: BTreeMap::new(),
        }
    }
}

/// Classifies the pair `(x, y)` by the size of `S`, the set of rank `r + 1`
/// elements above at least one of them, and records the named witnesses.
///
/// For `|S| = 3`, `x1` covers `x` but not `y`, `y1` covers `y` but not `x`,
/// and `z` covers both. For `|S| = 2` the pair is tagged `S2Ladder` only if the
/// rails are present: `x1, y1` share the upper covers `{x2, y2}`, the other
/// two elements `z1, t1` of rank `r + 1` are each covered by exactly one of
/// them (`x2` covers `z1`, `y2` covers `t1`), and both `z1` and `t1` cover
/// exactly the two remaining rank-`r` elements `z0, t0`.
pub fn classify_pair(p: &Poset, g: &GradedInfo, x: usize, y: usize) -> PairClassification {
    let n = p.len();
    if x >= n || y >= n {
        return PairClassification::inapplicable(x, y, vec![], "element out of range");
    }
    if x == y {
        return PairClassification::inapplicable(x, y, vec![], "x equals y");
    }
    if g.whidth > 4 {
        return PairClassification::inapplicable(x, y, vec![], "whidth exceeds 4");
    }
    let r = g.ranks[x];
    if g.ranks[y] != r {
        return PairClassification::inapplicable(x, y, vec![], "x and y have different ranks");
    }
    let ux = p.up_covers(x);
    let uy = p.up_covers(y);
    if ux.len() != 2 || uy.len() != 2 {
        return PairClassification::inapplicable(
            x,
            y,
            vec![],
            format!(
                "x and y must each be below exactly two elements of rank {} (found {} and {})",
                r + 1,
                ux.len(),
                uy.len()
            ),
        );
    }
    let mut s: Vec<usize> = ux.iter().chain(uy).copied().collect();
    s.sort_unstable();
    s.dedup();

    let mut witnesses = BTreeMap::new();
    let mut put = |name: &str, v: usize| {
        witnesses.insert(name.to_string(), v);
    };
    let case = match s.len() {
        4 => {
            put("x_{1,1}", ux[0]);
            put("x_{1,2}", ux[1]);
            put("y_{1,1}", uy[0]);
            put("y_{1,2}", uy[1]);
            for (name, rail) in [("x", rail(p, ux)), ("y", rail(p, uy))] {
                for (j, pair) in rail.iter().enumerate() {
                    put(&format!("{name}_{{{},1}}", j + 2), pair[0]);
                    put(&format!("{name}_{{{},2}}", j + 2), pair[1]);
                }
            }
            let x2 = [witnesses.get("x_{2,1}"), witnesses.get("x_{2,2}")];
            let y2 = [witnesses.get("y_{2,1}"), witnesses.get("y_{2,2}")];
            if let ([Some(&a), Some(&b)], [Some(&c), Some(&d)]) = (x2, y2) {
                let shared: Vec<usize> = [a, b].into_iter().filter(|v| *v == c || *v == d).collect();
                if let [z] = shared.as_slice() {
                    witnesses.insert("z".into(), *z);
                }
            }
            PairCase::S4
        }
        3 => {
            let z = *ux.iter().find(|v| uy.contains(v)).unwrap();
            let x1 = *ux.iter().find(|&&v| v != z).unwrap();
            let y1 = *uy.iter().find(|&&v| v != z).unwrap();
            put("x1", x1);
            put("y1", y1);
            put("z", z);
            if let [z1, z2] = p.up_covers(z) {
                put("z1", *z1);
                put("z2", *z2);
            }
            PairCase::S3
        }
        _ => match ladder(p, g, x, y, &s) {
            Ok(named) => {
                for (k, v) in named {
                    put(k, v);
                }
                PairCase::S2Ladder
            }
            Err(why) => return PairClassification::inapplicable(x, y, s, why),
        },
    };
    PairClassification {
        x,
        y,
        s,
        case,
        witnesses,
    }
}

/// Follows a rail upward: while both elements of the current pair have the
/// same two upper covers, that pair is the next rung.
fn rail(p: &Poset, start: &[usize]) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    let mut cur = [start[0], start[1]];
    loop {
        let a = p.up_covers(cur[0]);
        let b = p.up_covers(cur[1]);
        if a.len() != 2 || a != b {
            break;
        }
        cur = [a[0], a[1]];
        out.push(cur);
    }
    out
}

fn ladder(
    p: &Poset,
    g: &GradedInfo,
    x: usize,
    y: usize,
    s: &[usize],
) -> Result<Vec<(&'static str, usize)>, String> {
    let r = g.ranks[x];
    let (x1, y1) = (s[0], s[1]);
    if r + 2 > g.top_rank {
        return Err(format!("no rank {} above the pair", r + 2));
    }
    let above = p.up_covers(x1);
    if above.len() != 2 || above != p.up_covers(y1) {
        return Err("x1 and y1 are not below the same two elements".into());
    }
    let (x2, y2) = (above[0], above[1]);

    let others1: Vec<usize> = g.level(r + 1).into_iter().filter(|v| !s.contains(v)).collect();
    let [z1c, t1c] = others1.as_slice() else {
        return Err(format!(
            "rank {} needs exactly two elements besides x1, y1 (found {})",
            r + 1,
            others1.len()
        ));
    };
    let extra = |top: usize| -> Option<usize> {
        let d = p.down_covers(top);
        if d.len() != 3 || !d.contains(&x1) || !d.contains(&y1) {
            return None;
        }
        d.iter().copied().find(|&v| v != x1 && v != y1)
    };
    let (Some(z1), Some(t1)) = (extra(x2), extra(y2)) else {
        return Err("x2 and y2 must each cover x1, y1 and one further element".into());
    };
    if z1 == t1 || !(z1 == *z1c || z1 == *t1c) || !(t1 == *z1c || t1 == *t1c) {
        return Err("x2 and y2 must cover distinct further elements".into());
    }

    let others0: Vec<usize> = g.level(r).into_iter().filter(|&v| v != x && v != y).collect();
    let [z0, t0] = others0.as_slice() else {
        return Err(format!(
            "rank {r} needs exactly two elements besides x, y (found {})",
            others0.len()
        ));
    };
    if p.down_covers(z1) != others0.as_slice() || p.down_covers(t1) != others0.as_slice() {
        return Err("z1 and t1 must both cover exactly z0 and t0".into());
    }
    Ok(vec![
        ("x1", x1),
        ("y1", y1),
        ("x2", x2),
        ("y2", y2),
        ("z1", z1),
        ("t1", t1),
        ("z0", *z0),
        ("t0", *t0),
    ])
}
