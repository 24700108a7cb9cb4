//! Ratio tables over families of posets.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use poset_endo::{
    compute_grading, count_poset, count_result, find_repeating_windows, find_singles,
    structure_report, CountOptions, FamilySpec, MorphismError, Poset,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::ratio::decimal;

pub const CSV_HEADER: [&str; 15] = [
    "id",
    "n",
    "whidth",
    "aut",
    "end",
    "ratio_num",
    "ratio_den",
    "ratio_dec",
    "up_singles",
    "sibling_pairs",
    "twins",
    "central",
    "c_best",
    "bounds_passed",
    "status",
];

/// One family in a sweep config: a [`FamilySpec`] plus an optional row id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(flatten)]
    pub spec: FamilySpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Na,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Na => "na",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub inequality: &'static str,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub id: String,
    pub n: usize,
    pub whitney: Vec<usize>,
    pub whidth: Option<usize>,
    pub aut: Option<BigUint>,
    pub end: Option<BigUint>,
    pub ratio: Option<BigRational>,
    pub up_singles: usize,
    pub sibling_pairs: Option<usize>,
    pub twins: Option<usize>,
    pub central: Option<usize>,
    pub c_best: Option<usize>,
    pub bounds: Vec<BoundCheck>,
    /// `ok`, `not_graded`, `budget` or `size_limit`.
    pub status: String,
}

impl SweepRecord {
    pub fn bounds_passed(&self) -> String {
        self.bounds
            .iter()
            .map(|b| format!("{}={}", b.name, b.outcome))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn failed_bounds(&self) -> usize {
        self.bounds.iter().filter(|b| b.outcome == Outcome::Fail).count()
    }
}

/// The bound checks, from the row's own columns.
///
/// * `aut_le_end`: `aut <= end`.
/// * `singles`: `(u + 1) aut <= end` when `u >= 1` up-singles exist; the maps
///   `U_x . phi` are pairwise distinct and never bijective.
/// * `siblings`: `3 aut <= 2 end` when an older-sibling pair exists; each
///   `V . phi` arises at most twice.
/// * `window`: `c aut <= 216 end` when whidth `<= 3` and `c >= 1`.
pub fn bound_checks(
    aut: &BigUint,
    end: &BigUint,
    up_singles: usize,
    sibling_pairs: Option<usize>,
    whidth: Option<usize>,
    c_best: Option<usize>,
) -> Vec<BoundCheck> {
    let judge = |applies: bool, holds: bool| match (applies, holds) {
        (false, _) => Outcome::Na,
        (true, true) => Outcome::Pass,
        (true, false) => Outcome::Fail,
    };
    let c = c_best.unwrap_or(0);
    vec![
        BoundCheck {
            name: "aut_le_end",
            inequality: "aut <= end",
            outcome: judge(true, aut <= end),
        },
        BoundCheck {
            name: "singles",
            inequality: "(up_singles + 1) * aut <= end",
            outcome: judge(up_singles > 0, aut * (up_singles + 1) <= *end),
        },
        BoundCheck {
            name: "siblings",
            inequality: "3 * aut <= 2 * end",
            outcome: judge(sibling_pairs.unwrap_or(0) > 0, aut * 3u32 <= end * 2u32),
        },
        BoundCheck {
            name: "window",
            inequality: "c_best * aut <= 216 * end",
            outcome: judge(
                whidth.is_some_and(|w| w <= 3) && c > 0,
                aut * c <= end * 216u32,
            ),
        },
    ]
}

pub fn record(id: String, p: &Poset, opts: &CountOptions) -> SweepRecord {
    let (ups, _) = find_singles(p);
    let mut rec = SweepRecord {
        id,
        n: p.len(),
        whitney: Vec::new(),
        whidth: None,
        aut: None,
        end: None,
        ratio: None,
        up_singles: ups.len(),
        sibling_pairs: None,
        twins: None,
        central: None,
        c_best: None,
        bounds: Vec::new(),
        status: "ok".into(),
    };
    let counted = match compute_grading(p) {
        Ok(g) => {
            let st = structure_report(p, &g);
            rec.whitney = g.whitney.clone();
            rec.whidth = Some(g.whidth);
            rec.sibling_pairs = Some(st.older_sibling_pairs.len());
            rec.twins = Some(st.twin_pairs.len());
            rec.central = Some(st.central_witnesses.len());
            rec.c_best = Some(
                (2..=4.min(g.top_rank))
                    .map(|span| find_repeating_windows(p, &g, span).c())
                    .max()
                    .unwrap_or(0),
            );
            count_result(p, &g, opts)
        }
        Err(_) => {
            rec.status = "not_graded".into();
            count_poset(p, opts)
        }
    };
    match counted {
        Ok(r) => {
            rec.bounds = bound_checks(
                &r.aut_count,
                &r.end_count,
                rec.up_singles,
                rec.sibling_pairs,
                rec.whidth,
                rec.c_best,
            );
            rec.aut = Some(r.aut_count);
            rec.end = Some(r.end_count);
            rec.ratio = Some(r.ratio);
        }
        Err(MorphismError::Budget(_)) => rec.status = "budget".into(),
        Err(_) => rec.status = "size_limit".into(),
    }
    rec
}

/// Expands every entry into `(id, poset)` members, in order. An entry that
/// yields one poset keeps its id (default `f<index>`); otherwise members are
/// suffixed `.0`, `.1`, ….
pub fn expand(entries: &[SweepEntry], seed: u64) -> Result<Vec<(String, Poset)>, HarnessError> {
    let mut out = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let id = e.id.clone().unwrap_or_else(|| format!("f{i}"));
        let posets = e.spec.generate(seed)?;
        if posets.len() == 1 {
            out.push((id, posets.into_iter().next().unwrap()));
        } else {
            out.extend(
                posets
                    .into_iter()
                    .enumerate()
                    .map(|(j, p)| (format!("{id}.{j}"), p)),
            );
        }
    }
    Ok(out)
}

/// Records for every member, computed on `jobs` threads (0 = all cores) and
/// returned in input order.
pub fn run_sweep(
    entries: &[SweepEntry],
    seed: u64,
    jobs: usize,
    opts: &CountOptions,
) -> Result<Vec<SweepRecord>, HarnessError> {
    let members = expand(entries, seed)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| HarnessError::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        members
            .into_par_iter()
            .map(|(id, p)| record(id, &p, opts))
            .collect()
    }))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Whether the counted ratios never increase, and the last one.
pub fn trend(records: &[SweepRecord]) -> (bool, Option<&BigRational>) {
    let ratios: Vec<&BigRational> = records.iter().filter_map(|r| r.ratio.as_ref()).collect();
    (ratios.windows(2).all(|w| w[1] <= w[0]), ratios.last().copied())
}

/// CSV text: header, one row per record, and (unless there are no records) a
/// trailing `# summary:` line.
pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        let (num, den, dec) = match &r.ratio {
            Some(q) => (q.numer().to_string(), q.denom().to_string(), decimal(q, 6)),
            None => Default::default(),
        };
        w.write_record([
            r.id.clone(),
            r.n.to_string(),
            opt(&r.whidth),
            opt(&r.aut),
            opt(&r.end),
            num,
            den,
            dec,
            r.up_singles.to_string(),
            opt(&r.sibling_pairs),
            opt(&r.twins),
            opt(&r.central),
            opt(&r.c_best),
            r.bounds_passed(),
            r.status.clone(),
        ])
        .expect("in-memory write");
    }
    let mut out = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    if !records.is_empty() {
        let (non_increasing, last) = trend(records);
        let counted = records.iter().filter(|r| r.ratio.is_some()).count();
        let failed: usize = records.iter().map(SweepRecord::failed_bounds).sum();
        out.push_str(&format!(
            "# summary: rows={} counted={counted} failed_bounds={failed} non_increasing={non_increasing} final_ratio={} final_ratio_dec={}\n",
            records.len(),
            opt(&last),
            last.map(|q| decimal(q, 6)).unwrap_or_default(),
        ));
    }
    out
}
