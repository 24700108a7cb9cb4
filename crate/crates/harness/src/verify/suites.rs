use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use poset_endo::analysis::twin_pairs;
use poset_endo::generators::{enumerate_all_graded, enumerate_all_posets};
use poset_endo::{
    automorphisms, brute_force_endomorphisms, canonical_form, classify_pair, complete_levels,
    compute_grading, construct_f, construct_swap, construct_u, construct_v, count_endomorphisms,
    count_poset, count_result, distinct_compositions, enumerate_automorphisms,
    find_repeating_windows, find_singles, fixture, gen_chain, gen_diamond_tower,
    gen_random_poset, gen_random_tower, gen_stacked, is_order_preserving, older_siblings, window,
    CountOptions, Fixture, GradedInfo, Morphism, PairCase, Poset, TowerParams, Window,
};
use rayon::prelude::*;

use super::oracle::{naive_automorphisms, naive_end_count};
use super::SuiteReport;
use crate::ratio::decimal;

fn memo() -> CountOptions {
    CountOptions {
        memo: true,
        ..Default::default()
    }
}

/// Instances checked by one aggregate check, and the ones that failed.
#[derive(Default)]
struct Tally {
    instances: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
    }

    fn report(&self, r: &mut SuiteReport, name: &str) {
        let detail = if self.failures.is_empty() {
            format!("{} instances", self.instances)
        } else {
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            format!(
                "{} of {} instances failed, e.g. {}",
                self.failures.len(),
                self.instances,
                shown.join("; ")
            )
        };
        r.check(name, self.failures.is_empty() && self.instances > 0, detail);
    }
}

fn covers_string(p: &Poset) -> String {
    let cs: Vec<String> = p.covers().map(|(u, v)| format!("[{u},{v}]")).collect();
    format!("n={} covers=[{}]", p.len(), cs.join(","))
}

/// Deterministic posets plus seeded random towers and posets.
fn generated_family(seed: u64) -> Vec<(String, Poset)> {
    let mut v: Vec<(String, Poset)> = Vec::new();
    for k in 1..=4 {
        v.push((format!("diamond_tower({k})"), gen_diamond_tower(k)));
    }
    for len in 2..=6 {
        v.push((format!("chain({len})"), gen_chain(len)));
    }
    for f in Fixture::ALL {
        v.push((f.name().to_string(), fixture(f)));
    }
    for i in 0..80u64 {
        let s = seed.wrapping_add(i);
        let params = TowerParams::new(
            s,
            3 + (i % 4) as usize,
            2 + (i % 2) as usize,
            [0.25, 0.5][(i / 2 % 2) as usize],
        );
        if let Ok(p) = gen_random_tower(&params) {
            v.push((format!("random_tower(seed={s},{params:?})"), p));
        }
    }
    for i in 0..40u64 {
        let s = seed.wrapping_add(1000 + i);
        let n = 3 + (i % 4) as usize;
        if let Ok(p) = gen_random_poset(s, n, 0.4) {
            v.push((format!("random_poset(seed={s},n={n})"), p));
        }
    }
    v
}

pub(super) fn singles(r: &mut SuiteReport, seed: u64) {
    let family = generated_family(seed);
    let results: Vec<(Tally, Tally)> = family
        .par_iter()
        .map(|(name, p)| {
            let mut inj = Tally::default();
            let mut ratio = Tally::default();
            let ups = find_singles(p).0;
            if ups.is_empty() {
                return (inj, ratio);
            }
            let u = ups.len();
            let (auts, end) = match (automorphisms(p, &memo()), count_endomorphisms(p, &memo())) {
                (Ok(a), Ok(e)) => (a, e),
                _ => {
                    inj.record(false, || format!("{name}: count failed"));
                    return (inj, ratio);
                }
            };
            let cons: Result<Vec<Morphism>, _> = ups.iter().map(|&x| construct_u(p, x)).collect();
            let Ok(cons) = cons else {
                inj.record(false, || format!("{name}: construct_u failed"));
                return (inj, ratio);
            };
            let t = distinct_compositions(&cons, &auts);
            inj.record(t.distinct == u * auts.len() && t.max_multiplicity == 1, || {
                format!(
                    "{name}: distinct {} vs u*|Aut| = {}, max multiplicity {}",
                    t.distinct,
                    u * auts.len(),
                    t.max_multiplicity
                )
            });
            let aut = BigUint::from(auts.len());
            // ratio <= 1/u, and the sharper (u + 1) |Aut| <= |End|
            ratio.record(&aut * u <= end && &aut * (u + 1) <= end, || {
                format!("{name}: |Aut|={aut} |End|={end} u={u}")
            });
            (inj, ratio)
        })
        .collect();
    let (mut inj, mut ratio) = (Tally::default(), Tally::default());
    for (a, b) in results {
        inj.merge(a);
        ratio.merge(b);
    }
    inj.report(r, "U-compositions are pairwise distinct");
    ratio.report(r, "ratio at most 1/u");
    r.fact("instances_with_singles", inj.instances);
}

pub(super) fn siblings(r: &mut SuiteReport, seed: u64) {
    let mut family = generated_family(seed);
    family.push(("complete(2,2,2,2)".into(), complete_levels(&[2, 2, 2, 2])));
    family.push(("complete(1,3,2)".into(), complete_levels(&[1, 3, 2])));
    let results: Vec<(Tally, Tally, usize)> = family
        .par_iter()
        .map(|(name, p)| {
            let mut mult = Tally::default();
            let mut bound = Tally::default();
            let Ok(g) = compute_grading(p) else {
                return (mult, bound, 0);
            };
            let sibs = older_siblings(p, &g);
            if sibs.is_empty() {
                return (mult, bound, 0);
            }
            let twins = twin_pairs(&sibs);
            let Ok(auts) = enumerate_automorphisms(p, &g, &memo()) else {
                mult.record(false, || format!("{name}: automorphism search failed"));
                return (mult, bound, 0);
            };
            let mut pairs_seen = 0;
            for &(a, b) in &sibs {
                pairs_seen += 1;
                let Ok(v) = construct_v(p, a, b) else {
                    mult.record(false, || format!("{name}: construct_v({a},{b}) failed"));
                    continue;
                };
                let t = distinct_compositions(&[v], &auts);
                let twin = twins.contains(&(a.min(b), a.max(b)));
                mult.record(
                    t.max_multiplicity <= 2 && (t.max_multiplicity == 2) == twin,
                    || format!("{name}: pair ({a},{b}) twin={twin} multiplicity {}", t.max_multiplicity),
                );
            }
            match count_endomorphisms(p, &memo()) {
                Ok(end) => {
                    let aut = BigUint::from(auts.len());
                    bound.record(&aut * 3u32 <= &end * 2u32, || {
                        format!("{name}: |Aut|={aut} |End|={end}")
                    })
                }
                Err(e) => bound.record(false, || format!("{name}: {e}")),
            }
            (mult, bound, pairs_seen)
        })
        .collect();
    let (mut mult, mut bound, mut pairs) = (Tally::default(), Tally::default(), 0);
    for (a, b, c) in results {
        mult.merge(a);
        bound.merge(b);
        pairs += c;
    }
    mult.report(r, "V-composition multiplicity is at most 2, and 2 exactly for twins");
    bound.report(r, "3|Aut| <= 2|End| when an older sibling exists");
    r.fact("sibling_pairs_checked", pairs);
    r.fact("posets_with_siblings", bound.instances);
}

pub(super) fn whidth2(r: &mut SuiteReport) {
    let mut ratios: Vec<BigRational> = Vec::new();
    let mut twins_ok = Tally::default();
    for k in 1..=6 {
        let p = gen_diamond_tower(k);
        let g = compute_grading(&p).expect("diamond towers are graded");
        match count_result(&p, &g, &memo()) {
            Ok(c) => {
                r.fact(&format!("ratio_k{k}"), format!("{} ({})", c.ratio, decimal(&c.ratio, 6)));
                ratios.push(c.ratio);
            }
            Err(e) => {
                r.check(format!("count diamond_tower({k})"), false, e.to_string());
                return;
            }
        }
        let twins = twin_pairs(&older_siblings(&p, &g));
        for rank in (1..g.top_rank).step_by(2) {
            let lvl = g.level(rank);
            twins_ok.record(lvl.len() == 2 && twins.contains(&(lvl[0], lvl[1])), || {
                format!("k={k} rank {rank}: no twin pair")
            });
        }
    }
    let first = BigRational::new(1.into(), 18.into());
    r.check(
        "diamond ratio is 1/18",
        ratios[0] == first,
        format!("k=1 ratio {}", ratios[0]),
    );
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let shown: Vec<String> = ratios.iter().map(|q| q.to_string()).collect();
    r.check(
        "ratios strictly decrease in k",
        decreasing,
        shown.join(" > "),
    );
    twins_ok.report(r, "twin detector fires on every odd rank");
}

/// Greedy starts of a group, consecutive picks at least `span` apart.
fn spread_starts(starts: &[usize], span: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &s in starts {
        if out.last().is_none_or(|&l| s >= l + span.max(1)) {
            out.push(s);
        }
    }
    out
}

/// Stacks `block` `k` times and checks `c >= k` and `|Aut| c <= 216 |End|`;
/// when small enough, also that the `F_x . phi` maps number at least
/// `c |Aut| / 216`.
fn check_stacked(
    name: &str,
    block: &Window,
    k: usize,
    repeat: &mut Tally,
    ratio: &mut Tally,
    compositions: &mut Tally,
) {
    let q = match gen_stacked(block, k, None) {
        Ok(q) => q,
        Err(e) => return repeat.record(false, || format!("{name}: {e}")),
    };
    let g = match compute_grading(&q) {
        Ok(g) => g,
        Err(e) => return repeat.record(false, || format!("{name}: {e}")),
    };
    let rep = find_repeating_windows(&q, &g, block.span);
    let group = rep.group(&block.canonical_key);
    let c = group.map_or(0, |gr| gr.c);
    repeat.record(c >= k, || format!("{name}: c={c} < k={k}"));
    let opts = CountOptions {
        memo: true,
        budget: 200_000_000,
        ..Default::default()
    };
    let auts = match enumerate_automorphisms(&q, &g, &opts) {
        Ok(a) => a,
        Err(e) => return ratio.record(false, || format!("{name}: {e}")),
    };
    let end = match count_endomorphisms(&q, &opts) {
        Ok(e) => e,
        Err(e) => return ratio.record(false, || format!("{name}: {e}")),
    };
    let aut = BigUint::from(auts.len());
    ratio.record(&aut * c <= &end * 216u32, || {
        format!("{name}: |Aut|={aut} |End|={end} c={c}")
    });
    if auts.len() * c > 300_000 {
        return;
    }
    let starts = spread_starts(&group.map(|gr| gr.starts.clone()).unwrap_or_default(), block.span);
    let mut cons = Vec::new();
    for lo in starts {
        let w = window(&q, &g, lo, block.span).expect("group starts are valid windows");
        let x = w.source_level(block.span / 2)[0];
        match construct_f(&q, &w, x) {
            Ok(f) => cons.push(f),
            Err(e) => return compositions.record(false, || format!("{name}: {e}")),
        }
    }
    let t = distinct_compositions(&cons, &auts);
    compositions.record(t.distinct * 216 >= cons.len() * auts.len(), || {
        format!("{name}: {} distinct from {} copies, |Aut|={}", t.distinct, cons.len(), auts.len())
    });
}

fn rank_two_enumeration(r: &mut SuiteReport) {
    let k333 = fixture(Fixture::K333);
    let k333_key = canonical_form(&k333, &compute_grading(&k333).unwrap().levels());
    let stream = match enumerate_all_graded(2, 3, false, u64::MAX) {
        Ok(s) => s,
        Err(e) => return r.check("rank-2 enumeration", false, e.to_string()),
    };
    let posets: Vec<Poset> = stream.collect();
    let found: Vec<(usize, bool)> = posets
        .par_iter()
        .filter_map(|p| {
            let g = compute_grading(p).ok()?;
            if g.top_rank != 2 {
                return None;
            }
            let a = enumerate_automorphisms(p, &g, &CountOptions::default()).ok()?.len();
            Some((a, canonical_form(p, &g.levels()) == k333_key))
        })
        .collect();
    let max = found.iter().map(|&(a, _)| a).max().unwrap_or(0);
    let maximizers = found.iter().filter(|&&(a, _)| a == max).count();
    let all_k333 = found.iter().filter(|&&(a, _)| a == max).all(|&(_, k)| k);
    r.fact("rank2_posets_enumerated", found.len());
    r.fact("rank2_max_aut", max);
    r.fact("rank2_maximizers", maximizers);
    r.check(
        "rank-2 whidth-3 posets have at most 216 automorphisms",
        max == 216,
        format!("max |Aut| = {max} over {} labeled posets", found.len()),
    );
    r.check(
        "the maximum is attained only by K333",
        all_k333 && maximizers > 0,
        format!("{maximizers} labeled maximizers"),
    );
}

/// Seeded whidth-3 towers without singles: exactly 3 elements on some rank,
/// levels of 2 or 3 elements, every cover degree at least 2.
pub fn whidth3_towers(seed: u64, count: usize) -> Vec<(u64, Poset, GradedInfo)> {
    let mut out = Vec::with_capacity(count);
    let mut s = seed;
    while out.len() < count {
        let params = TowerParams {
            min_level_size: 2,
            min_degree: 2,
            ..TowerParams::new(s, 5 + (s % 4) as usize, 3, 0.5)
        };
        s = s.wrapping_add(1);
        let Ok(p) = gen_random_tower(&params) else {
            continue;
        };
        let g = compute_grading(&p).expect("towers are graded");
        if g.whidth == 3 {
            out.push((params.seed, p, g));
        }
    }
    out
}

pub(super) fn whidth3(r: &mut SuiteReport, seed: u64) {
    rank_two_enumeration(r);

    let towers = whidth3_towers(seed, 500);
    let mut no_singles = Tally::default();
    let mut gap_two = Tally::default();
    let mut central = Tally::default();
    for (s, p, g) in &towers {
        let interior_single = (0..p.len()).any(|x| {
            let rk = g.ranks[x];
            rk > 0 && rk < g.top_rank && (p.up_covers(x).len() == 1 || p.down_covers(x).len() == 1)
        });
        no_singles.record(!interior_single, || format!("seed {s}: interior single"));
        for a in 0..p.len() {
            for b in 0..p.len() {
                if g.ranks[b] == g.ranks[a] + 2 {
                    gap_two.record(p.lt(a, b), || format!("seed {s}: {a} not below {b}"));
                }
            }
        }
        for lo in 0..=g.top_rank - 4 {
            let w = window(p, g, lo, 4).expect("window in range");
            for x in w.source_level(2) {
                central.record(construct_f(p, &w, x).is_ok(), || {
                    format!("seed {s}: F_{x} fails on window at rank {lo}")
                });
            }
        }
    }
    r.fact("towers", towers.len());
    no_singles.report(r, "towers have no singles on interior ranks");
    gap_two.report(r, "s < t whenever r(t) = r(s) + 2");
    central.report(r, "construct_F succeeds at every middle element of a span-4 window");

    let (mut repeat, mut ratio, mut comps) = (Tally::default(), Tally::default(), Tally::default());
    // K333 stacks: span-2 complete blocks; the middle level is central.
    let k333 = fixture(Fixture::K333);
    let kg = compute_grading(&k333).unwrap();
    let kw = window(&k333, &kg, 0, 2).unwrap();
    for k in 1..=3 {
        check_stacked(&format!("k333 stack k={k}"), &kw, k, &mut repeat, &mut ratio, &mut comps);
    }
    let mut blocks = 0;
    for (s, p, g) in &towers {
        if blocks == 10 {
            break;
        }
        let w = window(p, g, 0, 4).expect("towers have rank at least 4");
        if w.source_level(0).len() != w.source_level(4).len() {
            continue;
        }
        blocks += 1;
        for k in 1..=2 {
            check_stacked(
                &format!("tower seed {s} block stack k={k}"),
                &w,
                k,
                &mut repeat,
                &mut ratio,
                &mut comps,
            );
        }
    }
    repeat.report(r, "stacked instances repeat their block at least k times");
    ratio.report(r, "ratio at most 216/c on stacked instances");
    comps.report(r, "F-compositions number at least c|Aut|/216");
}

pub(super) fn whidth4_cases(r: &mut SuiteReport) {
    for (f, want) in [
        (Fixture::S4, PairCase::S4),
        (Fixture::S3, PairCase::S3),
        (Fixture::Ladder, PairCase::S2Ladder),
    ] {
        let p = fixture(f);
        let g = compute_grading(&p).unwrap();
        let cls = classify_pair(&p, &g, 0, 1);
        r.check(
            format!("{f} classifies as {want}"),
            cls.case == want,
            format!("got {}", cls.case),
        );
    }
    let p = fixture(Fixture::Ladder);
    let g = compute_grading(&p).unwrap();
    let cls = classify_pair(&p, &g, 0, 1);
    let swap = match construct_swap(&p, &cls) {
        Ok(m) => m,
        Err(e) => return r.check("ladder swap", false, e.to_string()),
    };
    let expected = vec![0, 1, 2, 3, 4, 5, 7, 7, 9, 9, 10];
    r.check(
        "swap sends x2 to y2 and z1 to t1, fixing the rest",
        swap.image == expected,
        format!("{:?}", swap.image),
    );
    r.check(
        "swap is order-preserving and not bijective",
        is_order_preserving(&p, &swap.image) && !swap.is_bijective(),
        "",
    );
    let auts = enumerate_automorphisms(&p, &g, &CountOptions::default()).unwrap();
    let t = distinct_compositions(std::slice::from_ref(&swap), &auts);
    let all_endo = auts
        .iter()
        .all(|a| is_order_preserving(&p, &poset_endo::compose(&swap, a).unwrap().image));
    r.check(
        "swap compositions are endomorphisms",
        all_endo,
        format!("{} compositions", auts.len()),
    );
    r.check(
        "swap compositions number at least |Aut|/2",
        2 * t.distinct >= auts.len(),
        format!("{} distinct, |Aut| = {}", t.distinct, auts.len()),
    );
    r.fact("ladder_aut", auts.len());
    r.fact("ladder_swap_distinct", t.distinct);
}

pub(super) fn zero_posets(r: &mut SuiteReport) {
    let mut best2: Option<(BigRational, Poset)> = None;
    let mut best3: Option<(BigRational, Poset)> = None;
    let mut oracle = Tally::default();
    let mut total = 0;
    for n in 1..=5 {
        let posets = match enumerate_all_posets(n, true) {
            Ok(v) => v,
            Err(e) => return r.check("enumeration", false, e.to_string()),
        };
        for p in posets.into_iter().filter(|p| p.minimum().is_some()) {
            total += 1;
            let c = match count_poset(&p, &memo()) {
                Ok(c) => c,
                Err(e) => return r.check("count", false, e.to_string()),
            };
            let naive = naive_end_count(&p);
            oracle.record(c.end_count == BigUint::from(naive), || covers_string(&p));
            let slot = |best: &mut Option<(BigRational, Poset)>| {
                if best.as_ref().is_none_or(|(q, _)| c.ratio > *q) {
                    *best = Some((c.ratio.clone(), p.clone()));
                }
            };
            if n >= 2 {
                slot(&mut best2);
            }
            if n >= 3 {
                slot(&mut best3);
            }
        }
    }
    r.fact("posets_with_zero", total);
    oracle.report(r, "End counts agree with the naive oracle");
    for (label, best, limit) in [("2", &best2, 2), ("3", &best3, 3)] {
        let (q, w) = best.as_ref().expect("nonempty");
        let bound = BigRational::new(BigUint::one().into(), BigUint::from(limit as u32).into());
        r.fact(&format!("max_ratio_n_ge_{label}"), format!("{q} ({})", decimal(q, 6)));
        r.fact(&format!("witness_n_ge_{label}"), covers_string(w));
        r.check(
            format!("ratio <= 1/{limit} for posets with a zero and n >= {label}"),
            *q <= bound,
            format!("max {q} at {}", covers_string(w)),
        );
    }
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Compares every counting mode and the automorphism search with an oracle.
fn oracle_one(name: &str, p: &Poset, t: &mut Tally, a: &mut Tally) {
    let (end, aut_images): (u64, Vec<Vec<usize>>) = if p.len() <= 7 {
        let all = brute_force_endomorphisms(p).expect("small");
        let auts = all
            .iter()
            .filter(|m| m.is_bijective())
            .map(|m| m.image.clone())
            .collect();
        (all.len() as u64, auts)
    } else {
        (naive_end_count(p), naive_automorphisms(p))
    };
    let want = BigUint::from(end);
    for (mode, opts) in [
        ("plain", CountOptions { parallel: false, ..Default::default() }),
        ("parallel", CountOptions::default()),
        ("memo", memo()),
    ] {
        let got = count_endomorphisms(p, &opts);
        t.record(got.as_ref() == Ok(&want), || {
            format!("{name} [{mode}]: {got:?} vs oracle {want}")
        });
    }
    let auts: Vec<Vec<usize>> = match compute_grading(p) {
        Ok(g) => enumerate_automorphisms(p, &g, &CountOptions::default()),
        Err(_) => automorphisms(p, &CountOptions::default()),
    }
    .map(|v| v.into_iter().map(|m| m.image).collect())
    .unwrap_or_default();
    a.record(auts == aut_images, || {
        format!("{name}: {} automorphisms vs oracle {}", auts.len(), aut_images.len())
    });
}

pub(super) fn oracle(r: &mut SuiteReport, seed: u64) {
    const RANDOM: u64 = 240;
    let results: Vec<(Tally, Tally)> = (0..RANDOM)
        .into_par_iter()
        .map(|i| {
            let (mut t, mut a) = (Tally::default(), Tally::default());
            let s = seed.wrapping_add(i);
            let n = 1 + (i % 6) as usize;
            let density = [0.15, 0.3, 0.5, 0.75][(i / 6 % 4) as usize];
            let p = gen_random_poset(s, n, density).expect("valid density");
            oracle_one(&format!("random_poset(seed={s},n={n},density={density})"), &p, &mut t, &mut a);
            (t, a)
        })
        .collect();
    let (mut t, mut a) = (Tally::default(), Tally::default());
    for (x, y) in results {
        t.merge(x);
        a.merge(y);
    }
    t.report(r, "random posets: End count equals brute force in every search mode");
    a.report(r, "random posets: automorphisms equal the bijective endomorphisms");

    let (mut ft, mut fa) = (Tally::default(), Tally::default());
    for f in Fixture::ALL {
        oracle_one(f.name(), &fixture(f), &mut ft, &mut fa);
    }
    ft.report(r, "fixtures: End count equals the oracle");
    fa.report(r, "fixtures: automorphisms equal the oracle");

    let d = gen_diamond_tower(1);
    let dc = count_poset(&d, &CountOptions::default()).unwrap();
    r.check(
        "diamond counts (2, 36)",
        dc.aut_count == BigUint::from(2u32) && dc.end_count == BigUint::from(36u32),
        format!("({}, {})", dc.aut_count, dc.end_count),
    );
    let mut chains = Tally::default();
    for n in 2..=8u64 {
        let p = gen_chain(n as usize);
        let c = count_poset(&p, &CountOptions::default()).unwrap();
        let want = binomial(2 * n - 1, n - 1);
        let oracle_ok = n > 6 || BigUint::from(naive_end_count(&p)) == want;
        chains.record(c.aut_count == BigUint::one() && c.end_count == want && oracle_ok, || {
            format!("chain({n}): ({}, {}) vs (1, {want})", c.aut_count, c.end_count)
        });
    }
    chains.report(r, "chains count (1, C(2n-1, n-1)) for n = 2..8");
    r.fact("random_posets", RANDOM);
}
