//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion runs the matching verification suite and, where the
//! suite's numbers could share a bug with the library, re-derives them here
//! with deliberately naive code that only calls `Poset::le`.

use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigUint;
use poset_endo::generators::gen_random_poset;
use poset_endo::*;
use poset_endo_harness::verify::{run_suite, whidth3_towers, Suite, SuiteReport};

const SEED: u64 = 0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_passes(s: Suite, checks: &[&str]) -> Result<SuiteReport, String> {
    let r = report(s);
    for name in checks {
        match r.check_named(name) {
            Some(c) if c.passed => {}
            Some(c) => return Err(format!("{s}: {name}: {}", c.detail)),
            None => return Err(format!("{s}: missing check {name:?}")),
        }
    }
    ensure(r.passed, || format!("{s} failed:\n{}", r.render_text()))?;
    Ok(r)
}

/// Suites are shared between criteria; run each once.
fn report(s: Suite) -> SuiteReport {
    static CACHE: Mutex<Vec<SuiteReport>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap();
    if let Some(r) = cache.iter().find(|r| r.suite == s.name()) {
        return r.clone();
    }
    let r = run_suite(s, SEED);
    cache.push(r.clone());
    r
}

// ---- naive oracles ----

/// All n^n maps, each checked against every comparable pair.
fn all_maps(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        if (0..n).all(|a| (0..n).all(|b| !p.le(a, b) || p.le(f[a], f[b]))) {
            out.push(f.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

fn bijective(f: &[usize]) -> bool {
    let mut seen = vec![false; f.len()];
    f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Index-order backtracking: extend while consistent with earlier points.
fn backtrack(p: &Poset, f: &mut Vec<usize>, inject: bool, visit: &mut dyn FnMut(&[usize])) {
    let n = p.len();
    let x = f.len();
    if x == n {
        visit(f);
        return;
    }
    for y in 0..n {
        if inject && f.contains(&y) {
            continue;
        }
        let ok = (0..x).all(|a| {
            let fwd = (!p.le(a, x) || p.le(f[a], y)) && (!p.le(x, a) || p.le(y, f[a]));
            // automorphisms must also reflect the order
            fwd && (!inject || (p.le(f[a], y) == p.le(a, x) && p.le(y, f[a]) == p.le(x, a)))
        });
        if ok {
            f.push(y);
            backtrack(p, f, inject, visit);
            f.pop();
        }
    }
}

fn naive_end(p: &Poset) -> u64 {
    let mut c = 0;
    backtrack(p, &mut Vec::new(), false, &mut |_| c += 1);
    c
}

fn naive_auts(p: &Poset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    backtrack(p, &mut Vec::new(), true, &mut |f| out.push(f.to_vec()));
    out.sort();
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn memo() -> CountOptions {
    CountOptions { memo: true, ..Default::default() }
}

// ---- criteria ----

fn oracle_equivalence() -> Outcome {
    suite_passes(
        Suite::Oracle,
        &[
            "random posets: End count equals brute force in every search mode",
            "random posets: automorphisms equal the bijective endomorphisms",
            "fixtures: End count equals the oracle",
            "fixtures: automorphisms equal the oracle",
        ],
    )?;
    let densities = [0.1, 0.25, 0.4, 0.6, 0.85];
    let mut checked = 0;
    for i in 0..200u64 {
        let n = 1 + (i % 6) as usize;
        let p = gen_random_poset(SEED + 7_000 + i, n, densities[i as usize % 5]).unwrap();
        let ends = all_maps(&p);
        let mut want_aut: Vec<Vec<usize>> =
            ends.iter().filter(|f| bijective(f)).cloned().collect();
        want_aut.sort();
        for opts in [memo(), CountOptions { parallel: false, ..Default::default() }] {
            let got = count_endomorphisms(&p, &opts).map_err(|e| e.to_string())?;
            ensure(got == BigUint::from(ends.len()), || {
                format!("random #{i}: End {got} vs brute force {}", ends.len())
            })?;
        }
        let mut got: Vec<Vec<usize>> =
            automorphisms(&p, &memo()).unwrap().into_iter().map(|m| m.image).collect();
        got.sort();
        ensure(got == want_aut, || format!("random #{i}: automorphisms differ"))?;
        checked += 1;
    }
    // K333x5 (15 elements, ~1e8 endomorphisms) is left to the suite's own
    // naive search so the one-core runtime stays under a minute.
    for f in Fixture::ALL.into_iter().filter(|&f| fixture(f).len() <= 11) {
        let p = fixture(f);
        let c = count_poset(&p, &memo()).map_err(|e| e.to_string())?;
        let (end, auts) = if p.len() <= 7 {
            let all = all_maps(&p);
            let a = all.iter().filter(|f| bijective(f)).cloned().collect();
            (all.len() as u64, a)
        } else {
            (naive_end(&p), naive_auts(&p))
        };
        ensure(c.end_count == end.into(), || format!("{f}: End {} vs {end}", c.end_count))?;
        ensure(c.aut_count == auts.len().into(), || {
            format!("{f}: Aut {} vs {}", c.aut_count, auts.len())
        })?;
        checked += 1;
    }
    Ok(format!("{checked} posets agree with brute force"))
}

fn pinned_counts() -> Outcome {
    suite_passes(Suite::Oracle, &["diamond counts (2, 36)", "chains count (1, C(2n-1, n-1)) for n = 2..8"])?;
    let d = count_poset(&gen_diamond_tower(1), &memo()).unwrap();
    ensure(d.aut_count == 2u32.into() && d.end_count == 36u32.into(), || {
        format!("diamond ({}, {})", d.aut_count, d.end_count)
    })?;
    ensure(all_maps(&gen_diamond_tower(1)).len() == 36, || "diamond oracle".into())?;
    for n in 2..=8u64 {
        let p = gen_chain(n as usize);
        let c = count_poset(&p, &memo()).unwrap();
        let want = binomial(2 * n - 1, n - 1);
        ensure(c.aut_count == 1u32.into() && c.end_count == want.into(), || {
            format!("chain {n}: ({}, {}) vs (1, {want})", c.aut_count, c.end_count)
        })?;
        if n <= 6 {
            ensure(all_maps(&p).len() as u64 == want, || format!("chain {n}: oracle"))?;
        }
    }
    Ok("diamond (2, 36); chains 2..8 match C(2n-1, n-1)".into())
}

/// All graded rank-2 posets with levels of at most 3, built from level sizes
/// and cover bitmasks; automorphisms by trying every level permutation.
fn rank_two_max_aut() -> (usize, usize, usize) {
    let perms = |k: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for m in 0..k {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..=p.len()).map(move |i| {
                        let mut q = p.clone();
                        q.insert(i, m);
                        q
                    })
                })
                .collect();
        }
        out
    };
    let (mut total, mut best, mut maximizers) = (0, 0, 0);
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                // lower[i][j]: level-0 i below level-1 j; upper[j][k] likewise
                for lm in 0u32..1 << (a * b) {
                    let lo = |i: usize, j: usize| lm >> (i * b + j) & 1 == 1;
                    if !(0..a).all(|i| (0..b).any(|j| lo(i, j)))
                        || !(0..b).all(|j| (0..a).any(|i| lo(i, j)))
                    {
                        continue;
                    }
                    for um in 0u32..1 << (b * c) {
                        let up = |j: usize, k: usize| um >> (j * c + k) & 1 == 1;
                        if !(0..b).all(|j| (0..c).any(|k| up(j, k)))
                            || !(0..c).all(|k| (0..b).any(|j| up(j, k)))
                        {
                            continue;
                        }
                        total += 1;
                        let mut count = 0;
                        for pa in perms(a) {
                            for pb in perms(b) {
                                let lower_ok = (0..a)
                                    .all(|i| (0..b).all(|j| lo(i, j) == lo(pa[i], pb[j])));
                                if !lower_ok {
                                    continue;
                                }
                                for pc in perms(c) {
                                    if (0..b).all(|j| (0..c).all(|k| up(j, k) == up(pb[j], pc[k]))) {
                                        count += 1;
                                    }
                                }
                            }
                        }
                        if count > best {
                            (best, maximizers) = (count, 0);
                        }
                        if count == best {
                            maximizers += 1;
                        }
                    }
                }
            }
        }
    }
    (total, best, maximizers)
}

fn bound_216() -> Outcome {
    let r = suite_passes(
        Suite::Whidth3,
        &[
            "rank-2 whidth-3 posets have at most 216 automorphisms",
            "the maximum is attained only by K333",
        ],
    )?;
    let (total, best, maximizers) = rank_two_max_aut();
    ensure(best == 216 && maximizers == 1, || {
        format!("independent enumeration: max {best} with {maximizers} maximizers")
    })?;
    ensure(r.facts.get("rank2_max_aut").map(String::as_str) == Some("216"), || {
        format!("suite reports {:?}", r.facts.get("rank2_max_aut"))
    })?;
    ensure(r.facts.get("rank2_posets_enumerated") == Some(&total.to_string()), || {
        format!("suite enumerated {:?}, oracle {total}", r.facts.get("rank2_posets_enumerated"))
    })?;
    let k = count_poset(&fixture(Fixture::K333), &memo()).unwrap();
    ensure(k.aut_count == 216u32.into(), || format!("K333 has {}", k.aut_count))?;
    Ok(format!("{total} labeled posets, max |Aut| = 216, only K333"))
}

fn u_injectivity() -> Outcome {
    let r = suite_passes(Suite::Singles, &["U-compositions are pairwise distinct", "ratio at most 1/u"])?;
    Ok(format!("{} instances with up-singles", r.facts["instances_with_singles"]))
}

fn v_multiplicity() -> Outcome {
    let r = suite_passes(
        Suite::Siblings,
        &["V-composition multiplicity is at most 2, and 2 exactly for twins"],
    )?;
    Ok(format!(
        "{} sibling pairs on {} posets",
        r.facts["sibling_pairs_checked"], r.facts["posets_with_siblings"]
    ))
}

fn whidth2_decay() -> Outcome {
    suite_passes(
        Suite::Whidth2,
        &["diamond ratio is 1/18", "ratios strictly decrease in k", "twin detector fires on every odd rank"],
    )?;
    // cross-check the first two towers naively, then monotonicity by
    // cross-multiplication
    let mut prev: Option<(BigUint, BigUint)> = None;
    let mut shown = Vec::new();
    for k in 1..=6 {
        let p = gen_diamond_tower(k);
        let c = count_poset(&p, &memo()).map_err(|e| e.to_string())?;
        if k <= 2 {
            let end = naive_end(&p);
            let aut = naive_auts(&p).len();
            ensure(c.end_count == end.into() && c.aut_count == aut.into(), || {
                format!("k={k}: ({}, {}) vs naive ({aut}, {end})", c.aut_count, c.end_count)
            })?;
        }
        if k == 1 {
            ensure(c.aut_count.clone() * 18u32 == c.end_count, || "k=1 ratio".into())?;
        }
        if let Some((pa, pe)) = &prev {
            ensure(&c.aut_count * pe < pa * &c.end_count, || format!("not decreasing at k={k}"))?;
        }
        shown.push(c.ratio.to_string());
        prev = Some((c.aut_count, c.end_count));
    }
    Ok(shown.join(" > "))
}

fn whidth3_structure() -> Outcome {
    let r = suite_passes(
        Suite::Whidth3,
        &[
            "towers have no singles on interior ranks",
            "s < t whenever r(t) = r(s) + 2",
            "construct_F succeeds at every middle element of a span-4 window",
            "stacked instances repeat their block at least k times",
            "ratio at most 216/c on stacked instances",
        ],
    )?;
    ensure(r.facts.get("towers").map(String::as_str) == Some("500"), || "tower count".into())?;
    for (seed, p, g) in whidth3_towers(SEED, 500) {
        let n = p.len();
        ensure(g.whidth == 3, || format!("seed {seed}: whidth {}", g.whidth))?;
        for x in 0..n {
            let interior = g.ranks[x] > 0 && g.ranks[x] < g.top_rank;
            let ups = (0..n).filter(|&y| p.lt(x, y) && g.ranks[y] == g.ranks[x] + 1).count();
            let downs = (0..n).filter(|&y| p.lt(y, x) && g.ranks[x] == g.ranks[y] + 1).count();
            ensure(!interior || (ups != 1 && downs != 1), || format!("seed {seed}: single {x}"))?;
            for y in 0..n {
                if g.ranks[y] == g.ranks[x] + 2 {
                    ensure(p.lt(x, y), || format!("seed {seed}: {x} !< {y}"))?;
                }
            }
        }
    }
    Ok("500 towers; stacked instances within 216/c".into())
}

fn whidth4_cases() -> Outcome {
    suite_passes(
        Suite::Whidth4Cases,
        &[
            "swap sends x2 to y2 and z1 to t1, fixing the rest",
            "swap is order-preserving and not bijective",
            "swap compositions number at least |Aut|/2",
        ],
    )?;
    let p = fixture(Fixture::Ladder);
    let g = compute_grading(&p).unwrap();
    let f = construct_swap(&p, &classify_pair(&p, &g, 0, 1)).map_err(|e| e.to_string())?;
    let mut want: Vec<usize> = (0..p.len()).collect();
    want[8] = 9; // x2 -> y2
    want[6] = 7; // z1 -> t1
    ensure(f.image == want, || format!("swap {:?}", f.image))?;
    ensure(all_maps_ok(&p, &f.image) && !bijective(&f.image), || "swap not a proper endomorphism".into())?;
    let auts = naive_auts(&p);
    let mut comps: Vec<Vec<usize>> = auts
        .iter()
        .map(|a| (0..p.len()).map(|z| f.image[a[z]]).collect())
        .collect();
    comps.sort();
    comps.dedup();
    ensure(2 * comps.len() >= auts.len(), || format!("{} of {}", comps.len(), auts.len()))?;
    Ok(format!("S4/S3/ladder classified; {} distinct of |Aut| = {}", comps.len(), auts.len()))
}

fn all_maps_ok(p: &Poset, f: &[usize]) -> bool {
    let n = p.len();
    (0..n).all(|a| (0..n).all(|b| !p.le(a, b) || p.le(f[a], f[b])))
}

/// Naturally labeled posets (i < j only when i < j as integers) cover every
/// isomorphism type.
fn natural_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for m in 0u32..1 << pairs.len() {
        let rel = |i: usize, j: usize| {
            pairs.iter().position(|&q| q == (i, j)).is_some_and(|k| m >> k & 1 == 1)
        };
        let transitive = (0..n)
            .all(|i| (0..n).all(|j| (0..n).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k))));
        if !transitive {
            continue;
        }
        let covers: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(i, j)| rel(i, j) && !(i + 1..j).any(|k| rel(i, k) && rel(k, j)))
            .collect();
        out.push(Poset::from_cover_list(n, &covers).unwrap());
    }
    out
}

fn zero_posets() -> Outcome {
    let r = suite_passes(
        Suite::ZeroPosets,
        &[
            "ratio <= 1/2 for posets with a zero and n >= 2",
            "ratio <= 1/3 for posets with a zero and n >= 3",
        ],
    )?;
    let mut best = [(0u64, 1u64); 2];
    for n in 2..=5 {
        for p in natural_posets(n) {
            if !(0..n).all(|x| p.le(0, x)) {
                continue;
            }
            let all = all_maps(&p);
            let aut = all.iter().filter(|f| bijective(f)).count() as u64;
            let end = all.len() as u64;
            let slots = if n >= 3 { &mut best[..] } else { &mut best[..1] };
            for b in slots {
                if aut * b.1 > b.0 * end {
                    let g = gcd(aut, end);
                    *b = (aut / g, end / g);
                }
            }
        }
    }
    let [(a2, e2), (a3, e3)] = best;
    ensure(2 * a2 <= e2 && 3 * a3 <= e3, || format!("oracle max {a2}/{e2}, {a3}/{e3}"))?;
    for (key, (a, e)) in [("max_ratio_n_ge_2", (a2, e2)), ("max_ratio_n_ge_3", (a3, e3))] {
        let fact = r.facts.get(key).map(String::as_str).unwrap_or("");
        ensure(fact.starts_with(&format!("{a}/{e} ")), || {
            format!("{key}: suite {fact:?}, oracle {a}/{e}")
        })?;
    }
    Ok(format!(
        "max {a2}/{e2} (n >= 2, {}), max {a3}/{e3} (n >= 3, {})",
        r.facts["witness_n_ge_2"], r.facts["witness_n_ge_3"]
    ))
}

fn pigeonhole() -> Outcome {
    let blocks = [
        ("diamond", gen_diamond_tower(1), 2),
        ("k333", fixture(Fixture::K333), 2),
        ("levels 2-3-1-2", complete_levels(&[2, 3, 1, 2]), 3),
    ];
    for (name, p, span) in blocks {
        let g = compute_grading(&p).unwrap();
        let w = window(&p, &g, 0, span).map_err(|e| e.to_string())?;
        for k in 1..=8 {
            let q = gen_stacked(&w, k, None).map_err(|e| e.to_string())?;
            let gq = compute_grading(&q).map_err(|e| e.to_string())?;
            let c = find_repeating_windows(&q, &gq, span)
                .group(&w.canonical_key)
                .map_or(0, |grp| grp.c);
            ensure(c >= k, || format!("{name} k={k}: c = {c}"))?;
        }
    }
    Ok("3 blocks, k = 1..8".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("pinned small counts", pinned_counts),
        ("216 automorphism bound", bound_216),
        ("U-constructor injectivity", u_injectivity),
        ("V-constructor multiplicity", v_multiplicity),
        ("whidth-2 decay", whidth2_decay),
        ("whidth-3 structure", whidth3_structure),
        ("whidth-4 case analysis", whidth4_cases),
        ("zero-poset bound", zero_posets),
        ("pigeonhole realization", pigeonhole),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
