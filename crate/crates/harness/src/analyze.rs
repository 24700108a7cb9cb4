//! The `analyze` and `count` reports.

use std::fmt::Write;

use poset_endo::{
    compute_grading, count_poset, count_result, find_repeating_windows, structure_report,
    CountOptions, CountResult, GradingError, MorphismError, Poset, StructureReport,
};
use serde::Serialize;

use crate::ratio::decimal;

#[derive(Debug, Clone, Serialize)]
pub struct CountSummary {
    pub aut: String,
    pub end: String,
    pub ratio: String,
    pub ratio_dec: String,
}

impl From<&CountResult> for CountSummary {
    fn from(r: &CountResult) -> Self {
        CountSummary {
            aut: r.aut_count.to_string(),
            end: r.end_count.to_string(),
            ratio: r.ratio.to_string(),
            ratio_dec: decimal(&r.ratio, 6),
        }
    }
}

impl CountSummary {
    /// `{"aut":2,"end":36,"ratio":"1/18"}`, counts as bare JSON integers of
    /// any size.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"aut\":{},\"end\":{},\"ratio\":\"{}\"}}",
            self.aut, self.end, self.ratio
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RepeatSummary {
    pub span: usize,
    pub classes: usize,
    pub best_c: usize,
    pub best_c_strict: usize,
    pub best_starts: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NotGradedWitness {
    pub longer: Vec<usize>,
    pub shorter: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub covers: usize,
    pub graded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_graded: Option<NotGradedWitness>,
    pub whitney: Vec<usize>,
    pub whidth: Option<usize>,
    pub width: usize,
    pub components: usize,
    pub structure: Option<StructureReport>,
    pub repeats: Vec<RepeatSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountSummary>,
}

pub fn analyze(p: &Poset, count: bool, opts: &CountOptions) -> Result<AnalyzeReport, MorphismError> {
    let grading = compute_grading(p);
    let mut report = AnalyzeReport {
        n: p.len(),
        covers: p.cover_count(),
        graded: grading.is_ok(),
        not_graded: None,
        whitney: Vec::new(),
        whidth: None,
        width: p.width(),
        components: p.connected_components().len(),
        structure: None,
        repeats: Vec::new(),
        counts: None,
    };
    match &grading {
        Ok(g) => {
            report.whitney = g.whitney.clone();
            report.whidth = Some(g.whidth);
            report.structure = Some(structure_report(p, g));
            for span in 2..=4.min(g.top_rank) {
                let rep = find_repeating_windows(p, g, span);
                let best = rep.best();
                report.repeats.push(RepeatSummary {
                    span,
                    classes: rep.groups.len(),
                    best_c: best.map_or(0, |b| b.c),
                    best_c_strict: best.map_or(0, |b| b.c_strict),
                    best_starts: best.map(|b| b.starts.clone()).unwrap_or_default(),
                });
            }
            if count {
                report.counts = Some((&count_result(p, g, opts)?).into());
            }
        }
        Err(e) => {
            if let GradingError::NotGraded { longer, shorter } = e {
                report.not_graded = Some(NotGradedWitness {
                    longer: longer.clone(),
                    shorter: shorter.clone(),
                });
            }
            if count {
                report.counts = Some((&count_poset(p, opts)?).into());
            }
        }
    }
    Ok(report)
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn pairs(xs: &[(usize, usize)]) -> String {
    xs.iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_text(r: &AnalyzeReport) -> String {
    let mut s = String::new();
    writeln!(s, "elements: {}", r.n).unwrap();
    writeln!(s, "covers: {}", r.covers).unwrap();
    match &r.not_graded {
        None if r.graded => writeln!(s, "graded: yes").unwrap(),
        Some(w) => writeln!(
            s,
            "graded: no (chains [{}] and [{}] end at maximal elements of different heights)",
            list(&w.longer),
            list(&w.shorter)
        )
        .unwrap(),
        None => writeln!(s, "graded: no").unwrap(),
    }
    if let Some(wd) = r.whidth {
        writeln!(s, "whitney: {}", list(&r.whitney)).unwrap();
        writeln!(s, "whidth: {wd}").unwrap();
    }
    writeln!(s, "width: {}", r.width).unwrap();
    writeln!(s, "components: {}", r.components).unwrap();
    if let Some(st) = &r.structure {
        writeln!(s, "up-singles: {}", list(&st.up_singles)).unwrap();
        writeln!(s, "down-singles: {}", list(&st.down_singles)).unwrap();
        writeln!(s, "older siblings: {}", pairs(&st.older_sibling_pairs)).unwrap();
        writeln!(s, "twins: {}", pairs(&st.twin_pairs)).unwrap();
        let central: Vec<String> = st
            .central_witnesses
            .iter()
            .map(|(x, r1, r2)| format!("{x}[{r1},{r2}]"))
            .collect();
        writeln!(s, "central: {}", central.join(" ")).unwrap();
    }
    for rep in &r.repeats {
        writeln!(
            s,
            "repeats span {}: {} classes, best c={} (strict {}) at ranks {}",
            rep.span,
            rep.classes,
            rep.best_c,
            rep.best_c_strict,
            list(&rep.best_starts)
        )
        .unwrap();
    }
    if let Some(c) = &r.counts {
        writeln!(s, "aut: {}", c.aut).unwrap();
        writeln!(s, "end: {}", c.end).unwrap();
        writeln!(s, "ratio: {} ({})", c.ratio, c.ratio_dec).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use poset_endo::{fixture, Fixture};

    #[test]
    fn diamond_twins() {
        let d = Poset::from_cover_list(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let r = analyze(&d, true, &CountOptions::default()).unwrap();
        assert_eq!(r.structure.as_ref().unwrap().twin_pairs, vec![(1, 2)]);
        assert_eq!(r.counts.as_ref().unwrap().to_json(), r#"{"aut":2,"end":36,"ratio":"1/18"}"#);
        assert!(render_text(&r).contains("twins: (1,2)"));
    }

    #[test]
    fn not_graded_witness() {
        let p = Poset::from_cover_list(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        let p2 = Poset::from_cover_list(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let r = analyze(&p, false, &CountOptions::default()).unwrap();
        assert!(!r.graded && r.whidth.is_none());
        let r2 = analyze(&p2, true, &CountOptions::default()).unwrap();
        assert!(!r2.graded);
        assert!(r2.not_graded.is_some());
        assert!(render_text(&r2).contains("graded: no"));
    }

    #[test]
    fn k333_count() {
        let r = analyze(&fixture(Fixture::K333), true, &CountOptions::default()).unwrap();
        assert_eq!(r.counts.unwrap().aut, "216");
    }
}
