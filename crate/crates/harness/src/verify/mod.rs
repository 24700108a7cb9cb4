//! Bound-verification suites.
//!
//! Every suite returns a [`SuiteReport`] of named checks; a suite passes when
//! all of its checks do. Randomised inputs derive from a single seed.

mod oracle;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use oracle::{naive_automorphisms, naive_end_count};
pub use suites::whidth3_towers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Singles,
    Siblings,
    Whidth2,
    Whidth3,
    Whidth4Cases,
    ZeroPosets,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Singles,
        Suite::Siblings,
        Suite::Whidth2,
        Suite::Whidth3,
        Suite::Whidth4Cases,
        Suite::ZeroPosets,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Singles => "singles",
            Suite::Siblings => "siblings",
            Suite::Whidth2 => "whidth2",
            Suite::Whidth3 => "whidth3",
            Suite::Whidth4Cases => "whidth4-cases",
            Suite::ZeroPosets => "zero-posets",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Measured quantities worth reporting (maxima, witnesses, sizes).
    pub facts: BTreeMap<String, String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite: suite.name().to_string(),
            passed: true,
            checks: Vec::new(),
            facts: BTreeMap::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.insert(key.to_string(), value.to_string());
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut s = format!(
            "suite {}: {}\n",
            self.suite,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            s.push_str(&format!("  [{mark}] {}: {}\n", c.name, c.detail));
        }
        for (k, v) in &self.facts {
            s.push_str(&format!("  {k} = {v}\n"));
        }
        s
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(suite);
    match suite {
        Suite::Singles => suites::singles(&mut r, seed),
        Suite::Siblings => suites::siblings(&mut r, seed),
        Suite::Whidth2 => suites::whidth2(&mut r),
        Suite::Whidth3 => suites::whidth3(&mut r, seed),
        Suite::Whidth4Cases => suites::whidth4_cases(&mut r),
        Suite::ZeroPosets => suites::zero_posets(&mut r),
        Suite::Oracle => suites::oracle(&mut r, seed),
    }
    r
}
