//! Cross-checking pipelines.
//!
//! Single-player families compare the first [`SERIES_TERMS`] coefficients of
//! the dynamic program, the linear solve and the recursion in `n`, and check
//! that every reduced denominator divides the family's denominator
//! recurrence. The two-player pipeline compares the guessed `W(1)`, the
//! linear system at `x = 1`, the squared-sum route and the reference list.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use pilegame_core::algebra::{rat, Rational};
use pilegame_core::single_player::{
    denom_recurrence, dp_prob_series, gf_recursive_1m1, gf_recursive_1mu, gf_recursive_2m1,
    solve_gf, DenomFamily,
};
use pilegame_core::two_player::{two_player, winprob_exact, winprob_squares};
use pilegame_core::GameSpec;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::fixtures::wbar_reference;

pub const SERIES_TERMS: usize = 30;

/// Probabilities of the up step used for single-player families.
pub fn probabilities() -> [Rational; 3] {
    [rat(1, 2), rat(1, 3), rat(2, 3)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    PlusMinusOne,
    OneMinusU(u32),
    TwoMinusOne,
    TwoPlayer,
    All,
}

impl FromStr for Family {
    type Err = String;

    /// `pm1`, `1mu(u)` (also `1mu:u`), `2m1`, `twoplayer`, `all`.
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pm1" => return Ok(Family::PlusMinusOne),
            "2m1" => return Ok(Family::TwoMinusOne),
            "twoplayer" => return Ok(Family::TwoPlayer),
            "all" => return Ok(Family::All),
            _ => {}
        }
        let u = s
            .strip_prefix("1mu(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("1mu:"))
            .and_then(|u| u.parse::<u32>().ok())
            .filter(|&u| u >= 1);
        u.map(Family::OneMinusU).ok_or_else(|| {
            format!("unknown family {s:?}: expected pm1, 1mu(u), 2m1, twoplayer or all")
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::PlusMinusOne => f.write_str("pm1"),
            Family::OneMinusU(u) => write!(f, "1mu({u})"),
            Family::TwoMinusOne => f.write_str("2m1"),
            Family::TwoPlayer => f.write_str("twoplayer"),
            Family::All => f.write_str("all"),
        }
    }
}

impl Family {
    fn members(self) -> Vec<Family> {
        match self {
            Family::All => vec![
                Family::PlusMinusOne,
                Family::OneMinusU(2),
                Family::OneMinusU(3),
                Family::TwoMinusOne,
                Family::TwoPlayer,
            ],
            f => vec![f],
        }
    }

    fn denom_family(self) -> Option<DenomFamily> {
        match self {
            Family::PlusMinusOne => Some(DenomFamily::PlusMinusOne),
            Family::OneMinusU(u) => Some(DenomFamily::OneMinusU(u)),
            Family::TwoMinusOne => Some(DenomFamily::TwoMinusOne),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub family: Family,
    pub p: Option<Rational>,
    pub n: usize,
    pub checks: Vec<(&'static str, bool)>,
    /// Why a case could not be run, if it could not.
    pub error: Option<String>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub cases: Vec<CaseResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "cases": self.cases.iter().map(|c| {
                let checks: serde_json::Map<String, Value> =
                    c.checks.iter().map(|(k, v)| (k.to_string(), Value::Bool(*v))).collect();
                json!({
                    "family": c.family.to_string(),
                    "p": c.p.as_ref().map(ToString::to_string),
                    "n": c.n,
                    "checks": checks,
                    "error": c.error,
                    "passed": c.passed(),
                })
            }).collect::<Vec<_>>(),
        })
    }

    /// One line per case.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let p = c.p.as_ref().map_or("-".to_string(), ToString::to_string);
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "{mark} {:<10} p={:<4} n={:<3}",
                c.family.to_string(),
                p,
                c.n
            ));
            for (name, ok) in &c.checks {
                out.push_str(&format!("  {name}: {}", if *ok { "yes" } else { "NO" }));
            }
            if let Some(e) = &c.error {
                out.push_str(&format!("  error: {e}"));
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} cases, {} failed\n", self.cases.len(), failed));
        out
    }
}

fn single_case(
    family: Family,
    p: &Rational,
    n: usize,
) -> Result<Vec<(&'static str, bool)>, String> {
    let denom = family.denom_family().expect("single-player family");
    let spec = denom.spec(p).map_err(|e| e.to_string())?;
    let solved = solve_gf(&spec, n).map_err(|e| e.to_string())?;
    let mut extra = Vec::new();
    let recursive = match family {
        Family::PlusMinusOne => gf_recursive_1m1(p, n).map_err(|e| e.to_string())?,
        Family::OneMinusU(u) => gf_recursive_1mu(p, u, n).map_err(|e| e.to_string())?,
        _ => {
            let split = gf_recursive_2m1(p, n).map_err(|e| e.to_string())?;
            let sums = (0..=n).all(|s| &split.pairs[s].total() == split.table.get(s));
            extra.push(("landing + overshoot = total", sums));
            split.table
        }
    };
    let mut dp_solve = true;
    let mut dp_rec = true;
    for s in 0..=n {
        let dp = dp_prob_series(&spec, n, s, SERIES_TERMS - 1);
        dp_solve &= solved
            .get(s)
            .series(SERIES_TERMS - 1)
            .is_ok_and(|x| x == dp);
        dp_rec &= recursive
            .get(s)
            .series(SERIES_TERMS - 1)
            .is_ok_and(|x| x == dp);
    }
    let q = denom_recurrence(denom, p, n).map_err(|e| e.to_string())?;
    let divides = solved
        .gfs()
        .iter()
        .all(|g| q.is_divisible_by(g.den()).unwrap_or(false));
    let mut checks = vec![
        ("dp = solve", dp_solve),
        ("dp = recursion", dp_rec),
        ("denominator divides recurrence", divides),
    ];
    checks.extend(extra);
    Ok(checks)
}

fn two_player_case(
    n: usize,
    reference: &[(usize, Rational)],
) -> Result<Vec<(&'static str, bool)>, String> {
    let spec = GameSpec::fair();
    let r = two_player(&spec, n, 0, 0).map_err(|e| e.to_string())?;
    let exact = winprob_exact(&spec, n).map_err(|e| e.to_string())?;
    let squares = winprob_squares(&spec, n).map_err(|e| e.to_string())?;
    let one = Rational::one();
    let lose = r.l.eval(&one).map_err(|e| e.to_string())?;
    let mut checks = vec![
        ("guess = system at x=1", r.wbar == exact),
        ("squared sum = system at x=1", squares == exact),
        ("W(1) + L(1) = 1", &r.wbar + &lose == one),
        ("T(1) = 1", r.t.eval(&one).is_ok_and(|t| t == one)),
        ("first mover ahead", exact > rat(1, 2)),
    ];
    if let Some((_, v)) = reference.iter().find(|(i, _)| *i == n) {
        checks.push(("matches reference list", *v == exact));
    }
    Ok(checks)
}

/// Runs the pipeline for `family` up to `n_max`. Cases run in parallel and
/// are reported sorted by family, probability and `n`. `progress` receives
/// one message per finished case.
pub fn verify_pipeline(
    family: Family,
    n_max: usize,
    progress: &(dyn Fn(&str) + Sync),
) -> VerifyReport {
    let mut jobs: Vec<(Family, Option<Rational>, usize)> = Vec::new();
    for f in family.members() {
        if f == Family::TwoPlayer {
            jobs.extend((1..=n_max).map(|n| (f, None, n)));
        } else {
            for p in probabilities() {
                jobs.extend((0..=n_max).map(|n| (f, Some(p.clone()), n)));
            }
        }
    }
    let reference = wbar_reference();
    let cases = jobs
        .into_par_iter()
        .map(|(f, p, n)| {
            let result = match &p {
                Some(p) => single_case(f, p, n),
                None => two_player_case(n, &reference),
            };
            let (checks, error) = match result {
                Ok(c) => (c, None),
                Err(e) => (Vec::new(), Some(e)),
            };
            let case = CaseResult {
                family: f,
                p,
                n,
                checks,
                error,
            };
            progress(&format!(
                "{} {} n={} {}",
                case.family,
                case.p.as_ref().map_or(String::new(), |p| format!("p={p}")),
                n,
                if case.passed() { "ok" } else { "FAILED" }
            ));
            case
        })
        .collect();
    VerifyReport { cases }
}
