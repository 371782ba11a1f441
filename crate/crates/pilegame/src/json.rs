//! JSON encodings.
//!
//! * rational: string `"a/b"` (or `"a"` for integers);
//! * polynomial: array of rationals, ascending powers of `x`;
//! * rational function: `{"num": poly, "den": poly}`;
//! * recurrence: `{"order", "coeffs", "initials", "offset"}`;
//! * tables and results as documented on each encoder.

use pilegame_core::algebra::{parse_rational, AlgebraError};
use pilegame_core::cfinite::CFiniteError;
use pilegame_core::mc::{SimConfig, SimReport, Starts};
use pilegame_core::{
    CFiniteRec, EndgameMoments, GFTable, GameSpec, MomentReport, Poly, RatFunc, Rational,
    SpecError, TwoPlayerResult,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("expected {expected} at {path}")]
    Shape {
        expected: &'static str,
        path: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    CFinite(#[from] CFiniteError),
}

fn shape(expected: &'static str, path: &str) -> FormatError {
    FormatError::Shape {
        expected,
        path: path.to_string(),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, FormatError> {
    v.get(key).ok_or_else(|| shape("field", key))
}

fn usize_field(v: &Value, key: &str) -> Result<usize, FormatError> {
    field(v, key)?
        .as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| shape("non-negative integer", key))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational, FormatError> {
    let s = v
        .as_str()
        .ok_or_else(|| shape("rational string", "value"))?;
    Ok(parse_rational(s)?)
}

pub fn rationals_to_json(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rational_to_json).collect())
}

pub fn rationals_from_json(v: &Value) -> Result<Vec<Rational>, FormatError> {
    v.as_array()
        .ok_or_else(|| shape("array of rationals", "value"))?
        .iter()
        .map(rational_from_json)
        .collect()
}

pub fn poly_to_json(p: &Poly) -> Value {
    rationals_to_json(p.coeffs())
}

pub fn poly_from_json(v: &Value) -> Result<Poly, FormatError> {
    Ok(Poly::new(rationals_from_json(v)?))
}

pub fn ratfunc_to_json(f: &RatFunc) -> Value {
    json!({ "num": poly_to_json(f.num()), "den": poly_to_json(f.den()) })
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFunc, FormatError> {
    Ok(RatFunc::new(
        poly_from_json(field(v, "num")?)?,
        poly_from_json(field(v, "den")?)?,
    )?)
}

/// `{"n", "spec", "gfs": [G_{n,0}, ..., G_{n,n}]}`.
pub fn gf_table_to_json(t: &GFTable) -> Value {
    json!({
        "n": t.n(),
        "spec": t.spec().to_string(),
        "gfs": t.gfs().iter().map(ratfunc_to_json).collect::<Vec<_>>(),
    })
}

pub fn gf_table_from_json(v: &Value) -> Result<GFTable, FormatError> {
    let spec: GameSpec = field(v, "spec")?
        .as_str()
        .ok_or_else(|| shape("string", "spec"))?
        .parse()?;
    let gfs = field(v, "gfs")?
        .as_array()
        .ok_or_else(|| shape("array", "gfs"))?
        .iter()
        .map(ratfunc_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GFTable::new(usize_field(v, "n")?, spec, gfs))
}

pub fn cfinite_to_json(r: &CFiniteRec) -> Value {
    json!({
        "order": r.order(),
        "coeffs": rationals_to_json(r.coeffs()),
        "initials": rationals_to_json(r.initials()),
        "offset": r.offset(),
    })
}

pub fn cfinite_from_json(v: &Value) -> Result<CFiniteRec, FormatError> {
    let rec = CFiniteRec::new(
        rationals_from_json(field(v, "coeffs")?)?,
        rationals_from_json(field(v, "initials")?)?,
        usize_field(v, "offset")?,
    )?;
    if rec.order() != usize_field(v, "order")? {
        return Err(shape("order equal to the number of coefficients", "order"));
    }
    Ok(rec)
}

/// `{"n", "s1", "s2", "W", "L", "T", "wbar", "degree_bound"}`.
pub fn two_player_to_json(r: &TwoPlayerResult) -> Value {
    json!({
        "n": r.n,
        "s1": r.s1,
        "s2": r.s2,
        "W": ratfunc_to_json(&r.w),
        "L": ratfunc_to_json(&r.l),
        "T": ratfunc_to_json(&r.t),
        "wbar": rational_to_json(&r.wbar),
        "degree_bound": r.degree_bound(),
    })
}

pub fn two_player_from_json(v: &Value) -> Result<TwoPlayerResult, FormatError> {
    Ok(TwoPlayerResult {
        n: usize_field(v, "n")?,
        s1: usize_field(v, "s1")?,
        s2: usize_field(v, "s2")?,
        w: ratfunc_from_json(field(v, "W")?)?,
        l: ratfunc_from_json(field(v, "L")?)?,
        t: ratfunc_from_json(field(v, "T")?)?,
        wbar: rational_from_json(field(v, "wbar")?)?,
    })
}

/// Central moment arrays start at `r = 0`.
pub fn moments_to_json(m: &MomentReport) -> Value {
    json!({
        "n": m.n,
        "s": m.s,
        "straight": rationals_to_json(&m.straight),
        "central": rationals_to_json(&m.central),
    })
}

pub fn endgame_to_json(m: &EndgameMoments) -> Value {
    json!({
        "n": m.n,
        "Y": { "straight": rationals_to_json(&m.y_straight), "central": rationals_to_json(&m.y_central) },
        "Z": { "straight": rationals_to_json(&m.z_straight), "central": rationals_to_json(&m.z_central) },
    })
}

/// Exact values a simulation is compared against.
#[derive(Clone, Debug, Default)]
pub struct SimTargets {
    pub mean_turns: Option<Rational>,
    pub win_rate: Option<Rational>,
}

fn decimal(x: f64) -> Value {
    Value::String(format!("{x}"))
}

/// Statistics as decimal strings, followed by the exact targets (and their
/// distance in standard errors) when supplied.
pub fn sim_report_to_json(cfg: &SimConfig, r: &SimReport, targets: &SimTargets) -> Value {
    let mut m = Map::new();
    m.insert("spec".into(), cfg.spec.to_string().into());
    m.insert("n".into(), cfg.n.into());
    match cfg.starts {
        Starts::Single(s) => {
            m.insert("s".into(), s.into());
        }
        Starts::Two(s1, s2) => {
            m.insert("s1".into(), s1.into());
            m.insert("s2".into(), s2.into());
        }
    }
    m.insert("seed".into(), cfg.seed.into());
    m.insert("trials".into(), r.trials.into());
    m.insert("cap".into(), cfg.max_turns_cap.into());
    m.insert("truncated".into(), r.truncated.into());
    m.insert("mean_turns".into(), decimal(r.mean_turns));
    m.insert("var_turns".into(), decimal(r.var_turns));
    m.insert("se_mean".into(), decimal(r.se_mean));
    m.insert("win_rate".into(), decimal(r.win_rate));
    m.insert("se_win_rate".into(), decimal(r.se_win_rate));
    let mut compare = |name: &str, exact: &Option<Rational>, est: f64, se: f64| {
        if let Some(x) = exact {
            let xf = to_f64(x);
            m.insert(format!("exact_{name}"), rational_to_json(x));
            let z = if se > 0.0 {
                (est - xf).abs() / se
            } else if est == xf {
                0.0
            } else {
                f64::INFINITY
            };
            m.insert(format!("z_{name}"), decimal(z));
        }
    };
    compare("mean_turns", &targets.mean_turns, r.mean_turns, r.se_mean);
    compare("win_rate", &targets.win_rate, r.win_rate, r.se_win_rate);
    Value::Object(m)
}

/// Nearest `f64` up to a few ulps; only used for comparisons with estimates.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
