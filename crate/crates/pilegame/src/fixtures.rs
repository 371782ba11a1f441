//! Reference values shipped in `data/`, embedded at build time.
//!
//! Files are plain text: `#` starts a comment line, values are exact
//! rationals.

use pilegame_core::algebra::{parse_rational, Rational};

pub const WBAR_FAIR: &str = include_str!("../data/wbar_fair.txt");
pub const ENDGAME_N1: &str = include_str!("../data/endgame_n1.txt");

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// `(n, w(n))` for the fair `+1/-1` two-player game, `n = 1..=15`.
pub fn wbar_reference() -> Vec<(usize, Rational)> {
    data_lines(WBAR_FAIR)
        .enumerate()
        .map(|(i, l)| (i + 1, parse_rational(l).expect("fixture rational")))
        .collect()
}

/// Endgame moment sequences for target 1. Central sequences start at `r = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndgameFixture {
    pub y_straight: Vec<Rational>,
    pub y_central: Vec<Rational>,
    pub z_straight: Vec<Rational>,
    pub z_central: Vec<Rational>,
}

pub fn endgame_reference() -> EndgameFixture {
    let row = |name: &str| -> Vec<Rational> {
        let line = data_lines(ENDGAME_N1)
            .find(|l| l.split_whitespace().next() == Some(name))
            .unwrap_or_else(|| panic!("fixture row {name}"));
        line.split_whitespace()
            .skip(1)
            .map(|t| parse_rational(t).expect("fixture rational"))
            .collect()
    };
    EndgameFixture {
        y_straight: row("y_straight"),
        y_central: row("y_central"),
        z_straight: row("z_straight"),
        z_central: row("z_central"),
    }
}
