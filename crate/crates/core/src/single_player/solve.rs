use alloc::vec;
use alloc::vec::Vec;

use super::spec::{GameSpec, Next};
use crate::algebra::{AlgebraError, Matrix, Poly, RatFunc, Rational};

/// `G_{n,s}(x)` for `s = 0..=n`, all over the same game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFTable {
    n: usize,
    spec: GameSpec,
    gfs: Vec<RatFunc>,
}

impl GFTable {
    /// `gfs[s]` for `s = 0..=n`; the last entry must be 1.
    pub fn new(n: usize, spec: GameSpec, gfs: Vec<RatFunc>) -> Self {
        assert_eq!(gfs.len(), n + 1);
        debug_assert!(gfs[n].is_one());
        GFTable { n, spec, gfs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn gfs(&self) -> &[RatFunc] {
        &self.gfs
    }

    /// `G_{n,s}`; any start at or beyond the target gives 1.
    pub fn get(&self, s: usize) -> &RatFunc {
        &self.gfs[s.min(self.n)]
    }

    /// Least common multiple of the reduced denominators, constant term 1.
    pub fn common_denominator(&self) -> Poly {
        let mut acc = Poly::one();
        for g in &self.gfs {
            if !g.den().is_one() {
                acc = Poly::lcm(&acc, g.den()).expect("nonzero denominators");
            }
        }
        normalize_constant_term(&acc)
    }
}

/// Scales `p` so its lowest-order nonzero coefficient is 1.
pub(crate) fn normalize_constant_term(p: &Poly) -> Poly {
    match p.low_order() {
        None => Poly::zero(),
        Some(i) => p.scale(&p.coeffs()[i].recip()),
    }
}

/// Solves `G_s = sum_r prob_r * x * G_{next(s, r)}` (`G = 1` once absorbed) for
/// `s = 0..n` exactly over Q(x).
pub fn solve_gf(spec: &GameSpec, n: usize) -> Result<GFTable, AlgebraError> {
    if n == 0 {
        return Ok(GFTable::new(0, spec.clone(), vec![RatFunc::one()]));
    }
    let px = |p: &Rational| RatFunc::from_poly(Poly::monomial(p.clone(), 1));
    let mut rows = vec![vec![RatFunc::zero(); n]; n];
    let mut rhs = vec![RatFunc::zero(); n];
    for s in 0..n {
        rows[s][s] = RatFunc::one();
        for (step, p) in spec.choices() {
            match GameSpec::next(n, s, *step) {
                Next::Absorbed => rhs[s] = &rhs[s] + &px(p),
                Next::State(t) => rows[s][t] = &rows[s][t] - &px(p),
            }
        }
    }
    let mut gfs = Matrix::from_rows(rows)?.solve(&rhs)?;
    gfs.push(RatFunc::one());
    Ok(GFTable::new(n, spec.clone(), gfs))
}
