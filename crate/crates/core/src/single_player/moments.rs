use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Pow, Zero};

use super::solve::{solve_gf, GFTable};
use super::spec::GameSpec;
use crate::algebra::{binomial, AlgebraError, Poly, RatFunc, Rational};

/// Straight and central moments of the turn count `X_{n,s}`, `r = 0..=r_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub n: usize,
    pub s: usize,
    pub straight: Vec<Rational>,
    pub central: Vec<Rational>,
}

impl MomentReport {
    pub fn from_gf(n: usize, s: usize, g: &RatFunc, r_max: usize) -> Result<Self, AlgebraError> {
        let straight = straight_moments(g, r_max)?;
        let central = central_moments(&straight);
        Ok(MomentReport {
            n,
            s,
            straight,
            central,
        })
    }

    pub fn mean(&self) -> &Rational {
        &self.straight[1]
    }

    pub fn variance(&self) -> &Rational {
        &self.central[2]
    }
}

/// First `len` coefficients of `p(1 + h)` in powers of `h`.
fn taylor_at_one(p: &Poly, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|j| {
            p.coeffs()
                .iter()
                .enumerate()
                .skip(j)
                .fold(Rational::zero(), |acc, (i, c)| {
                    acc + c * Rational::from_integer(binomial(i as u64, j as i64).into())
                })
        })
        .collect()
}

/// `((x d/dx)^r g)(1)` for `r = 0..=r_max`.
///
/// Expands `g(1 + h)` to order `r_max`; the `h^j` coefficient times `j!` is
/// the `j`-th factorial moment, and Stirling numbers of the second kind turn
/// factorial moments into straight ones.
pub fn straight_moments(g: &RatFunc, r_max: usize) -> Result<Vec<Rational>, AlgebraError> {
    let len = r_max + 1;
    let num = taylor_at_one(g.num(), len);
    let den = taylor_at_one(g.den(), len);
    if den[0].is_zero() {
        return Err(AlgebraError::Pole(Rational::one()));
    }
    let mut t: Vec<Rational> = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = num[j].clone();
        for i in 1..=j {
            acc -= &den[i] * &t[j - i];
        }
        t.push(acc / &den[0]);
    }
    let mut factorial = Rational::one();
    let falling: Vec<Rational> = t
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if j > 0 {
                factorial *= Rational::from_integer(j.into());
            }
            c * &factorial
        })
        .collect();
    // stirling[j] holds S(r, j) for the current r.
    let mut stirling = vec![Rational::zero(); len];
    stirling[0] = Rational::one();
    let mut out = Vec::with_capacity(len);
    for r in 0..len {
        if r > 0 {
            for j in (1..=r).rev() {
                let kept = Rational::from_integer(j.into()) * &stirling[j];
                stirling[j] = kept + &stirling[j - 1];
            }
            stirling[0] = Rational::zero();
        }
        out.push((0..=r).fold(Rational::zero(), |acc, j| acc + &stirling[j] * &falling[j]));
    }
    Ok(out)
}

/// `E[(X - mu)^r]` from `E[X^i]`, `i = 0..=r`, where `mu = straight[1]` and
/// `straight[0]` is the total mass.
pub fn central_moments(straight: &[Rational]) -> Vec<Rational> {
    if straight.len() < 2 {
        return straight.to_vec();
    }
    let mu = &straight[1] / &straight[0];
    (0..straight.len())
        .map(|r| {
            (0..=r).fold(Rational::zero(), |acc, i| {
                let sign_mu: Rational = (-&mu).pow((r - i) as u32);
                let c = Rational::from_integer(binomial(r as u64, i as i64).into());
                acc + c * &straight[i] * sign_mu
            })
        })
        .collect()
}

/// Moments of `X_{n,s}` via the exact generating function.
pub fn moments(
    spec: &GameSpec,
    n: usize,
    s: usize,
    r_max: usize,
) -> Result<MomentReport, AlgebraError> {
    let table = solve_gf(spec, n)?;
    MomentReport::from_gf(n, s, table.get(s), r_max)
}

/// Moments for every start `s = 0..=n` of one table.
pub fn moment_table(table: &GFTable, r_max: usize) -> Result<Vec<MomentReport>, AlgebraError> {
    table
        .gfs()
        .iter()
        .enumerate()
        .map(|(s, g)| MomentReport::from_gf(table.n(), s, g, r_max))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn fair_mean_two() {
        let m = moments(&GameSpec::fair(), 2, 0, 1).unwrap();
        assert_eq!(m.straight, [rat(1, 1), rat(6, 1)]);
    }

    #[test]
    fn fair_single_step_is_geometric() {
        // X ~ Geometric(1/2) on {1, 2, ...}: E X = 2, E X^2 = 6, Var = 2
        let m = moments(&GameSpec::fair(), 1, 0, 2).unwrap();
        assert_eq!(m.straight[2], rat(6, 1));
        assert_eq!(m.central, [rat(1, 1), rat(0, 1), rat(2, 1)]);
    }

    #[test]
    fn one_minus_two_mean() {
        // n(3n+5)/6 - (1/9)(-1/2)^n minus the same at s, for n = 3, s = 1
        let m = moments(&GameSpec::one_minus(rat(2, 3), 2).unwrap(), 3, 1, 1).unwrap();
        assert_eq!(m.straight[1], rat(45, 8));
    }

    #[test]
    fn taylor_route_matches_repeated_derivatives() {
        let table = solve_gf(&GameSpec::two_minus_one(rat(1, 3)).unwrap(), 4).unwrap();
        for g in table.gfs() {
            let mut f = g.clone();
            let mut direct = alloc::vec![f.eval(&rat(1, 1)).unwrap()];
            for _ in 0..5 {
                f = f.x_derivative();
                direct.push(f.eval(&rat(1, 1)).unwrap());
            }
            assert_eq!(straight_moments(g, 5).unwrap(), direct);
        }
    }

    #[test]
    fn pole_at_one_is_reported() {
        let g = RatFunc::new(Poly::one(), Poly::from_i64s(&[1, -1])).unwrap();
        assert!(matches!(
            straight_moments(&g, 2),
            Err(AlgebraError::Pole(_))
        ));
    }

    #[test]
    fn finished_game_has_degenerate_moments() {
        let m = moments(&GameSpec::fair(), 3, 3, 3).unwrap();
        assert_eq!(m.straight, [rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(m.central, m.straight);
    }
}
