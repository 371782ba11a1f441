//! Human-readable rendering: rational functions as integer-coefficient
//! fractions in `x`, ascending powers, e.g. `2*x/(4 - x)`.

use num_traits::{One, Signed, Zero};
use pilegame_core::algebra::Rational;
use pilegame_core::{Poly, RatFunc};

/// Integer coefficients of `p * scale`, ascending.
fn scaled(p: &Poly, scale: &Rational) -> Vec<Rational> {
    p.coeffs().iter().map(|c| c * scale).collect()
}

fn render_ascending(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if i == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
            if i > 0 {
                out.push('*');
            }
        }
        if i > 0 {
            out.push('x');
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Polynomial with rational coefficients, ascending powers.
pub fn poly(p: &Poly) -> String {
    render_ascending(p.coeffs())
}

fn wrap(s: String, coeffs: &[Rational]) -> String {
    if coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
        format!("({s})")
    } else {
        s
    }
}

/// `num/den` with both sides scaled to coprime integer coefficients and the
/// denominator's constant term positive.
pub fn ratfunc(f: &RatFunc) -> String {
    let all = f.num().coeffs().iter().chain(f.den().coeffs());
    let lcm = all.clone().fold(num_bigint::BigInt::one(), |acc, c| {
        num_integer::lcm(acc, c.denom().clone())
    });
    let gcd = all.fold(num_bigint::BigInt::zero(), |acc, c| {
        num_integer::gcd(acc, c.numer() * &lcm / c.denom())
    });
    let mut scale = Rational::new(lcm, gcd);
    if f.den()
        .coeffs()
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(Signed::is_negative)
    {
        scale = -scale;
    }
    let num = scaled(f.num(), &scale);
    let den = scaled(f.den(), &scale);
    if den.len() == 1 && den[0].is_one() {
        return render_ascending(&num);
    }
    format!(
        "{}/{}",
        wrap(render_ascending(&num), &num),
        wrap(render_ascending(&den), &den)
    )
}
