use num_traits::{One, Zero};
use pilegame_core::algebra::{rat, Matrix, Poly, RatFunc, Rational};
use pilegame_core::cfinite::{guess_recurrence, CFiniteRec};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(a, b)| rat(a, b))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..=max_len).prop_map(Poly::new)
}

/// Denominator with constant term 1 so the function has a power series.
fn series_den(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..=max_deg).prop_map(|mut tail| {
        tail.insert(0, Rational::one());
        Poly::new(tail)
    })
}

/// Determinant of the Hankel matrix `h[i + j]`, `0 <= i, j < k`, by cofactors.
fn hankel_det(h: &[Rational], k: usize) -> Rational {
    fn det(m: Vec<Vec<Rational>>) -> Rational {
        if m.is_empty() {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for (c, lead) in m[0].iter().enumerate() {
            if lead.is_zero() {
                continue;
            }
            let minor = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = lead * det(minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    det((0..k)
        .map(|i| (0..k).map(|j| h[i + j].clone()).collect())
        .collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_is_canonical(num in poly(4), den in series_den(3), common in series_den(2)) {
        let f = RatFunc::new(num.clone(), den.clone()).unwrap();
        let g = RatFunc::new(&num * &common, &den * &common).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert!(Poly::gcd(f.den(), f.num()).unwrap().is_one());
        if let Some(k) = f.den().low_order() {
            prop_assert!(f.den().coeff(k).is_one());
        }
    }

    #[test]
    fn series_recurrence_round_trip(num in poly(3), den in series_den(3)) {
        let f = RatFunc::new(num, den).unwrap();
        let terms = f.series(19).unwrap().into_coeffs();
        let rec = guess_recurrence(&terms, 6).unwrap().expect("rational data must fit");
        prop_assert_eq!(rec.to_ratfunc(), f.clone());
        prop_assert_eq!(rec.terms(20), terms);
    }

    #[test]
    fn x_derivative_product_rule(a in poly(3), b in series_den(2), c in poly(3), d in series_den(2)) {
        let f = RatFunc::new(a, b).unwrap();
        let g = RatFunc::new(c, d).unwrap();
        let lhs = (&f * &g).x_derivative();
        let rhs = &(&f.x_derivative() * &g) + &(&f * &g.x_derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_solve_satisfies_system(entries in prop::collection::vec(small_rat(), 16), b in prop::collection::vec(small_rat(), 4)) {
        let rows: Vec<Vec<Rational>> = entries.chunks(4).map(<[Rational]>::to_vec).collect();
        let a = Matrix::from_rows(rows).unwrap();
        if let Ok(x) = a.solve(&b) {
            prop_assert_eq!(a.mul_vec(&x), b);
        }
    }

    #[test]
    fn ratfunc_solve_satisfies_system(entries in prop::collection::vec((poly(2), series_den(1)), 9), b in prop::collection::vec(poly(2), 3)) {
        let rows: Vec<Vec<RatFunc>> = entries
            .chunks(3)
            .map(|r| r.iter().map(|(n, d)| RatFunc::new(n.clone(), d.clone()).unwrap()).collect())
            .collect();
        let b: Vec<RatFunc> = b.into_iter().map(RatFunc::from).collect();
        let a = Matrix::from_rows(rows).unwrap();
        if let Ok(x) = a.solve(&b) {
            prop_assert_eq!(a.mul_vec(&x), b);
        }
    }

    /// Minimal recurrence order equals the largest `k` with a nonzero
    /// `k x k` Hankel determinant, for sequences of generic rank.
    #[test]
    fn guessed_order_matches_hankel_rank(coeffs in prop::collection::vec(small_rat(), 1..=3), init in prop::collection::vec(small_rat(), 3)) {
        let order = coeffs.len();
        prop_assume!(!coeffs[order - 1].is_zero() && !init[0].is_zero());
        let rec = CFiniteRec::new(coeffs, init[..order].to_vec(), 0).unwrap();
        let terms = rec.terms(16);
        let rank = (0..=order + 1).rev().find(|&k| !hankel_det(&terms, k).is_zero()).unwrap();
        let fit = guess_recurrence(&terms, 5).unwrap().unwrap();
        prop_assert!(fit.order() <= order);
        prop_assert_eq!(fit.terms(16), terms);
        if rank == order {
            prop_assert_eq!(fit.order(), order);
        }
    }
}

#[test]
fn guess_refuses_beyond_order_bound() {
    // Fibonacci needs order 2.
    let mut fib = vec![rat(0, 1), rat(1, 1)];
    for i in 2..12 {
        let next = &fib[i - 1] + &fib[i - 2];
        fib.push(next);
    }
    assert!(guess_recurrence(&fib, 1).unwrap().is_none());
    assert_eq!(guess_recurrence(&fib, 2).unwrap().unwrap().order(), 2);
}
