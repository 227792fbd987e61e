//! Low-order moments in closed form, and algebraic properties of the
//! recurrence over random rational inputs.

use hypermoment::walks::oracle_moment;
use hypermoment::{limiting_moments, ratio, BigRational, ExactParams, ExactWeights, STable, Scalar};
use proptest::prelude::*;

fn inv_fact(n: i64) -> BigRational {
    if n < 0 {
        return ratio(0, 1);
    }
    ratio(1, (1..=n).product::<i64>().max(1))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6).prop_map(|(a, b)| ratio(a, b))
}

fn positive_rational() -> impl Strategy<Value = BigRational> {
    (1i64..=12, 1i64..=6).prop_map(|(a, b)| ratio(a, b))
}

/// `X_1..X_k` that pass the moment-sequence checks.
fn weights(k: usize) -> impl Strategy<Value = ExactWeights> {
    proptest::collection::vec((rational(), positive_rational()), k.div_ceil(2)).prop_map(move |pairs| {
        let mut x = Vec::with_capacity(k);
        for (odd, even) in pairs {
            x.push(odd.clone());
            x.push(odd.clone() * odd + even);
        }
        x.truncate(k);
        ExactWeights::new(x).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn low_order_closed_forms(p in positive_rational(), x in weights(4), q in 2usize..=5) {
        let params = ExactParams::new(p.clone(), q).unwrap();
        let m = limiting_moments(4, &params, &x).unwrap();
        let xs = x.as_slice();
        let q = q as i64;

        let m2 = p.clone() * xs[2].clone() * inv_fact(q - 2);
        let m3 = p.clone() * xs[3].clone() * inv_fact(q - 3);
        let m4 = p.clone() * xs[4].clone() * (inv_fact(q - 2) + ratio(2, 1) * inv_fact(q - 3) + inv_fact(q - 4))
            + ratio(2, 1) * p.clone() * p.clone() * xs[2].clone() * xs[2].clone() * inv_fact(q - 2) * inv_fact(q - 2);

        prop_assert_eq!(&m.0[0], &ratio(1, 1));
        prop_assert_eq!(&m.0[1], &ratio(0, 1));
        prop_assert_eq!(&m.0[2], &m2);
        prop_assert_eq!(&m.0[3], &m3);
        prop_assert_eq!(&m.0[4], &m4);
        for k in 2..=4 {
            prop_assert_eq!(&oracle_moment(k, &params, &x).unwrap(), &m.0[k]);
        }
    }

    #[test]
    fn scaling_weights_scales_moments(p in positive_rational(), x in weights(7), c in rational(), q in 2usize..=4) {
        let params = ExactParams::new(p, q).unwrap();
        let base = limiting_moments(7, &params, &x).unwrap();
        let scaled = limiting_moments(7, &params, &x.scaled(&c)).unwrap();
        for k in 0..=7 {
            prop_assert_eq!(&scaled.0[k], &(c.powu(k as u32) * base.0[k].clone()));
        }
    }

    #[test]
    fn odd_moments_vanish_for_graphs(p in positive_rational(), x in weights(9)) {
        let params = ExactParams::new(p, 2).unwrap();
        let m = limiting_moments(9, &params, &x).unwrap();
        for k in (1..=9).step_by(2) {
            prop_assert_eq!(&m.0[k], &ratio(0, 1));
        }
    }

    #[test]
    fn unit_weights_give_nonnegative_tables(p in positive_rational(), q in 2usize..=5) {
        let params = ExactParams::new(p, q).unwrap();
        let table = STable::build(10, &params, &ExactWeights::ones(10)).unwrap();
        for l in 0..=10 {
            for r in 0..=l {
                prop_assert!(!table.get(l, r).unwrap().is_negative());
            }
            prop_assert!(!table.moments().0[l].is_negative());
        }
    }
}

#[test]
fn headline_parameters() {
    // q = 3, p = 2, symmetric sign weights
    let params = ExactParams::new(ratio(2, 1), 3).unwrap();
    let x = ExactWeights::new(vec![ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(1, 1)]).unwrap();
    let m = limiting_moments(4, &params, &x).unwrap();
    assert_eq!(m.0, vec![ratio(1, 1), ratio(0, 1), ratio(2, 1), ratio(0, 1), ratio(14, 1)]);
}

#[test]
fn constant_weight_scaling() {
    let params = ExactParams::new(ratio(1, 2), 3).unwrap();
    let ones = limiting_moments(6, &params, &ExactWeights::ones(6)).unwrap();
    let threes = limiting_moments(6, &params, &ExactWeights::constant(ratio(3, 1), 6)).unwrap();
    for k in 0..=6 {
        assert_eq!(threes.0[k], ratio(3, 1).powu(k as u32) * ones.0[k].clone());
    }
}
