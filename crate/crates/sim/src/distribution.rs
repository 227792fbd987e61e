//! Hyperedge weight laws with exact moments.

use std::fmt;
use std::str::FromStr;

use hypermoment::{parse_rational, BigRational, ExactWeights, Scalar};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::SimError;

/// Flag grammar: `const:c`, `sign`, `twopoint:a,b,pi`, `gauss:sigma`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum WeightDistribution {
    Constant(BigRational),
    /// `a` with probability `pi`, `b` otherwise.
    TwoPoint { a: BigRational, b: BigRational, pi: BigRational },
    /// `±1` with probability 1/2 each.
    Sign,
    /// Centered normal with standard deviation `sigma`. A rational `sigma`
    /// keeps every moment `sigma^k (k-1)!!` rational.
    Gaussian { sigma: BigRational },
}

impl WeightDistribution {
    pub fn exact_moment(&self, k: usize) -> BigRational {
        let k32 = k as u32;
        match self {
            Self::Constant(c) => c.powu(k32),
            Self::TwoPoint { a, b, pi } => {
                pi.clone() * a.powu(k32) + (BigRational::from_u64(1) - pi.clone()) * b.powu(k32)
            }
            Self::Sign => BigRational::from_u64(u64::from(k.is_multiple_of(2))),
            Self::Gaussian { sigma } => {
                if k % 2 == 1 {
                    return BigRational::from_u64(0);
                }
                let double_fact = (1..k as u64).step_by(2).fold(BigRational::from_u64(1), |acc, i| acc * BigRational::from_u64(i));
                sigma.powu(k32) * double_fact
            }
        }
    }

    /// `X_1, ..., X_{k_max}`.
    pub fn moment_seq(&self, k_max: usize) -> ExactWeights {
        let x = (1..=k_max).map(|k| self.exact_moment(k)).collect();
        ExactWeights::new(x).expect("moments of a real distribution form a valid sequence")
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Self::Constant(c) => c.to_f64(),
            Self::TwoPoint { a, b, pi } => {
                if rng.random::<f64>() < pi.to_f64() {
                    a.to_f64()
                } else {
                    b.to_f64()
                }
            }
            Self::Sign => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            Self::Gaussian { sigma } => {
                let normal = Normal::new(0.0, sigma.to_f64()).expect("sigma validated at construction");
                normal.sample(rng)
            }
        }
    }

    /// True when the law is a.s. zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Self::Constant(c) => c.to_f64() == 0.0,
            Self::TwoPoint { a, b, pi } => {
                let zero = BigRational::from_u64(0);
                (*a == zero || *pi == zero) && (*b == zero || *pi == BigRational::from_u64(1))
            }
            Self::Sign => false,
            Self::Gaussian { sigma } => sigma.to_f64() == 0.0,
        }
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "const:{c}"),
            Self::TwoPoint { a, b, pi } => write!(f, "twopoint:{a},{b},{pi}"),
            Self::Sign => write!(f, "sign"),
            Self::Gaussian { sigma } => write!(f, "gauss:{sigma}"),
        }
    }
}

impl FromStr for WeightDistribution {
    type Err = SimError;

    fn from_str(spec: &str) -> Result<Self, SimError> {
        let fail = |reason: &str| SimError::InvalidDistribution { spec: spec.to_string(), reason: reason.to_string() };
        let num = |s: &str| parse_rational(s).ok_or_else(|| fail(&format!("`{s}` is not a number")));
        let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
        match kind.trim() {
            "sign" if args.is_empty() => Ok(Self::Sign),
            "const" => Ok(Self::Constant(num(args)?)),
            "twopoint" => {
                let parts: Vec<&str> = args.split(',').collect();
                let [a, b, pi] = parts.as_slice() else {
                    return Err(fail("expected twopoint:a,b,pi"));
                };
                let pi = num(pi)?;
                if pi < BigRational::from_u64(0) || pi > BigRational::from_u64(1) {
                    return Err(fail("pi must lie in [0, 1]"));
                }
                Ok(Self::TwoPoint { a: num(a)?, b: num(b)?, pi })
            }
            "gauss" => {
                let sigma = num(args)?;
                if sigma.is_negative() {
                    return Err(fail("sigma must be nonnegative"));
                }
                Ok(Self::Gaussian { sigma })
            }
            _ => Err(fail("expected const:c, sign, twopoint:a,b,pi or gauss:sigma")),
        }
    }
}

impl From<WeightDistribution> for String {
    fn from(d: WeightDistribution) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for WeightDistribution {
    type Error = SimError;

    fn try_from(s: String) -> Result<Self, SimError> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypermoment::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_grammar() {
        assert_eq!("sign".parse::<WeightDistribution>().unwrap(), WeightDistribution::Sign);
        assert_eq!("const:1".parse::<WeightDistribution>().unwrap(), WeightDistribution::Constant(ratio(1, 1)));
        assert_eq!(
            "twopoint:2,-1,0.5".parse::<WeightDistribution>().unwrap(),
            WeightDistribution::TwoPoint { a: ratio(2, 1), b: ratio(-1, 1), pi: ratio(1, 2) }
        );
        assert_eq!(
            "gauss:0.5".parse::<WeightDistribution>().unwrap(),
            WeightDistribution::Gaussian { sigma: ratio(1, 2) }
        );
        for bad in ["", "sign:1", "const:x", "twopoint:1,2", "twopoint:1,2,1.5", "gauss:-1", "cauchy:1"] {
            assert!(bad.parse::<WeightDistribution>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for spec in ["sign", "const:3/2", "twopoint:2,-1,1/2", "gauss:1/4"] {
            let d: WeightDistribution = spec.parse().unwrap();
            assert_eq!(d.to_string(), spec);
            assert_eq!(d.to_string().parse::<WeightDistribution>().unwrap(), d);
        }
    }

    #[test]
    fn analytic_moments() {
        let sign = WeightDistribution::Sign;
        let gauss = WeightDistribution::Gaussian { sigma: ratio(2, 1) };
        let tp = WeightDistribution::TwoPoint { a: ratio(2, 1), b: ratio(-1, 1), pi: ratio(1, 2) };
        for k in 0..10 {
            assert_eq!(sign.exact_moment(k), ratio(i64::from(k % 2 == 0), 1));
        }
        assert_eq!(gauss.exact_moment(2), ratio(4, 1));
        assert_eq!(gauss.exact_moment(4), ratio(48, 1));
        assert_eq!(gauss.exact_moment(6), ratio(64 * 15, 1));
        assert_eq!(gauss.exact_moment(5), ratio(0, 1));
        assert_eq!(tp.exact_moment(1), ratio(1, 2));
        assert_eq!(tp.exact_moment(3), ratio(7, 2));
    }

    #[test]
    fn laws_satisfy_growth_bound() {
        for spec in ["sign", "const:3", "twopoint:2,-1,0.5", "gauss:1.5"] {
            let d: WeightDistribution = spec.parse().unwrap();
            let x = d.moment_seq(20);
            assert!(x.is_carleman_admissible(3.0), "{spec}");
        }
    }

    #[test]
    fn sample_means_match() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in ["sign", "twopoint:2,-1,0.25", "gauss:0.5"] {
            let d: WeightDistribution = spec.parse().unwrap();
            let n = 200_000;
            let draws: Vec<f64> = (0..n).map(|_| d.sample(&mut rng)).collect();
            for k in 1..=2 {
                let mean = draws.iter().map(|a| a.powi(k as i32)).sum::<f64>() / n as f64;
                let exact = d.exact_moment(k).to_f64();
                let var = d.exact_moment(2 * k).to_f64() - exact * exact;
                assert!((mean - exact).abs() < 5.0 * (var / n as f64).sqrt() + 1e-12, "{spec} k={k}");
            }
        }
    }
}
