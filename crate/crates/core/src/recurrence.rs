//! Limiting moments through the first-hyperedge splitting recurrence.
//!
//! `S(l, r)` is the total weight of essential walks of length `l` that leave
//! the root exactly `r` times. Removing the first hyperedge of such a walk
//! splits its skeleton into the within-edge walk (counted by [`KTable`])
//! and one sub-hypertree hanging from each vertex of that edge; the
//! binomials count the ways the departures at each attachment vertex
//! interleave with the within-edge steps.
//!
//! Sums over the sub-walk lengths `u` with `||u||_1 = l - ||f||_1` are
//! evaluated as a convolution of per-vertex generating sequences.

use num_traits::Zero;

use crate::combinatorics::{binomial, compositions, inv_factorial};
use crate::error::Result;
use crate::kcount::KTable;
use crate::params::{ModelParams, MomentTable, WeightMomentSeq};
use crate::scalar::Scalar;

/// `S(l, r)` for all `l <= l_max`, `r <= l / 2`. Immutable once built.
#[derive(Debug, Clone)]
pub struct STable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> STable<T> {
    pub fn build(l_max: usize, params: &ModelParams<T>, x: &WeightMomentSeq<T>) -> Result<Self> {
        x.require(l_max)?;
        let mut builder = Builder { params, x, kt: KTable::new(), rows: Vec::with_capacity(l_max + 1) };
        builder.rows.push(vec![T::one()]);
        for l in 1..=l_max {
            let mut row = vec![T::zero()];
            for r in 1..=l / 2 {
                let v = builder.splitting_sum(l, r)?;
                row.push(v);
            }
            builder.rows.push(row);
        }
        Ok(Self { rows: builder.rows })
    }

    pub fn l_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(l, r)`, zero for `r > l / 2`. `None` when `l` is outside the table.
    pub fn get(&self, l: usize, r: usize) -> Option<T> {
        let row = self.rows.get(l)?;
        Some(row.get(r).cloned().unwrap_or_else(T::zero))
    }

    /// `m_k = Σ_r S(k, r)` for every `k` in the table.
    pub fn moments(&self) -> MomentTable<T> {
        MomentTable(
            self.rows
                .iter()
                .map(|row| row.iter().cloned().fold(T::zero(), |a, b| a + b))
                .collect(),
        )
    }
}

struct Builder<'a, T> {
    params: &'a ModelParams<T>,
    x: &'a WeightMomentSeq<T>,
    kt: KTable,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> Builder<'_, T> {
    fn s(&self, l: usize, r: usize) -> T {
        self.rows[l].get(r).cloned().unwrap_or_else(T::zero)
    }

    // Σ_{v <= u/2} C(f_i + v - 1, f_i - 1) S(u, v) for u = 0..=len.
    fn attached_weights(&self, fi: u32, len: usize) -> Vec<T> {
        (0..=len)
            .map(|u| {
                (0..=u / 2).fold(T::zero(), |acc, v| {
                    let c = binomial(i64::from(fi) + v as i64 - 1, i64::from(fi) - 1);
                    if c.is_zero() {
                        acc
                    } else {
                        acc + T::from_biguint(&c) * self.s(u, v)
                    }
                })
            })
            .collect()
    }

    fn splitting_sum(&mut self, l: usize, r: usize) -> Result<T> {
        let q = self.params.q();
        let p = self.params.p().clone();
        let mut total = T::zero();
        for kappa in 1..=q.min(l) {
            let inv_fact: T = inv_factorial((q - kappa) as u64);
            for big_f in kappa..=l {
                let x_f = self.x.get(big_f)?.clone();
                if x_f.is_zero() {
                    continue;
                }
                let rem = l - big_f;
                for f in compositions(big_f as u32, kappa, 1) {
                    let f1 = f[0] as usize;
                    if f1 > r {
                        continue;
                    }
                    let k = self.kt.k_count(kappa, 1, &f.clone().into())?;
                    if k.is_zero() {
                        continue;
                    }
                    let root_codes = binomial(r as i64 - 1, f1 as i64 - 1);

                    let mut conv: Vec<T> = (0..=rem).map(|u| self.s(u, r - f1)).collect();
                    for &fi in &f[1..] {
                        let g = self.attached_weights(fi, rem);
                        conv = truncated_convolution(&conv, &g, rem);
                    }
                    let tail = conv[rem].clone();
                    if tail.is_zero() {
                        continue;
                    }
                    total = total
                        + p.clone()
                            * x_f.clone()
                            * inv_fact.clone()
                            * T::from_biguint(&k)
                            * T::from_biguint(&root_codes)
                            * tail;
                }
            }
        }
        Ok(total)
    }
}

fn truncated_convolution<T: Scalar>(a: &[T], b: &[T], len: usize) -> Vec<T> {
    (0..=len)
        .map(|n| {
            (0..=n).fold(T::zero(), |acc, i| {
                if a[i].is_zero() || b[n - i].is_zero() {
                    acc
                } else {
                    acc + a[i].clone() * b[n - i].clone()
                }
            })
        })
        .collect()
}

/// `S(l, r)` via the splitting recurrence.
pub fn s_value<T: Scalar>(l: usize, r: usize, params: &ModelParams<T>, x: &WeightMomentSeq<T>) -> Result<T> {
    if r > l / 2 {
        x.require(l)?;
        return Ok(T::zero());
    }
    let table = STable::build(l, params, x)?;
    Ok(table.get(l, r).unwrap_or_else(T::zero))
}

/// `m_0, ..., m_{k_max}` of the limiting spectral measure.
pub fn limiting_moments<T: Scalar>(
    k_max: usize,
    params: &ModelParams<T>,
    x: &WeightMomentSeq<T>,
) -> Result<MomentTable<T>> {
    Ok(STable::build(k_max, params, x)?.moments())
}

/// Evaluates the collapsed single-line form of the recurrence with its
/// nested summation bounds taken literally: `u_1` runs over `0..=l-F`,
/// each later `u_i` over what is left, and only assignments that use up
/// exactly `l - F` steps are kept. Edge vectors range over all of `Z_+^κ`
/// (zero entries drop out through the binomial convention), and `S(u, v)`
/// on the right-hand side comes from this same formula, not from
/// [`STable`]. Kept only to cross-check [`s_value`].
pub fn ms_r_crosscheck<T: Scalar>(l: usize, r: usize, params: &ModelParams<T>, x: &WeightMomentSeq<T>) -> Result<T> {
    x.require(l)?;
    if r > l {
        return Ok(T::zero());
    }
    let mut kt = KTable::new();
    // rows[l'][r'] for r' in 0..=l'
    let mut rows: Vec<Vec<T>> = vec![vec![T::one()]];
    for ll in 1..=l {
        let mut row = vec![T::zero()];
        for rr in 1..=ll {
            row.push(collapsed_term(ll, rr, params, x, &mut kt, &rows)?);
        }
        rows.push(row);
    }
    Ok(rows[l][r].clone())
}

fn collapsed_term<T: Scalar>(
    l: usize,
    r: usize,
    params: &ModelParams<T>,
    x: &WeightMomentSeq<T>,
    kt: &mut KTable,
    rows: &[Vec<T>],
) -> Result<T> {
    let s = |u: usize, v: usize| -> T { rows[u].get(v).cloned().unwrap_or_else(T::zero) };
    let q = params.q();
    let mut outer = T::zero();
    for big_f in 1..=l {
        let x_f = x.get(big_f)?.clone();
        let mut by_kappa = T::zero();
        for kappa in 1..=q {
            let inv_fact: T = inv_factorial((q - kappa) as u64);
            for f in compositions(big_f as u32, kappa, 0) {
                let f1 = f[0] as usize;
                if f1 > r {
                    continue;
                }
                let k = kt.k_count(kappa, 1, &f.clone().into())?;
                if k.is_zero() {
                    continue;
                }
                let root_codes = T::from_biguint(&binomial(r as i64 - 1, f1 as i64 - 1));
                let mut inner = T::zero();
                for u1 in 0..=l - big_f {
                    let head = root_codes.clone() * s(u1, r - f1);
                    if head.is_zero() {
                        continue;
                    }
                    inner = inner + head * nested_tail(&f[1..], l - big_f - u1, &s);
                }
                by_kappa = by_kappa + inv_fact.clone() * T::from_biguint(&k) * inner;
            }
        }
        outer = outer + x_f * by_kappa;
    }
    Ok(params.p().clone() * outer)
}

fn nested_tail<T: Scalar>(f_rest: &[u32], remaining: usize, s: &impl Fn(usize, usize) -> T) -> T {
    let Some((&fi, rest)) = f_rest.split_first() else {
        return if remaining == 0 { T::one() } else { T::zero() };
    };
    let mut acc = T::zero();
    for ui in 0..=remaining {
        let mut factor = T::zero();
        for vi in 0..=ui / 2 {
            let c = binomial(i64::from(fi) + vi as i64 - 1, i64::from(fi) - 1);
            if !c.is_zero() {
                factor = factor + T::from_biguint(&c) * s(ui, vi);
            }
        }
        if !factor.is_zero() {
            acc = acc + factor * nested_tail(rest, remaining - ui, s);
        }
    }
    acc
}
