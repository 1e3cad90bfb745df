//! Rewriting positive lengths over a ℚ-independent positive basis with
//! nonnegative integer coordinates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::exact::{Rational, SurdReal};

use super::FactorError;

/// Largest common denominator tried by the small-weight search.
const SMALL_DENOMINATOR: i64 = 12;

/// Extra insertion orders tried by [`rebase_nonneg_integer`].
const REBASE_ORDERS: usize = 16;

/// `L_i = Σ_j coords[i][j] · basis[j]` with a ℚ-independent positive basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rebase {
    pub basis: Vec<SurdReal>,
    pub coords: Vec<Vec<u64>>,
}

impl Rebase {
    /// Recomputes every `L_i` from the basis.
    pub fn expand(&self) -> Vec<SurdReal> {
        self.coords
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.basis)
                    .fold(SurdReal::zero(), |acc, (&c, l)| {
                        &acc + &l.scale(&Rational::from_integer(BigInt::from(c)))
                    })
            })
            .collect()
    }

    /// Number of basis pieces the lengths split into.
    pub fn pieces(&self) -> u64 {
        self.coords.iter().flatten().sum()
    }

    /// Rank of the basis over ℚ, computed from surd coordinates.
    pub fn rank(&self) -> usize {
        rank_over_q(&self.basis)
    }
}

fn keys(values: &[&SurdReal]) -> Vec<u64> {
    let set: BTreeSet<u64> = values
        .iter()
        .flat_map(|v| v.terms().iter().map(|(d, _)| *d))
        .collect();
    set.into_iter().collect()
}

/// Row-reduces `rows` in place; returns the pivot column of each nonzero
/// row, in order.
fn row_reduce(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let delta = &rows[r][j] * &factor;
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

fn rank_over_q(values: &[SurdReal]) -> usize {
    let refs: Vec<&SurdReal> = values.iter().collect();
    let ks = keys(&refs);
    let mut rows: Vec<Vec<Rational>> = ks
        .iter()
        .map(|&d| values.iter().map(|v| v.coeff(d)).collect())
        .collect();
    row_reduce(&mut rows, values.len()).len()
}

/// Rational coefficients `c` with `Σ c_j · cols[j] = target`, if any.
/// `cols` must be ℚ-independent.
pub fn solve_rational(cols: &[SurdReal], target: &SurdReal) -> Option<Vec<Rational>> {
    let mut refs: Vec<&SurdReal> = cols.iter().collect();
    refs.push(target);
    let ks = keys(&refs);
    let m = cols.len();
    let mut rows: Vec<Vec<Rational>> = ks
        .iter()
        .map(|&d| {
            let mut row: Vec<Rational> = cols.iter().map(|v| v.coeff(d)).collect();
            row.push(target.coeff(d));
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows, m + 1);
    if pivots.contains(&m) {
        return None;
    }
    let mut out = vec![Rational::zero(); m];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = rows[r][m].clone();
    }
    Some(out)
}

fn feasible(weights: &[Rational], scaled: &[SurdReal], neg: &SurdReal) -> bool {
    weights
        .iter()
        .zip(scaled)
        .all(|(w, v)| w.is_positive() && (v - &neg.scale(w)).is_positive())
}

/// Calls `visit` on each composition of `total` into `parts` positive
/// integers until it returns true.
fn compositions(
    total: i64,
    parts: usize,
    prefix: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    if parts == 1 {
        prefix.push(total);
        let found = visit(prefix);
        prefix.pop();
        return found;
    }
    for first in 1..=total - parts as i64 + 1 {
        prefix.push(first);
        let found = compositions(total - first, parts - 1, prefix, visit);
        prefix.pop();
        if found {
            return true;
        }
    }
    false
}

/// Positive rationals `r_t` summing to 1 such that
/// `a_t·l_t − r_t·neg` is positive for every `t`.
///
/// Weights `n_t/q` with a small common denominator `q` are tried first,
/// since they keep the final basis coarse. Failing that, the proportions
/// `a_t·l_t / Σ a_s·l_s` are rounded to dyadic rationals at increasing
/// precision until every candidate works.
fn choose_weights(scaled: &[SurdReal], neg: &SurdReal) -> Vec<Rational> {
    let s = scaled.len();
    if s == 1 {
        return vec![Rational::one()];
    }
    for q in s as i64..=SMALL_DENOMINATOR {
        let mut found = None;
        compositions(q, s, &mut Vec::with_capacity(s), &mut |parts| {
            let w: Vec<Rational> = parts
                .iter()
                .map(|&n| Rational::new(BigInt::from(n), BigInt::from(q)))
                .collect();
            if feasible(&w, scaled, neg) {
                found = Some(w);
                true
            } else {
                false
            }
        });
        if let Some(w) = found {
            return w;
        }
    }
    let total = scaled.iter().fold(SurdReal::zero(), |acc, v| &acc + v);
    let mut bits = 1u32;
    loop {
        let work = bits + 64;
        let (tlo, thi) = total.enclosure(work);
        let tmid: BigInt = (tlo + thi) / 2;
        let denom = BigInt::one() << bits as usize;
        let mut weights = Vec::with_capacity(s);
        let mut acc = Rational::zero();
        for v in &scaled[..s - 1] {
            let (lo, hi) = v.enclosure(work);
            let mid: BigInt = (lo + hi) / 2;
            let num = ((mid << (bits as usize + 1)) + &tmid).div_floor(&(&tmid << 1usize));
            let w = Rational::new(num, denom.clone());
            acc += &w;
            weights.push(w);
        }
        weights.push(Rational::one() - acc);
        if feasible(&weights, scaled, neg) {
            return weights;
        }
        bits += 1;
    }
}

/// Finds a ℚ-independent positive basis `l_1..l_m` such that every input
/// length is a nonnegative integer combination of it.
///
/// Inputs are added one at a time. An input that is independent of the
/// current basis joins it. Otherwise it is written as
/// `Σ a_t·l_{i_t} − Σ b_p·l_{j_p}` with positive `a`, `b`. Without negative
/// terms nothing changes. With them, some of the `l_{i_t}` are replaced by
/// `a_t·l_{i_t} − r_t·Σ b_p·l_{j_p}` for positive weights `r_t` summing to
/// 1; a single term is used when one can absorb the whole negative part.
/// Earlier coordinates stay nonnegative. Coordinates are rational until the
/// end, when the basis is divided by the common denominator.
pub fn rebase_nonneg_integer(lengths: &[SurdReal]) -> Result<Rebase, FactorError> {
    if lengths.iter().any(|l| !l.is_positive()) {
        return Err(FactorError::NonPositiveInput);
    }
    // Any order works. Ascending order usually gives small common
    // denominators; a few shuffled orders catch the bad cases.
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by(|&i, &j| lengths[i].cmp(&lengths[j]));
    let mut best = rebase_in_order(lengths, &order);
    if best.basis.len() > 1 {
        let mut rng = StdRng::seed_from_u64(lengths.len() as u64);
        for _ in 0..REBASE_ORDERS {
            order.shuffle(&mut rng);
            let r = rebase_in_order(lengths, &order);
            if r.pieces() < best.pieces() {
                best = r;
            }
        }
    }
    Ok(best)
}

fn rebase_in_order(lengths: &[SurdReal], order: &[usize]) -> Rebase {
    let mut basis: Vec<SurdReal> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rows_by_input = vec![0usize; lengths.len()];
    for (n, &i) in order.iter().enumerate() {
        rows_by_input[i] = n;
    }
    for len in order.iter().map(|&i| &lengths[i]) {
        let Some(c) = solve_rational(&basis, len) else {
            basis.push(len.clone());
            for row in rows.iter_mut() {
                row.push(Rational::zero());
            }
            let mut row = vec![Rational::zero(); basis.len()];
            row[basis.len() - 1] = Rational::one();
            rows.push(row);
            continue;
        };
        let pos: Vec<(usize, Rational)> = c
            .iter()
            .enumerate()
            .filter(|(_, q)| q.is_positive())
            .map(|(i, q)| (i, q.clone()))
            .collect();
        let neg: Vec<(usize, Rational)> = c
            .iter()
            .enumerate()
            .filter(|(_, q)| q.is_negative())
            .map(|(i, q)| (i, -q))
            .collect();
        if neg.is_empty() {
            rows.push(c);
            continue;
        }
        let neg_sum = neg
            .iter()
            .fold(SurdReal::zero(), |acc, (j, b)| &acc + &basis[*j].scale(b));
        // Absorb the negative part into one positive term when possible,
        // else spread it over all of them.
        let single = pos
            .iter()
            .filter(|(i, a)| (&basis[*i].scale(a) - &neg_sum).is_positive())
            .min_by_key(|(_, a)| a.numer() * a.denom())
            .cloned();
        let absorb: Vec<(usize, Rational)> = match single {
            Some(p) => vec![p],
            None => pos.clone(),
        };
        let scaled: Vec<SurdReal> = absorb.iter().map(|(i, a)| basis[*i].scale(a)).collect();
        let weights = choose_weights(&scaled, &neg_sum);
        for row in rows.iter_mut() {
            let old = row.clone();
            for ((i, a), r) in absorb.iter().zip(&weights) {
                row[*i] = &old[*i] / a;
                for (j, b) in &neg {
                    row[*j] += &old[*i] * r * b / a;
                }
            }
        }
        for ((i, _), (v, r)) in absorb.iter().zip(scaled.iter().zip(&weights)) {
            basis[*i] = v - &neg_sum.scale(r);
        }
        let mut row: Vec<Rational> = c.iter().map(|q| q.max(&Rational::zero()).clone()).collect();
        for (i, _) in &absorb {
            row[*i] = Rational::one();
        }
        rows.push(row);
    }
    let n = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let nq = Rational::from_integer(n.clone());
    let basis = basis.iter().map(|l| l.scale(&nq.recip())).collect();
    let rows: Vec<Vec<Rational>> = rows_by_input.iter().map(|&n| rows[n].clone()).collect();
    let coords = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| {
                    (q * &nq)
                        .to_integer()
                        .to_u64()
                        .expect("coordinate fits in u64")
                })
                .collect()
        })
        .collect();
    Rebase { basis, coords }
}
