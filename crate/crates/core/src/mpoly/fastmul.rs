//! Dense multiplication for weighted-homogeneous integer polynomials.
//!
//! The heavy products in the division-polynomial pipeline are isobaric: all
//! terms of an operand share one weighted degree under some positive weight
//! vector (which this module derives from the exponents themselves). The
//! product support then lies in the finite set of exponent vectors of one
//! fixed weighted degree, which can be ranked exactly. Accumulating into a
//! rank-indexed array with i128 arithmetic avoids hashing and allocation in
//! the inner loop; exactness is guaranteed by a bit bound checked up front.

use super::*;
use num_traits::ToPrimitive;

/// Weighted-degree of a monomial under full-length weights.
fn wdeg(m: &Monomial, w: &[i64; MAX_VARS]) -> i64 {
    (0..MAX_VARS).map(|v| m.exponent(v) as i64 * w[v]).sum()
}

fn pivot_col(r: &[i128; MAX_VARS]) -> usize {
    (0..MAX_VARS).find(|&v| r[v] != 0).unwrap_or(MAX_VARS)
}

fn normalize_row(r: &mut [i128; MAX_VARS]) {
    let g = r.iter().fold(0i128, |acc, &x| gcd_i128(acc, x));
    if g > 1 {
        for x in r.iter_mut() {
            *x /= g;
        }
    }
    let pc = pivot_col(r);
    if pc < MAX_VARS && r[pc] < 0 {
        for x in r.iter_mut() {
            *x = -*x;
        }
    }
}

/// `row -= (row[pc]/by[pc]) * by`, in fraction-free i128 form.
fn eliminate(row: &mut [i128; MAX_VARS], by: &[i128; MAX_VARS], pc: usize) -> Option<()> {
    if row[pc] == 0 {
        return Some(());
    }
    let (a, b) = (by[pc], row[pc]);
    for v in 0..MAX_VARS {
        row[v] = row[v].checked_mul(a)?.checked_sub(by[v].checked_mul(b)?)?;
    }
    normalize_row(row);
    Some(())
}

/// Derive a common nonnegative weight vector making both polynomials
/// isobaric, by eliminating on exponent differences within each operand.
/// Returns `None` when no such grading exists.
fn derive_weights(p: &[(Monomial, BigInt)], q: &[(Monomial, BigInt)]) -> Option<[i64; MAX_VARS]> {
    // Streaming row reduction: keep at most MAX_VARS independent difference
    // vectors in echelon form.
    let mut rows: Vec<[i128; MAX_VARS]> = Vec::new();
    for terms in [p, q] {
        let first = &terms[0].0;
        for (m, _) in &terms[1..] {
            let mut d = [0i128; MAX_VARS];
            for v in 0..MAX_VARS {
                d[v] = m.exponent(v) as i128 - first.exponent(v) as i128;
            }
            for r in &rows {
                eliminate(&mut d, r, pivot_col(r))?;
            }
            if pivot_col(&d) < MAX_VARS {
                normalize_row(&mut d);
                rows.push(d);
                rows.sort_by_key(pivot_col);
                if rows.len() == MAX_VARS {
                    return None;
                }
            }
        }
    }
    // Full reduced echelon form: clear each pivot column everywhere else.
    for i in 0..rows.len() {
        let r = rows[i];
        let pc = pivot_col(&r);
        for j in 0..rows.len() {
            if j != i {
                eliminate(&mut rows[j], &r, pc)?;
            }
        }
    }
    rows.sort_by_key(pivot_col);
    let pivots: Vec<usize> = rows.iter().map(pivot_col).collect();
    let free: Vec<usize> = (0..MAX_VARS).filter(|v| !pivots.contains(v)).collect();
    if free.is_empty() {
        return None;
    }
    // Integer nullspace basis vector for a free column f.
    let basis = |f: usize| -> Option<[i128; MAX_VARS]> {
        let mut scale: i128 = 1;
        for r in &rows {
            let pc = pivot_col(r);
            scale = scale.checked_mul(r[pc] / gcd_i128(scale, r[pc]))?;
        }
        let mut x = [0i128; MAX_VARS];
        x[f] = scale;
        for r in &rows {
            let pc = pivot_col(r);
            x[pc] = -(r[f].checked_mul(scale / r[pc])?);
        }
        Some(x)
    };
    // Look for a nonnegative combination: each basis vector alone (either
    // sign), then the sum of sign-adjusted vectors.
    let mut candidates: Vec<[i128; MAX_VARS]> = Vec::new();
    let mut sum = [0i128; MAX_VARS];
    for &f in &free {
        let mut b = basis(f)?;
        if b.iter().all(|&x| x <= 0) {
            for x in b.iter_mut() {
                *x = -*x;
            }
        }
        for v in 0..MAX_VARS {
            sum[v] = sum[v].checked_add(b[v])?;
        }
        candidates.push(b);
    }
    candidates.push(sum);
    for mut w in candidates {
        if w.iter().all(|&x| x >= 0) && w.iter().any(|&x| x > 0) {
            normalize_row(&mut w);
            let mut out = [0i64; MAX_VARS];
            for v in 0..MAX_VARS {
                out[v] = i64::try_from(w[v]).ok()?;
            }
            return Some(out);
        }
    }
    None
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact rank tables for exponent vectors of fixed weighted degree `target`
/// with per-lane caps. `count[v][w]` counts assignments of lanes v.. with
/// weighted sum exactly w; `prefix[v][e][w] = sum_{k<e} count[v+1][w - k*wv]`.
struct RankTable {
    weights: [i64; MAX_VARS],
    caps: [u16; MAX_VARS],
    target: i64,
    count: Vec<Vec<u64>>,
    prefix: Vec<Vec<u64>>,
    slots: u64,
}

const MAX_SLOTS: u64 = 40_000_000;
const MAX_TARGET: i64 = 4096;

impl RankTable {
    fn build(weights: [i64; MAX_VARS], caps: [u16; MAX_VARS], target: i64) -> Option<RankTable> {
        if target < 0 || target > MAX_TARGET {
            return None;
        }
        let wmax = target as usize;
        let mut count: Vec<Vec<u64>> = vec![vec![0; wmax + 1]; MAX_VARS + 1];
        count[MAX_VARS][0] = 1;
        for v in (0..MAX_VARS).rev() {
            for w in 0..=wmax {
                let mut acc: u64 = 0;
                for k in 0..=caps[v] as usize {
                    let used = k as i64 * weights[v];
                    if used > w as i64 {
                        break;
                    }
                    acc = acc.checked_add(count[v + 1][w - used as usize])?;
                    if weights[v] == 0 && k == caps[v] as usize {
                        break;
                    }
                }
                count[v][w] = acc;
            }
        }
        let slots = count[0][wmax];
        if slots == 0 || slots > MAX_SLOTS {
            return None;
        }
        // prefix[v] laid out as e * (wmax+1) + w
        let mut prefix: Vec<Vec<u64>> = Vec::with_capacity(MAX_VARS);
        for v in 0..MAX_VARS {
            let rows = caps[v] as usize + 1;
            let mut t = vec![0u64; rows * (wmax + 1)];
            for e in 1..rows {
                let k = e - 1;
                let used = k as i64 * weights[v];
                for w in 0..=wmax {
                    let below = if used <= w as i64 {
                        count[v + 1][w - used as usize]
                    } else {
                        0
                    };
                    t[e * (wmax + 1) + w] = t[(e - 1) * (wmax + 1) + w] + below;
                }
            }
            prefix.push(t);
        }
        Some(RankTable {
            weights,
            caps,
            target,
            count,
            prefix,
            slots,
        })
    }

    /// Rank of an exponent vector of weighted degree exactly `target`,
    /// in lexicographic order of the lane digits.
    #[inline]
    fn rank(&self, e: &[u16; MAX_VARS]) -> u64 {
        let wmax = self.target as usize;
        let mut r: u64 = 0;
        let mut w = wmax;
        for v in 0..MAX_VARS {
            let ev = e[v] as usize;
            r += self.prefix[v][ev * (wmax + 1) + w];
            w -= ev * self.weights[v] as usize;
        }
        r
    }

    /// Enumerate exponent vectors in rank order, invoking `f` with
    /// (rank, exponents).
    fn enumerate(&self, f: &mut impl FnMut(u64, &[u16; MAX_VARS])) {
        let mut e = [0u16; MAX_VARS];
        let mut rank = 0u64;
        self.enumerate_rec(0, self.target, &mut e, &mut rank, f);
    }

    fn enumerate_rec(
        &self,
        v: usize,
        w: i64,
        e: &mut [u16; MAX_VARS],
        rank: &mut u64,
        f: &mut impl FnMut(u64, &[u16; MAX_VARS]),
    ) {
        if v == MAX_VARS {
            if w == 0 {
                f(*rank, e);
                *rank += 1;
            }
            return;
        }
        // prune subtrees with no completions
        for k in 0..=self.caps[v] {
            let used = k as i64 * self.weights[v];
            if used > w {
                break;
            }
            let rem = (w - used) as usize;
            if self.count[v + 1][rem] == 0 {
                continue;
            }
            e[v] = k;
            self.enumerate_rec(v + 1, w - used, e, rank, f);
        }
        e[v] = 0;
    }
}

/// Attempt the dense isobaric product. Returns `None` when the operands are
/// not isobaric, the bit bound does not fit i128 accumulation, or the slot
/// table would be too large; callers fall back to the generic path.
pub(super) fn try_mul_dense(p: &MPoly, q: &MPoly) -> Option<MPoly> {
    let pt = p.terms();
    let qt = q.terms();
    let weights = derive_weights(pt, qt)?;
    let wp = wdeg(&pt[0].0, &weights);
    let wq = wdeg(&qt[0].0, &weights);
    let target = wp + wq;
    // i128 exactness bound: products accumulate at most min(|p|,|q|) times.
    let bits = |t: &[(Monomial, BigInt)]| t.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    let guard = 64 - (pt.len().min(qt.len()) as u64).leading_zeros() as u64;
    if bits(pt) + bits(qt) + guard as u64 + 2 > 126 {
        return None;
    }
    let mut caps = [0u16; MAX_VARS];
    for v in 0..MAX_VARS {
        let dp = pt.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0);
        let dq = qt.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0);
        caps[v] = dp.checked_add(dq)?;
    }
    let table = RankTable::build(weights, caps, target)?;
    // dense accumulation only pays off when the array is reasonably filled
    let pairs = pt.len() as u64 * qt.len() as u64;
    if pairs < 2 * table.slots {
        return None;
    }
    let mut acc: Vec<i128> = vec![0; table.slots as usize];
    let (outer, inner) = if pt.len() >= qt.len() { (pt, qt) } else { (qt, pt) };
    let inner_small: Vec<([u16; MAX_VARS], i128)> = inner
        .iter()
        .map(|(m, c)| {
            let mut e = [0u16; MAX_VARS];
            e.copy_from_slice(m.exponents(MAX_VARS));
            (e, c.to_i128().expect("bit bound checked"))
        })
        .collect();
    for (m, c) in outer {
        let co = c.to_i128().expect("bit bound checked");
        let mut eo = [0u16; MAX_VARS];
        eo.copy_from_slice(m.exponents(MAX_VARS));
        for (ei, ci) in &inner_small {
            let mut e = eo;
            for v in 0..MAX_VARS {
                e[v] += ei[v];
            }
            let r = table.rank(&e);
            acc[r as usize] += co * ci;
        }
    }
    let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
    table.enumerate(&mut |r, e| {
        let v = acc[r as usize];
        if v != 0 {
            let exps: Vec<u32> = e.iter().map(|&x| x as u32).collect();
            terms.push((
                Monomial::from_exponents(&exps).expect("capped exponents fit"),
                BigInt::from(v),
            ));
        }
    });
    terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Some(MPoly {
        vars: p.vars.clone(),
        ctx: (),
        terms,
    })
}
