//! Null spaces of integer matrices via a modular pivot pass followed by
//! p-adic (Dixon) lifting and rational reconstruction.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;

const PRIMES: [u64; 4] = [2147483647, 2147483629, 2147483587, 2147483579];

/// Kernel basis of the integer matrix with the given sparse rows.
pub(crate) fn kernel(ncols: usize, rows: &[Vec<(usize, BigInt)>]) -> Vec<Vec<BigInt>> {
    if ncols == 0 {
        return Vec::new();
    }
    for attempt in 0..PRIMES.len() {
        let found = match attempt {
            0 => try_kernel::<{ PRIMES[0] }>(ncols, rows),
            1 => try_kernel::<{ PRIMES[1] }>(ncols, rows),
            2 => try_kernel::<{ PRIMES[2] }>(ncols, rows),
            _ => try_kernel::<{ PRIMES[3] }>(ncols, rows),
        };
        if let Some(k) = found {
            return k;
        }
    }
    rational_kernel(ncols, rows)
}

fn reduce<const P: u64>(x: &BigInt) -> u64 {
    match x.to_i64() {
        Some(v) => v.rem_euclid(P as i64) as u64,
        None => x.mod_floor(&BigInt::from(P)).to_u64().unwrap(),
    }
}

fn pow_mod<const P: u64>(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn inv_mod<const P: u64>(x: u64) -> u64 {
    debug_assert!(!x.is_multiple_of(P));
    pow_mod::<P>(x, P - 2)
}

/// Row echelon form modulo `P` of the rows selected during elimination,
/// kept as an LU factorization of the pivot block.
struct Echelon {
    /// Pivot column of each pivot row.
    pivots: Vec<usize>,
    /// Original row index of each pivot row.
    rows: Vec<usize>,
    /// `upper[c]` holds the reduced pivot row `c` restricted to pivot
    /// columns `c..`.
    upper: Vec<Vec<u32>>,
    /// `lower[c]` lists `(i, f)`: pivot row `i < c` was subtracted `f` times.
    lower: Vec<Vec<(u32, u32)>>,
    inv_diag: Vec<u64>,
    /// The full reduced pivot rows, needed to read off free columns.
    reduced: Vec<Vec<u32>>,
}

fn echelon<const P: u64>(ncols: usize, rows: &[Vec<(usize, BigInt)>]) -> Echelon {
    let m = rows.len();
    let mut dense: Vec<Vec<u32>> = rows
        .iter()
        .map(|row| {
            let mut d = vec![0u32; ncols];
            for (c, x) in row {
                d[*c] = reduce::<P>(x) as u32;
            }
            d
        })
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    let mut mults: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m];
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut nz: Vec<usize> = Vec::with_capacity(ncols);
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| dense[i][c] != 0) else {
            continue;
        };
        dense.swap(r, p);
        order.swap(r, p);
        mults.swap(r, p);
        let inv = inv_mod::<P>(dense[r][c] as u64);
        let (head, tail) = dense.split_at_mut(r + 1);
        let piv = &head[r];
        nz.clear();
        nz.extend((c + 1..ncols).filter(|&j| piv[j] != 0));
        for (off, row) in tail.iter_mut().enumerate() {
            let x = row[c];
            if x == 0 {
                continue;
            }
            let f = x as u64 * inv % P;
            let nf = P - f;
            row[c] = 0;
            for &j in &nz {
                row[j] = ((row[j] as u64 + nf * piv[j] as u64) % P) as u32;
            }
            mults[r + 1 + off].push((r as u32, f as u32));
        }
        pivots.push(c);
        r += 1;
    }
    dense.truncate(r);
    order.truncate(r);
    mults.truncate(r);
    let upper: Vec<Vec<u32>> = (0..r)
        .map(|c| pivots[c..].iter().map(|&j| dense[c][j]).collect())
        .collect();
    let inv_diag = (0..r).map(|c| inv_mod::<P>(upper[c][0] as u64)).collect();
    Echelon {
        pivots,
        rows: order,
        upper,
        lower: mults,
        inv_diag,
        reduced: dense,
    }
}

impl Echelon {
    /// Solves `A x = b (mod P)` where `A` is the pivot block of the
    /// original matrix (pivot rows by pivot columns).
    fn solve<const P: u64>(&self, b: &[u64]) -> Vec<u64> {
        let r = self.pivots.len();
        let mut y: Vec<u64> = b.to_vec();
        for c in 0..r {
            let mut s = y[c];
            for &(i, f) in &self.lower[c] {
                s = (s + P - (f as u64 * y[i as usize]) % P) % P;
            }
            y[c] = s;
        }
        let mut x = vec![0u64; r];
        for c in (0..r).rev() {
            let row = &self.upper[c];
            let mut s = y[c];
            for (k, &u) in row.iter().enumerate().skip(1) {
                if u != 0 {
                    s = (s + P - (u as u64 * x[c + k]) % P) % P;
                }
            }
            x[c] = s * self.inv_diag[c] % P;
        }
        x
    }
}

/// Wang's rational reconstruction of `u (mod m)` with numerator and
/// denominator bounded by `bound`.
fn reconstruct(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = core::mem::replace(&mut r1, r2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

fn try_kernel<const P: u64>(
    ncols: usize,
    rows: &[Vec<(usize, BigInt)>],
) -> Option<Vec<Vec<BigInt>>> {
    let ech = echelon::<P>(ncols, rows);
    let r = ech.pivots.len();
    if r == ncols {
        return Some(Vec::new());
    }
    let mut is_pivot = vec![usize::MAX; ncols];
    for (k, &c) in ech.pivots.iter().enumerate() {
        is_pivot[c] = k;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| is_pivot[c] == usize::MAX).collect();

    // Pivot block and right-hand sides over Z.
    let block: Vec<Vec<(usize, BigInt)>> = ech
        .rows
        .iter()
        .map(|&i| {
            rows[i]
                .iter()
                .filter(|(c, _)| is_pivot[*c] != usize::MAX)
                .map(|(c, x)| (is_pivot[*c], x.clone()))
                .collect()
        })
        .collect();
    let rhs_of = |f: usize| -> Vec<BigInt> {
        ech.rows
            .iter()
            .map(|&i| {
                rows[i]
                    .iter()
                    .find(|(c, _)| *c == f)
                    .map(|(_, x)| -x)
                    .unwrap_or_default()
            })
            .collect()
    };

    // Hadamard-style cap on the number of lifting steps.
    let mut bits = 0f64;
    for row in &block {
        let norm2: f64 = row
            .iter()
            .map(|(_, x)| {
                let v = x.to_f64().unwrap_or(f64::MAX);
                v * v
            })
            .sum();
        bits += 0.5 * libm_log2(norm2.max(1.0)) + 1.0;
    }
    let max_steps = (2.0 * bits / 31.0) as usize + 8;

    let p = BigInt::from(P);
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let vector = if r == 0 {
            let mut z = vec![BigInt::zero(); ncols];
            z[f] = BigInt::one();
            Some(z)
        } else {
            dixon::<P, _>(&ech, &block, rhs_of(f), max_steps, &p, |x| {
                let mut z = vec![BigInt::zero(); ncols];
                let (nums, den) = x;
                z[f] = den.clone();
                for (k, v) in nums.iter().enumerate() {
                    z[ech.pivots[k]] = v.clone();
                }
                annihilates(rows, &z).then_some(z)
            })
        };
        let free_kernel = vector?;
        basis.push(super::make_primitive(free_kernel));
    }
    // Sanity: reduced rows vanish on the modular images of the basis.
    debug_assert!(basis.iter().all(|z| {
        ech.reduced.iter().all(|row| {
            row.iter()
                .zip(z)
                .fold(0u64, |acc, (&a, x)| (acc + a as u64 * reduce::<P>(x)) % P)
                == 0
        })
    }));
    Some(basis)
}

fn libm_log2(x: f64) -> f64 {
    // no_std: count binary digits of the integer part; accurate enough for a bound.
    let mut v = x;
    let mut e = 0.0;
    while v >= 2.0 {
        v /= 2.0;
        e += 1.0;
    }
    e + (v - 1.0)
}

fn annihilates(rows: &[Vec<(usize, BigInt)>], z: &[BigInt]) -> bool {
    rows.iter().all(|row| {
        row.iter()
            .fold(BigInt::zero(), |acc, (c, x)| acc + x * &z[*c])
            .is_zero()
    })
}

/// Lifts the solution of `A x = b` p-adically, trying a rational
/// reconstruction at geometrically spaced checkpoints. `accept` receives
/// integer numerators and their common denominator and returns the final
/// vector once it verifies.
fn dixon<const P: u64, F>(
    ech: &Echelon,
    block: &[Vec<(usize, BigInt)>],
    b: Vec<BigInt>,
    max_steps: usize,
    p: &BigInt,
    mut accept: F,
) -> Option<Vec<BigInt>>
where
    F: FnMut((&[BigInt], &BigInt)) -> Option<Vec<BigInt>>,
{
    let r = block.len();
    let mut residual = b;
    let mut acc = vec![BigInt::zero(); r];
    let mut modulus = BigInt::one();
    let mut next_check = 1usize;
    for step in 1..=max_steps {
        let bm: Vec<u64> = residual.iter().map(reduce::<P>).collect();
        let y = ech.solve::<P>(&bm);
        for (a, &yi) in acc.iter_mut().zip(&y) {
            if yi != 0 {
                *a += &modulus * yi;
            }
        }
        for (res, row) in residual.iter_mut().zip(block) {
            let ay = row.iter().fold(BigInt::zero(), |s, (c, x)| s + x * y[*c]);
            let diff = core::mem::take(res) - ay;
            debug_assert!(diff.is_multiple_of(p));
            *res = diff / p;
        }
        modulus *= p;
        if step == next_check || step == max_steps {
            next_check = next_check + next_check.div_ceil(2);
            if let Some((nums, den)) = reconstruct_vector(&acc, &modulus) {
                if let Some(z) = accept((&nums, &den)) {
                    return Some(z);
                }
            }
        }
    }
    None
}

/// Reconstructs every entry with a shared running denominator.
fn reconstruct_vector(acc: &[BigInt], m: &BigInt) -> Option<(Vec<BigInt>, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut den = BigInt::one();
    let mut parts: Vec<(BigInt, BigInt)> = Vec::with_capacity(acc.len());
    for u in acc {
        let scaled = (u * &den).mod_floor(m);
        let (a, b) = reconstruct(&scaled, m, &bound)?;
        let full_den = &b * &den;
        den *= b;
        parts.push((a, full_den));
    }
    let nums = parts.into_iter().map(|(a, d)| a * (&den / d)).collect();
    Some((nums, den))
}

/// Gauss-Jordan over Q. Only reached if every prime fails verification.
fn rational_kernel(ncols: usize, rows: &[Vec<(usize, BigInt)>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|row| {
            let mut d = vec![Scalar::zero(); ncols];
            for (c, x) in row {
                d[*c] = Scalar::from_integer(x.clone());
            }
            d
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut z = vec![Scalar::zero(); ncols];
            z[f] = Scalar::one();
            for (k, &pc) in pivots.iter().enumerate() {
                z[pc] = -a[k][f].clone();
            }
            super::primitive_integer_vector(&z)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<(usize, BigInt)>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(c, &x)| (c, BigInt::from(x)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(PRIMES[0]) * BigInt::from(PRIMES[0]);
        let bound = (&m / BigInt::from(2)).sqrt();
        // u = -7/12 mod m
        let g = BigInt::from(12).extended_gcd(&m);
        let u = (BigInt::from(-7) * g.x).mod_floor(&m);
        assert_eq!(
            reconstruct(&u, &m, &bound),
            Some((BigInt::from(-7), BigInt::from(12)))
        );
    }

    #[test]
    fn modular_and_rational_routes_agree() {
        let rows = ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 1]]);
        let a = kernel(4, &rows);
        let b = rational_kernel(4, &rows);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn large_entries_need_several_lifting_steps() {
        // Solution entries far beyond one word.
        let big = 1_000_003i64;
        let rows = ints(&[&[big, -1, 0], &[0, big, -1]]);
        let k = kernel(3, &rows);
        assert_eq!(k.len(), 1);
        let expected = alloc::vec![
            BigInt::from(1),
            BigInt::from(big),
            BigInt::from(big) * BigInt::from(big)
        ];
        assert_eq!(k[0], expected);
    }
}
