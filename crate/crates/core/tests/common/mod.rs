//! Independent oracles shared by the integration suites. Nothing here calls
//! the routine it is checking.

#![allow(dead_code)]

use fiberjoin::exactalg::{int, rat, Polynomial, Rational};
use fiberjoin::model::BaseFactor;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub const CP1: BaseFactor = BaseFactor::ProjectiveSpace { n: 1 };

pub fn surf(g: u32) -> BaseFactor {
    BaseFactor::RiemannSurface { genus: g }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random fraction `p/q` strictly inside `(lo, hi)` with `q <= 60`.
pub fn fraction_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    loop {
        let q = rng.gen_range(2..=60);
        let p = rng.gen_range(lo * q..=hi * q);
        let r = rat(p, q);
        if r > int(lo) && r < int(hi) && !r.is_zero() {
            return r;
        }
    }
}

/// Integer square root by bisection.
pub fn isqrt(n: u128) -> u128 {
    let (mut lo, mut hi) = (0u128, 1u128 << 64);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if mid.checked_mul(mid).is_some_and(|m| m <= n) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `floor((2g - 3 + sqrt(4g² - 8g + 5)) / 2)`, via `isqrt`.
pub fn threshold_oracle(g: u64) -> i64 {
    let g = i128::from(g);
    let disc = u128::try_from(4 * g * g - 8 * g + 5).unwrap();
    let root = isqrt(disc) as i128;
    Integer::div_floor(&(2 * g - 3 + root), &2) as i64
}

/// Partitions of `n` into exactly `k` positive parts, by recursion on the largest part.
pub fn partitions_brute(n: u32, k: u32) -> u128 {
    fn rec(n: u32, k: u32, max: u32) -> u128 {
        if k == 0 {
            return u128::from(n == 0);
        }
        (1..=max.min(n)).map(|p| rec(n - p, k - 1, p)).sum()
    }
    rec(n, k, n)
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in &mut m[rank + 1..] {
            let (a, b) = (pivot[c], row[c]);
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = *x * a - p * b;
            }
        }
        rank += 1;
    }
    rank
}

// Sturm oracle: peel off rational roots, then count sign changes of the
// square-free remainder on a grid of (-1, 1) in exact integer arithmetic.

fn int_coeffs(q: &Polynomial) -> Vec<i128> {
    let l = q.coeffs().iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::from(0), |acc, c| acc.gcd(c));
    ints.iter().map(|c| i128::try_from(c / &g).unwrap()).collect()
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `n^deg * c(k / n)` by Horner's rule.
fn grid_value(c: &[i128], k: i128, npow: &[i128]) -> i128 {
    let deg = c.len() - 1;
    let mut acc = c[deg];
    for i in (0..deg).rev() {
        acc = acc.checked_mul(k).unwrap().checked_add(c[i].checked_mul(npow[deg - i]).unwrap()).unwrap();
    }
    acc
}

/// Distinct real roots of the integer polynomial `coeffs` in `(-1, 1)`.
pub fn roots_in_unit_interval(coeffs: &[i64]) -> usize {
    let mut q = Polynomial::from_i64s(coeffs);
    let mut inside = 0;
    loop {
        let c = int_coeffs(&q);
        if c.len() <= 1 {
            break;
        }
        if c[0] == 0 {
            inside += 1;
            while q.coeff(0).is_zero() {
                q = q.div_rem(&Polynomial::from_i64s(&[0, 1])).unwrap().0;
            }
            continue;
        }
        let lead = *c.last().unwrap();
        let root = divisors(c[0]).into_iter().find_map(|p| {
            divisors(lead).into_iter().find_map(|d| {
                [1, -1].into_iter().map(|s| rat((s * p) as i64, d as i64)).find(|r| q.eval(r).is_zero())
            })
        });
        let Some(r) = root else { break };
        if r > int(-1) && r < int(1) {
            inside += 1;
        }
        while q.eval(&r).is_zero() {
            q = q.div_rem(&Polynomial::linear(-r.clone(), int(1))).unwrap().0;
        }
    }
    if q.degree().unwrap_or(0) == 0 {
        return inside;
    }
    let sf = int_coeffs(&q.square_free_part().unwrap());
    let n: i128 = 10_000;
    let npow: Vec<i128> = (0..sf.len() as u32).map(|i| n.pow(i)).collect();
    let mut last = 0i128;
    let mut changes = 0;
    for k in 0..=n {
        let s = grid_value(&sf, 2 * k - n, &npow).signum();
        assert_ne!(s, 0, "irrational root on a grid point");
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    inside + changes
}

/// Random integer polynomial of degree 1..=8 with coefficients in [-10, 10].
pub fn random_poly(rng: &mut ChaCha8Rng) -> Vec<i64> {
    let deg = rng.gen_range(1..=8);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-10..=10)).collect();
    if c[deg] == 0 {
        c[deg] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    c
}

/// Closed-form extremal profile for `s = (2, -2)`, `d_a = 1`, `d0 = dinf = 1`:
/// `(1 - z²)² h(z) / (3 D)` with `h` written in powers of `1 + z`.
pub fn appendix_closed_form(r1: &Rational, r2: &Rational) -> Polynomial {
    let one = int(1);
    let p = |k: i64| int(k);
    let (r1_2, r2_2) = (r1 * r1, r2 * r2);
    let (r1_3, r2_3) = (&r1_2 * r1, &r2_2 * r2);
    let den = p(3) * &r1_2 * &r2_2 - p(7) * &r1_2 + p(8) * r1 * r2 - p(7) * &r2_2 + p(35);
    let a0 = p(3) * (&one - r1) * (&one - r2) * &den;
    let a1 = (&one - r2)
        * (p(12) * &r1_3 * &r2_2 + p(15) * &r1_3 * r2 + p(7) * &r1_3 + p(105) * r1 + p(49) * &r2_2 + p(105) * r2)
        - (&one - r2)
            * (p(21) * &r1_2 * &r2_2 + p(13) * &r1_2 * r2 + p(56) * &r1_2 + p(48) * r1 * &r2_2 + p(91) * r1 * r2);
    let a2 = p(2)
        * (p(3) * &r1_3 * &r2_3
            + p(3) * &r1_3 * &r2_2
            + p(8) * &r1_3 * r2
            + p(2) * &r1_2 * &r2_2
            + p(14) * &r1_2
            + p(49) * r1 * r2
            + p(7) * &r2_3
            + p(14) * &r2_2)
        - p(2) * (p(7) * &r1_3 + p(3) * &r1_2 * &r2_3 + p(30) * &r1_2 * r2 + p(22) * r1 * &r2_3 + p(30) * r1 * &r2_2);
    let a3 = p(10) * r1 * r2 * (p(2) - r1 + r2) * (r1 + r2);
    let u = Polynomial::from_i64s(&[1, 1]);
    let h = &(&(&Polynomial::constant(a0) + &u.scale(&a1)) + &u.pow(2).scale(&a2)) + &u.pow(3).scale(&a3);
    let outer = Polynomial::from_i64s(&[1, 0, -1]).pow(2);
    (&outer * &h).scale(&(int(1) / (p(3) * den)))
}

/// `s1` making the first CSC equation hold for a prescribed `s`, solved by hand:
/// `r1 (s1 (r1 - r2) - 2 + (1 - s) r1 r2) + 3 (s - 1) r2 = 0`.
pub fn back_solve_s1(r1: &Rational, r2: &Rational, s: &Rational) -> Rational {
    let rest = int(-2) + (int(1) - s) * r1 * r2;
    (int(-3) * (s - int(1)) * r2 / r1 - rest) / (r1 - r2)
}

/// `w2` from the mod-2 reduction of `c1` of the contact bundle over two surfaces.
pub fn spin_by_parity(g: [u32; 2], w0: [i64; 2], winf: [i64; 2], d0: u32, dinf: u32) -> bool {
    (0..2).all(|i| {
        let c = 2 - 2 * i64::from(g[i]) - (i64::from(d0) + 1) * w0[i] - (i64::from(dinf) + 1) * winf[i];
        c.rem_euclid(2) == 0
    })
}

/// Cohomology of the d = 1 join over `Σ_g1 × Σ_g2` as `(rank, torsion)` per degree.
pub fn rank_two_table(g1: u64, g2: u64, e: u64) -> Vec<(u64, Vec<u64>)> {
    let odd = 2 * g1 + 2 * g2;
    let mid = 4 * g1 * g2 + 2;
    let torsion = if e > 1 { vec![e] } else { vec![] };
    vec![(1, vec![]), (odd, vec![]), (mid, vec![]), (odd, vec![]), (odd, torsion), (mid, vec![]), (odd, vec![]), (1, vec![])]
}
