//! Integer factorisation for 64-bit inputs: trial division, deterministic
//! Miller–Rabin, and Brent's variant of Pollard rho.

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 10;
const RHO_ATTEMPTS: u64 = 32;
const RHO_STEPS: u64 = 1 << 22;

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A nontrivial factor of the odd composite `n`, or `None` when the budget
/// runs out.
fn pollard_brent(n: u64) -> Option<u64> {
    for c in 1..=RHO_ATTEMPTS {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        let m = 128;
        let mut steps = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
            steps += r;
            if steps > RHO_STEPS {
                break;
            }
        }
        if g == n {
            // backtrack one step at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

/// Prime factorisation as (prime, exponent) pairs in ascending prime order.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n <= 1 {
        return Ok(out);
    }
    let mut m = n;
    let tz = m.trailing_zeros();
    if tz > 0 {
        out.push((2, tz));
        m >>= tz;
    }
    let mut p = 3;
    while p < TRIAL_LIMIT && p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 2;
    }
    if m > 1 {
        let mut stack = vec![m];
        let mut large: Vec<u64> = Vec::new();
        while let Some(k) = stack.pop() {
            if k == 1 {
                continue;
            }
            if k < TRIAL_LIMIT * TRIAL_LIMIT || is_prime(k) {
                // after trial division any cofactor below TRIAL_LIMIT^2 is prime
                large.push(k);
                continue;
            }
            let d = pollard_brent(k).ok_or(Error::Unfactored(n))?;
            stack.push(d);
            stack.push(k / d);
        }
        large.sort_unstable();
        for q in large {
            match out.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => out.push((q, 1)),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(fs: &[(u64, u32)]) -> u64 {
        fs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    #[test]
    fn small_numbers() {
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert_eq!(factorize(12).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1_000_000).unwrap(), vec![(2, 6), (5, 6)]);
        assert_eq!(factorize(97).unwrap(), vec![(97, 1)]);
    }

    #[test]
    fn semiprimes_and_powers() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factorize(p * q).unwrap(), vec![(q, 1), (p, 1)]);
        assert_eq!(factorize(p * p).unwrap(), vec![(p, 2)]);
        let big = (1u64 << 61) - 1; // Mersenne prime
        assert!(is_prime(big));
        assert_eq!(factorize(big).unwrap(), vec![(big, 1)]);
    }

    #[test]
    fn worst_case_word() {
        let n = i64::MAX as u64; // 7^2 * 73 * 127 * 337 * 92737 * 649657
        let fs = factorize(n).unwrap();
        assert_eq!(product(&fs), n);
        assert!(fs.iter().all(|&(p, _)| is_prime(p)));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), naive, "n = {n}");
        }
    }
}
