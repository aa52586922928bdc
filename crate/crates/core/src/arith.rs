//! Small integer helpers used for order and index bookkeeping.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn smallest_prime_divisor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let p = smallest_prime_divisor(n)?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Exponent `k` with `n = p^k`, if `n` is a power of `p` (including `p^0 = 1`).
pub fn log_exact(n: u64, p: u64) -> Option<u32> {
    if n == 0 || p < 2 {
        return None;
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut hi: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    out.append(&mut hi);
    out
}
