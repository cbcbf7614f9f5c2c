//! Small number-theoretic helpers on machine integers.

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_u64(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("prime power overflows u64")
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Reduce a signed integer into `[0, m)`.
pub fn reduce(n: i64, m: u64) -> u64 {
    n.rem_euclid(m as i64) as u64
}

/// Legendre symbol `(n|p)` for an odd prime `p`; zero when `p | n`.
pub fn legendre(n: i64, p: u64) -> i8 {
    let r = reduce(n, p);
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Smallest quadratic non-residue modulo an odd prime. It is also a
/// non-residue modulo every power of `p`.
pub fn smallest_qnr(p: u64) -> u64 {
    (2..p).find(|&n| legendre(n as i64, p) == -1).expect("odd primes have non-residues")
}

/// `p`-adic valuation; `None` encodes `v_p(0) = +inf`.
pub fn valuation(n: i128, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let p = p as i128;
    let mut n = n;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    Some(k)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn binomial(n: u64, k: u64) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128)? / (i as i128 + 1);
    }
    Some(acc)
}
