//! Elementary number theory on machine integers.

use num_integer::Integer;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

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

/// Prime factorisation as `(p, e)` pairs, increasing in `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&n| is_prime(n))
}

/// Multiplicative order of `a` modulo `m`; `a` must be a unit.
pub fn mult_order(a: u64, m: u64) -> u64 {
    let phi = totient(m);
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord.is_multiple_of(p) && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    ord
}

pub fn totient(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Smallest primitive root modulo an odd prime power.
pub fn primitive_root(p: u64, a: u32) -> u64 {
    let m = p.pow(a);
    let phi = m / p * (p - 1);
    (2..m).find(|&g| g % p != 0 && mult_order(g, m) == phi).expect("odd prime powers are cyclic")
}

/// `x` with `x = r_i mod m_i` for pairwise coprime moduli.
pub fn crt(parts: &[(u64, u64)]) -> (u64, u64) {
    parts.iter().fold((0u64, 1u64), |(x, m), &(r, n)| {
        // x + m * t = r (mod n)
        let inv = mod_inverse(m % n, n).expect("coprime moduli");
        let t = mul_mod((r + n - x % n) % n, inv, n);
        let big = m * n;
        ((x + mul_mod(m, t, big)) % big, big)
    })
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// Discrete logarithm by enumeration: `k` in `0..order` with `g^k = x mod m`.
pub fn dlog(g: u64, x: u64, m: u64, order: u64) -> Option<u64> {
    let x = x % m;
    let mut acc = 1 % m;
    for k in 0..order {
        if acc == x {
            return Some(k);
        }
        acc = mul_mod(acc, g, m);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(primitive_root(7, 1), 3);
        assert_eq!(primitive_root(3, 2), 2);
        assert_eq!(mult_order(2, 17), 8);
        assert_eq!(crt(&[(2, 3), (3, 5)]), (8, 15));
        assert_eq!(dlog(3, 2, 7, 6), Some(2));
        assert_eq!(totient(1), 1);
    }
}
