//! Dense polynomials over a prime field `F_p`, used only to find and test
//! defining polynomials for extension fields. Coefficients are stored low
//! degree first and kept reduced mod `p`.

use rand::Rng;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        let shift = k - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn pow_poly_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod m` by iterated p-th powering.
fn frob_x(m: &[u64], p: u64, k: u32) -> Vec<u64> {
    let mut x = rem(&[0, 1], m, p);
    for _ in 0..k {
        x = pow_poly_mod(&x, p, m, p);
    }
    x
}

/// Rabin's irreducibility test for a monic `f` of degree `n >= 1`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let top = frob_x(f, p, n as u32);
    if trim(sub(&top, &x, p)) != Vec::<u64>::new() {
        return false;
    }
    for r in super::prime::prime_divisors(n as u64) {
        let h = frob_x(f, p, (n as u64 / r) as u32);
        let g = gcd(f, &sub(&h, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Lexicographically first monic irreducible of degree `n` (constant term
/// varies fastest). Gives every base field a canonical, seed-free modulus.
pub fn first_irreducible(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    let mut tail = vec![0u64; n];
    loop {
        let mut f = tail.clone();
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
        if n == 1 {
            // x itself
            if tail[0] == 0 {
                return f;
            }
        }
        let mut i = 0;
        loop {
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
            i += 1;
            if i == n {
                unreachable!("every degree admits an irreducible polynomial");
            }
        }
    }
}

/// Seeded random search for a monic irreducible of degree `n`.
pub fn random_irreducible<R: Rng>(p: u64, n: u32, rng: &mut R, max_tries: usize) -> Option<Vec<u64>> {
    for _ in 0..max_tries {
        let mut f: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        f.push(1);
        if (n == 1 || f[0] != 0) && is_irreducible(&f, p) {
            return Some(f);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles_over_f2() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // Number of monic irreducibles of degree 4 over F_3 is (81 - 9) / 4 = 18.
        let mut count = 0;
        for c0 in 0..3 {
            for c1 in 0..3 {
                for c2 in 0..3 {
                    for c3 in 0..3 {
                        if is_irreducible(&[c0, c1, c2, c3, 1], 3) {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 18);
    }
}
