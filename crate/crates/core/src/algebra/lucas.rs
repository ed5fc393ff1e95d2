//! Binomial coefficients modulo a prime via Lucas' theorem.

/// `C(a, b) mod p`, computed as the product of `C(a_i, b_i)` over base-`p`
/// digits. Zero when `b > a`.
pub fn lucas_binom(mut a: u64, mut b: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while b > 0 {
        let (ai, bi) = (a % p64, b % p64);
        if bi > ai {
            return 0;
        }
        acc = acc * small_binom(ai, bi, p64) % p64;
        a /= p64;
        b /= p64;
    }
    (acc % p64) as u32
}

/// `C(a, b) mod p` for `b ≤ a < p`.
fn small_binom(a: u64, b: u64, p: u64) -> u64 {
    let b = b.min(a - b);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(lucas_binom(4, 2, 3), 0);
        assert_eq!(lucas_binom(7, 0, 5), 1);
        assert_eq!(lucas_binom(3, 1, 3), 0);
        assert_eq!(lucas_binom(2, 5, 7), 0);
    }

    #[test]
    fn agrees_with_pascal_triangle() {
        for p in [2u32, 3, 5, 7, 11] {
            let mut row = vec![1u64];
            for a in 0..=30u64 {
                for b in 0..=30u64 {
                    let exact = row.get(b as usize).copied().unwrap_or(0);
                    assert_eq!(lucas_binom(a, b, p) as u64, exact % p as u64, "C({a},{b}) mod {p}");
                }
                let mut next = vec![1u64; row.len() + 1];
                for i in 1..row.len() {
                    next[i] = row[i - 1] + row[i];
                }
                row = next;
            }
        }
    }
}
