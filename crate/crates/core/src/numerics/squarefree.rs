use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TRIAL_LIMIT: u64 = 1_000_000;

/// Splits `n = s^2 * r` with `r` square-free.
///
/// Small factors come from trial division up to 10^6; whatever cofactor
/// survives is split with Pollard's rho (Brent variant).
pub fn square_free_decompose(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut rest = n.clone();

    let absorb = |p: &BigUint, e: u32, square: &mut BigUint, free: &mut BigUint| {
        *square *= p.pow(e / 2);
        if e % 2 == 1 {
            *free *= p;
        }
    };

    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        if BigUint::from(p) * BigUint::from(p) > rest {
            break;
        }
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            absorb(&bp, e, &mut square, &mut free);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return (square, free);
    }
    if BigUint::from(p) * BigUint::from(p) > rest || is_probable_prime(&rest) {
        free *= &rest;
        return (square, free);
    }

    let mut primes = Vec::new();
    factor_into(&rest, &mut primes);
    primes.sort();
    let mut i = 0;
    while i < primes.len() {
        let mut j = i;
        while j < primes.len() && primes[j] == primes[i] {
            j += 1;
        }
        absorb(&primes[i], (j - i) as u32, &mut square, &mut free);
        i = j;
    }
    (square, free)
}

fn factor_into(n: &BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(n) {
        out.push(n.clone());
        return;
    }
    let d = pollard_brent(n);
    factor_into(&d, out);
    factor_into(&(n / &d), out);
}

fn is_probable_prime(n: &BigUint) -> bool {
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for b in BASES {
            if small == b as u64 {
                return true;
            }
            if small % b as u64 == 0 {
                return false;
            }
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for b in BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let one = BigUint::one();
    loop {
        let c = rng.gen_biguint_range(&one, n);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = rng.gen_biguint_range(&one, n);
        let m = 128u64;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}
