//! Dense polynomials over the prime field F_p, stored low degree first with no
//! trailing zeros. These back the rational function fields F_p(t) and GF(p^e).

pub type Fpx = Vec<u64>;

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn trim(a: &mut Fpx) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn constant(c: u64, p: u64) -> Fpx {
    let c = c % p;
    if c == 0 {
        vec![]
    } else {
        vec![c]
    }
}

pub fn is_one(a: &[u64]) -> bool {
    a.len() == 1 && a[0] == 1
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Fpx {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        r.push((x + y) % p);
    }
    trim(&mut r);
    r
}

pub fn neg(a: &[u64], p: u64) -> Fpx {
    a.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect()
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Fpx {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        r.push((x + p - y) % p);
    }
    trim(&mut r);
    r
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Fpx {
    let c = c % p;
    if c == 0 {
        return vec![];
    }
    a.iter().map(|&x| mulmod(x, c, p)).collect()
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Fpx {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    if p < (1 << 20) && a.len().min(b.len()) < 4096 {
        // accumulate without reduction while it cannot overflow
        let bound = u64::MAX / ((p - 1) * (p - 1)).max(1);
        let mut acc = vec![0u64; a.len() + b.len() - 1];
        let mut counts = 0u64;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x * y;
            }
            counts += 1;
            if counts + 1 >= bound {
                for v in acc.iter_mut() {
                    *v %= p;
                }
                counts = 1;
            }
        }
        let mut r: Fpx = acc.into_iter().map(|v| v % p).collect();
        trim(&mut r);
        return r;
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut r);
    r
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Fpx, Fpx) {
    assert!(!b.is_empty(), "division by zero polynomial in F_p[t]");
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = invmod(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulmod(r[k + db], inv, p);
        q[k] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(c, y, p)) % p;
            }
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Fpx {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Fpx {
    match a.last() {
        None => vec![],
        Some(&l) => scale(a, invmod(l, p), p),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Fpx {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Returns (g, s, u) with s·a + u·b = g monic.
pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Fpx, Fpx, Fpx) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (vec![], vec![], vec![]),
        Some(&l) => {
            let inv = invmod(l, p);
            (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
        }
    }
}

pub fn derivative(a: &[u64], p: u64) -> Fpx {
    let mut r: Fpx = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
        .collect();
    trim(&mut r);
    r
}

pub fn pow(a: &[u64], mut e: u64, p: u64) -> Fpx {
    let mut base = a.to_vec();
    let mut r = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            r = mul(&r, &base, p);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base, p);
        }
    }
    r
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in a.iter().rev() {
        acc = (mulmod(acc, x, p) + c) % p;
    }
    acc
}

/// Exact division; returns None when b does not divide a.
pub fn div_exact(a: &[u64], b: &[u64], p: u64) -> Option<Fpx> {
    let (q, r) = divrem(a, b, p);
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Substitutes t -> t^k.
pub fn inflate(a: &[u64], k: usize) -> Fpx {
    if a.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; (a.len() - 1) * k + 1];
    for (i, &c) in a.iter().enumerate() {
        r[i * k] = c;
    }
    r
}

/// Monomial c·t^k.
pub fn monomial(c: u64, k: usize, p: u64) -> Fpx {
    let c = c % p;
    if c == 0 {
        return vec![];
    }
    let mut r = vec![0u64; k + 1];
    r[k] = c;
    r
}

/// All monic polynomials of the given degree, in increasing base-p order of
/// their lower coefficients.
pub fn monic_of_degree(d: usize, p: u64) -> impl Iterator<Item = Fpx> {
    let total = (p as u128).pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push((idx % p as u128) as u64);
            idx /= p as u128;
        }
        v.push(1);
        v
    })
}

/// Rabin irreducibility test over F_p.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let f = monic(f, p);
    let x: Fpx = vec![0, 1];
    let mut primes = Vec::new();
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m % q == 0 {
            primes.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    // x^(p^k) mod f via repeated p-th powering
    let frob = |g: &Fpx| -> Fpx { powmod_poly(g, p as u128, &f, p) };
    let mut powers = vec![x.clone()];
    for _ in 0..n {
        let next = frob(powers.last().unwrap());
        powers.push(next);
    }
    if powers[n] != rem(&x, &f, p) {
        return false;
    }
    for &r in &primes {
        let h = sub(&powers[n / r], &x, p);
        if !is_one(&gcd(&f, &h, p)) {
            return false;
        }
    }
    true
}

pub fn powmod_poly(g: &[u64], mut e: u128, f: &[u64], p: u64) -> Fpx {
    let mut base = rem(g, f, p);
    let mut r = rem(&[1u64], f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &base, p), f, p);
        }
        e >>= 1;
        if e > 0 {
            base = rem(&mul(&base, &base, p), f, p);
        }
    }
    r
}

/// Lexicographically least monic irreducible of degree d (ordered by base-p
/// value of the lower coefficients).
pub fn least_irreducible(d: usize, p: u64) -> Fpx {
    monic_of_degree(d, p)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(4, 2), vec![1, 1, 0, 0, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 0, 1]);
    }

    #[test]
    fn xgcd_identity() {
        let p = 7;
        let a = vec![1, 2, 3, 1];
        let b = vec![5, 0, 1];
        let (g, s, u) = xgcd(&a, &b, p);
        let lhs = add(&mul(&s, &a, p), &mul(&u, &b, p), p);
        assert_eq!(lhs, g);
    }
}
