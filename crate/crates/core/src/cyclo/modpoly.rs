//! Dense polynomials over `Z/M` (low degree first), with factorization over
//! `GF(p)` and Hensel lifting to `Z/p^k`.

use crate::arith::{mod_inv, mul_mod};

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn from_signed(a: &[i64], m: u64) -> Poly {
    trim(a.iter().map(|&c| c.rem_euclid(m as i64) as u64).collect())
}

pub fn add(a: &[u64], b: &[u64], m: u64) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % m).collect())
}

pub fn sub(a: &[u64], b: &[u64], m: u64) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + m - b.get(i).copied().unwrap_or(0) % m) % m).collect())
}

pub fn scale(a: &[u64], c: u64, m: u64) -> Poly {
    trim(a.iter().map(|&x| mul_mod(x, c, m)).collect())
}

pub fn mul(a: &[u64], b: &[u64], m: u64) -> Poly {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, m)) % m;
        }
    }
    trim(out)
}

/// Quotient and remainder by a divisor whose leading coefficient is a unit mod `m`.
pub fn divmod(a: &[u64], b: &[u64], m: u64) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = mod_inv(b[db], m).expect("leading coefficient must be a unit");
    let mut r: Poly = a.to_vec();
    let Some(da) = degree(&r) else { return (vec![0], vec![0]) };
    if da < db {
        return (vec![0], trim(r));
    }
    let mut q = vec![0u64; da - db + 1];
    for i in (0..=da - db).rev() {
        let c = mul_mod(r[i + db], lead_inv, m);
        q[i] = c;
        if c == 0 {
            continue;
        }
        for j in 0..=db {
            r[i + j] = (r[i + j] + m - mul_mod(c, b[j], m)) % m;
        }
    }
    r.truncate(db.max(1));
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], m: u64) -> Poly {
    divmod(a, b, m).1
}

pub fn make_monic(a: &[u64], p: u64) -> Poly {
    match degree(a) {
        None => vec![0],
        Some(d) => scale(a, mod_inv(a[d], p).unwrap(), p),
    }
}

/// Monic gcd over `GF(p)`.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while degree(&b).is_some() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    make_monic(&a, p)
}

/// `(g, s, t)` with `s·a + t·b = g` monic over `GF(p)`.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], vec![0u64]);
    let (mut t0, mut t1) = (vec![0u64], vec![1u64]);
    while degree(&r1).is_some() {
        let (q, r) = divmod(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let d = degree(&r0).unwrap_or(0);
    let inv = mod_inv(r0[d], p).unwrap();
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

/// `base^e mod f` over `Z/m`.
pub fn powmod(base: &[u64], mut e: u64, f: &[u64], m: u64) -> Poly {
    let mut acc = vec![1u64 % m];
    let mut b = rem(base, f, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, m), f, m);
        }
        b = rem(&mul(&b, &b, m), f, m);
        e >>= 1;
    }
    acc
}

/// Irreducible monic factors of a squarefree monic `f` over `GF(p)`
/// (Berlekamp), sorted by degree and then coefficient vector (constant term first).
pub fn factor_squarefree(f: &[u64], p: u64) -> Vec<Poly> {
    let f = make_monic(f, p);
    let d = degree(&f).unwrap_or(0);
    if d <= 1 {
        return vec![f];
    }
    // Q[i] = x^{ip} mod f; kernel of (Q − I)ᵀ
    let xp = powmod(&[0, 1], p, &f, p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(d);
    let mut cur = vec![1u64];
    for _ in 0..d {
        let mut row = cur.clone();
        row.resize(d, 0);
        rows.push(row);
        cur = rem(&mul(&cur, &xp, p), &f, p);
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    // v·(Q − I) = 0  ⇔  (Q − I)ᵀ vᵀ = 0
    let mt: Vec<Vec<u64>> = (0..d).map(|j| (0..d).map(|i| rows[i][j]).collect()).collect();
    let basis = nullspace(&mt, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    'outer: for v in &basis {
        let v = trim(v.clone());
        if degree(&v).unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for h in &factors {
            let mut pending = vec![h.clone()];
            if degree(h).unwrap_or(0) > 1 {
                for s in 0..p {
                    let vs = sub(&v, &[s], p);
                    let mut split = Vec::new();
                    for g in pending.drain(..) {
                        let c = gcd(&g, &vs, p);
                        let dc = degree(&c).unwrap_or(0);
                        if dc > 0 && dc < degree(&g).unwrap_or(0) {
                            let (q, _) = divmod(&g, &c, p);
                            split.push(c);
                            split.push(make_monic(&q, p));
                        } else {
                            split.push(g);
                        }
                    }
                    pending = split;
                }
            }
            next.extend(pending);
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    factors.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    factors
}

/// Basis of `{v : M v = 0}` over `GF(p)`.
pub fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivot_col = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = mod_inv(a[r][c], p).unwrap();
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - mul_mod(f, a[r][j], p)) % p;
                }
            }
        }
        pivot_col.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_col.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivot_col.iter().enumerate() {
                v[pc] = (p - a[i][fc]) % p;
            }
            v
        })
        .collect()
}

/// Lifts `f ≡ a·b (mod p)` with `gcd(a, b) = 1` to monic `a_k` dividing `f` mod `p^k`.
pub fn hensel_lift(f: &[i64], a: &[u64], p: u64, k: u32) -> Poly {
    let b = divmod(&from_signed(f, p), a, p).0;
    let (_, _, t) = ext_gcd(a, &b, p);
    let mut ak = a.to_vec();
    let mut bk = b;
    let mut pk = p;
    for _ in 1..k {
        let m = pk * p;
        let fm = from_signed(f, m);
        let err = sub(&fm, &mul(&ak, &bk, m), m);
        // err is divisible by pk
        let e: Poly = trim(err.iter().map(|&c| (c / pk) % p).collect());
        let da = rem(&mul(&e, &t, p), a, p);
        let num = sub(&e, &mul(&da, &bk, p), p);
        let db = divmod(&num, &ak.iter().map(|&c| c % p).collect::<Vec<_>>(), p).0;
        ak = add(&ak, &scale(&da, pk, m), m);
        bk = add(&bk, &scale(&db, pk, m), m);
        pk = m;
    }
    ak
}
