//! Dixon–Schneider: simultaneous eigenvectors of the class matrices over
//! `GF(q)`, lifted to exact cyclotomic values through power maps.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{CharTable, ClassFn};
use crate::arith::{is_prime, mod_inv, mod_pow, mul_mod, primitive_root};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::par;

/// `M_i[j][k] = #{x ∈ K_i : x⁻¹·g_k ∈ K_j}`, the class multiplication coefficients.
pub fn class_matrices(g: &Group) -> Vec<Vec<Vec<u32>>> {
    let r = g.num_classes();
    par::map_range(r, |i| {
        let mut m = vec![vec![0u32; r]; r];
        for &x in g.class_members(i) {
            let xi = g.element(x as usize).inverse();
            for (k, c) in g.classes().iter().enumerate() {
                let j = g.class_of_perm(&(&xi * &c.rep)).expect("closed under products");
                m[j][k] += 1;
            }
        }
        m
    })
}

/// The `skip`-th prime `q ≡ 1 (mod exponent)` with `q > 2√order`.
pub fn admissible_prime(order: usize, exponent: u64, skip: usize) -> u64 {
    let mut found = 0;
    let mut q = exponent + 1;
    loop {
        if is_prime(q) && (q as f64) > 2.0 * (order as f64).sqrt() && q * q > 4 * order as u64 {
            if found == skip {
                return q;
            }
            found += 1;
        }
        q += exponent;
    }
}

/// Table over `Q(ζ_n)` using the least admissible prime.
pub fn dixon_table(g: &Arc<Group>, n: u32) -> Result<CharTable> {
    dixon_table_with_prime(g, n, admissible_prime(g.order(), g.exponent(), 0))
}

pub fn dixon_table_with_prime(g: &Arc<Group>, n: u32, q: u64) -> Result<CharTable> {
    let exp = g.exponent();
    if !(n as u64).is_multiple_of(exp) {
        return Err(Error::Internal(format!("modulus {n} is not a multiple of the exponent {exp}")));
    }
    if !is_prime(q) || !(q - 1).is_multiple_of(exp) || q * q <= 4 * g.order() as u64 {
        return Err(Error::Internal(format!("{q} is not an admissible prime")));
    }
    let r = g.num_classes();
    let mats = class_matrices(g);
    let vectors = split_eigenspaces(&mats, q)?;
    if vectors.len() != r {
        return Err(Error::LiftVerificationFailed(format!("{} eigenvectors for {r} classes", vectors.len())));
    }
    let z = mod_pow(primitive_root(q), (q - 1) / exp, q);
    let power_map: Vec<Vec<usize>> = (0..r)
        .map(|k| {
            let o = g.classes()[k].element_order as i64;
            (0..o).map(|l| g.power_class(k, l)).collect()
        })
        .collect();
    let rows: Vec<Result<ClassFn>> = par::map(&vectors, |w| lift_character(g, n, q, z, w, &power_map));
    let mut rows: Vec<ClassFn> = rows.into_iter().collect::<Result<_>>()?;
    sort_rows(&mut rows);
    let table = CharTable::from_rows(g.clone(), n, q, rows);
    table.verify()?;
    Ok(table)
}

/// Degree first, then values in class order; the trivial character leads.
pub(crate) fn sort_rows(rows: &mut [ClassFn]) {
    rows.sort_by(|a, b| {
        let ta = a.values().iter().all(CycNum::is_one);
        let tb = b.values().iter().all(CycNum::is_one);
        tb.cmp(&ta).then_with(|| a.degree().cmp(&b.degree())).then_with(|| {
            a.values()
                .iter()
                .zip(b.values())
                .map(|(x, y)| x.canonical_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
}

fn lift_character(g: &Arc<Group>, n: u32, q: u64, z: u64, w: &[u64], power_map: &[Vec<usize>]) -> Result<ClassFn> {
    let classes = g.classes();
    let order = g.order() as u64;
    // χ(1)² = |G| / Σ_k w_k w_{k*} / |K_k|
    let mut s = 0u64;
    for (k, c) in classes.iter().enumerate() {
        let t = mul_mod(w[k], w[g.inverse_class(k)], q);
        s = (s + mul_mod(t, mod_inv(c.size as u64 % q, q).unwrap(), q)) % q;
    }
    let s_inv = mod_inv(s, q).ok_or_else(|| Error::LiftVerificationFailed("degree sum vanished".into()))?;
    let d2 = mul_mod(order % q, s_inv, q);
    let d = (1..=order)
        .take_while(|d| d * d <= order)
        .find(|d| d * d % q == d2)
        .ok_or_else(|| Error::LiftVerificationFailed("no degree square root".into()))?;
    let vals_mod: Vec<u64> = classes
        .iter()
        .enumerate()
        .map(|(k, c)| mul_mod(mul_mod(w[k], d, q), mod_inv(c.size as u64 % q, q).unwrap(), q))
        .collect();
    let exp = g.exponent();
    let mut values = Vec::with_capacity(classes.len());
    for (k, c) in classes.iter().enumerate() {
        let o = c.element_order;
        let zo = mod_pow(z, exp / o, q);
        let zo_inv = mod_inv(zo, q).unwrap();
        let o_inv = mod_inv(o % q, q).unwrap();
        let mut coeffs = vec![BigInt::from(0); n as usize];
        let step = n as u64 / o;
        for j in 0..o {
            // m_j = (1/o) Σ_l χ(g^l) z_o^{−jl}
            let base = mod_pow(zo_inv, j, q);
            let mut acc = 0u64;
            let mut t = 1u64;
            for l in 0..o as usize {
                acc = (acc + mul_mod(vals_mod[power_map[k][l]], t, q)) % q;
                t = mul_mod(t, base, q);
            }
            let m = mul_mod(acc, o_inv, q);
            if m > d {
                return Err(Error::LiftVerificationFailed(format!("eigenvalue multiplicity {m} exceeds degree {d}")));
            }
            coeffs[(j * step) as usize] = BigInt::from(m);
        }
        values.push(CycNum::from_exponent_sum(n, &coeffs, BigInt::from(1)));
    }
    Ok(ClassFn::new(g.clone(), values))
}

/// Common eigenvectors of the class matrices, normalized so `w[0] = 1`,
/// refined in canonical class order.
fn split_eigenspaces(mats: &[Vec<Vec<u32>>], q: u64) -> Result<Vec<Vec<u64>>> {
    let r = mats.len();
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut spaces = vec![Space::new(identity, q)];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let mq: Vec<Vec<u64>> = m.iter().map(|row| row.iter().map(|&x| x as u64 % q).collect()).collect();
        let next: Vec<Vec<Space>> = par::map(&spaces, |s| if s.dim() == 1 { vec![s.clone()] } else { s.split(&mq, q) });
        spaces = next.into_iter().flatten().collect();
    }
    spaces
        .into_iter()
        .map(|s| {
            if s.dim() != 1 {
                return Err(Error::LiftVerificationFailed("eigenspaces did not separate".into()));
            }
            let v = &s.basis[0];
            let inv = mod_inv(v[0], q).ok_or_else(|| Error::LiftVerificationFailed("w[0] = 0".into()))?;
            Ok(v.iter().map(|&x| mul_mod(x, inv, q)).collect())
        })
        .collect()
}

/// A subspace of `GF(q)^r` with a basis in reduced echelon form.
#[derive(Clone)]
struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn new(vectors: Vec<Vec<u64>>, q: u64) -> Space {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut v in vectors {
            for (b, &p) in basis.iter().zip(&pivots) {
                let c = v[p];
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + q - mul_mod(c, *y, q)) % q;
                    }
                }
            }
            let Some(p) = v.iter().position(|&x| x != 0) else { continue };
            let inv = mod_inv(v[p], q).unwrap();
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv, q);
            }
            for b in basis.iter_mut() {
                let c = b[p];
                if c != 0 {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = (*x + q - mul_mod(c, *y, q)) % q;
                    }
                }
            }
            basis.push(v);
            pivots.push(p);
        }
        Space { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Eigenspaces of `m` restricted to this (invariant) subspace.
    fn split(&self, m: &[Vec<u64>], q: u64) -> Vec<Space> {
        let d = self.dim();
        // column l of `a` holds the coordinates of m·b_l
        let images: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|b| {
                m.iter().map(|row| row.iter().zip(b).fold(0u64, |acc, (&x, &y)| (acc + mul_mod(x, y, q)) % q)).collect()
            })
            .collect();
        let a: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|l| images[l][self.pivots[i]]).collect()).collect();
        let mut out = Vec::new();
        let mut found = 0;
        for lambda in 0..q {
            if found == d {
                break;
            }
            let shifted: Vec<Vec<u64>> = a
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter().enumerate().map(|(l, &x)| if i == l { (x + q - lambda) % q } else { x }).collect()
                })
                .collect();
            let kernel = crate::cyclo::modpoly::nullspace(&shifted, q);
            if kernel.is_empty() {
                continue;
            }
            found += kernel.len();
            let vectors: Vec<Vec<u64>> = kernel
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; self.basis[0].len()];
                    for (coef, b) in c.iter().zip(&self.basis) {
                        for (x, y) in v.iter_mut().zip(b) {
                            *x = (*x + mul_mod(*coef, *y, q)) % q;
                        }
                    }
                    v
                })
                .collect();
            out.push(Space::new(vectors, q));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn group(degree: usize, gens: &[&[&[usize]]]) -> Arc<Group> {
        let gens: Vec<Perm> = gens
            .iter()
            .map(|cs| Perm::from_cycles(degree, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap())
            .collect();
        Arc::new(Group::new(degree, &gens).unwrap())
    }

    #[test]
    fn a5_uses_31() {
        assert_eq!(admissible_prime(60, 30, 0), 31);
        assert_eq!(admissible_prime(6, 6, 0), 7);
        assert_eq!(admissible_prime(6, 6, 1), 13);
    }

    #[test]
    fn class_matrix_row_sums() {
        let g = group(3, &[&[&[0, 1, 2]], &[&[0, 1]]]);
        let mats = class_matrices(&g);
        for (i, m) in mats.iter().enumerate() {
            for k in 0..g.num_classes() {
                let col: u32 = (0..g.num_classes()).map(|j| m[j][k]).sum();
                assert_eq!(col as usize, g.classes()[i].size);
            }
        }
        // transposition · transposition lands in {1} ∪ 3-cycles
        let t = g.classes().iter().position(|c| c.element_order == 2).unwrap();
        let m = &mats[t];
        assert_eq!(m[t][0], 3);
        assert_eq!(m[t][t], 0);
    }

    #[test]
    fn c2_table() {
        let g = group(2, &[&[&[0, 1]]]);
        let t = dixon_table(&g, 2).unwrap();
        let vals: Vec<Vec<i64>> =
            t.rows().iter().map(|r| r.values().iter().map(|v| v.to_i64().unwrap()).collect()).collect();
        assert_eq!(vals, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn table_is_independent_of_prime() {
        for g in [group(3, &[&[&[0, 1, 2]], &[&[0, 1]]]), group(5, &[&[&[0, 1, 2, 3, 4]], &[&[1, 4], &[2, 3]]])] {
            let n = g.exponent() as u32;
            let a = dixon_table_with_prime(&g, n, admissible_prime(g.order(), g.exponent(), 0)).unwrap();
            let b = dixon_table_with_prime(&g, n, admissible_prime(g.order(), g.exponent(), 1)).unwrap();
            assert_ne!(a.prime(), b.prime());
            assert_eq!(a.rows(), b.rows());
        }
    }
}
