//! Valuation at a prime of `Z[ζ_N]` lying over `p`.
//!
//! Write `N = p^a·m` with `p ∤ m`. The completion at a prime `𝔓 | p` is
//! `W[π]` where `W = Z_p[y]/F(y)` is unramified (`F` a Hensel lift of an
//! irreducible factor `f̄` of `Φ_m` mod `p`) and `π = 1 − ζ_{p^a}` is a root of
//! the Eisenstein polynomial `Φ_{p^a}(1 − π)`. An element is rewritten as
//! `Σ_{i<e} B_i π^i` with `B_i ∈ W/p^k`, and then `ν = min v_p(B_i) + i/e`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::Serialize;

use super::field::cyclotomic_polynomial;
use super::modpoly::{self, Poly};
use super::num::CycNum;
use crate::arith::{euler_phi, is_prime, mod_inv, p_part};
use crate::error::{Error, Result};

/// `ν(a)` normalized so that `ν(p) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Ratio<i64>),
    Infinite,
}

impl Valuation {
    pub fn at_least(&self, k: i64) -> bool {
        match self {
            Valuation::Infinite => true,
            Valuation::Finite(v) => *v >= Ratio::from_integer(k),
        }
    }

    pub fn finite(&self) -> Option<Ratio<i64>> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Infinite => write!(f, "inf"),
            Valuation::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// Working data at precision `p^k`: the lift `F_k` and `y^j mod F_k` for `j < m`.
struct Level {
    modulus: u64,
    y_powers: Vec<Poly>,
}

/// A prime `𝔓` of `Z[ζ_N]` above `p`, fixed by a factor `f̄` of `Φ_m` mod `p`.
pub struct PrimeAbovePData {
    p: u64,
    n: u32,
    p_a: u64,
    m: u64,
    /// `ζ_N^j = ζ_m^{s·j} ζ_{p^a}^{t·j}`
    s: u64,
    t: u64,
    e_ram: usize,
    f_bar: Poly,
    factor_index: usize,
    num_primes: usize,
    phi_m: Vec<i64>,
    /// `Φ_{p^a}(1 − π)` made monic, low degree first, as integers.
    eisenstein: Vec<BigInt>,
    max_k: u32,
    levels: Mutex<HashMap<u32, Arc<Level>>>,
}

impl fmt::Debug for PrimeAbovePData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimeAbovePData")
            .field("p", &self.p)
            .field("N", &self.n)
            .field("f_bar", &self.f_bar)
            .field("e_ram", &self.e_ram)
            .finish()
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct PrimeSummary {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u32,
    pub m: u64,
    pub e_ram: usize,
    pub residue_degree: usize,
    pub num_primes: usize,
    pub factor_index: usize,
    /// `f̄` mod `p`, constant term first.
    pub f_bar: Vec<u64>,
}

type PrimeCache = Mutex<HashMap<(u32, u64, usize), Arc<PrimeAbovePData>>>;

static SHARED: Lazy<PrimeCache> = Lazy::new(|| Mutex::new(HashMap::new()));

impl PrimeAbovePData {
    /// Process-wide handle for the `index`-th prime above `p` in `Q(ζ_n)`, built once.
    pub fn shared(n: u32, p: u64, index: usize) -> Result<Arc<Self>> {
        if let Some(pd) = SHARED.lock().expect("prime cache poisoned").get(&(n, p, index)) {
            return Ok(pd.clone());
        }
        let pd = Arc::new(Self::with_factor(n, p, index)?);
        Ok(SHARED.lock().expect("prime cache poisoned").entry((n, p, index)).or_insert(pd).clone())
    }

    /// The canonical prime: `f̄` least by degree, then coefficients from the constant term up.
    pub fn canonical(n: u32, p: u64) -> Result<Self> {
        Self::with_factor(n, p, 0)
    }

    /// Every prime above `p`, canonical one first.
    pub fn all(n: u32, p: u64) -> Result<Vec<Self>> {
        let first = Self::canonical(n, p)?;
        let count = first.num_primes;
        let mut out = vec![first];
        for i in 1..count {
            out.push(Self::with_factor(n, p, i)?);
        }
        Ok(out)
    }

    pub fn with_factor(n: u32, p: u64, index: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p_a = p_part(n as u64, p);
        let m = n as u64 / p_a;
        let phi_m = cyclotomic_polynomial(m as u32);
        let factors = modpoly::factor_squarefree(&modpoly::from_signed(&phi_m, p), p);
        let f_bar = factors
            .get(index)
            .cloned()
            .ok_or_else(|| Error::Internal(format!("no factor {index} of Φ_{m} mod {p}")))?;
        let s = if m == 1 { 0 } else { mod_inv(p_a % m, m).unwrap() };
        let t = if p_a == 1 { 0 } else { mod_inv(m % p_a, p_a).unwrap() };
        let e_ram = euler_phi(p_a) as usize;
        let eisenstein = eisenstein_poly(p_a);
        debug_assert_eq!(eisenstein.len(), e_ram + 1);
        let max_k = (62.0 / (p as f64).log2()).floor() as u32;
        Ok(PrimeAbovePData {
            p,
            n,
            p_a,
            m,
            s,
            t,
            e_ram,
            f_bar,
            factor_index: index,
            num_primes: factors.len(),
            phi_m,
            eisenstein,
            max_k,
            levels: Mutex::new(HashMap::new()),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn e_ram(&self) -> usize {
        self.e_ram
    }

    pub fn residue_degree(&self) -> usize {
        self.f_bar.len() - 1
    }

    pub fn num_primes(&self) -> usize {
        self.num_primes
    }

    pub fn f_bar(&self) -> &[u64] {
        &self.f_bar
    }

    pub fn summary(&self) -> PrimeSummary {
        PrimeSummary {
            p: self.p,
            n: self.n,
            m: self.m,
            e_ram: self.e_ram,
            residue_degree: self.residue_degree(),
            num_primes: self.num_primes,
            factor_index: self.factor_index,
            f_bar: self.f_bar.clone(),
        }
    }

    fn level(&self, k: u32) -> Arc<Level> {
        let mut cache = self.levels.lock().expect("level cache poisoned");
        cache
            .entry(k)
            .or_insert_with(|| {
                let modulus = self.p.pow(k);
                let fk = modpoly::hensel_lift(&self.phi_m, &self.f_bar, self.p, k);
                let mut y_powers = Vec::with_capacity(self.m as usize);
                let mut cur: Poly = vec![1 % modulus];
                for _ in 0..self.m {
                    y_powers.push(cur.clone());
                    cur = modpoly::rem(&modpoly::mul(&cur, &[0, 1], modulus), &fk, modulus);
                }
                Arc::new(Level { modulus, y_powers })
            })
            .clone()
    }

    /// `Σ_i B_i π^i` with `B_i ∈ W/p^k`, each `B_i` a coefficient vector in `y`.
    fn expand(&self, a: &CycNum, level: &Level) -> Vec<Poly> {
        let q = level.modulus;
        let qb = BigInt::from(q);
        let f = self.residue_degree();
        let n = self.n as u64;
        // A_r(y) for r in 0..p^a
        let mut a_r: Vec<Poly> = vec![vec![0; f]; self.p_a as usize];
        for (j, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cm = c.mod_floor(&qb).to_u64().unwrap();
            let j = j as u64 % n;
            let ym = (self.s * j % self.m) as usize;
            let r = (self.t * j % self.p_a) as usize;
            let yp = &level.y_powers[ym];
            for (i, &v) in yp.iter().enumerate() {
                if i < f {
                    a_r[r][i] = ((a_r[r][i] as u128 + cm as u128 * v as u128) % q as u128) as u64;
                }
            }
        }
        let e = self.e_ram;
        let eis: Vec<u64> = self.eisenstein.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect();
        // Horner in ζ_{p^a} = 1 − π, reducing by the monic Eisenstein polynomial
        let mut acc: Vec<Poly> = vec![vec![0; f]; e];
        for r in (0..self.p_a as usize).rev() {
            // acc ← acc·(1 − π) + A_r
            let mut next: Vec<Poly> = vec![vec![0; f]; e + 1];
            for i in 0..e {
                for l in 0..f {
                    next[i][l] = (next[i][l] + acc[i][l]) % q;
                    next[i + 1][l] = (next[i + 1][l] + q - acc[i][l]) % q;
                }
            }
            let top = next.pop().unwrap();
            for i in 0..e {
                for l in 0..f {
                    let sub = ((eis[i] as u128 * top[l] as u128) % q as u128) as u64;
                    next[i][l] = (next[i][l] + q - sub) % q;
                }
            }
            for l in 0..f {
                next[0][l] = (next[0][l] + a_r[r][l]) % q;
            }
            acc = next;
        }
        acc
    }

    fn check_den(&self, a: &CycNum) -> Result<()> {
        if a.den().is_multiple_of(&BigInt::from(self.p)) {
            return Err(Error::DenominatorNotCoprime { den: a.den().to_string(), p: self.p });
        }
        Ok(())
    }

    /// Exact `ν(a)`; the precision is raised until some coefficient survives.
    pub fn valuation(&self, a: &CycNum) -> Result<Valuation> {
        assert_eq!(a.modulus(), self.n, "valuation requested in a different field");
        if a.is_zero() {
            return Ok(Valuation::Infinite);
        }
        self.check_den(a)?;
        let mut k = 4.min(self.max_k);
        loop {
            let level = self.level(k);
            let b = self.expand(a, &level);
            let mut best: Option<Ratio<i64>> = None;
            for (i, bi) in b.iter().enumerate() {
                let Some(v) = bi.iter().filter(|&&c| c != 0).map(|&c| crate::arith::valuation(c, self.p)).min() else {
                    continue;
                };
                let val = Ratio::new(v as i64 * self.e_ram as i64 + i as i64, self.e_ram as i64);
                best = Some(best.map_or(val, |b| b.min(val)));
            }
            if let Some(v) = best {
                return Ok(Valuation::Finite(v));
            }
            if k == self.max_k {
                return Err(Error::PrecisionExhausted { k });
            }
            k = (k * 2).min(self.max_k);
        }
    }

    /// `a mod 𝔓` in the residue field `GF(p)[y]/f̄`, as a coefficient vector.
    pub fn residue(&self, a: &CycNum) -> Result<Vec<u64>> {
        self.check_den(a)?;
        if !a.is_algebraic_integer() {
            // p ∤ den, so divide by den in the residue field
            let den = a.den().mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
            let inv = mod_inv(den, self.p).unwrap();
            let num = a.mul_int(a.den().clone());
            let r = self.residue(&num)?;
            return Ok(r.into_iter().map(|c| c * inv % self.p).collect());
        }
        let level = self.level(1);
        Ok(self.expand(a, &level).swap_remove(0))
    }
}

/// `±Φ_{p^a}(1 − π)`, sign chosen to make it monic.
fn eisenstein_poly(p_a: u64) -> Vec<BigInt> {
    if p_a == 1 {
        return vec![BigInt::zero(), BigInt::from(1)];
    }
    let phi = cyclotomic_polynomial(p_a as u32);
    let mut out = vec![BigInt::zero(); phi.len()];
    // (1 − π)^i via repeated multiplication
    let mut pow = vec![BigInt::from(1)];
    for &c in &phi {
        for (i, v) in pow.iter().enumerate() {
            out[i] += v * c;
        }
        let mut next = vec![BigInt::zero(); pow.len() + 1];
        for (i, v) in pow.iter().enumerate() {
            next[i] += v;
            next[i + 1] -= v;
        }
        pow = next;
    }
    if out.last().unwrap() < &BigInt::zero() {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}
