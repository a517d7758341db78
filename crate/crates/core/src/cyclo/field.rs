use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::arith::euler_phi;

/// `Q(ζ_n)` presented as `Q[x]/Φ_n(x)` with the power basis `1, x, …, x^{φ(n)-1}`.
#[derive(Debug)]
pub struct CycloField {
    n: u32,
    phi: usize,
    /// Φ_n, low degree first, monic.
    poly: Vec<i64>,
    /// `x^k mod Φ_n` for `k` in `φ(n)..n`, indexed by `k - φ(n)`.
    tail_powers: Vec<Vec<i64>>,
}

static FIELDS: Lazy<Mutex<HashMap<u32, Arc<CycloField>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl CycloField {
    /// Shared handle for `Q(ζ_n)`; fields are built once per modulus.
    pub fn get(n: u32) -> Arc<CycloField> {
        assert!(n > 0, "cyclotomic modulus must be positive");
        let mut cache = FIELDS.lock().expect("field cache poisoned");
        cache.entry(n).or_insert_with(|| Arc::new(CycloField::build(n))).clone()
    }

    fn build(n: u32) -> CycloField {
        let poly = cyclotomic_polynomial(n);
        let phi = euler_phi(n as u64) as usize;
        debug_assert_eq!(poly.len(), phi + 1);
        let mut tail_powers = Vec::new();
        // x^φ = −(Φ − x^φ)
        let mut cur: Vec<i64> = poly[..phi].iter().map(|c| -c).collect();
        for _ in phi..n as usize {
            tail_powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..phi - 1]);
            for i in 0..phi {
                next[i] -= top * poly[i];
            }
            cur = next;
        }
        CycloField { n, phi, poly, tail_powers }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic_poly(&self) -> &[i64] {
        &self.poly
    }

    /// Power-basis coordinates of `x^k` for `k` in `0..n`.
    pub fn power(&self, k: usize) -> Vec<i64> {
        let k = k % self.n as usize;
        if k < self.phi {
            let mut v = vec![0; self.phi];
            v[k] = 1;
            v
        } else {
            self.tail_powers[k - self.phi].clone()
        }
    }

    pub(crate) fn tail_power(&self, k: usize) -> &[i64] {
        &self.tail_powers[k - self.phi]
    }
}

/// Φ_n by repeated exact division of `x^n − 1`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let n = n as usize;
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d as u32));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for j in 0..=dd {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}
