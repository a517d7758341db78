//! The kernel `μ(g, h′) = Σ s·χ(g)·conj(χ′(h′))` on class pairs, and the two
//! cell tests.

use super::Pair;
use crate::arith::{p_part, valuation};
use crate::cyclo::{sum, CycNum, PrimeAbovePData, Valuation};
use crate::error::Result;
use crate::hyperfocal::BlockSide;

/// How an integrality cell was decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Zero,
    /// `μ ∈ d·Z[ζ]` for the `p`-part `d`.
    Global,
    /// Global divisibility failed; local valuations decided.
    Valuation(Vec<Valuation>),
}

pub(crate) struct Kernel<'a> {
    pub g: &'a BlockSide,
    pub n: u32,
    pub p: u64,
    pub g_singular: Vec<bool>,
    pub h_singular: Vec<bool>,
    /// `p`-part of the larger of `|C_G(g)|` and `|C_H(h′)|` is taken per cell.
    g_div: Vec<u64>,
    h_div: Vec<u64>,
    h_conj: Vec<Vec<CycNum>>,
}

impl<'a> Kernel<'a> {
    pub fn new(g: &'a BlockSide, h: &'a BlockSide) -> Self {
        let p = g.p;
        let singular = |s: &BlockSide| s.group.classes().iter().map(|c| c.element_order % p == 0).collect();
        let div = |s: &BlockSide| s.group.classes().iter().map(|c| p_part(c.centralizer_order as u64, p)).collect();
        let h_conj = h.table.rows().iter().map(|r| r.values().iter().map(CycNum::conj).collect()).collect();
        Kernel {
            g,
            n: g.modulus(),
            p,
            g_singular: singular(g),
            h_singular: singular(h),
            g_div: div(g),
            h_div: div(h),
            h_conj,
        }
    }

    pub fn g_classes(&self) -> usize {
        self.g_singular.len()
    }

    pub fn h_classes(&self) -> usize {
        self.h_singular.len()
    }

    pub fn is_mixed(&self, a: usize, b: usize) -> bool {
        self.g_singular[a] != self.h_singular[b]
    }

    pub fn divisor(&self, a: usize, b: usize) -> u64 {
        self.g_div[a].max(self.h_div[b])
    }

    pub fn mu(&self, pairs: &[Pair], a: usize, b: usize) -> CycNum {
        let terms: Vec<CycNum> = pairs
            .iter()
            .map(|q| (self.g.table.row(q.target).value(a) * &self.h_conj[q.source][b]).mul_int(q.sign))
            .collect();
        sum(self.n, &terms)
    }

    /// Integrality of one cell under the given primes (the first one is canonical).
    pub fn decide(&self, mu: &CycNum, d: u64, primes: &[&PrimeAbovePData]) -> Result<(bool, Decision)> {
        if mu.is_zero() {
            return Ok((true, Decision::Zero));
        }
        if mu.divisible_by_int(d)? {
            return Ok((true, Decision::Global));
        }
        let need = valuation(d, self.p) as i64;
        let vals = primes.iter().map(|pd| pd.valuation(mu)).collect::<Result<Vec<_>>>()?;
        let ok = vals.iter().all(|v| v.at_least(need));
        Ok((ok, Decision::Valuation(vals)))
    }

    /// Every mixed cell vanishes and every cell is integral at the canonical prime.
    pub fn passes(&self, pairs: &[Pair], prime: &PrimeAbovePData) -> bool {
        let (ng, nh) = (self.g_classes(), self.h_classes());
        let mixed_ok = crate::par::all_range(ng * nh, |ab| {
            let (a, b) = (ab / nh, ab % nh);
            !self.is_mixed(a, b) || self.mu(pairs, a, b).is_zero()
        });
        mixed_ok
            && crate::par::all_range(ng * nh, |ab| {
                let (a, b) = (ab / nh, ab % nh);
                let mu = self.mu(pairs, a, b);
                matches!(self.decide(&mu, self.divisor(a, b), &[prime]), Ok((true, _)))
            })
    }
}
