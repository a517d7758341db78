use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;

use super::ctx::HyperfocalCtx;
use crate::blocks::{p_sections, principal_block, section_projection, BlockData, BrauerElt};
use crate::chartab::{CharTable, ClassFn};
use crate::cyclo::{sum, CycNum};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::perm::Perm;
use crate::session::Session;

/// A function on the elements of a subgroup, stored in element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementFn {
    pub domain: Subgroup,
    pub values: Vec<CycNum>,
}

impl ElementFn {
    pub fn at(&self, v: &Perm) -> Option<&CycNum> {
        self.domain.elements().binary_search(v).ok().map(|i| &self.values[i])
    }

    /// Values of a class function of `group` on `domain ⊆ group`.
    pub fn from_class_fn(f: &ClassFn, domain: &Subgroup) -> ElementFn {
        let g = f.group();
        let values = domain
            .elements()
            .iter()
            .map(|v| f.value(g.class_of_perm(v).expect("domain lies in the group")).clone())
            .collect();
        ElementFn { domain: domain.clone(), values }
    }

    pub fn mul(&self, other: &ElementFn) -> ElementFn {
        assert_eq!(self.domain.elements(), other.domain.elements(), "same domain");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        ElementFn { domain: self.domain.clone(), values }
    }

    /// Induction to an overgroup `parent` in which the domain is normal:
    /// `f↑(u) = |H|⁻¹ Σ_{v ∈ parent} f°(u^v)`.
    pub fn induce_normal(&self, parent: &Subgroup) -> ElementFn {
        let n = self.values[0].modulus();
        let h = self.domain.order() as i64;
        let values = parent
            .elements()
            .iter()
            .map(|u| {
                if !self.domain.contains(u) {
                    return CycNum::zero(n);
                }
                let terms: Vec<CycNum> =
                    parent.elements().iter().map(|v| self.at(&u.conj(v)).expect("normal subgroup").clone()).collect();
                sum(n, &terms).div_int(h).expect("nonzero order")
            })
            .collect();
        ElementFn { domain: parent.clone(), values }
    }

    /// `true` iff the values agree on elements that are conjugate in `g`.
    pub fn is_stable_in(&self, g: &Group) -> bool {
        let mut seen: std::collections::HashMap<usize, &CycNum> = std::collections::HashMap::new();
        self.domain.elements().iter().zip(&self.values).all(|(v, val)| {
            let k = g.class_of_perm(v).expect("domain lies in the group");
            *seen.entry(k).or_insert(val) == val
        })
    }
}

/// The action of `N` on `Irr(P̃) = {ν_k : x^j ↦ ζ^{jk}}` through multipliers.
#[derive(Clone, Debug)]
pub struct LinearCharData {
    /// `p^n = |P̃|`
    pub order: u64,
    /// `{r : x^a = x^r, a ∈ N}`
    pub multipliers: Vec<u64>,
    /// The same for `a ∈ P`.
    pub p_multipliers: Vec<u64>,
    /// `X`: least exponent of each nontrivial orbit under `P ⋊ E`.
    pub reps: Vec<u64>,
    pub orbits: Vec<Vec<u64>>,
    /// `X_1`: the `P`-invariant members of `X`.
    pub invariant: Vec<u64>,
}

impl LinearCharData {
    pub fn is_invariant(&self, k: u64) -> bool {
        self.p_multipliers.iter().all(|&r| (k * r) % self.order == k % self.order)
    }
}

impl HyperfocalCtx {
    pub fn invariant_linear_chars(&self) -> LinearCharData {
        let order = self.p_tilde_order();
        let collect = |elems: &[Perm]| -> Vec<u64> {
            let set: BTreeSet<u64> = elems.iter().map(|a| self.multiplier(a)).collect();
            set.into_iter().collect()
        };
        let multipliers = collect(self.normalizer.elements());
        let p_multipliers = collect(self.sylow.elements());
        let mut done = vec![false; order as usize];
        let mut reps = Vec::new();
        let mut orbits = Vec::new();
        for k in 1..order {
            if done[k as usize] {
                continue;
            }
            let orbit: BTreeSet<u64> = multipliers.iter().map(|&r| (k * r) % order).collect();
            for &j in &orbit {
                done[j as usize] = true;
            }
            reps.push(k);
            orbits.push(orbit.into_iter().collect());
        }
        let mut data = LinearCharData { order, multipliers, p_multipliers, reps, orbits, invariant: Vec::new() };
        data.invariant = data.reps.iter().copied().filter(|&k| data.is_invariant(k)).collect();
        data
    }

    /// `P_ν`, the stabilizer of `ν_k` in `P`.
    pub fn stabilizer(&self, k: u64) -> Subgroup {
        let order = self.p_tilde_order();
        let elems: Vec<Perm> =
            self.sylow.elements().iter().filter(|v| (k * self.multiplier(v)) % order == k % order).cloned().collect();
        Subgroup::from_elements(self.g.degree(), elems)
    }

    fn zeta_power(&self, e: u64) -> CycNum {
        let m = self.session.modulus();
        let pn = self.p_tilde_order();
        CycNum::root_of_unity(m, (e % pn * (m as u64 / pn)) as i64)
    }

    /// The exponent `k·j(v)` of `ν̂_k(v)` as a power of `ζ_{p^n}`.
    fn hat_exponent(&self, k: u64, v: &Perm) -> u64 {
        let (j, _) = self.split(v).expect("v lies in P");
        (k * j) % self.p_tilde_order()
    }

    /// The canonical extension `ν̂_k` of `ν_k` to `domain` (a subgroup of `P`
    /// containing `P̃` on which `ν_k` is invariant), killing `C_P(T)`.
    pub fn canonical_extension(&self, k: u64, domain: &Subgroup) -> Result<ElementFn> {
        if !self.p_tilde.is_subset_of(domain) {
            return Err(Error::Internal("extension domain must contain P̃".into()));
        }
        let order = self.p_tilde_order();
        let elems = domain.elements();
        let exps: Vec<u64> = elems.iter().map(|v| self.hat_exponent(k, v)).collect();
        // multiplicativity on the domain
        for (a, ea) in elems.iter().zip(&exps) {
            for (b, eb) in elems.iter().zip(&exps) {
                let ab = a * b;
                let i = elems.binary_search(&ab).map_err(|_| Error::Internal("domain is not closed".into()))?;
                if (ea + eb) % order != exps[i] {
                    return Err(Error::NotInvariant);
                }
            }
        }
        // (ν̂_k)^t = ν̂_{kr} where x^{t⁻¹} = x^r
        for t in self.complement.gens() {
            let ti = t.inverse();
            let r = self.multiplier(&ti);
            if elems.iter().any(|v| self.hat_exponent(k, &v.conj(&ti)) != self.hat_exponent((k * r) % order, v)) {
                return Err(Error::Internal("canonical extension is not N-equivariant".into()));
            }
        }
        let values = exps.iter().map(|&e| self.zeta_power(e)).collect();
        Ok(ElementFn { domain: domain.clone(), values })
    }

    /// `η_ν̂ = Σ_{a ∈ E} ν̂^a = |K|⁻¹ Σ_{t ∈ T} ν̂^t` on `domain`.
    pub fn eta(&self, k: u64, domain: &Subgroup) -> Result<ElementFn> {
        self.canonical_extension(k, domain)?;
        let m = self.session.modulus();
        let pn = self.p_tilde_order();
        let step = m as u64 / pn;
        let values = domain
            .elements()
            .iter()
            .map(|v| {
                let mut coeffs = vec![BigInt::from(0); m as usize];
                for t in self.complement.elements() {
                    let e = self.hat_exponent(k, &v.conj(t));
                    coeffs[(e * step) as usize] += 1;
                }
                CycNum::from_exponent_sum(m, &coeffs, BigInt::from(self.kernel.order()))
            })
            .collect();
        Ok(ElementFn { domain: domain.clone(), values })
    }

    /// `ν_k` on `P̃`.
    pub fn nu(&self, k: u64) -> ElementFn {
        let values =
            self.p_tilde.elements().iter().map(|y| self.zeta_power(k * self.exponent_of(y).unwrap())).collect();
        ElementFn { domain: self.p_tilde.clone(), values }
    }
}

/// A group containing a Sylow subgroup `sylow`, with its table, principal
/// block and `p`-sections, plus the section projections of the trivial character.
#[derive(Clone, Debug)]
pub struct BlockSide {
    pub group: Arc<Group>,
    pub p: u64,
    pub sylow: Subgroup,
    pub table: Arc<CharTable>,
    pub block: BlockData,
    pub sections: Vec<BrauerElt>,
    trivial_projections: Vec<ClassFn>,
}

impl BlockSide {
    pub fn new(session: &Session, group: Arc<Group>, p: u64, sylow: Subgroup) -> Result<Self> {
        let group = session.register(group);
        let table = session.table(&group)?;
        let block = principal_block(&table, p)?;
        let sections = p_sections(session, &group, p, &sylow)?;
        let one = table.row(0);
        let trivial_projections = sections
            .iter()
            .map(|be| Ok(section_projection(one, be)?.to_class_fn(&group, be)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockSide { group, p, sylow, table, block, sections, trivial_projections })
    }

    pub fn modulus(&self) -> u32 {
        self.table.modulus()
    }

    fn check_stable(&self, eta: &ElementFn) -> Result<()> {
        if eta.domain.elements() != self.sylow.elements() {
            return Err(Error::NotStable("η must be defined on the Sylow subgroup".into()));
        }
        if !eta.is_stable_in(&self.group) {
            return Err(Error::NotStable("η differs on fused elements".into()));
        }
        Ok(())
    }

    fn combine(&self, eta: &ElementFn, projections: &[ClassFn]) -> Result<ClassFn> {
        let mut acc = ClassFn::zero(&self.group, self.modulus());
        for (be, proj) in self.sections.iter().zip(projections) {
            let w = eta.at(&be.u).expect("section representatives lie in the Sylow subgroup");
            if !w.is_zero() {
                acc = acc.add(&proj.scale(w))?;
            }
        }
        Ok(acc)
    }

    /// Checks that `f` is a generalized character supported on the principal block.
    pub fn certify_generalized(&self, f: &ClassFn) -> Result<Vec<i64>> {
        let coeffs = self.table.decompose_int(f)?;
        if let Some(i) = coeffs.iter().enumerate().position(|(i, &c)| c != 0 && !self.block.contains(i)) {
            return Err(Error::NotGeneralized(format!("constituent χ_{i} lies outside the principal block")));
        }
        Ok(coeffs)
    }

    /// `χ ∗ η = Σ_{u ∈ Π} η(u)·χ^{(u, b_u)}`, verified to be a generalized character of `b`.
    pub fn star(&self, chi: &ClassFn, eta: &ElementFn) -> Result<ClassFn> {
        self.check_stable(eta)?;
        let projections = self
            .sections
            .iter()
            .map(|be| Ok(section_projection(chi, be)?.to_class_fn(&self.group, be)))
            .collect::<Result<Vec<_>>>()?;
        let f = self.combine(eta, &projections)?;
        self.certify_generalized(&f)?;
        Ok(f)
    }

    /// `1 ∗ η` using the cached projections of the trivial character.
    pub fn star_trivial(&self, eta: &ElementFn) -> Result<ClassFn> {
        self.check_stable(eta)?;
        let f = self.combine(eta, &self.trivial_projections)?;
        self.certify_generalized(&f)?;
        Ok(f)
    }
}
