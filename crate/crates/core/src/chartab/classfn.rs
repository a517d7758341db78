use std::sync::Arc;

use num_bigint::BigInt;

use crate::cyclo::{sum, CycNum};
use crate::error::{Error, Result};
use crate::group::{Group, Quotient};

/// A class function: one value per conjugacy class in canonical order.
#[derive(Clone)]
pub struct ClassFn {
    group: Arc<Group>,
    values: Vec<CycNum>,
}

impl std::fmt::Debug for ClassFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

impl PartialEq for ClassFn {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

impl Eq for ClassFn {}

/// Groups are compared by identity first and by element list as a fallback.
pub fn same_group(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || (a.degree() == b.degree() && a.elements() == b.elements())
}

impl ClassFn {
    pub fn new(group: Arc<Group>, values: Vec<CycNum>) -> Self {
        assert_eq!(values.len(), group.num_classes(), "one value per class");
        ClassFn { group, values }
    }

    pub fn constant(group: &Arc<Group>, n: u32, v: i64) -> Self {
        let values = vec![CycNum::from_int(n, v); group.num_classes()];
        ClassFn { group: group.clone(), values }
    }

    pub fn trivial(group: &Arc<Group>, n: u32) -> Self {
        ClassFn::constant(group, n, 1)
    }

    pub fn zero(group: &Arc<Group>, n: u32) -> Self {
        ClassFn::constant(group, n, 0)
    }

    /// Builds values from a function of the class representative's element index.
    pub fn from_fn(group: &Arc<Group>, f: impl Fn(usize) -> CycNum) -> Self {
        let values = group.classes().iter().map(|c| f(c.rep_index)).collect();
        ClassFn { group: group.clone(), values }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycNum {
        &self.values[class]
    }

    /// Value at an arbitrary element of the group.
    pub fn at_element(&self, element: usize) -> &CycNum {
        &self.values[self.group.class_of(element)]
    }

    pub fn modulus(&self) -> u32 {
        self.values[0].modulus()
    }

    /// `χ(1)` when it is a rational integer.
    pub fn degree(&self) -> Option<i64> {
        self.values[0].to_i64()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNum::is_zero)
    }

    fn check(&self, other: &ClassFn) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn zip(&self, other: &ClassFn, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Result<ClassFn> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(ClassFn { group: self.group.clone(), values })
    }

    fn map(&self, f: impl Fn(&CycNum) -> CycNum) -> ClassFn {
        ClassFn { group: self.group.clone(), values: self.values.iter().map(f).collect() }
    }

    pub fn add(&self, other: &ClassFn) -> Result<ClassFn> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFn) -> Result<ClassFn> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ClassFn) -> Result<ClassFn> {
        self.zip(other, |a, b| a * b)
    }

    pub fn neg(&self) -> ClassFn {
        self.map(|a| -a)
    }

    pub fn scale_int(&self, k: i64) -> ClassFn {
        self.map(|a| a.mul_int(k))
    }

    pub fn scale(&self, c: &CycNum) -> ClassFn {
        self.map(|a| a * c)
    }

    pub fn conj(&self) -> ClassFn {
        self.map(CycNum::conj)
    }

    pub fn galois(&self, k: i64) -> ClassFn {
        self.map(|a| a.galois(k))
    }

    pub fn embed(&self, n: u32) -> ClassFn {
        self.map(|a| a.embed(n))
    }

    /// `(α, β) = |G|⁻¹ Σ_g α(g)·conj(β(g))`
    pub fn inner_product(&self, other: &ClassFn) -> Result<CycNum> {
        self.check(other)?;
        let n = self.modulus();
        let terms: Vec<CycNum> = self
            .group
            .classes()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
            .map(|(c, (a, b))| (a * &b.conj()).mul_int(c.size as i64))
            .collect();
        sum(n, &terms).div_int(self.group.order() as i64)
    }

    /// Inner product as a rational integer; `None` if it is not one.
    pub fn inner_product_int(&self, other: &ClassFn) -> Result<Option<i64>> {
        Ok(self.inner_product(other)?.to_i64())
    }

    /// Restriction to a subgroup `H ≤ G`.
    pub fn restrict(&self, h: &Arc<Group>) -> ClassFn {
        let values = h
            .classes()
            .iter()
            .map(|c| {
                let k = self.group.class_of_perm(&c.rep).expect("subgroup element lies in the parent");
                self.values[k].clone()
            })
            .collect();
        ClassFn { group: h.clone(), values }
    }

    /// Induction from `H` (this function's group) to an overgroup `G`:
    /// `ζ↑(g) = |C_G(g)|/|H| · Σ_{h ∈ H ∩ g^G} ζ(h)`.
    pub fn induce(&self, g: &Arc<Group>) -> ClassFn {
        let h = &self.group;
        let n = self.modulus();
        let mut acc: Vec<Vec<&CycNum>> = vec![Vec::new(); g.num_classes()];
        let mut sizes: Vec<Vec<usize>> = vec![Vec::new(); g.num_classes()];
        for (i, c) in h.classes().iter().enumerate() {
            let k = g.class_of_perm(&c.rep).expect("subgroup element lies in the overgroup");
            acc[k].push(&self.values[i]);
            sizes[k].push(c.size);
        }
        let values = g
            .classes()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if acc[k].is_empty() {
                    return CycNum::zero(n);
                }
                let terms: Vec<CycNum> = acc[k].iter().zip(&sizes[k]).map(|(v, &s)| v.mul_int(s as i64)).collect();
                let total = sum(n, &terms).mul_int(c.centralizer_order as i64);
                total.div_int(h.order() as i64).expect("nonzero order")
            })
            .collect();
        ClassFn { group: g.clone(), values }
    }

    /// Inflation from `G/Nrm` (this function's group) along the quotient map.
    pub fn inflate(&self, g: &Arc<Group>, q: &Quotient) -> ClassFn {
        assert!(same_group(&self.group, &q.group), "class function must live on the quotient");
        let values = g
            .classes()
            .iter()
            .map(|c| self.values[q.group.class_of(q.projection[c.rep_index] as usize)].clone())
            .collect();
        ClassFn { group: g.clone(), values }
    }

    /// `χ·λ` for a linear character `λ`.
    pub fn tensor_linear(&self, lambda: &ClassFn) -> Result<ClassFn> {
        if !lambda.values[0].is_one() {
            return Err(Error::NotLinear);
        }
        self.mul(lambda)
    }

    /// Checks that every value is a root of unity and `λ(1) = 1`,
    /// and that values are multiplicative on the group.
    pub fn is_linear_character(&self) -> bool {
        let g = &self.group;
        if !self.values[0].is_one() {
            return false;
        }
        let gens: Vec<usize> = g.gens().iter().filter_map(|x| g.index_of(x)).collect();
        (0..g.order()).all(|a| {
            gens.iter().all(|&b| self.at_element(g.mul_index(a, b)) == &(self.at_element(a) * self.at_element(b)))
        })
    }

    /// Rational-integer value vector when every value is an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(CycNum::to_integer).collect()
    }
}
