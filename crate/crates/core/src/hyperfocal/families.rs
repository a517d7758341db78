use std::collections::BTreeSet;
use std::sync::Arc;

use super::chars::{BlockSide, ElementFn};
use super::ctx::{op_of, HyperfocalCtx, Inertia, PElementData, Shape};
use crate::chartab::ClassFn;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::session::Session;

/// A linear character of `H/H̃`, inflated to `H` and restricted to the Sylow subgroup.
#[derive(Clone, Debug)]
pub struct LinearChar {
    pub on_group: ClassFn,
    pub on_sylow: ElementFn,
}

/// `Irr(H/H̃)` inflated to `H`, in the canonical order of the quotient's table.
pub fn quotient_chars(
    session: &Session,
    h: &Arc<Group>,
    h_tilde: &Subgroup,
    sylow: &Subgroup,
) -> Result<Vec<LinearChar>> {
    let q = h.quotient(h_tilde)?;
    let qg = session.register(q.group.clone());
    let table = session.table(&qg)?;
    Ok(table
        .rows()
        .iter()
        .map(|row| {
            let on_group = row.inflate(h, &q);
            let on_sylow = ElementFn::from_class_fn(&on_group, sylow);
            LinearChar { on_group, on_sylow }
        })
        .collect())
}

/// One exceptional family `{(χ_ν λ)↑ : λ ∈ Irr(H_ν/H̃)}`.
#[derive(Clone, Debug)]
pub struct Exceptional {
    /// `ν = ν_k`
    pub k: u64,
    pub p_nu: Subgroup,
    /// `H_ν = H̃·P_ν` with its block data.
    pub side: Arc<BlockSide>,
    /// Row of `χ_ν` in the table of `H_ν`.
    pub chi_nu: usize,
    /// `η_ν̂` on `P_ν`.
    pub eta: ElementFn,
    pub lambdas: Vec<LinearChar>,
    /// Rows of `(χ_ν λ)↑^H` in the table of `H`, aligned with `lambdas`.
    pub members: Vec<usize>,
}

/// The characters of the principal block of `H` organized as
/// `{χ_i λ} ∪ {(χ_ν λ_ν)↑}` with their signs.
#[derive(Clone, Debug)]
pub struct CharFamily {
    pub e: usize,
    pub side: Arc<BlockSide>,
    pub h_tilde: Subgroup,
    /// Rows of `χ_1 = 1, χ_2, …, χ_e`.
    pub chi: Vec<usize>,
    /// `ε_1 = 1, ε_2, …, ε_e`
    pub signs: Vec<i64>,
    pub epsilon: i64,
    pub lambdas: Vec<LinearChar>,
    /// `members[i][a]` is the row of `χ_i·λ_a`.
    pub members: Vec<Vec<usize>>,
    pub exceptional: Vec<Exceptional>,
    /// Set when `|P̃| − 1 = e`, where the exceptional slot is a labeling choice.
    pub tie_broken: bool,
}

impl CharFamily {
    pub fn group(&self) -> &Arc<Group> {
        &self.side.group
    }

    /// Every block member in construction order.
    pub fn all_members(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.members.iter().flatten().copied().collect();
        for x in &self.exceptional {
            out.extend(&x.members);
        }
        out
    }
}

struct Pattern {
    nonexceptional: Vec<(usize, i64)>,
    exceptional: (usize, i64),
    tie: bool,
}

fn ambiguous(msg: impl Into<String>) -> Error {
    Error::AmbiguousDecomposition(msg.into())
}

/// Reads `χ_2, …, χ_e`, `χ_ν` and their signs off `1 ∗ η = (e−1)1 − Σ ε_iχ_i + εχ_ν`,
/// telling the two kinds apart by their values on `P̃ \ 1`.
fn classify(side: &BlockSide, ctx: &HyperfocalCtx, coeffs: &[i64], eta: &ElementFn) -> Result<Pattern> {
    let e = ctx.e as i64;
    if coeffs[0] != e - 1 {
        return Err(ambiguous(format!("trivial coefficient {} (expected {})", coeffs[0], e - 1)));
    }
    let nz: Vec<usize> = (1..coeffs.len()).filter(|&j| coeffs[j] != 0).collect();
    if nz.len() != ctx.e as usize || nz.iter().any(|&j| coeffs[j].abs() != 1) {
        return Err(ambiguous(format!("coefficients {coeffs:?}")));
    }
    let n = side.modulus();
    let h = &side.group;
    let points: Vec<(usize, &CycNum)> = ctx
        .p_tilde
        .elements()
        .iter()
        .filter(|u| !u.is_identity())
        .map(|u| (h.class_of_perm(u).expect("P̃ ≤ H"), eta.at(u).expect("P̃ ≤ P")))
        .collect();
    let shape = |j: usize, s: i64| -> (bool, bool) {
        let row = side.table.row(j);
        let non = points.iter().all(|(c, _)| row.value(*c) == &CycNum::from_int(n, -s));
        let exc = points.iter().all(|(c, w)| row.value(*c) == &w.mul_int(s));
        (non, exc)
    };
    let shapes: Vec<(usize, bool, bool)> = nz
        .iter()
        .map(|&j| {
            let (a, b) = shape(j, coeffs[j]);
            (j, a, b)
        })
        .collect();
    let strict: Vec<usize> = shapes.iter().filter(|s| s.2 && !s.1).map(|s| s.0).collect();
    let (exc, tie) = match strict.as_slice() {
        [j] => (*j, false),
        [] => {
            let j = shapes
                .iter()
                .rev()
                .find(|s| s.2)
                .map(|s| s.0)
                .ok_or_else(|| ambiguous("no constituent has the exceptional shape"))?;
            (j, true)
        }
        _ => return Err(ambiguous("several constituents have the exceptional shape")),
    };
    if shapes.iter().any(|s| s.0 != exc && !s.1) {
        return Err(ambiguous("a constituent matches neither shape"));
    }
    if !tie {
        // the trivial character never carries the exceptional shape
        for s in [1, -1] {
            if points.iter().all(|(_, w)| CycNum::from_int(n, 1) == w.mul_int(s)) {
                return Err(ambiguous("the trivial character has the exceptional shape"));
            }
        }
    }
    let nonexceptional = nz.iter().filter(|&&j| j != exc).map(|&j| (j, -coeffs[j])).collect();
    Ok(Pattern { nonexceptional, exceptional: (exc, coeffs[exc]), tie })
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::FamilyMismatch(msg.into())
}

/// Builds the families of the principal block of `h`, where `N_G(P) ≤ h ≤ G`,
/// and checks the decomposition, the `H_ν` compatibility, the induced identity
/// for every `λ`, and that the assembled list is exactly `Irr(b(H))`.
pub fn construct_families(ctx: &HyperfocalCtx, h: Arc<Group>) -> Result<CharFamily> {
    if ctx.shape != Shape::Cyclic {
        return Err(Error::Internal("families need a nontrivial cyclic P̃".into()));
    }
    let p = ctx.p;
    let e = ctx.e as usize;
    let session = &ctx.session;
    let side = Arc::new(BlockSide::new(session, h.clone(), p, ctx.sylow.clone())?);
    let h = side.group.clone();
    let h_tilde = op_of(h.elements(), h.degree(), p);
    if ctx.sylow.intersection(&h_tilde).elements() != ctx.p_tilde.elements() {
        return Err(Error::Internal("P ∩ O^p(H) differs from P̃".into()));
    }
    let chars = ctx.invariant_linear_chars();

    // χ_i, ε_i, ε from the invariant characters
    let mut first: Option<Pattern> = None;
    let mut invariant_chi = Vec::new();
    for &k in &chars.invariant {
        let eta = ctx.eta(k, &ctx.sylow)?;
        let f = side.star_trivial(&eta)?;
        let coeffs = side.table.decompose_int(&f)?;
        let pat = classify(&side, ctx, &coeffs, &eta)?;
        invariant_chi.push((k, pat.exceptional.0, eta));
        match &first {
            None => first = Some(pat),
            Some(f0) => {
                if f0.nonexceptional != pat.nonexceptional || f0.exceptional.1 != pat.exceptional.1 {
                    return Err(mismatch(format!("signs for ν_{k} disagree with the first invariant character")));
                }
            }
        }
    }
    let pat = first.ok_or_else(|| Error::Internal("no invariant nontrivial character of P̃".into()))?;
    let mut chi = vec![0];
    let mut signs = vec![1];
    for &(j, s) in &pat.nonexceptional {
        chi.push(j);
        signs.push(s);
    }
    let epsilon = pat.exceptional.1;
    let lambdas = quotient_chars(session, &h, &h_tilde, &ctx.sylow)?;

    let mut exceptional = Vec::new();
    for &k in &chars.reps {
        let p_nu = ctx.stabilizer(k);
        let (hside, chi_nu, eta, hl) = if p_nu.order() == ctx.sylow.order() {
            let (_, j, eta) = invariant_chi.iter().find(|c| c.0 == k).cloned().expect("invariant representative");
            (side.clone(), j, eta, lambdas.clone())
        } else {
            let hn = h_tilde.join(&p_nu, usize::MAX)?;
            let hn = session.group(&hn);
            let sn = Arc::new(BlockSide::new(session, hn.clone(), p, p_nu.clone())?);
            let eta = ctx.eta(k, &p_nu)?;
            let f = sn.star_trivial(&eta)?;
            let coeffs = sn.table.decompose_int(&f)?;
            let mut rest = coeffs.clone();
            if rest[0] != e as i64 - 1 {
                return Err(ambiguous(format!("trivial coefficient {} on H_ν", rest[0])));
            }
            rest[0] = 0;
            for i in 1..e {
                let r = side.table.row(chi[i]).restrict(&hn);
                let j = sn.table.index_of(&r).ok_or_else(|| mismatch("χ_i restricts reducibly to H_ν"))?;
                if rest[j] != -signs[i] {
                    return Err(mismatch(format!("sign of χ_{i} differs on H_ν")));
                }
                rest[j] = 0;
            }
            let left: Vec<usize> = (0..rest.len()).filter(|&j| rest[j] != 0).collect();
            let j = match left.as_slice() {
                [j] if rest[*j] == epsilon => *j,
                _ => return Err(ambiguous(format!("exceptional constituent on H_ν for ν_{k}: {coeffs:?}"))),
            };
            // 1_{H_ν} ∗ η_ν̂'↓ = (1_H ∗ η_ν̂')↓ for an invariant ν'
            let (k0, _, eta0) = &invariant_chi[0];
            let lhs = sn.star_trivial(&ctx.eta(*k0, &p_nu)?)?;
            let rhs = side.star_trivial(eta0)?.restrict(&hn);
            if lhs != rhs {
                return Err(mismatch("restriction to H_ν does not commute with ∗"));
            }
            let hl = quotient_chars(session, &hn, &h_tilde, &p_nu)?;
            (sn, j, eta, hl)
        };
        let same = Arc::ptr_eq(&hside, &side);
        let members = hl
            .iter()
            .map(|l| {
                let prod = hside.table.row(chi_nu).mul(&l.on_group)?;
                let up = if same { prod } else { prod.induce(&h) };
                side.table
                    .index_of(&up)
                    .ok_or_else(|| Error::CardinalityMismatch(format!("(χ_ν λ)↑ is not irreducible for ν_{k}")))
            })
            .collect::<Result<Vec<_>>>()?;
        exceptional.push(Exceptional { k, p_nu, side: hside, chi_nu, eta, lambdas: hl, members });
    }

    let members = chi
        .iter()
        .map(|&c| {
            lambdas
                .iter()
                .map(|l| {
                    let f = side.table.row(c).mul(&l.on_group)?;
                    side.table.index_of(&f).ok_or_else(|| Error::CardinalityMismatch("χ_i λ is not irreducible".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let fam = CharFamily { e, side, h_tilde, chi, signs, epsilon, lambdas, members, exceptional, tie_broken: pat.tie };
    check_induced_identity(ctx, &fam)?;
    check_enumeration(&fam)?;
    Ok(fam)
}

/// `1 ∗ ((η_ν̂ λ)↑^P) = (e−1)λ↑ − Σ ε_i((χ_i↓)λ)↑ + ε(χ_ν λ)↑` for every `ν` and `λ`,
/// together with the same identity on `H_ν` before induction.
fn check_induced_identity(ctx: &HyperfocalCtx, fam: &CharFamily) -> Result<()> {
    let h = fam.group();
    for x in &fam.exceptional {
        let same = Arc::ptr_eq(&x.side, &fam.side);
        let hn = &x.side.group;
        let restricted: Vec<ClassFn> = fam.chi.iter().map(|&c| fam.side.table.row(c).restrict(hn)).collect();
        for l in &x.lambdas {
            let mut t = l.on_group.scale_int(fam.e as i64 - 1);
            for i in 1..fam.e {
                t = t.sub(&restricted[i].mul(&l.on_group)?.scale_int(fam.signs[i]))?;
            }
            t = t.add(&x.side.table.row(x.chi_nu).mul(&l.on_group)?.scale_int(fam.epsilon))?;
            let twisted = x.eta.mul(&l.on_sylow);
            if x.side.star_trivial(&twisted)? != t {
                return Err(mismatch(format!("1 ∗ η_ν̂λ on H_ν for ν_{}", x.k)));
            }
            let lhs = fam.side.star_trivial(&twisted.induce_normal(&ctx.sylow))?;
            let rhs = if same { t } else { t.induce(h) };
            if lhs != rhs {
                return Err(mismatch(format!("induced identity fails for ν_{}", x.k)));
            }
        }
    }
    Ok(())
}

/// The assembled list is `Irr(b(H))` without repetition, with
/// `k(b) = e·|Irr(H/H̃)| + Σ_ν |Irr(H_ν/H̃)|`.
fn check_enumeration(fam: &CharFamily) -> Result<()> {
    let all = fam.all_members();
    let set: BTreeSet<usize> = all.iter().copied().collect();
    let expected = fam.e * fam.lambdas.len() + fam.exceptional.iter().map(|x| x.lambdas.len()).sum::<usize>();
    if set.len() != all.len() {
        return Err(Error::CardinalityMismatch("a character occurs twice".into()));
    }
    if all.len() != expected || set.iter().copied().collect::<Vec<_>>() != fam.side.block.members {
        return Err(Error::CardinalityMismatch(format!(
            "families give {} characters, the principal block has {}",
            all.len(),
            fam.side.block.len()
        )));
    }
    Ok(())
}

/// Value identities at every `u ∈ P` with `e_u = 1`:
/// `(χ_iλ)(u) = ε_iλ(u)` and `(χ_νλ)↑(u) = ε(η_ν̂λ)↑^P(u)`. Returns the number of checks.
pub fn check_trivial_inertia_values(ctx: &HyperfocalCtx, fam: &CharFamily, pdata: &[PElementData]) -> Result<usize> {
    let h = fam.group();
    let table = &fam.side.table;
    let induced: Vec<Vec<ElementFn>> = fam
        .exceptional
        .iter()
        .map(|x| x.lambdas.iter().map(|l| x.eta.mul(&l.on_sylow).induce_normal(&ctx.sylow)).collect())
        .collect();
    let mut checks = 0;
    for d in pdata.iter().filter(|d| d.inertia == Inertia::Trivial) {
        let c = h.class_of_perm(&d.u).expect("u ∈ P ≤ H");
        for (i, row) in fam.members.iter().enumerate() {
            for (a, &m) in row.iter().enumerate() {
                let want = fam.lambdas[a].on_sylow.at(&d.u).expect("u ∈ P").mul_int(fam.signs[i]);
                if table.row(m).value(c) != &want {
                    return Err(mismatch(format!("(χ_{}λ)({}) ≠ ε λ(u)", i + 1, d.u)));
                }
                checks += 1;
            }
        }
        for (x, ind) in fam.exceptional.iter().zip(&induced) {
            for (&m, f) in x.members.iter().zip(ind) {
                let want = f.at(&d.u).expect("u ∈ P").mul_int(fam.epsilon);
                if table.row(m).value(c) != &want {
                    return Err(mismatch(format!("exceptional value at {} for ν_{}", d.u, x.k)));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

/// Values on `H̃`: for `1 ≠ u ∈ P̃` and `p`-regular `ρ ∈ C_H̃(u)`,
/// `χ_i(uρ) = ε_i` and `χ_ν(uρ) = ε·η_ν(u)`. Returns the number of checks.
pub fn check_dade_shape(ctx: &HyperfocalCtx, fam: &CharFamily) -> Result<usize> {
    let h = fam.group();
    let n = fam.side.modulus();
    let mut checks = 0;
    for u in ctx.p_tilde.elements().iter().filter(|u| !u.is_identity()) {
        let rhos = fam.h_tilde.elements().iter().filter(|r| r.order() % ctx.p != 0 && (*r * u) == (u * *r));
        for rho in rhos {
            let g = u * rho;
            let c = h.class_of_perm(&g).expect("H̃ ≤ H");
            for (i, &row) in fam.chi.iter().enumerate() {
                if fam.side.table.row(row).value(c) != &CycNum::from_int(n, fam.signs[i]) {
                    return Err(mismatch(format!("χ_{}({g}) ≠ ε_{}", i + 1, i + 1)));
                }
                checks += 1;
            }
            for x in &fam.exceptional {
                let cn = x.side.group.class_of_perm(&g).expect("H̃ ≤ H_ν");
                let want = x.eta.at(u).expect("P̃ ≤ P_ν").mul_int(fam.epsilon);
                if x.side.table.row(x.chi_nu).value(cn) != &want {
                    return Err(mismatch(format!("χ_ν({g}) ≠ ε η_ν(u) for ν_{}", x.k)));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ctx(name: &str, p: u64) -> HyperfocalCtx {
        HyperfocalCtx::for_group(catalog::load(name).unwrap(), p, false).unwrap()
    }

    #[test]
    fn a5_families() {
        let c = ctx("a5", 5);
        let fam = construct_families(&c, c.g.clone()).unwrap();
        assert_eq!(fam.side.block.members, vec![0, 1, 2, 3]);
        assert_eq!(fam.chi, vec![0, 3]);
        assert_eq!(fam.signs, vec![1, -1]);
        assert_eq!(fam.epsilon, -1);
        assert_eq!(fam.exceptional.len(), 2);
        assert!(!fam.tie_broken);
        let pdata = c.p_element_table().unwrap();
        check_trivial_inertia_values(&c, &fam, &pdata).unwrap();
        assert!(check_dade_shape(&c, &fam).unwrap() > 0);
    }

    #[test]
    fn normalizer_signs_are_positive() {
        let c = ctx("a5", 5);
        let fam = construct_families(&c, c.normalizer.clone()).unwrap();
        assert!(fam.signs.iter().all(|&s| s == 1));
        assert_eq!(fam.epsilon, 1);
        assert_eq!(fam.all_members().len(), 4);
    }

    #[test]
    fn s3_breaks_the_tie_canonically() {
        let c = ctx("s3", 3);
        let fam = construct_families(&c, c.g.clone()).unwrap();
        assert!(fam.tie_broken);
        assert_eq!(fam.exceptional[0].chi_nu, 2);
        assert_eq!(fam.all_members().len(), 3);
    }
}
