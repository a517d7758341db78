//! Signed bijections between `Irr(b(H))` and `Irr(b(G))` for `H = N_G(P)` or
//! `N_G(P̃)`, and an exact check of Broué's separation and integrality
//! conditions on the kernel `μ`.

mod kernel;
mod search;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::blocks::{contribution_matrix, p_sections, section_projection};
use crate::cyclo::{PrimeAbovePData, PrimeSummary};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::hyperfocal::{
    check_dade_shape, check_trivial_inertia_values, construct_families, BlockSide, CharFamily, ElementFn,
    HyperfocalCtx, Inertia, Shape,
};
use kernel::{Decision, Kernel};
pub use search::{search_bijection, DEFAULT_SEARCH_CAP};

/// Failing cells expanded in full in a certificate.
pub const EXPANDED_FAILURES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// `N_G(P)`
    Np,
    /// `N_G(P̃)`
    Npt,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Np => "np",
            Target::Npt => "npt",
        }
    }
}

/// `χ′_source ↦ sign·χ_target`, with rows indexed in the two character tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pair {
    pub source: usize,
    pub target: usize,
    pub sign: i64,
    pub exceptional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedBijection {
    pub pairs: Vec<Pair>,
}

impl SignedBijection {
    /// `(source, target, sign)` sorted by source; ignores the exceptional flag.
    pub fn key(&self) -> Vec<(usize, usize, i64)> {
        let mut k: Vec<_> = self.pairs.iter().map(|q| (q.source, q.target, q.sign)).collect();
        k.sort_unstable();
        k
    }

    fn check_total(&self, h: &BlockSide, g: &BlockSide) -> Result<()> {
        let src: BTreeSet<usize> = self.pairs.iter().map(|q| q.source).collect();
        let tgt: BTreeSet<usize> = self.pairs.iter().map(|q| q.target).collect();
        let ok = src.len() == self.pairs.len()
            && tgt.len() == self.pairs.len()
            && src.into_iter().eq(h.block.members.iter().copied())
            && tgt.into_iter().eq(g.block.members.iter().copied());
        if ok {
            Ok(())
        } else {
            Err(Error::FamilyMismatch("the pairing is not a bijection between the principal blocks".into()))
        }
    }
}

fn match_lambda(on: &ElementFn, among: &[crate::hyperfocal::LinearChar]) -> Result<usize> {
    among
        .iter()
        .position(|l| l.on_sylow.values == on.values)
        .ok_or_else(|| Error::FamilyMismatch("Irr(H/H̃) and Irr(G/G̃) disagree on P".into()))
}

/// `χ′_iλ ↦ ε_iε′_i·χ_iλ` and `(χ′_νλ)↑ ↦ εε′·(χ_νλ)↑`, pairing `λ`s by
/// their restriction to `P` (or `P_ν`).
pub fn build_bijection(fam_g: &CharFamily, fam_h: &CharFamily) -> Result<SignedBijection> {
    if fam_g.e != fam_h.e || fam_g.exceptional.len() != fam_h.exceptional.len() {
        return Err(Error::FamilyMismatch("different inertial index or number of exceptional families".into()));
    }
    if fam_g.lambdas.len() != fam_h.lambdas.len() {
        return Err(Error::FamilyMismatch("quotients by the hyperfocal parts differ in size".into()));
    }
    let mut pairs = Vec::new();
    for i in 0..fam_h.e {
        let sign = fam_g.signs[i] * fam_h.signs[i];
        for (a, l) in fam_h.lambdas.iter().enumerate() {
            let b = match_lambda(&l.on_sylow, &fam_g.lambdas)?;
            pairs.push(Pair { source: fam_h.members[i][a], target: fam_g.members[i][b], sign, exceptional: false });
        }
    }
    let sign = fam_g.epsilon * fam_h.epsilon;
    for xh in &fam_h.exceptional {
        let xg = fam_g
            .exceptional
            .iter()
            .find(|x| x.k == xh.k)
            .ok_or_else(|| Error::FamilyMismatch(format!("no exceptional family for ν_{} on G", xh.k)))?;
        for (a, l) in xh.lambdas.iter().enumerate() {
            let b = match_lambda(&l.on_sylow, &xg.lambdas)?;
            pairs.push(Pair { source: xh.members[a], target: xg.members[b], sign, exceptional: true });
        }
    }
    let bij = SignedBijection { pairs };
    bij.check_total(&fam_h.side, &fam_g.side)?;
    Ok(bij)
}

/// For `P̃ = 1`: both blocks restrict bijectively onto `Irr(P)`; pair by restriction, all signs `+1`.
pub fn trivial_bijection(g: &BlockSide, h: &BlockSide) -> Result<SignedBijection> {
    let on_p = |s: &BlockSide, i: usize| ElementFn::from_class_fn(s.table.row(i), &g.sylow).values;
    let targets: Vec<(usize, Vec<_>)> = g.block.members.iter().map(|&i| (i, on_p(g, i))).collect();
    let pairs = h
        .block
        .members
        .iter()
        .map(|&i| {
            let r = on_p(h, i);
            let t = targets.iter().find(|(_, v)| *v == r).ok_or_else(|| {
                Error::FamilyMismatch("a block character has no partner with the same restriction to P".into())
            })?;
            Ok(Pair { source: i, target: t.0, sign: 1, exceptional: false })
        })
        .collect::<Result<Vec<_>>>()?;
    let bij = SignedBijection { pairs };
    bij.check_total(h, g)?;
    Ok(bij)
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub g_class: usize,
    pub h_class: usize,
    pub mu: String,
    pub divisor: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub checked: usize,
    pub failures: usize,
    pub first_failures: Vec<CellReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityReport {
    pub checked: usize,
    pub zero_cells: usize,
    pub global_cells: usize,
    /// Cells decided by local valuations, with the valuation under each prime used.
    pub fallback_cells: Vec<CellReport>,
    pub failures: usize,
    pub first_failures: Vec<CellReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeData {
    pub canonical: PrimeSummary,
    pub strict: bool,
    pub primes_used: usize,
}

/// Structure checks run alongside the Broué conditions; each count is the
/// number of exact identities verified.
#[derive(Clone, Debug, Default, Serialize)]
pub struct StructureReport {
    pub inertial_index: u64,
    pub hyperfocal_order: u64,
    pub exceptional_families: usize,
    pub tie_broken: bool,
    pub trivial_inertia_values: usize,
    pub dade_shape: usize,
    pub shadow_sections: usize,
    pub shadow_entries: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoCert {
    pub group: String,
    pub normalizer_target: Target,
    pub p: u64,
    pub shape: &'static str,
    pub group_order: usize,
    pub target_order: usize,
    pub prime_data: PrimeData,
    /// `[i′, i, sign]`: row `i′` of the target table maps to `sign·` row `i` of `G`'s.
    pub bijection: Vec<[i64; 3]>,
    pub separation: SeparationReport,
    pub integrality: IntegralityReport,
    pub structure: StructureReport,
    /// `μ(g, h′)` row-major over (`G`-class, target class).
    pub mu: Vec<Vec<String>>,
    pub verdict: bool,
}

impl IsoCert {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ =
            writeln!(s, "{}  p = {}  target = {}  ({})", self.group, self.p, self.normalizer_target.name(), self.shape);
        let _ = writeln!(
            s,
            "|G| = {}, |H| = {}, e = {}",
            self.group_order, self.target_order, self.structure.inertial_index
        );
        let _ = writeln!(s, "bijection ({} pairs):", self.bijection.len());
        for [src, tgt, sign] in &self.bijection {
            let _ = writeln!(s, "  χ'{src} -> {}χ{tgt}", if *sign < 0 { "-" } else { "+" });
        }
        let _ =
            writeln!(s, "separation: {} mixed cells, {} nonzero", self.separation.checked, self.separation.failures);
        let _ = writeln!(
            s,
            "integrality: {} cells ({} zero, {} global, {} by valuation), {} failing",
            self.integrality.checked,
            self.integrality.zero_cells,
            self.integrality.global_cells,
            self.integrality.fallback_cells.len(),
            self.integrality.failures
        );
        if self.structure.shadow_sections > 0 {
            let _ = writeln!(
                s,
                "contribution matrices agree at {} sections ({} entries)",
                self.structure.shadow_sections, self.structure.shadow_entries
            );
        }
        let _ = writeln!(s, "verdict: {}", if self.verdict { "perfect isometry" } else { "FAILED" });
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub label: String,
    /// Re-check valuation-decided cells under every prime above `p`.
    pub strict_primes: bool,
}

/// A finished run: the certificate plus what produced it.
pub struct Verification {
    pub cert: IsoCert,
    pub bijection: SignedBijection,
    pub g: Arc<BlockSide>,
    pub h: Arc<BlockSide>,
}

/// Outcome of the perturbation suite; every perturbed bijection should fail.
#[derive(Clone, Debug, Serialize)]
pub struct ControlReport {
    pub sign_flips: usize,
    pub sign_flips_rejected: usize,
    pub swaps: usize,
    pub swaps_rejected: usize,
}

impl ControlReport {
    pub fn all_rejected(&self) -> bool {
        self.sign_flips == self.sign_flips_rejected && self.swaps == self.swaps_rejected
    }
}

impl Verification {
    /// Flips each nonexceptional sign, and swaps each pair of targets of
    /// different degree, rerunning the Broué test on every perturbation.
    pub fn negative_controls(&self) -> Result<ControlReport> {
        let prime = PrimeAbovePData::shared(self.g.modulus(), self.g.p, 0)?;
        let kernel = Kernel::new(&self.g, &self.h);
        let base = &self.bijection.pairs;
        let mut flips = Vec::new();
        for (j, q) in base.iter().enumerate() {
            if !q.exceptional {
                let mut v = base.clone();
                v[j].sign = -q.sign;
                flips.push(v);
            }
        }
        let deg = self.g.table.degrees();
        let mut swaps = Vec::new();
        for a in 0..base.len() {
            for b in a + 1..base.len() {
                if deg[base[a].target] != deg[base[b].target] {
                    let mut v = base.clone();
                    let t = v[a].target;
                    v[a].target = v[b].target;
                    v[b].target = t;
                    swaps.push(v);
                }
            }
        }
        let rejected = |set: &[Vec<Pair>]| set.iter().filter(|v| !kernel.passes(v, &prime)).count();
        Ok(ControlReport {
            sign_flips: flips.len(),
            sign_flips_rejected: rejected(&flips),
            swaps: swaps.len(),
            swaps_rejected: rejected(&swaps),
        })
    }

    /// The exhaustive oracle on the same two blocks.
    pub fn search(&self, cap: usize, prune: bool) -> Result<Vec<SignedBijection>> {
        search_bijection(&self.g, &self.h, cap, prune)
    }
}

/// Runs the certificate for several targets, building the `G`-side families once.
pub fn verify_targets(ctx: &HyperfocalCtx, targets: &[Target], opts: &VerifyOptions) -> Result<Vec<Verification>> {
    let fam_g = match ctx.shape {
        Shape::Cyclic => Some(construct_families(ctx, ctx.g.clone())?),
        Shape::Nilpotent => None,
    };
    targets.iter().map(|&t| verify_with(ctx, t, fam_g.as_ref(), opts)).collect()
}

pub fn verify(ctx: &HyperfocalCtx, target: Target, opts: &VerifyOptions) -> Result<Verification> {
    let mut v = verify_targets(ctx, &[target], opts)?;
    Ok(v.pop().expect("one target"))
}

fn target_group(ctx: &HyperfocalCtx, target: Target) -> Arc<Group> {
    match target {
        Target::Np => ctx.normalizer.clone(),
        Target::Npt => ctx.normalizer_of_p_tilde(),
    }
}

fn verify_with(
    ctx: &HyperfocalCtx,
    target: Target,
    fam_g: Option<&CharFamily>,
    opts: &VerifyOptions,
) -> Result<Verification> {
    let h = target_group(ctx, target);
    let mut structure =
        StructureReport { inertial_index: ctx.e, hyperfocal_order: ctx.p_tilde_order(), ..Default::default() };
    let (g_side, h_side, bijection) = match fam_g {
        None => {
            let g = Arc::new(BlockSide::new(&ctx.session, ctx.g.clone(), ctx.p, ctx.sylow.clone())?);
            let hs = Arc::new(BlockSide::new(&ctx.session, h, ctx.p, ctx.sylow.clone())?);
            let bij = trivial_bijection(&g, &hs)?;
            (g, hs, bij)
        }
        Some(fg) => {
            let fh = construct_families(ctx, h)?;
            if target == Target::Np && (fh.signs.iter().any(|&s| s != 1) || fh.epsilon != 1) {
                return Err(Error::FamilyMismatch("a sign on the N_G(P) side is not +1".into()));
            }
            let bij = build_bijection(fg, &fh)?;
            let pdata = ctx.p_element_table()?;
            structure.exceptional_families = fg.exceptional.len();
            structure.tie_broken = fg.tie_broken;
            structure.trivial_inertia_values =
                check_trivial_inertia_values(ctx, fg, &pdata)? + check_trivial_inertia_values(ctx, &fh, &pdata)?;
            structure.dade_shape = check_dade_shape(ctx, fg)? + check_dade_shape(ctx, &fh)?;
            let (sections, entries) = contribution_shadow(ctx, &fg.side, &fh.side, &bij)?;
            structure.shadow_sections = sections;
            structure.shadow_entries = entries;
            (fg.side.clone(), fh.side.clone(), bij)
        }
    };
    let cert = certify(ctx, &g_side, &h_side, &bijection, target, structure, opts)?;
    Ok(Verification { cert, bijection, g: g_side, h: h_side })
}

/// At each `p`-element `u` with `e_u = e`, the Gram matrices of section
/// projections satisfy `s_a s_b M^G[a][b] = M^H[a′][b′]`. Returns the number
/// of sections and entries compared.
fn contribution_shadow(
    ctx: &HyperfocalCtx,
    g: &BlockSide,
    h: &BlockSide,
    bij: &SignedBijection,
) -> Result<(usize, usize)> {
    let gs = p_sections(&ctx.session, &g.group, ctx.p, &ctx.sylow)?;
    let hs = p_sections(&ctx.session, &h.group, ctx.p, &ctx.sylow)?;
    let mut sections = 0;
    let mut entries = 0;
    for be in &gs {
        if be.u.is_identity() || ctx.inertial_index_u(&be.u)?.inertia != Inertia::Full {
            continue;
        }
        let bh = hs
            .iter()
            .find(|b| b.u == be.u)
            .ok_or_else(|| Error::FamilyMismatch(format!("{} has different representatives on the two sides", be.u)))?;
        let pg = bij.pairs.iter().map(|q| section_projection(g.table.row(q.target), be)).collect::<Result<Vec<_>>>()?;
        let ph = bij.pairs.iter().map(|q| section_projection(h.table.row(q.source), bh)).collect::<Result<Vec<_>>>()?;
        let mg = contribution_matrix(&g.group, be, &pg);
        let mh = contribution_matrix(&h.group, bh, &ph);
        for (a, qa) in bij.pairs.iter().enumerate() {
            for (b, qb) in bij.pairs.iter().enumerate() {
                if mg[a][b].mul_int(qa.sign * qb.sign) != mh[a][b] {
                    return Err(Error::FamilyMismatch(format!(
                        "contribution matrices differ at u = {} for χ'{} and χ'{}",
                        be.u, qa.source, qb.source
                    )));
                }
                entries += 1;
            }
        }
        sections += 1;
    }
    Ok((sections, entries))
}

struct CellOutcome {
    mu: String,
    mixed: bool,
    separated: bool,
    integral: bool,
    decision: Decision,
    divisor: u64,
}

fn certify(
    ctx: &HyperfocalCtx,
    g: &BlockSide,
    h: &BlockSide,
    bij: &SignedBijection,
    target: Target,
    structure: StructureReport,
    opts: &VerifyOptions,
) -> Result<IsoCert> {
    let n = g.modulus();
    let canonical = PrimeAbovePData::shared(n, ctx.p, 0)?;
    let mut primes = vec![canonical.clone()];
    if opts.strict_primes {
        for i in 1..canonical.num_primes() {
            primes.push(PrimeAbovePData::shared(n, ctx.p, i)?);
        }
    }
    let prime_refs: Vec<&PrimeAbovePData> = primes.iter().map(Arc::as_ref).collect();
    let kernel = Kernel::new(g, h);
    let (ng, nh) = (kernel.g_classes(), kernel.h_classes());
    let cells: Vec<Result<CellOutcome>> = crate::par::map_range(ng * nh, |ab| {
        let (a, b) = (ab / nh, ab % nh);
        let mu = kernel.mu(&bij.pairs, a, b);
        let mixed = kernel.is_mixed(a, b);
        let divisor = kernel.divisor(a, b);
        let (integral, decision) = kernel.decide(&mu, divisor, &prime_refs)?;
        Ok(CellOutcome {
            separated: !mixed || mu.is_zero(),
            mu: mu.to_zeta_string(),
            mixed,
            integral,
            decision,
            divisor,
        })
    });
    let cells = cells.into_iter().collect::<Result<Vec<_>>>()?;

    let report = |ab: usize, c: &CellOutcome, detail: String| CellReport {
        g_class: ab / nh,
        h_class: ab % nh,
        mu: c.mu.clone(),
        divisor: c.divisor,
        detail,
    };
    let mut separation = SeparationReport { checked: 0, failures: 0, first_failures: Vec::new() };
    let mut integrality = IntegralityReport {
        checked: cells.len(),
        zero_cells: 0,
        global_cells: 0,
        fallback_cells: Vec::new(),
        failures: 0,
        first_failures: Vec::new(),
    };
    for (ab, c) in cells.iter().enumerate() {
        if c.mixed {
            separation.checked += 1;
            if !c.separated {
                separation.failures += 1;
                if separation.first_failures.len() < EXPANDED_FAILURES {
                    separation.first_failures.push(report(ab, c, "mixed cell is nonzero".into()));
                }
            }
        }
        let vals = match &c.decision {
            Decision::Zero => {
                integrality.zero_cells += 1;
                None
            }
            Decision::Global => {
                integrality.global_cells += 1;
                None
            }
            Decision::Valuation(v) => Some(v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
        };
        if let Some(v) = &vals {
            if c.integral {
                integrality.fallback_cells.push(report(ab, c, format!("valuation {v}")));
            }
        }
        if !c.integral {
            integrality.failures += 1;
            if integrality.first_failures.len() < EXPANDED_FAILURES {
                integrality.first_failures.push(report(ab, c, format!("valuation {}", vals.unwrap_or_default())));
            }
        }
    }
    let mut bijection: Vec<[i64; 3]> = bij.pairs.iter().map(|q| [q.source as i64, q.target as i64, q.sign]).collect();
    bijection.sort_unstable();
    let verdict = separation.failures == 0 && integrality.failures == 0;
    Ok(IsoCert {
        group: if opts.label.is_empty() { format!("group of order {}", g.group.order()) } else { opts.label.clone() },
        normalizer_target: target,
        p: ctx.p,
        shape: match ctx.shape {
            Shape::Cyclic => "cyclic hyperfocal subgroup",
            Shape::Nilpotent => "p-nilpotent",
        },
        group_order: g.group.order(),
        target_order: h.group.order(),
        prime_data: PrimeData { canonical: canonical.summary(), strict: opts.strict_primes, primes_used: primes.len() },
        bijection,
        separation,
        integrality,
        structure,
        mu: cells.chunks(nh.max(1)).map(|row| row.iter().map(|c| c.mu.clone()).collect()).collect(),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn run(name: &str, p: u64, target: Target) -> Verification {
        let ctx = HyperfocalCtx::for_group(catalog::load(name).unwrap(), p, false).unwrap();
        verify(&ctx, target, &VerifyOptions { label: name.into(), strict_primes: false }).unwrap()
    }

    #[test]
    fn a5_against_d10() {
        let v = run("a5", 5, Target::Np);
        assert!(v.cert.verdict, "{}", v.cert.to_text());
        assert_eq!(v.cert.bijection.len(), 4);
        assert!(v.cert.separation.checked > 0);
        // e_u = 1 at every nontrivial 5-element
        assert_eq!(v.cert.structure.shadow_sections, 0);
        let controls = v.negative_controls().unwrap();
        assert!(controls.sign_flips >= 1 && controls.swaps >= 1);
        assert!(controls.all_rejected(), "{controls:?}");
    }

    #[test]
    fn a5xc5_compares_contribution_matrices() {
        let v = run("a5xc5", 5, Target::Np);
        assert!(v.cert.verdict, "{}", v.cert.to_text());
        assert_eq!(v.cert.bijection.len(), 20);
        assert!(v.cert.structure.shadow_sections > 0);
    }

    #[test]
    fn a4_takes_the_trivial_path() {
        let v = run("a4", 3, Target::Np);
        assert!(v.cert.verdict);
        assert_eq!(v.cert.shape, "p-nilpotent");
        assert!(v.bijection.pairs.iter().all(|q| q.sign == 1));
    }

    #[test]
    fn search_contains_the_construction() {
        let v = run("a5", 5, Target::Np);
        let found = v.search(DEFAULT_SEARCH_CAP, true).unwrap();
        assert!(found.iter().any(|b| b.key() == v.bijection.key()));
        let unpruned = v.search(DEFAULT_SEARCH_CAP, false).unwrap();
        assert_eq!(found, unpruned);
    }

    #[test]
    fn s3_is_its_own_normalizer() {
        let v = run("s3", 3, Target::Np);
        assert!(v.cert.verdict);
        let found = v.search(DEFAULT_SEARCH_CAP, true).unwrap();
        let identity: Vec<_> = v.g.block.members.iter().map(|&i| (i, i, 1)).collect();
        assert!(found.iter().any(|b| b.key() == identity));
    }

    #[test]
    fn strict_mode_agrees() {
        let ctx = HyperfocalCtx::for_group(catalog::load("sl28c3").unwrap(), 3, true).unwrap();
        let opts = VerifyOptions { label: "sl28c3".into(), strict_primes: true };
        let v = verify(&ctx, Target::Npt, &opts).unwrap();
        assert!(v.cert.verdict);
        assert_eq!(v.cert.prime_data.primes_used, v.cert.prime_data.canonical.num_primes);
    }

    #[test]
    fn json_is_stable() {
        let a = run("a5", 5, Target::Npt).cert.to_json();
        let b = run("a5", 5, Target::Npt).cert.to_json();
        assert_eq!(a, b);
    }
}
