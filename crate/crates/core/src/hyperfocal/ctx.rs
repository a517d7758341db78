use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{is_prime, p_part, valuation};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, commutator_subgroup, generated_by, Group, Subgroup};
use crate::perm::Perm;
use crate::session::Session;

/// Largest Sylow subgroup for which subgroup lattices are enumerated.
pub const SUBGROUP_SCAN_CAP: usize = 729;

/// `P̃` computed as `P ∩ O^p(G)` and, optionally, in Puig's focal form.
#[derive(Clone, Debug)]
pub struct HyperfocalForms {
    pub sylow: Subgroup,
    pub op: Subgroup,
    pub intersection: Subgroup,
    pub focal: Option<Subgroup>,
}

/// `O^p(H)` as the subgroup generated by the `p`-regular elements of `h`.
pub fn op_of(elements: &[Perm], degree: usize, p: u64) -> Subgroup {
    let regular = elements.iter().filter(|g| g.order() % p != 0);
    generated_by(degree, regular, usize::MAX).expect("uncapped closure")
}

/// Closure of `h` under conjugation by the generators of `by`.
fn normal_closure(mut h: Subgroup, by: &Subgroup) -> Subgroup {
    loop {
        let mut grown = false;
        for v in by.gens() {
            for y in h.gens().to_vec() {
                let z = y.conj(v);
                if !h.contains(&z) {
                    h = h.join_element(&z, usize::MAX).expect("uncapped closure");
                    grown = true;
                }
            }
        }
        if !grown {
            return h;
        }
    }
}

/// `⟨[S, O^p(N_G(S))] : S ≤ P⟩`, with `S` running over representatives of the
/// `P`-classes of subgroups; the `P`-normal closure restores the remaining conjugates.
pub fn focal_form(g: &Group, p: u64, sylow: &Subgroup) -> Result<Subgroup> {
    if sylow.order() > SUBGROUP_SCAN_CAP {
        return Err(Error::CapExceeded { cap: SUBGROUP_SCAN_CAP });
    }
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut acc = Subgroup::trivial(g.degree());
    for s in all_subgroups(sylow) {
        if s.is_trivial() || seen.contains(s.elements()) {
            continue;
        }
        for v in sylow.elements() {
            seen.insert(s.conj(v).elements().to_vec());
        }
        let nrm = g.normalizer(&s);
        let opn = op_of(nrm.elements(), g.degree(), p);
        let c = commutator_subgroup(&s, &opn);
        acc = acc.join(&c, usize::MAX)?;
    }
    Ok(normal_closure(acc, sylow))
}

/// Both descriptions of the hyperfocal subgroup; errors if they disagree.
pub fn hyperfocal_subgroup(g: &Group, p: u64, skip_puig: bool) -> Result<HyperfocalForms> {
    let sylow = g.sylow_subgroup(p)?;
    let op = g.op_subgroup(p);
    let intersection = sylow.intersection(&op);
    let focal = if skip_puig { None } else { Some(focal_form(g, p, &sylow)?) };
    if let Some(f) = &focal {
        if f.elements() != intersection.elements() {
            return Err(Error::PuigMismatch { intersection: intersection.order(), focal: f.order() });
        }
    }
    Ok(HyperfocalForms { sylow, op, intersection, focal })
}

/// Outcome of a fusion comparison, with a counterexample on failure.
#[derive(Clone, Debug)]
pub struct FusionVerdict {
    pub holds: bool,
    pub subgroups_checked: usize,
    pub witness: Option<(Subgroup, Perm)>,
}

/// `F_P(G) = F_P(H)`: every `G`-conjugation map between subgroups of `P`
/// is realized by some element of `h`.
pub fn fusion_equal(g: &Group, h: &Subgroup, sylow: &Subgroup) -> Result<FusionVerdict> {
    if sylow.order() > SUBGROUP_SCAN_CAP {
        return Err(Error::CapExceeded { cap: SUBGROUP_SCAN_CAP });
    }
    let subs = all_subgroups(sylow);
    let mut checked = 0;
    for s in &subs {
        if s.is_trivial() {
            continue;
        }
        checked += 1;
        let gens = s.gens();
        let realized: HashSet<Vec<Perm>> =
            h.elements().iter().map(|n| gens.iter().map(|x| x.conj(n)).collect()).collect();
        for x in g.elements() {
            let image: Vec<Perm> = gens.iter().map(|y| y.conj(x)).collect();
            if image.iter().all(|y| sylow.contains(y)) && !realized.contains(&image) {
                return Ok(FusionVerdict {
                    holds: false,
                    subgroups_checked: checked,
                    witness: Some((s.clone(), x.clone())),
                });
            }
        }
    }
    Ok(FusionVerdict { holds: true, subgroups_checked: checked, witness: None })
}

/// Inertia of a `p`-element `u ∈ P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inertia {
    Trivial,
    Full,
}

#[derive(Clone, Debug)]
pub struct PElementData {
    pub u: Perm,
    /// `C_P(u)`, a Sylow subgroup of `C_G(u)`.
    pub p_u: Subgroup,
    pub e_u: u64,
    pub inertia: Inertia,
}

/// Where the pipeline stands for a given `(G, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `P̃ = 1`: `G` is `p`-nilpotent.
    Nilpotent,
    /// `P̃` cyclic and nontrivial.
    Cyclic,
}

/// The `p`-local skeleton shared by `G`, `N_G(P)` and `N_G(P̃)`.
pub struct HyperfocalCtx {
    pub session: Arc<Session>,
    pub g: Arc<Group>,
    pub p: u64,
    pub sylow: Subgroup,
    pub g_tilde: Subgroup,
    pub p_tilde: Subgroup,
    pub focal: Option<Subgroup>,
    pub normalizer: Arc<Group>,
    /// A `p`-complement `T` of `N = N_G(P)`.
    pub complement: Subgroup,
    /// `K = O_{p'}(C_G(P)) = T ∩ C_G(P)`.
    pub kernel: Subgroup,
    pub e: u64,
    /// `C_P(T)`
    pub cpt: Subgroup,
    /// Generator of `P̃`: its least element of maximal order.
    pub x: Perm,
    /// `|P̃| = p^n`
    pub n: u32,
    pub shape: Shape,
    powers: HashMap<Perm, u64>,
    split: HashMap<Perm, (u64, Perm)>,
}

impl std::fmt::Debug for HyperfocalCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HyperfocalCtx")
            .field("p", &self.p)
            .field("order", &self.g.order())
            .field("p_tilde", &self.p_tilde.order())
            .field("e", &self.e)
            .finish()
    }
}

impl HyperfocalCtx {
    pub fn new(session: Arc<Session>, g: Arc<Group>, p: u64, skip_puig: bool) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let g = session.register(g);
        let forms = hyperfocal_subgroup(&g, p, skip_puig)?;
        let HyperfocalForms { sylow, op: g_tilde, intersection: p_tilde, focal } = forms;
        let x =
            p_tilde.elements().iter().find(|y| y.order() as usize == p_tilde.order()).cloned().ok_or_else(|| {
                Error::HypothesisNotMet(format!("the hyperfocal subgroup of order {} is not cyclic", p_tilde.order()))
            })?;
        let n = valuation(p_tilde.order() as u64, p);

        let normalizer = session.group(&g.normalizer(&sylow));
        let complement = normalizer.p_complement(p, &sylow)?;
        let cgp = g.centralizer(&sylow);
        let kernel = complement.intersection(&cgp);
        let zp = sylow.intersection(&cgp).order();
        let pcp = sylow.order() * cgp.order() / zp;
        if !normalizer.order().is_multiple_of(pcp) {
            return Err(Error::Internal("P·C_G(P) does not divide |N_G(P)|".into()));
        }
        let e = (normalizer.order() / pcp) as u64;
        if e != (complement.order() / kernel.order()) as u64 || !(p - 1).is_multiple_of(e) {
            return Err(Error::Internal(format!("inertial index {e} is inconsistent")));
        }
        let ct = g.centralizer(&complement);
        let cpt = sylow.intersection(&ct);

        let pn = p_tilde.order() as u64;
        let powers: HashMap<Perm, u64> = (0..pn).map(|j| (x.pow(j as i64), j)).collect();
        let shape = if p_tilde.is_trivial() { Shape::Nilpotent } else { Shape::Cyclic };
        let mut split = HashMap::new();
        match shape {
            Shape::Nilpotent => {
                if e != 1 {
                    return Err(Error::Internal(format!("P̃ = 1 but e = {e}")));
                }
            }
            Shape::Cyclic => {
                if e == 1 {
                    return Err(Error::Internal("P̃ ≠ 1 but e = 1".into()));
                }
                // P = P̃ ⋊ C_P(T)
                if p_tilde.order() * cpt.order() != sylow.order() || !p_tilde.intersection(&cpt).is_trivial() {
                    return Err(Error::Internal("P is not the semidirect product of P̃ and C_P(T)".into()));
                }
                for c in cpt.elements() {
                    for (y, &j) in &powers {
                        split.insert(y * c, (j, c.clone()));
                    }
                }
            }
        }
        Ok(HyperfocalCtx {
            session,
            g,
            p,
            sylow,
            g_tilde,
            p_tilde,
            focal,
            normalizer,
            complement,
            kernel,
            e,
            cpt,
            x,
            n,
            shape,
            powers,
            split,
        })
    }

    /// A fresh session over `Q(ζ_{exp(G)})`.
    pub fn for_group(g: Arc<Group>, p: u64, skip_puig: bool) -> Result<Self> {
        let session = Arc::new(Session::for_group(&g));
        HyperfocalCtx::new(session, g, p, skip_puig)
    }

    pub fn p_tilde_order(&self) -> u64 {
        self.p_tilde.order() as u64
    }

    /// `j` with `y = x^j`, for `y ∈ P̃`.
    pub fn exponent_of(&self, y: &Perm) -> Option<u64> {
        self.powers.get(y).copied()
    }

    /// `(j, c)` with `v = x^j·c` and `c ∈ C_P(T)`.
    pub fn split(&self, v: &Perm) -> Option<&(u64, Perm)> {
        self.split.get(v)
    }

    /// `r` with `x^g = x^r`, for `g` normalizing `P̃`.
    pub fn multiplier(&self, g: &Perm) -> u64 {
        self.exponent_of(&self.x.conj(g)).expect("g normalizes P̃")
    }

    /// `N_G(P̃)` as a group of the session.
    pub fn normalizer_of_p_tilde(&self) -> Arc<Group> {
        self.session.group(&self.g.normalizer(&self.p_tilde))
    }

    /// `N_G(P̃) = C_G(P̃)·N_G(P)` as sets.
    pub fn check_normalizer_product(&self) -> bool {
        let npt = self.g.normalizer(&self.p_tilde);
        let cpt = self.g.centralizer(&self.p_tilde);
        let n = self.normalizer.as_subgroup();
        if !cpt.is_subset_of(&npt) || !n.is_subset_of(&npt) {
            return false;
        }
        let meet = cpt.intersection(&n).order();
        cpt.order() * n.order() / meet == npt.order()
    }

    /// `e_u = |C_N(u) : P_u·C_N(P_u)|`, with the dichotomy `e_u ∈ {1, e}` enforced.
    /// When `e_u = e` the hyperfocal subgroup of `C_G(u)` is recomputed and compared
    /// with `C_P̃(u)`.
    pub fn inertial_index_u(&self, u: &Perm) -> Result<PElementData> {
        let cgu = self.g.centralizer_of(u);
        let p_u = self.sylow.intersection(&cgu);
        if p_part(cgu.order() as u64, self.p) != p_u.order() as u64 {
            return Err(Error::Internal(format!("C_P({u}) is not Sylow in C_G({u})")));
        }
        let cnu = self.normalizer.centralizer_of(u);
        let cnpu = self.normalizer.centralizer(&p_u);
        let prod = p_u.order() * cnpu.order() / p_u.intersection(&cnpu).order();
        if !cnu.order().is_multiple_of(prod) {
            return Err(Error::Internal(format!("P_u·C_N(P_u) does not divide C_N({u})")));
        }
        let e_u = (cnu.order() / prod) as u64;
        let inertia = if e_u == self.e {
            Inertia::Full
        } else if e_u == 1 {
            Inertia::Trivial
        } else {
            return Err(Error::DichotomyViolation { u: u.to_string(), e_u, e: self.e });
        };
        if inertia == Inertia::Full && self.e > 1 {
            let local_tilde = p_u.intersection(&op_of(cgu.elements(), self.g.degree(), self.p));
            let expected = self.p_tilde.intersection(&cgu);
            if local_tilde.elements() != expected.elements() {
                return Err(Error::Internal(format!("C_P̃({u}) is not hyperfocal in C_G({u})")));
            }
        }
        Ok(PElementData { u: u.clone(), p_u, e_u, inertia })
    }

    /// Inertial data for every element of `P`, in element order.
    pub fn p_element_table(&self) -> Result<Vec<PElementData>> {
        let rows: Vec<Result<PElementData>> = crate::par::map(self.sylow.elements(), |u| self.inertial_index_u(u));
        rows.into_iter().collect()
    }
}
