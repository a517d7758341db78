//! `p`-blocks of ordinary characters, `p`-sections and their projections.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::valuation;
use crate::chartab::{CharTable, ClassFn};
use crate::cyclo::{sum, CycNum, PrimeAbovePData};
use crate::error::Result;
use crate::group::{Group, Subgroup};
use crate::par;
use crate::perm::Perm;
use crate::session::Session;

/// A `p`-block as a set of row indices of a character table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockData {
    pub p: u64,
    pub members: Vec<usize>,
    pub is_principal: bool,
    pub defect: u32,
}

impl BlockData {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

/// Blocks via central characters: `χ ~ χ'` iff `ω_χ(K) ≡ ω_χ'(K)` modulo the
/// canonical prime above `p` for every class `K`, with `ω_χ(K) = |K|χ(g_K)/χ(1)`.
/// The principal block comes first, the rest by least member.
pub fn block_partition(t: &CharTable, p: u64) -> Result<Vec<BlockData>> {
    let g = t.group();
    let order = g.order() as u64;
    let full = valuation(order, p);
    let degrees = t.degrees();
    let defect_of = |members: &[usize]| members.iter().map(|&i| full - valuation(degrees[i], p)).max().unwrap_or(0);
    if !order.is_multiple_of(p) {
        return Ok((0..t.len()).map(|i| BlockData { p, members: vec![i], is_principal: i == 0, defect: 0 }).collect());
    }
    let pd = PrimeAbovePData::shared(t.modulus(), p, 0)?;
    let fingerprints: Vec<Result<Vec<Vec<u64>>>> = par::map(t.rows(), |row| {
        let d = row.degree().expect("integral degree");
        g.classes()
            .iter()
            .enumerate()
            .map(|(k, c)| pd.residue(&row.value(k).mul_int(c.size as i64).div_int(d)?))
            .collect()
    });
    let mut groups: BTreeMap<Vec<Vec<u64>>, Vec<usize>> = BTreeMap::new();
    for (i, f) in fingerprints.into_iter().enumerate() {
        groups.entry(f?).or_default().push(i);
    }
    let mut blocks: Vec<BlockData> = groups
        .into_values()
        .map(|members| BlockData { p, is_principal: members[0] == 0, defect: defect_of(&members), members })
        .collect();
    blocks.sort_by_key(|b| b.members[0]);
    Ok(blocks)
}

pub fn principal_block(t: &CharTable, p: u64) -> Result<BlockData> {
    Ok(block_partition(t, p)?.swap_remove(0))
}

/// A Brauer element `(u, b(C_G(u)))` with the data needed to project onto its section.
#[derive(Clone, Debug)]
pub struct BrauerElt {
    pub u: Perm,
    /// `G`-class of `u`.
    pub u_class: usize,
    pub centralizer: Arc<Group>,
    pub local_table: Arc<CharTable>,
    pub local_block: BlockData,
    /// `G`-classes whose `p`-part is conjugate to `u`.
    pub section_classes: Vec<usize>,
    /// For each section class, the `C_G(u)`-class of a conjugate `uρ` of its representative.
    pub local_classes: Vec<usize>,
}

/// One Brauer element per `G`-class of `p`-elements, each represented by the
/// least element of the Sylow subgroup `sylow` in that class.
pub fn p_sections(session: &Session, g: &Arc<Group>, p: u64, sylow: &Subgroup) -> Result<Vec<BrauerElt>> {
    let reps: Vec<(usize, Perm)> = g
        .classes()
        .iter()
        .enumerate()
        .filter(|(_, c)| crate::arith::p_part(c.element_order, p) == c.element_order)
        .map(|(k, _)| {
            let u = sylow
                .elements()
                .iter()
                .find(|x| g.class_of_perm(x) == Some(k))
                .expect("every p-element conjugates into a Sylow subgroup")
                .clone();
            (k, u)
        })
        .collect();
    let built: Vec<Result<BrauerElt>> = par::map(&reps, |(k, u)| {
        let centralizer = session.group(&g.centralizer_of(u));
        let local_table = session.table(&centralizer)?;
        let local_block = principal_block(&local_table, p)?;
        let section_classes: Vec<usize> = (0..g.num_classes()).filter(|&c| g.p_part_class(c, p) == *k).collect();
        let local_classes = section_classes
            .iter()
            .map(|&c| {
                let rep = &g.classes()[c].rep;
                let x = g.conjugator(&rep.p_part(p), u).expect("p-part is conjugate to u");
                centralizer.class_of_perm(&rep.conj(&x)).expect("conjugate lies in the centralizer")
            })
            .collect();
        Ok(BrauerElt {
            u: u.clone(),
            u_class: *k,
            centralizer,
            local_table,
            local_block,
            section_classes,
            local_classes,
        })
    });
    built.into_iter().collect()
}

/// `χ^{(u, b_u)}` on the section of `u`: `Σ_{ψ ∈ Irr(b_u)} (χ↓C, ψ)·ψ(uρ)`.
#[derive(Clone, Debug)]
pub struct SectionProjection {
    pub u_class: usize,
    /// Values aligned with the Brauer element's `section_classes`.
    pub values: Vec<CycNum>,
}

impl SectionProjection {
    /// The projection as a class function on `G`, zero off the section.
    pub fn to_class_fn(&self, g: &Arc<Group>, be: &BrauerElt) -> ClassFn {
        let n = self.values.first().map(CycNum::modulus).unwrap_or(1);
        let mut values = vec![CycNum::zero(n); g.num_classes()];
        for (&c, v) in be.section_classes.iter().zip(&self.values) {
            values[c] = v.clone();
        }
        ClassFn::new(g.clone(), values)
    }
}

pub fn section_projection(chi: &ClassFn, be: &BrauerElt) -> Result<SectionProjection> {
    let res = chi.restrict(&be.centralizer);
    let n = chi.modulus();
    let mut local = ClassFn::zero(&be.centralizer, n);
    for &i in &be.local_block.members {
        let psi = be.local_table.row(i);
        let c = res.inner_product(psi)?;
        if !c.is_zero() {
            local = local.add(&psi.scale(&c))?;
        }
    }
    let values = be.local_classes.iter().map(|&k| local.value(k).clone()).collect();
    Ok(SectionProjection { u_class: be.u_class, values })
}

/// Gram matrix `M[i][j] = (χ_i^{(u,b_u)}, χ_j^{(u,b_u)})_G` of section projections.
pub fn contribution_matrix(g: &Group, be: &BrauerElt, projections: &[SectionProjection]) -> Vec<Vec<CycNum>> {
    let k = projections.len();
    let n = projections.first().and_then(|p| p.values.first()).map(CycNum::modulus).unwrap_or(1);
    let sizes: Vec<i64> = be.section_classes.iter().map(|&c| g.classes()[c].size as i64).collect();
    let conj: Vec<Vec<CycNum>> = projections.iter().map(|p| p.values.iter().map(CycNum::conj).collect()).collect();
    let entries = par::map_range(k * k, |ij| {
        let (i, j) = (ij / k, ij % k);
        let terms: Vec<CycNum> =
            (0..sizes.len()).map(|c| (&projections[i].values[c] * &conj[j][c]).mul_int(sizes[c])).collect();
        sum(n, &terms).div_int(g.order() as i64).expect("nonzero order")
    });
    entries.chunks(k.max(1)).map(<[CycNum]>::to_vec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn group(degree: usize, gens: &[Vec<Vec<usize>>]) -> Arc<Group> {
        let gens: Vec<Perm> = gens.iter().map(|c| Perm::from_cycles(degree, c).unwrap()).collect();
        Arc::new(Group::new(degree, &gens).unwrap())
    }

    fn a5() -> Arc<Group> {
        group(5, &[vec![vec![0, 1, 2, 3, 4]], vec![vec![0, 1, 2]]])
    }

    #[test]
    fn a5_blocks_at_5() {
        let g = a5();
        let s = Session::for_group(&g);
        let t = s.table(&g).unwrap();
        let blocks = block_partition(&t, 5).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].members, vec![0, 1, 2, 3]);
        assert!(blocks[0].is_principal);
        assert_eq!(blocks[0].defect, 1);
        assert_eq!(blocks[1].members, vec![4]);
        assert_eq!(blocks[1].defect, 0);
    }

    #[test]
    fn s3_single_block_at_3() {
        let g = group(3, &[vec![vec![0, 1, 2]], vec![vec![0, 1]]]);
        let s = Session::for_group(&g);
        let t = s.table(&g).unwrap();
        let blocks = block_partition(&t, 3).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].members, vec![0, 1, 2]);
    }

    #[test]
    fn coprime_prime_gives_defect_zero_singletons() {
        let g = a5();
        let s = Session::for_group(&g);
        let t = s.table(&g).unwrap();
        let blocks = block_partition(&t, 7).unwrap();
        assert_eq!(blocks.len(), 5);
        assert!(blocks.iter().all(|b| b.len() == 1 && b.defect == 0));
    }

    #[test]
    fn a5_sections_and_contributions() {
        let g = a5();
        let s = Session::for_group(&g);
        let t = s.table(&g).unwrap();
        let p = g.sylow_subgroup(5).unwrap();
        let sections = p_sections(&s, &g, 5, &p).unwrap();
        assert_eq!(sections.len(), 3);
        let covered: usize = sections.iter().map(|b| b.section_classes.len()).sum();
        assert_eq!(covered, g.num_classes());
        let b = principal_block(&t, 5).unwrap();
        let mut total = vec![vec![CycNum::zero(30); b.len()]; b.len()];
        for be in &sections {
            let projs: Vec<SectionProjection> =
                b.members.iter().map(|&i| section_projection(t.row(i), be).unwrap()).collect();
            let m = contribution_matrix(&g, be, &projs);
            for i in 0..b.len() {
                for j in 0..b.len() {
                    assert_eq!(m[i][j], m[j][i].conj());
                    total[i][j] = &total[i][j] + &m[i][j];
                }
            }
            if !be.u.is_identity() {
                // C_G(u) = C5 is p-nilpotent: projection at u is χ(u), Gram has rank one
                for (&i, pr) in b.members.iter().zip(&projs) {
                    let pos = be.section_classes.iter().position(|&c| c == be.u_class).unwrap();
                    assert_eq!(pr.values[pos], *t.row(i).value(be.u_class));
                }
                for i in 0..b.len() {
                    for j in 0..b.len() {
                        let minor = &(&m[i][i] * &m[j][j]) - &(&m[i][j] * &m[j][i]);
                        assert!(minor.is_zero());
                    }
                }
            }
        }
        for i in 0..b.len() {
            for j in 0..b.len() {
                assert_eq!(total[i][j], CycNum::from_int(30, (i == j) as i64));
            }
        }
    }

    #[test]
    fn trivial_character_projects_to_one() {
        let g = a5();
        let s = Session::for_group(&g);
        let t = s.table(&g).unwrap();
        let p = g.sylow_subgroup(5).unwrap();
        for be in p_sections(&s, &g, 5, &p).unwrap() {
            let pr = section_projection(t.row(0), &be).unwrap();
            assert!(pr.values.iter().all(CycNum::is_one));
        }
    }
}
