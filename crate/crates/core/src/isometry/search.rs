//! Exhaustive search over signed bijections, used as an oracle for the
//! constructed one on small blocks.

use super::kernel::Kernel;
use super::{Pair, SignedBijection};
use crate::arith::{mod_inv, p_part, valuation};
use crate::cyclo::PrimeAbovePData;
use crate::error::{Error, Result};
use crate::hyperfocal::BlockSide;

pub const DEFAULT_SEARCH_CAP: usize = 8;

struct Search<'a> {
    kernel: Kernel<'a>,
    prime: &'a PrimeAbovePData,
    source: Vec<usize>,
    target: Vec<usize>,
    /// Heights and `p′`-parts of degrees mod `p`, per side.
    src_deg: Vec<(u32, u64)>,
    tgt_deg: Vec<(u32, u64)>,
    prune: bool,
    /// A `p`-singular class of the source group, for the early separation test.
    column: Option<usize>,
    found: Vec<SignedBijection>,
}

fn degree_data(side: &BlockSide, members: &[usize]) -> Vec<(u32, u64)> {
    let p = side.p;
    let degrees = side.table.degrees();
    members.iter().map(|&i| (valuation(degrees[i], p), (degrees[i] / p_part(degrees[i], p)) % p)).collect()
}

impl Search<'_> {
    /// `s·χ(1)_{p′}/χ′(1)_{p′}` mod `p`, constant along a perfect isometry.
    fn ratio(&self, j: usize, t: usize, sign: i64) -> u64 {
        let p = self.kernel.p;
        let r = self.tgt_deg[t].1 * mod_inv(self.src_deg[j].1, p).expect("p′-part is a unit") % p;
        if sign < 0 {
            (p - r) % p
        } else {
            r
        }
    }

    fn walk(&mut self, pairs: &mut Vec<Pair>, used: &mut [bool], ratio: Option<u64>) {
        let j = pairs.len();
        if j == self.source.len() {
            self.leaf(pairs);
            return;
        }
        for t in 0..self.target.len() {
            if used[t] || (self.prune && self.src_deg[j].0 != self.tgt_deg[t].0) {
                continue;
            }
            for sign in [1, -1] {
                let r = self.ratio(j, t, sign);
                if self.prune && ratio.is_some_and(|q| q != r) {
                    continue;
                }
                used[t] = true;
                pairs.push(Pair { source: self.source[j], target: self.target[t], sign, exceptional: false });
                self.walk(pairs, used, ratio.or(Some(r)));
                pairs.pop();
                used[t] = false;
            }
        }
    }

    fn leaf(&mut self, pairs: &[Pair]) {
        if let (true, Some(b)) = (self.prune, self.column) {
            let k = &self.kernel;
            if (0..k.g_classes()).any(|a| !k.g_singular[a] && !k.mu(pairs, a, b).is_zero()) {
                return;
            }
        }
        if self.kernel.passes(pairs, self.prime) {
            self.found.push(SignedBijection { pairs: pairs.to_vec() });
        }
    }
}

/// All signed bijections `Irr(b(H)) → Irr(b(G))` that pass both Broué
/// conditions, in lexicographic order of `(source, target, sign)` lists.
///
/// With `prune` set, candidates must preserve heights, keep
/// `s·χ(1)_{p′}/χ′(1)_{p′}` constant mod `p`, and vanish on one `p`-singular
/// column before the full test runs.
pub fn search_bijection(g: &BlockSide, h: &BlockSide, cap: usize, prune: bool) -> Result<Vec<SignedBijection>> {
    let k = g.block.len();
    if k > cap || h.block.len() > cap {
        return Err(Error::CapExceeded { cap });
    }
    if k != h.block.len() {
        return Ok(Vec::new());
    }
    let prime = PrimeAbovePData::shared(g.modulus(), g.p, 0)?;
    let kernel = Kernel::new(g, h);
    let column = (0..kernel.h_classes()).find(|&b| kernel.h_singular[b]);
    let mut s = Search {
        kernel,
        prime: &prime,
        source: h.block.members.clone(),
        target: g.block.members.clone(),
        src_deg: degree_data(h, &h.block.members),
        tgt_deg: degree_data(g, &g.block.members),
        prune,
        column,
        found: Vec::new(),
    };
    s.walk(&mut Vec::with_capacity(k), &mut vec![false; k], None);
    let mut found = s.found;
    found.sort_by_key(SignedBijection::key);
    Ok(found)
}
