use std::sync::Arc;

use blockforge::blocks::{block_partition, principal_block};
use blockforge::catalog;
use blockforge::chartab::{CharTable, ClassFn};
use blockforge::cyclo::{CycNum, PrimeAbovePData};
use blockforge::group::Group;
use blockforge::hyperfocal::HyperfocalCtx;
use blockforge::session::Session;

fn table(session: &Session, g: &Arc<Group>) -> Arc<CharTable> {
    session.table(g).unwrap()
}

/// Principal block membership from central characters: `ω_χ(K) ≡ |K| mod 𝔓` on every class.
fn principal_by_central_characters(t: &CharTable, p: u64) -> Vec<usize> {
    let g = t.group();
    let n = t.modulus();
    let pd = PrimeAbovePData::shared(n, p, 0).unwrap();
    (0..t.len())
        .filter(|&i| {
            let row = t.row(i);
            let d = row.degree().unwrap();
            g.classes().iter().enumerate().all(|(k, c)| {
                let omega = row.value(k).mul_int(c.size as i64).div_int(d).unwrap();
                let diff = &omega - &CycNum::from_int(n, c.size as i64);
                diff.is_zero() || pd.valuation(&diff).unwrap().finite().is_some_and(|v| v > 0.into())
            })
        })
        .collect()
}

#[test]
fn frobenius_reciprocity() {
    for (name, p) in [("a5", 5u64), ("sl28c3", 3), ("a5xc5", 5)] {
        let g = catalog::load(name).unwrap();
        let session = Session::for_group(&g);
        let g = session.register(g);
        let n = session.group(&g.normalizer(&g.sylow_subgroup(p).unwrap()));
        let (tg, tn) = (table(&session, &g), table(&session, &n));
        for psi in tn.rows() {
            let up = psi.induce(&g);
            for chi in tg.rows() {
                let lhs = up.inner_product(chi).unwrap();
                let rhs = psi.inner_product(&chi.restrict(&n)).unwrap();
                assert_eq!(lhs, rhs, "{name}");
                assert!(lhs.to_i64().is_some_and(|v| v >= 0));
            }
        }
    }
}

#[test]
fn tensor_products_are_characters() {
    let g = catalog::load("sl28").unwrap();
    let session = Session::for_group(&g);
    let t = table(&session, &g);
    for a in t.rows() {
        for b in t.rows().iter().take(4) {
            let coeffs = t.decompose_int(&a.mul(b).unwrap()).unwrap();
            assert!(coeffs.iter().all(|&c| c >= 0));
            let degree: i64 = coeffs.iter().zip(t.degrees()).map(|(c, d)| c * d as i64).sum();
            assert_eq!(degree, a.degree().unwrap() * b.degree().unwrap());
        }
    }
}

#[test]
fn principal_blocks_against_central_characters() {
    for (name, p, k) in [("a5", 5u64, 4usize), ("s3", 3, 3), ("a5xc5", 5, 20), ("sl28c3", 3, 10), ("a5", 3, 3)] {
        let g = catalog::load(name).unwrap();
        let session = Session::for_group(&g);
        let t = table(&session, &session.register(g));
        let b = principal_block(&t, p).unwrap();
        assert_eq!(b.members, principal_by_central_characters(&t, p), "{name} at {p}");
        assert_eq!(b.len(), k, "{name} at {p}");
    }
}

#[test]
fn a5_blocks_at_five() {
    let g = catalog::load("a5").unwrap();
    let session = Session::for_group(&g);
    let t = table(&session, &session.register(g));
    let blocks = block_partition(&t, 5).unwrap();
    assert_eq!(blocks.len(), 2);
    let other = blocks.iter().find(|b| !b.is_principal).unwrap();
    assert_eq!(other.members.len(), 1);
    assert_eq!(t.degrees()[other.members[0]], 5);
    assert_eq!(other.defect, 0);
}

#[test]
fn hyperfocal_subgroup_of_the_flagship_lies_in_sl28() {
    // O^3(SL(2,8)⋊C3) = SL(2,8), so P̃ = P ∩ SL(2,8)
    let g = catalog::load("sl28c3").unwrap();
    let sl = catalog::load("sl28").unwrap();
    let ctx = HyperfocalCtx::for_group(g, 3, false).unwrap();
    let inside: Vec<_> = ctx.sylow.elements().iter().filter(|x| sl.contains(x)).cloned().collect();
    assert_eq!(inside, ctx.p_tilde.elements().to_vec());
    assert_eq!(ctx.e, 2);
    assert_eq!(ctx.cpt.order(), 3);
}

#[test]
fn star_product_for_s3() {
    // 1 ∗ η = 1 − sign + χ_2 for the faithful characters of C3
    let g = catalog::load("s3").unwrap();
    let ctx = HyperfocalCtx::for_group(g, 3, false).unwrap();
    let side = blockforge::hyperfocal::BlockSide::new(&ctx.session, ctx.g.clone(), 3, ctx.sylow.clone()).unwrap();
    let eta = ctx.eta(1, &ctx.sylow).unwrap();
    let f = side.star_trivial(&eta).unwrap();
    let n = side.modulus();
    let want = ClassFn::from_fn(&side.group, |k| {
        CycNum::from_int(
            n,
            match side.group.element_order(k) {
                1 | 2 => 2,
                _ => -1,
            },
        )
    });
    assert_eq!(f, want);
}
