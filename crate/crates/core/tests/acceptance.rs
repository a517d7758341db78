//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line;
//! run with `--nocapture` to see them.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use blockforge::arith::valuation;
use blockforge::catalog::CATALOG;
use blockforge::cyclo::{CycNum, PrimeAbovePData, Valuation};
use blockforge::group::Group;
use blockforge::hyperfocal::{construct_families, fusion_equal, hyperfocal_subgroup, HyperfocalCtx, Inertia, Shape};
use blockforge::isometry::{verify_targets, Target, Verification, VerifyOptions, DEFAULT_SEARCH_CAP};
use blockforge::session::Session;
use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

struct Instances {
    groups: BTreeMap<&'static str, Arc<Group>>,
    /// Every catalog `(G, p)` pair whose hyperfocal subgroup is cyclic.
    contexts: Vec<(&'static str, u64, HyperfocalCtx)>,
}

impl Instances {
    fn ctx(&self, name: &str, p: u64) -> &HyperfocalCtx {
        &self.contexts.iter().find(|c| c.0 == name && c.1 == p).expect("instance").2
    }
}

fn criterion_1(inst: &Instances) -> Outcome {
    let start = Instant::now();
    for (name, g) in &inst.groups {
        let t = Session::for_group(g).table(g).map_err(err)?;
        t.verify().map_err(|e| format!("{name}: {e}"))?;
        let degrees = t.degrees();
        let squares: u64 = degrees.iter().map(|d| d * d).sum();
        check(squares == g.order() as u64, format!("{name}: sum of squared degrees {squares}"))?;
        if *name == "a5" {
            let mut d = degrees.clone();
            d.sort_unstable();
            check(d == [1, 3, 3, 4, 5], format!("A5 degrees {d:?}"))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 60.0, format!("tables took {secs:.1}s"))?;
    Ok(format!("{} tables exact in {secs:.1}s", inst.groups.len()))
}

fn criterion_2(inst: &Instances) -> Outcome {
    let mut pairs = 0;
    for e in CATALOG {
        for &p in e.primes {
            let forms =
                hyperfocal_subgroup(&inst.groups[e.name], p, false).map_err(|x| format!("{} p={p}: {x}", e.name))?;
            let focal = forms.focal.ok_or("focal form skipped")?;
            check(focal.elements() == forms.intersection.elements(), format!("{} p={p}: forms differ", e.name))?;
            pairs += 1;
        }
    }
    let c = inst.ctx("a5xc5", 5);
    check(c.p_tilde.order() == 5 && c.sylow.order() == 25, "A5×C5 hyperfocal orders")?;
    let c = inst.ctx("sl28c3", 3);
    check(c.p_tilde.order() == 9 && c.sylow.order() == 27, "SL(2,8)⋊C3 hyperfocal orders")?;
    Ok(format!("both forms agree on {pairs} pairs"))
}

fn criterion_3(inst: &Instances) -> Outcome {
    let mut elements = 0;
    for (name, p, c) in &inst.contexts {
        check((p - 1) % c.e == 0, format!("{name} p={p}: e = {} does not divide p-1", c.e))?;
        for d in c.p_element_table().map_err(err)? {
            check(d.e_u == 1 || d.e_u == c.e, format!("{name} p={p}: e_u = {} at {}", d.e_u, d.u))?;
            check((d.inertia == Inertia::Full) == (d.e_u == c.e), "inertia label")?;
            elements += 1;
        }
        check(c.check_normalizer_product(), format!("{name} p={p}: N_G(P̃) ≠ C_G(P̃)N_G(P)"))?;
        for h in [c.normalizer.clone(), c.normalizer_of_p_tilde()] {
            let v = fusion_equal(&c.g, &h.as_subgroup(), &c.sylow).map_err(err)?;
            check(v.holds, format!("{name} p={p}: fusion differs in a subgroup of order {}", h.order()))?;
        }
    }
    Ok(format!("{} instances, {elements} p-elements", inst.contexts.len()))
}

fn criterion_4(inst: &Instances) -> Outcome {
    let mut seen = Vec::new();
    for (name, p, c) in inst.contexts.iter().filter(|c| c.2.e >= 2) {
        let fam = construct_families(c, c.g.clone()).map_err(|e| format!("{name} p={p}: {e}"))?;
        // decomposition of 1 ∗ η for the first invariant character, read back independently
        let k = c.invariant_linear_chars().invariant[0];
        let eta = c.eta(k, &c.sylow).map_err(err)?;
        let coeffs = fam.side.table.decompose_int(&fam.side.star_trivial(&eta).map_err(err)?).map_err(err)?;
        let mut got: Vec<i64> = coeffs.into_iter().filter(|&x| x != 0).collect();
        let mut want = vec![fam.e as i64 - 1, fam.epsilon];
        want.extend(fam.signs[1..].iter().map(|s| -s));
        got.sort_unstable();
        want.sort_unstable();
        check(got == want, format!("{name} p={p}: coefficients {got:?}, expected {want:?}"))?;
        let count = fam.e * fam.lambdas.len() + fam.exceptional.iter().map(|x| x.lambdas.len()).sum::<usize>();
        check(count == fam.side.block.len(), format!("{name} p={p}: {count} vs k(b) = {}", fam.side.block.len()))?;
        seen.push((*name, *p, count));
    }
    for (name, p, k) in [("a5", 5, 4), ("s3", 3, 3), ("a5xc5", 5, 20)] {
        check(seen.contains(&(name, p, k)), format!("k(b) for {name} at {p} is not {k}"))?;
    }
    Ok(format!("{} instances with e ≥ 2", seen.len()))
}

fn criterion_5(runs: &[(String, Verification)]) -> Outcome {
    let values: usize = runs.iter().map(|r| r.1.cert.structure.trivial_inertia_values).sum();
    let sections: usize = runs.iter().map(|r| r.1.cert.structure.shadow_sections).sum();
    let entries: usize = runs.iter().map(|r| r.1.cert.structure.shadow_entries).sum();
    check(values > 0 && sections > 0, format!("{values} value identities, {sections} sections"))?;
    Ok(format!("{values} value identities at e_u = 1; {entries} matrix entries over {sections} sections"))
}

fn criterion_6(runs: &[(String, Verification)]) -> Outcome {
    let bad: Vec<&str> = runs.iter().filter(|r| !r.1.cert.verdict).map(|r| r.0.as_str()).collect();
    check(bad.is_empty(), format!("failed: {bad:?}"))?;
    Ok(format!("{} certificates true", runs.len()))
}

fn criterion_7(runs: &[(String, Verification)]) -> Outcome {
    let mut perturbed = 0;
    for (label, v) in runs {
        let c = v.negative_controls().map_err(err)?;
        let tried = c.sign_flips + c.swaps;
        check(c.all_rejected(), format!("{label}: {c:?}"))?;
        check(tried >= 2, format!("{label}: only {tried} perturbations"))?;
        perturbed += tried;
    }
    let a5 = &runs.iter().find(|r| r.0 == "a5 p=5 np").ok_or("no A5 run")?.1;
    let pruned = a5.search(DEFAULT_SEARCH_CAP, true).map_err(err)?;
    let full = a5.search(DEFAULT_SEARCH_CAP, false).map_err(err)?;
    check(pruned == full, "pruned search differs from the full one")?;
    check(pruned.iter().any(|b| b.key() == a5.bijection.key()), "construction not found by search")?;
    Ok(format!("{perturbed} perturbations rejected; A5/D10 search finds {} isometries", full.len()))
}

fn criterion_8() -> Outcome {
    let n = 45;
    let pd = PrimeAbovePData::shared(n, 3, 0).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let random = |rng: &mut ChaCha8Rng| {
        let coeffs: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect();
        let scale = 3i64.pow(rng.gen_range(0..3));
        CycNum::from_exponent_sum(n, &coeffs, BigInt::from(1)).mul_int(scale)
    };
    let mut divisible = 0;
    for _ in 0..500 {
        let a = random(&mut rng);
        let b = random(&mut rng);
        let va = pd.valuation(&a).map_err(err)?;
        for k in 1..=3u32 {
            if a.divisible_by_int(3u64.pow(k)).map_err(err)? {
                divisible += 1;
                check(va.at_least(k as i64), format!("{a} divisible by 3^{k} but ν = {va}"))?;
            }
        }
        let vb = pd.valuation(&b).map_err(err)?;
        let vab = pd.valuation(&(&a * &b)).map_err(err)?;
        let sum = match (va, vb) {
            (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
            _ => Valuation::Infinite,
        };
        check(vab == sum, format!("ν(ab) = {vab}, ν(a) + ν(b) = {sum}"))?;
    }
    check(
        valuation(45, 3) == 2
            && pd.valuation(&CycNum::from_int(n, 3)).map_err(err)? == Valuation::Finite(Ratio::from_integer(1)),
        "ν(3) ≠ 1",
    )?;
    Ok(format!("500 samples, {divisible} divisibility hits"))
}

fn report(n: usize, out: Outcome, failures: &mut Vec<usize>) {
    match out {
        Ok(detail) => println!("criterion {n}: PASS ({detail})"),
        Err(why) => {
            println!("criterion {n}: FAIL ({why})");
            failures.push(n);
        }
    }
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let groups: BTreeMap<_, _> = CATALOG.iter().map(|e| (e.name, e.build().expect("catalog"))).collect();
    let mut contexts = Vec::new();
    for e in CATALOG {
        for &p in e.primes {
            match HyperfocalCtx::for_group(groups[e.name].clone(), p, false) {
                Ok(c) => contexts.push((e.name, p, c)),
                Err(blockforge::Error::HypothesisNotMet(_)) => {}
                Err(x) => panic!("{} p={p}: {x}", e.name),
            }
        }
    }
    let inst = Instances { groups, contexts };

    let mut runs = Vec::new();
    let mut run_error = None;
    for (name, p) in [("a5", 5), ("a5xc5", 5), ("sl28c3", 3), ("s3", 3), ("a4", 3)] {
        let c = inst.ctx(name, p);
        let opts = VerifyOptions { label: name.into(), strict_primes: false };
        match verify_targets(c, &[Target::Np, Target::Npt], &opts) {
            Ok(vs) => {
                for (v, t) in vs.into_iter().zip(["np", "npt"]) {
                    runs.push((format!("{name} p={p} {t}"), v));
                }
            }
            Err(e) => run_error = Some(format!("{name} p={p}: {e}")),
        }
    }
    assert_eq!(inst.ctx("a4", 3).shape, Shape::Nilpotent);

    let mut failures = Vec::new();
    report(1, criterion_1(&inst), &mut failures);
    report(2, criterion_2(&inst), &mut failures);
    report(3, criterion_3(&inst), &mut failures);
    report(4, criterion_4(&inst), &mut failures);
    let pipeline = |f: fn(&[(String, Verification)]) -> Outcome| match &run_error {
        Some(e) => Err(e.clone()),
        None => f(&runs),
    };
    report(5, pipeline(criterion_5), &mut failures);
    report(6, pipeline(criterion_6), &mut failures);
    report(7, pipeline(criterion_7), &mut failures);
    report(8, criterion_8(), &mut failures);
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
