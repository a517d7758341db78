use blockforge::cyclo::{CycNum, PrimeAbovePData, Valuation};
use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;

fn num(n: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-6i64..=6, n as usize).prop_map(move |c| {
        CycNum::from_exponent_sum(n, &c.into_iter().map(BigInt::from).collect::<Vec<_>>(), BigInt::from(1))
    })
}

fn modulus() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![5u32, 9, 12, 15, 30, 45])
}

fn with_modulus() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    modulus().prop_flat_map(|n| (num(n), num(n), num(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws((a, b, c) in with_modulus()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_and_galois((a, b, _) in with_modulus()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        let n = a.modulus() as i64;
        let k = (2..n).find(|k| num_integer::gcd(*k, n) == 1).unwrap_or(1);
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
    }

    #[test]
    fn inverses((a, _, _) in with_modulus()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
    }

    #[test]
    fn divisibility_matches_division((a, _, _) in with_modulus(), m in 2u64..10) {
        let scaled = a.mul_int(m);
        prop_assert!(scaled.divisible_by_int(m).unwrap());
        let q = a.div_int(m as i64).unwrap();
        prop_assert_eq!(a.divisible_by_int(m).unwrap(), q.is_algebraic_integer());
    }

    #[test]
    fn valuation_is_additive(a in num(45), b in num(45), k in 0u32..3) {
        let pd = PrimeAbovePData::shared(45, 3, 0).unwrap();
        let a = a.mul_int(3i64.pow(k));
        let (va, vb, vab) = (pd.valuation(&a).unwrap(), pd.valuation(&b).unwrap(), pd.valuation(&(&a * &b)).unwrap());
        match (va, vb) {
            (Valuation::Finite(x), Valuation::Finite(y)) => prop_assert_eq!(vab, Valuation::Finite(x + y)),
            _ => prop_assert_eq!(vab, Valuation::Infinite),
        }
        if !a.is_zero() {
            prop_assert!(va.at_least(k as i64));
        }
    }

    #[test]
    fn reduction_is_a_ring_map((a, b, _) in with_modulus()) {
        // a prime q ≡ 1 mod N and an element of order N in GF(q)
        let n = a.modulus() as u64;
        let q = (1..).map(|t| t * n + 1).find(|&q| blockforge::arith::is_prime(q)).unwrap();
        let g = blockforge::arith::primitive_root(q);
        let z = blockforge::arith::mod_pow(g, (q - 1) / n, q);
        let (ra, rb) = (a.reduce_mod(q, z).unwrap(), b.reduce_mod(q, z).unwrap());
        prop_assert_eq!((&a * &b).reduce_mod(q, z).unwrap(), ra * rb % q);
        prop_assert_eq!((&a + &b).reduce_mod(q, z).unwrap(), (ra + rb) % q);
    }
}

#[test]
fn valuation_of_p_is_one() {
    for (n, p) in [(45u32, 3u64), (30, 5), (63, 7), (9, 3)] {
        let pd = PrimeAbovePData::shared(n, p, 0).unwrap();
        assert_eq!(pd.valuation(&CycNum::from_int(n, p as i64)).unwrap(), Valuation::Finite(Ratio::from_integer(1)));
    }
}

#[test]
fn one_minus_zeta_is_a_uniformizer() {
    // ν(1 − ζ_9) = 1/φ(9) = 1/6
    let pd = PrimeAbovePData::shared(9, 3, 0).unwrap();
    let x = &CycNum::one(9) - &CycNum::root_of_unity(9, 1);
    assert_eq!(pd.valuation(&x).unwrap(), Valuation::Finite(Ratio::new(1, 6)));
}

#[test]
fn every_prime_sees_the_same_rational_valuation() {
    let primes = PrimeAbovePData::all(39, 3).unwrap();
    assert_eq!(primes.len(), 4);
    let x = CycNum::from_int(39, 18);
    for pd in &primes {
        assert_eq!(pd.valuation(&x).unwrap(), Valuation::Finite(Ratio::from_integer(2)));
    }
}
