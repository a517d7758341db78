use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::field::CycloField;
use crate::arith::{mod_pow, mul_mod};
use crate::error::{Error, Result};

/// An element of `Q(ζ_N)`: integer numerators over the power basis and one
/// positive denominator, kept in lowest terms.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycloField>,
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        let field = CycloField::get(n);
        let coeffs = vec![BigInt::zero(); field.degree()];
        CycNum { field, coeffs, den: BigInt::one() }
    }

    pub fn from_int(n: u32, v: impl Into<BigInt>) -> Self {
        let mut z = CycNum::zero(n);
        z.coeffs[0] = v.into();
        z
    }

    pub fn one(n: u32) -> Self {
        CycNum::from_int(n, 1)
    }

    pub fn from_rational(n: u32, q: &BigRational) -> Self {
        let mut z = CycNum::from_int(n, q.numer().clone());
        z.den = q.denom().clone();
        z.normalize();
        z
    }

    /// `ζ_N^k`
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let field = CycloField::get(n);
        let k = k.rem_euclid(n as i64) as usize;
        let coeffs = field.power(k).into_iter().map(BigInt::from).collect();
        CycNum { field, coeffs, den: BigInt::one() }
    }

    /// Builds `Σ coeffs[i] ζ_N^i / den`, reducing any length modulo Φ_N.
    pub fn from_exponent_sum(n: u32, coeffs: &[BigInt], den: BigInt) -> Self {
        let field = CycloField::get(n);
        let folded = fold_cyclic(&field, coeffs.iter().enumerate().map(|(i, c)| (i, c.clone())));
        let mut z = CycNum { field, coeffs: folded, den };
        z.normalize();
        z
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `denom = 1`: the power basis is an integral basis, so this is exactly
    /// membership in `Z[ζ_N]`.
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.coeffs[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|z| z.to_i64())
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in self.coeffs.iter_mut() {
                *c = -c.clone();
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.coeffs.iter().fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    fn assert_same_field(&self, other: &CycNum) {
        assert_eq!(
            self.modulus(),
            other.modulus(),
            "cyclotomic moduli differ; embed both values into a common field first"
        );
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> CycNum {
        let k = k.into();
        let mut z = CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * &k).collect(),
            den: self.den.clone(),
        };
        z.normalize();
        z
    }

    pub fn div_int(&self, k: impl Into<BigInt>) -> Result<CycNum> {
        let k = k.into();
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut z = CycNum { field: self.field.clone(), coeffs: self.coeffs.clone(), den: &self.den * k };
        z.normalize();
        Ok(z)
    }

    pub fn mul_rational(&self, q: &BigRational) -> CycNum {
        let mut z = CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        z.normalize();
        z
    }

    /// Galois automorphism `ζ ↦ ζ^k` (`k` coprime to `N`).
    pub fn galois(&self, k: i64) -> CycNum {
        let n = self.modulus() as i64;
        let k = k.rem_euclid(n) as usize;
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| ((i * k) % n as usize, c.clone()));
        let mut z =
            CycNum { field: self.field.clone(), coeffs: fold_cyclic(&self.field, terms), den: self.den.clone() };
        z.normalize();
        z
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// The same number viewed in `Q(ζ_{n'})`, using `ζ_n = ζ_{n'}^{n'/n}`.
    pub fn embed(&self, n_new: u32) -> CycNum {
        let n = self.modulus();
        assert!(n_new.is_multiple_of(n), "cannot embed Q(ζ_{n}) into Q(ζ_{n_new})");
        if n_new == n {
            return self.clone();
        }
        let step = (n_new / n) as usize;
        let field = CycloField::get(n_new);
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| (i * step, c.clone()));
        let mut z = CycNum { coeffs: fold_cyclic(&field, terms), field, den: self.den.clone() };
        z.normalize();
        z
    }

    /// The number as an element of `Q(ζ_d)` if it lies in that subfield.
    pub fn retract(&self, d: u32) -> Option<CycNum> {
        let n = self.modulus();
        if !n.is_multiple_of(d) {
            return None;
        }
        // fixed by Gal(Q(ζ_n)/Q(ζ_d))
        for k in (1..n as i64).filter(|k| k.gcd(&(n as i64)) == 1 && k % d as i64 == 1 % d as i64) {
            if &self.galois(k) != self {
                return None;
            }
        }
        // solve Σ b_j ζ_n^{(n/d) j} = self over Q
        let sub = CycloField::get(d);
        let step = (n / d) as usize;
        let cols: Vec<Vec<BigRational>> = (0..sub.degree())
            .map(|j| {
                let v = CycNum::root_of_unity(n, (j * step) as i64);
                v.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
            })
            .collect();
        let rhs: Vec<BigRational> = self.coeffs.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect();
        let sol = solve_rational(&cols, &rhs)?;
        let den = sol.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let coeffs: Vec<BigInt> =
            sol.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
        let mut z = CycNum { field: sub, coeffs, den };
        z.normalize();
        Some(z)
    }

    /// Multiplicative inverse via the product of the non-trivial conjugates.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.modulus() as i64;
        let mut prod = CycNum::one(self.modulus());
        for k in 2..n.max(2) {
            if k.gcd(&n) == 1 {
                prod = &prod * &self.galois(k);
            }
        }
        let norm = (&prod * self).to_rational().expect("norm is rational");
        Ok(prod.mul_rational(&norm.recip()))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        self.assert_same_field(other);
        Ok(self * &other.inv()?)
    }

    /// Distinct values `σ_k(self)` for `k` in `ks`, in first-seen order.
    pub fn galois_orbit(&self, ks: &[i64]) -> Vec<CycNum> {
        let mut out: Vec<CycNum> = Vec::new();
        for &k in ks {
            let v = self.galois(k);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Minimal polynomial over Q, low degree first, monic.
    pub fn minimal_polynomial(&self) -> Vec<BigRational> {
        let n = self.modulus() as i64;
        let units: Vec<i64> = (1..=n.max(1)).filter(|k| k.gcd(&n) == 1).collect();
        let conjugates = self.galois_orbit(&units);
        let mut poly = vec![CycNum::one(self.modulus())];
        for c in conjugates {
            // poly · (x − c)
            let mut next = vec![CycNum::zero(self.modulus()); poly.len() + 1];
            for (i, a) in poly.iter().enumerate() {
                next[i + 1] = &next[i + 1] + a;
                next[i] = &next[i] - &(a * &c);
            }
            poly = next;
        }
        poly.iter().map(|c| c.to_rational().expect("minimal polynomial has rational coefficients")).collect()
    }

    /// `true` iff every power-basis coefficient is divisible by `m`, i.e. the
    /// number lies in `m·Z[ζ_N]`.
    pub fn divisible_by_int(&self, m: u64) -> Result<bool> {
        if !self.is_algebraic_integer() {
            return Err(Error::NotAlgebraicInteger);
        }
        let m = BigInt::from(m);
        Ok(self.coeffs.iter().all(|c| c.is_multiple_of(&m)))
    }

    /// Image under `Z[ζ_N] → GF(q)`, `ζ_N ↦ z`, where `z` has order `N` mod `q`.
    /// Returns `None` if the denominator vanishes mod `q`.
    pub fn reduce_mod(&self, q: u64, z: u64) -> Option<u64> {
        let qb = BigInt::from(q);
        let den = self.den.mod_floor(&qb).to_u64().unwrap();
        if den == 0 {
            return None;
        }
        let mut acc = 0u64;
        let mut zp = 1u64;
        for c in &self.coeffs {
            let cm = c.mod_floor(&qb).to_u64().unwrap();
            acc = (acc + mul_mod(cm, zp, q)) % q;
            zp = mul_mod(zp, z, q);
        }
        Some(mul_mod(acc, mod_pow(den, q - 2, q), q))
    }

    /// Total order used for canonical sorting: coefficients, then denominator.
    pub fn canonical_cmp(&self, other: &CycNum) -> Ordering {
        self.modulus()
            .cmp(&other.modulus())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
            .then_with(|| self.den.cmp(&other.den))
    }

    /// Text with `ζN^k` terms, e.g. `-1 - 2ζ5^2`.
    pub fn to_zeta_string(&self) -> String {
        let n = self.modulus();
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let s = match i {
                0 => a.to_string(),
                _ => {
                    let z = if i == 1 { format!("ζ{n}") } else { format!("ζ{n}^{i}") };
                    if a.is_one() {
                        z
                    } else {
                        format!("{a}{z}")
                    }
                }
            };
            terms.push((neg, s));
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (neg, s)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(s);
        }
        if self.den.is_one() {
            out
        } else if terms.len() == 1 {
            format!("{out}/{}", self.den)
        } else {
            format!("({out})/{}", self.den)
        }
    }
}

/// Accumulates `Σ c · x^k` into power-basis coordinates, reducing `k` mod `N`
/// and folding the tail through `x^k mod Φ_N`.
fn fold_cyclic<I>(field: &CycloField, terms: I) -> Vec<BigInt>
where
    I: IntoIterator<Item = (usize, BigInt)>,
{
    let n = field.modulus() as usize;
    let phi = field.degree();
    let mut cyc = vec![BigInt::zero(); n];
    for (k, c) in terms {
        if !c.is_zero() {
            cyc[k % n] += c;
        }
    }
    let mut out: Vec<BigInt> = cyc[..phi].to_vec();
    for k in phi..n {
        let c = &cyc[k];
        if c.is_zero() {
            continue;
        }
        for (o, &t) in out.iter_mut().zip(field.tail_power(k)) {
            if t != 0 {
                *o += c * t;
            }
        }
    }
    out
}

/// Solves `Σ_j x_j · cols[j] = rhs` exactly; `None` if inconsistent.
fn solve_rational(cols: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = rhs.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<BigRational>> =
        (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).chain([rhs[i].clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.den == other.den && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl std::hash::Hash for CycNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus().hash(state);
        self.coeffs.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_zeta_string())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_zeta_string())
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;

    fn add(self, rhs: &'a CycNum) -> CycNum {
        self.assert_same_field(rhs);
        let coeffs = if self.den == rhs.den {
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect()
        } else {
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a * &rhs.den + b * &self.den).collect()
        };
        let den = if self.den == rhs.den { self.den.clone() } else { &self.den * &rhs.den };
        let mut z = CycNum { field: self.field.clone(), coeffs, den };
        z.normalize();
        z
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;

    fn sub(self, rhs: &'a CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;

    fn neg(self) -> CycNum {
        CycNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;

    fn mul(self, rhs: &'a CycNum) -> CycNum {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero(self.modulus());
        }
        let n = self.modulus() as usize;
        let mut cyc = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    cyc[(i + j) % n] += a * b;
                }
            }
        }
        let terms = cyc.into_iter().enumerate();
        let mut z =
            CycNum { field: self.field.clone(), coeffs: fold_cyclic(&self.field, terms), den: &self.den * &rhs.den };
        z.normalize();
        z
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycNum", 3)?;
        s.serialize_field("N", &self.modulus())?;
        s.serialize_field("den", &JsonInt(&self.den))?;
        let coeffs: Vec<JsonInt> = self.coeffs.iter().map(JsonInt).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

/// Integers as JSON numbers when they fit in 64 bits, strings otherwise.
struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

/// Sum of a sequence of values in `Q(ζ_n)`.
pub fn sum<'a, I: IntoIterator<Item = &'a CycNum>>(n: u32, items: I) -> CycNum {
    items.into_iter().fold(CycNum::zero(n), |acc, x| &acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn root_sum_of_phi5() {
        let s = &(&z(5, 1) + &z(5, 2)) + &(&z(5, 3) + &z(5, 4));
        assert_eq!(s, CycNum::from_int(5, -1));
    }

    #[test]
    fn norm_of_one_plus_zeta3() {
        let one = CycNum::one(3);
        let a = &one + &z(3, 1);
        let b = &one + &z(3, 2);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn golden_ratio_identity() {
        // φ' = ζ5 + ζ5⁴ = (−1+√5)/2 satisfies φ'² = 1 − φ'
        let g = &z(5, 1) + &z(5, 4);
        let lhs = &g * &g;
        let rhs = &CycNum::one(5) - &g;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_is_compatible() {
        assert_eq!(CycNum::from_int(1, -1).embed(12), CycNum::from_int(12, -1));
        assert_eq!(z(3, 1).embed(6), z(6, 2));
        let g = &z(5, 1) + &z(5, 4);
        let mp = g.embed(15).minimal_polynomial();
        let expect: Vec<BigRational> = [-1, 1, 1].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        assert_eq!(mp, expect);
        assert_eq!(g.embed(15).retract(5), Some(g.clone()));
        assert_eq!(z(15, 1).retract(5), None);
    }

    #[test]
    fn conjugation() {
        let q = CycNum::from_rational(7, &BigRational::new(3.into(), 4.into()));
        assert_eq!(q.conj(), q);
        assert_eq!(z(7, 1).conj(), z(7, 6));
    }

    #[test]
    fn division() {
        let a = &CycNum::one(5) - &z(5, 1);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert!(CycNum::zero(5).inv().is_err());
        assert!(CycNum::one(3).div_int(0).is_err());
        let half = CycNum::one(4).div_int(2).unwrap();
        assert_eq!(half.den(), &BigInt::from(2));
        assert!(!half.is_algebraic_integer());
    }

    #[test]
    fn integer_divisibility() {
        let a = &CycNum::from_int(3, 10) + &z(3, 1).mul_int(5);
        assert!(a.divisible_by_int(5).unwrap());
        assert!(!CycNum::one(3).divisible_by_int(2).unwrap());
        let half = CycNum::one(3).div_int(2).unwrap();
        assert!(matches!(half.divisible_by_int(2), Err(Error::NotAlgebraicInteger)));
    }

    #[test]
    fn galois_orbits() {
        let q = CycNum::from_int(5, 7);
        assert_eq!(q.galois_orbit(&[1, 2, 3, 4]), vec![q.clone()]);
        assert_eq!(z(5, 1).galois_orbit(&[1, 4]), vec![z(5, 1), z(5, 4)]);
        let total = sum(5, &z(5, 1).galois_orbit(&[1, 2, 3, 4]));
        assert_eq!(total, CycNum::from_int(5, -1));
    }

    #[test]
    fn modular_reduction_is_a_homomorphism() {
        // q = 31, element of order 5 mod 31 is 2
        let a = &z(5, 1) + &CycNum::from_int(5, 3);
        let b = &z(5, 3) - &z(5, 2);
        let ra = a.reduce_mod(31, 2).unwrap();
        let rb = b.reduce_mod(31, 2).unwrap();
        assert_eq!((&a * &b).reduce_mod(31, 2).unwrap(), ra * rb % 31);
    }

    #[test]
    fn zeta_notation() {
        let v = &CycNum::from_int(5, -1) - &z(5, 2).mul_int(2);
        assert_eq!(v.to_zeta_string(), "-1 - 2ζ5^2");
        assert_eq!(CycNum::zero(3).to_zeta_string(), "0");
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_string(&z(3, 1)).unwrap();
        assert_eq!(v, r#"{"N":3,"den":1,"coeffs":[0,1]}"#);
    }
}
