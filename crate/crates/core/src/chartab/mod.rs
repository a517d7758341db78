//! Ordinary character tables and the class-function calculus.

mod classfn;
pub mod dixon;

use std::fmt::Write as _;
use std::sync::Arc;

pub use classfn::{same_group, ClassFn};
pub use dixon::{admissible_prime, class_matrices, dixon_table, dixon_table_with_prime};

use crate::cyclo::{sum, CycNum};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::par;

/// The irreducible characters of a group, rows in canonical order.
#[derive(Clone, Debug)]
pub struct CharTable {
    group: Arc<Group>,
    modulus: u32,
    prime: u64,
    rows: Vec<ClassFn>,
}

impl CharTable {
    pub(crate) fn from_rows(group: Arc<Group>, modulus: u32, prime: u64, rows: Vec<ClassFn>) -> Self {
        CharTable { group, modulus, prime, rows }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The prime `q` used for the modular eigenvector computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn rows(&self) -> &[ClassFn] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFn {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.degree().expect("degree is an integer") as u64).collect()
    }

    /// Index of an irreducible character equal to `f`.
    pub fn index_of(&self, f: &ClassFn) -> Option<usize> {
        self.rows.iter().position(|r| r == f)
    }

    /// Inner products of `f` with every irreducible character.
    pub fn decompose(&self, f: &ClassFn) -> Result<Vec<CycNum>> {
        par::map(&self.rows, |r| f.inner_product(r)).into_iter().collect()
    }

    /// Integer multiplicities; errors if `f` is not a generalized character.
    pub fn decompose_int(&self, f: &ClassFn) -> Result<Vec<i64>> {
        self.decompose(f)?
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.to_i64().ok_or_else(|| Error::NotGeneralized(format!("coefficient at χ_{i} is {c}"))))
            .collect()
    }

    /// `Σ coeffs[i]·χ_i`
    pub fn combine(&self, coeffs: &[i64]) -> ClassFn {
        let mut acc = ClassFn::zero(&self.group, self.modulus);
        for (c, r) in coeffs.iter().zip(&self.rows) {
            if *c != 0 {
                acc = acc.add(&r.scale_int(*c)).expect("same group");
            }
        }
        acc
    }

    /// Both orthogonality relations and `Σ χ(1)² = |G|`, exactly.
    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        let r = g.num_classes();
        if self.rows.len() != r {
            return Err(Error::LiftVerificationFailed(format!("{} rows for {r} classes", self.rows.len())));
        }
        if !self.rows[0].values().iter().all(CycNum::is_one) {
            return Err(Error::LiftVerificationFailed("first row is not trivial".into()));
        }
        let deg_sq: u64 = self.degrees().iter().map(|d| d * d).sum();
        if deg_sq != g.order() as u64 {
            return Err(Error::LiftVerificationFailed(format!("Σχ(1)² = {deg_sq} ≠ {}", g.order())));
        }
        let n = self.modulus;
        let conj: Vec<ClassFn> = self.rows.iter().map(ClassFn::conj).collect();
        let sizes: Vec<i64> = g.classes().iter().map(|c| c.size as i64).collect();
        // row orthogonality
        let row_ok = par::all_range(r * r, |ij| {
            let (i, j) = (ij / r, ij % r);
            if j < i {
                return true;
            }
            let terms: Vec<CycNum> =
                (0..r).map(|k| (self.rows[i].value(k) * conj[j].value(k)).mul_int(sizes[k])).collect();
            let s = sum(n, &terms);
            let expected = if i == j { g.order() as i64 } else { 0 };
            s == CycNum::from_int(n, expected)
        });
        if !row_ok {
            return Err(Error::LiftVerificationFailed("row orthogonality fails".into()));
        }
        // column orthogonality
        let col_ok = par::all_range(r * r, |kl| {
            let (k, l) = (kl / r, kl % r);
            if l < k {
                return true;
            }
            let terms: Vec<CycNum> = (0..r).map(|i| self.rows[i].value(k) * conj[i].value(l)).collect();
            let s = sum(n, &terms);
            let expected = if k == l { g.classes()[k].centralizer_order as i64 } else { 0 };
            s == CycNum::from_int(n, expected)
        });
        if !col_ok {
            return Err(Error::LiftVerificationFailed("column orthogonality fails".into()));
        }
        Ok(())
    }

    /// Tab-separated cells, each a serialized cyclotomic number.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.group.classes().iter().map(|c| c.rep.to_cycle_string()).collect();
        let _ = writeln!(out, "char\t{}", header.join("\t"));
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> =
                row.values().iter().map(|v| serde_json::to_string(v).expect("serializable")).collect();
            let _ = writeln!(out, "{i}\t{}", cells.join("\t"));
        }
        out
    }

    /// Human-readable table with ζ-notation.
    pub fn to_text(&self) -> String {
        let g = &self.group;
        let mut cols: Vec<Vec<String>> = Vec::new();
        let mut first = vec!["".to_string(), "order".into(), "size".into()];
        first.extend((0..self.rows.len()).map(|i| format!("χ{i}")));
        cols.push(first);
        for (k, c) in g.classes().iter().enumerate() {
            let mut col = vec![format!("{k}"), c.element_order.to_string(), c.size.to_string()];
            col.extend(self.rows.iter().map(|r| r.value(k).to_zeta_string()));
            cols.push(col);
        }
        let widths: Vec<usize> = cols.iter().map(|c| c.iter().map(|s| s.chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for line in 0..cols[0].len() {
            let cells: Vec<String> =
                cols.iter().zip(&widths).map(|(c, w)| format!("{:>w$}", c[line], w = *w)).collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn a5() -> Arc<Group> {
        let a = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let b = Perm::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        Arc::new(Group::new(5, &[a, b]).unwrap())
    }

    #[test]
    fn a5_degrees_and_prime() {
        let g = a5();
        let t = dixon_table(&g, 30).unwrap();
        assert_eq!(t.prime(), 31);
        assert_eq!(t.degrees(), vec![1, 3, 3, 4, 5]);
    }

    #[test]
    fn a5_conjugation_matches_inverse_class() {
        let g = a5();
        let t = dixon_table(&g, 30).unwrap();
        for row in t.rows() {
            for k in 0..g.num_classes() {
                assert_eq!(row.value(k).conj(), *row.value(g.inverse_class(k)));
            }
        }
    }

    #[test]
    fn a5_restriction_to_c5() {
        let g = a5();
        let t = dixon_table(&g, 30).unwrap();
        let p = g.sylow_subgroup(5).unwrap();
        let c5 = Arc::new(Group::from_subgroup(&p));
        let chi4 = t.row(3);
        let res = chi4.restrict(&c5);
        assert_eq!(res.inner_product(&res).unwrap(), CycNum::from_int(30, 4));
        let vals: Vec<i64> = res.values().iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(vals, vec![4, -1, -1, -1, -1]);
    }

    #[test]
    fn regular_character_decomposes_by_degree() {
        let g = a5();
        let t = dixon_table(&g, 30).unwrap();
        let degs: Vec<i64> = t.degrees().iter().map(|&d| d as i64).collect();
        let reg = t.combine(&degs);
        assert_eq!(reg.value(0).to_i64(), Some(60));
        assert!(reg.values()[1..].iter().all(CycNum::is_zero));
        assert_eq!(t.decompose_int(&reg).unwrap(), degs);
    }

    #[test]
    fn text_and_tsv_render() {
        let t = dixon_table(&a5(), 30).unwrap();
        assert_eq!(t.to_tsv().lines().count(), 6);
        assert!(t.to_text().contains("ζ"));
    }
}
