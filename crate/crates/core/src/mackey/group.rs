//! Finitely generated abelian groups `ℤ^g / im(R)` and integer maps
//! between them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cap on generators and relations per group.
pub const MAX_GENERATORS: usize = 32;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<BigInt>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("expected a {rows}x{cols} integer matrix")));
        }
        Ok(Self { rows, cols, data: entries.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.iter().flat_map(|x| x.iter().map(|&v| BigInt::from(v))).collect() }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n * n).map(|k| if k / n == k % n { BigInt::one() } else { BigInt::zero() }).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                *out.get_mut(r, c) = (0..self.cols).map(|k| self.get(r, k) * o.get(k, c)).sum();
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        Ok(Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&Self { rows: o.rows, cols: o.cols, data: o.data.iter().map(|x| -x).collect() })
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows).map(|r| (0..self.cols).map(|k| self.get(r, k) * &v[k]).sum()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += k · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * k;
            *self.get_mut(dst, c) += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * k;
            *self.get_mut(r, dst) += v;
        }
    }
}

/// `L · A · R = D` with `L`, `R` unimodular and `D` diagonal with
/// nonnegative entries `d_1 | d_2 | ⋯`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut d = a.clone();
    let mut left = IntMatrix::identity(a.rows);
    let (m, n) = (a.rows, a.cols);
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero magnitude in the remaining block
        let pivot = (t..m)
            .flat_map(|r| (t..n).map(move |c| (r, c)))
            .filter(|&(r, c)| !d.get(r, c).is_zero())
            .min_by(|&(r1, c1), &(r2, c2)| d.get(r1, c1).abs().cmp(&d.get(r2, c2).abs()));
        let Some((pr, pc)) = pivot else { break };
        d.swap_rows(t, pr);
        left.swap_rows(t, pr);
        d.swap_cols(t, pc);

        let mut clean = true;
        for r in t + 1..m {
            if !d.get(r, t).is_zero() {
                let q = -d.get(r, t).div_floor(d.get(t, t));
                d.add_row(r, t, &q);
                left.add_row(r, t, &q);
                clean &= d.get(r, t).is_zero();
            }
        }
        for c in t + 1..n {
            if !d.get(t, c).is_zero() {
                let q = -d.get(t, c).div_floor(d.get(t, t));
                d.add_col(c, t, &q);
                clean &= d.get(t, c).is_zero();
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into the pivot row and retry
        let p = d.get(t, t).clone();
        if let Some(r) = (t + 1..m).find(|&r| (t + 1..n).any(|c| !(d.get(r, c) % &p).is_zero())) {
            d.add_row(t, r, &BigInt::one());
            left.add_row(t, r, &BigInt::one());
            continue;
        }
        if d.get(t, t).is_negative() {
            let neg = -BigInt::one();
            for c in 0..n {
                *d.get_mut(t, c) *= &neg;
            }
            for c in 0..m {
                *left.get_mut(t, c) *= &neg;
            }
        }
        t += 1;
    }
    let diagonal = (0..m.min(n)).map(|i| d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect();
    SmithForm { left, diagonal }
}

/// `ℤ^generators / ⟨relations⟩`.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    generators: usize,
    /// Relations as columns.
    relations: IntMatrix,
    smith: SmithForm,
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}

impl AbelianGroup {
    /// `relations[j]` is a vector of length `generators` that is set to 0.
    pub fn new(generators: usize, relations: &[Vec<BigInt>]) -> Result<Self> {
        if generators > MAX_GENERATORS || relations.len() > MAX_GENERATORS {
            return Err(Error::OutOfRange(format!("at most {MAX_GENERATORS} generators and relations")));
        }
        let cols: Vec<Vec<BigInt>> = relations.to_vec();
        if cols.iter().any(|r| r.len() != generators) {
            return Err(Error::Dimension(format!("relation length differs from {generators} generators")));
        }
        let rel = IntMatrix {
            rows: generators,
            cols: cols.len(),
            data: (0..generators).flat_map(|r| cols.iter().map(move |c| c[r].clone())).collect(),
        };
        let smith = smith_normal_form(&rel);
        Ok(Self { generators, relations: rel, smith })
    }

    /// `ℤ^free ⊕ ℤ/t_1 ⊕ ⋯`.
    pub fn from_torsion(free: usize, torsion: &[i64]) -> Result<Self> {
        let g = free.saturating_add(torsion.len());
        if g > MAX_GENERATORS {
            return Err(Error::OutOfRange(format!("at most {MAX_GENERATORS} generators")));
        }
        let rels: Vec<Vec<BigInt>> = torsion
            .iter()
            .enumerate()
            .map(|(i, &t)| (0..g).map(|k| if k == free + i { BigInt::from(t) } else { BigInt::zero() }).collect())
            .collect();
        Self::new(g, &rels)
    }

    pub fn free(rank: usize) -> Self {
        Self::from_torsion(rank, &[]).expect("rank within bounds")
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Whether `x ∈ ⟨relations⟩`.
    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        let y = self.smith.left.apply(x);
        y.iter().enumerate().all(|(i, v)| match self.smith.diagonal.get(i) {
            Some(d) => (v % d).is_zero(),
            None => v.is_zero(),
        })
    }

    pub fn equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&diff)
    }

    /// Invariant factors above 1, and the free rank.
    pub fn structure(&self) -> (usize, Vec<BigInt>) {
        let torsion = self.smith.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
        (self.generators - self.smith.diagonal.len(), torsion)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (free, torsion) = self.structure();
        let mut parts: Vec<String> = Vec::new();
        match free {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Checks that `f: A → B` respects relations: `f(r) = 0` in `B` for each
/// relation `r` of `A`.
pub fn is_well_defined(f: &IntMatrix, a: &AbelianGroup, b: &AbelianGroup) -> Result<bool> {
    if f.rows != b.generators || f.cols != a.generators {
        return Err(Error::Dimension(format!(
            "map is {}x{} but groups have {} -> {} generators",
            f.rows, f.cols, a.generators, b.generators
        )));
    }
    let images = f.mul(&a.relations)?;
    Ok((0..images.cols).all(|c| b.is_zero(&images.column(c))))
}

/// `{"free": r, "torsion": [d, …]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TorsionJson {
    pub free: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

/// `{"generators": g, "relations": [[…], …]}`, each relation of length `g`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RelationsJson {
    pub generators: usize,
    pub relations: Vec<Vec<i64>>,
}

/// JSON group: a torsion list or an explicit relation list.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum GroupJson {
    Torsion(TorsionJson),
    Relations(RelationsJson),
}

impl GroupJson {
    pub fn to_group(&self) -> Result<AbelianGroup> {
        match self {
            GroupJson::Torsion(t) => AbelianGroup::from_torsion(t.free, &t.torsion),
            GroupJson::Relations(r) => {
                let rels: Vec<Vec<BigInt>> =
                    r.relations.iter().map(|x| x.iter().map(|&v| BigInt::from(v)).collect()).collect();
                AbelianGroup::new(r.generators, &rels)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&t| BigInt::from(t)).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, v(&[2, 6, 12]));
        let b = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_normal_form(&b).diagonal, v(&[1, 6]));
    }

    #[test]
    fn membership() {
        // Z^2 / <(2, 4)> ≅ Z ⊕ Z/2
        let g = AbelianGroup::new(2, &[v(&[2, 4])]).unwrap();
        assert_eq!(g.to_string(), "Z + Z/2");
        assert!(g.is_zero(&v(&[2, 4])));
        assert!(g.is_zero(&v(&[-4, -8])));
        assert!(!g.is_zero(&v(&[1, 2])));
        assert!(!g.is_zero(&v(&[2, 0])));
        let c = AbelianGroup::from_torsion(0, &[4]).unwrap();
        assert!(c.equal(&v(&[5]), &v(&[1])));
        assert_eq!(AbelianGroup::from_torsion(0, &[1]).unwrap().to_string(), "0");
    }

    #[test]
    fn well_definedness() {
        let z2 = AbelianGroup::from_torsion(0, &[2]).unwrap();
        let z4 = AbelianGroup::from_torsion(0, &[4]).unwrap();
        assert!(is_well_defined(&IntMatrix::from_i64(&[&[2]]), &z2, &z4).unwrap());
        assert!(!is_well_defined(&IntMatrix::from_i64(&[&[1]]), &z2, &z4).unwrap());
        assert!(is_well_defined(&IntMatrix::from_i64(&[&[1]]), &z4, &z2).unwrap());
        assert!(is_well_defined(&IntMatrix::from_i64(&[&[1, 1]]), &z4, &z2).is_err());
    }
}
