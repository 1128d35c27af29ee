use num_traits::Zero;

use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::scalar::{rat, GaussianRational};

/// A conjugate-linear involution `v ↦ J · conj(v)` on `ℂⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealStructure {
    matrix: ExactMatrix,
}

impl RealStructure {
    /// Accepts `J` only if the induced map squares to the identity,
    /// i.e. `J · conj(J) = I`.
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        matrix.require_square()?;
        let sq = matrix.mul(&matrix.conj());
        let n = matrix.rows();
        let defect = sq.sub(&ExactMatrix::identity(n));
        if let Some((r, c)) =
            (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).find(|&(r, c)| !defect.get(r, c).is_zero())
        {
            return Err(Error::NotInvolution { residual: format!("entry ({r},{c}) = {}", defect.get(r, c)) });
        }
        Ok(Self { matrix })
    }

    /// Complex conjugation of coordinates.
    pub fn standard(n: usize) -> Self {
        Self { matrix: ExactMatrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        let conj: Vec<_> = v.iter().map(GaussianRational::conj).collect();
        self.matrix.apply(&conj)
    }

    pub fn is_fixed(&self, v: &[GaussianRational]) -> bool {
        self.apply(v) == v
    }
}

/// `v = fixed_re ⊗ 1 + fixed_im ⊗ i` with both parts fixed by the involution.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexifiedSplit {
    pub fixed_re: Vec<GaussianRational>,
    pub fixed_im: Vec<GaussianRational>,
}

impl ComplexifiedSplit {
    /// Inverse map: `v₁ ⊗ 1 + v₂ ⊗ i ↦ v₁ + i·v₂`.
    pub fn assemble(&self) -> Vec<GaussianRational> {
        let i = GaussianRational::i();
        self.fixed_re.iter().zip(&self.fixed_im).map(|(a, b)| a.clone() + i.clone() * b.clone()).collect()
    }

    /// Real structure on `V^{C₂} ⊗ ℂ`: conjugate the second factor.
    pub fn conjugate(&self) -> Self {
        Self { fixed_re: self.fixed_re.clone(), fixed_im: self.fixed_im.iter().map(|x| -x.clone()).collect() }
    }
}

/// `T(v) = ½(v + v̄) ⊗ 1 − (i/2)(v − v̄) ⊗ i`.
pub fn complexify_split(v: &[GaussianRational], real: &RealStructure) -> Result<ComplexifiedSplit> {
    if v.len() != real.dim() {
        return Err(Error::Dimension(format!("vector of length {} for a {}-dimensional space", v.len(), real.dim())));
    }
    let bar = real.apply(v);
    let half = GaussianRational::real(rat(1, 2));
    let minus_half_i = GaussianRational::new(num_traits::Zero::zero(), rat(-1, 2));
    let fixed_re = v.iter().zip(&bar).map(|(a, b)| half.clone() * (a.clone() + b.clone())).collect();
    let fixed_im = v.iter().zip(&bar).map(|(a, b)| minus_half_i.clone() * (a.clone() - b.clone())).collect();
    Ok(ComplexifiedSplit { fixed_re, fixed_im })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(int(re), int(im))
    }

    #[test]
    fn fixed_vector_splits_trivially() {
        let s = RealStructure::standard(2);
        let v = vec![g(3, 0), g(-1, 0)];
        let split = complexify_split(&v, &s).unwrap();
        assert_eq!(split.fixed_re, v);
        assert!(split.fixed_im.iter().all(Zero::is_zero));
    }

    #[test]
    fn imaginary_unit_on_c1() {
        let split = complexify_split(&[g(0, 1)], &RealStructure::standard(1)).unwrap();
        assert_eq!(split.fixed_re, vec![g(0, 0)]);
        assert_eq!(split.fixed_im, vec![g(1, 0)]);
    }

    #[test]
    fn twisted_involution_round_trip() {
        // J = [[0, 1], [1, 0]]: swap-and-conjugate
        let j = ExactMatrix::from_rows(vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(0, 0)]]).unwrap();
        let s = RealStructure::new(j).unwrap();
        let v = vec![g(2, 5), g(-1, 3)];
        let split = complexify_split(&v, &s).unwrap();
        assert!(s.is_fixed(&split.fixed_re) && s.is_fixed(&split.fixed_im));
        assert_eq!(split.assemble(), v);
        assert_eq!(complexify_split(&s.apply(&v), &s).unwrap(), split.conjugate());
    }

    #[test]
    fn rejects_non_involution() {
        let j = ExactMatrix::from_rows(vec![vec![g(2, 0)]]).unwrap();
        assert!(matches!(RealStructure::new(j), Err(Error::NotInvolution { .. })));
        // i·conj is an involution on ℂ¹: (i)(conj i) = 1
        assert!(RealStructure::new(ExactMatrix::from_rows(vec![vec![g(0, 1)]]).unwrap()).is_ok());
    }
}
