//! The two generator matrices acting on the 9 chosen branch weights, their
//! composite blocks, and the weight vectors of the curve sequence.

use num_bigint::BigInt;
use thiserror::Error;

use crate::matrix::{basis_vector, Matrix9};

/// The two mapping classes whose weight actions generate everything here:
/// the taffy puller supported in the four-punctured subsurface, and its
/// composite with the rotation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    Taffy,
    TaffyRot,
}

/// Weight action of the taffy puller (identity on branches 1–7; the
/// (8,9) block is [[1,1],[1,2]] with spectral radius φ²).
const TAFFY_ROWS: [[i64; 9]; 9] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 0, 1, 1, 2, 0, 1, 2],
];

/// Weight action of taffy∘rotation (permutation-like).
const TAFFY_ROT_ROWS: [[i64; 9]; 9] = [
    [0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0],
];

pub fn generator_matrix(g: Generator) -> Matrix9<BigInt> {
    match g {
        Generator::Taffy => Matrix9::from_rows_i64(TAFFY_ROWS),
        Generator::TaffyRot => Matrix9::from_rows_i64(TAFFY_ROT_ROWS),
    }
}

/// Weight action of φ_r = taffy^{r-1} ∘ (taffy∘rotation): A^{r-1}·M.
pub fn phi_matrix(r: u64) -> Matrix9<BigInt> {
    assert!(r >= 1, "phi_matrix wants r >= 1");
    generator_matrix(Generator::Taffy)
        .pow(r - 1)
        .mul(&generator_matrix(Generator::TaffyRot))
}

/// Block A^{a_lo}·M·A^{a_hi}·M (the action of two consecutive φ's).
pub fn block_p(a_lo: u64, a_hi: u64) -> Matrix9<BigInt> {
    let a = generator_matrix(Generator::Taffy);
    let m = generator_matrix(Generator::TaffyRot);
    a.pow(a_lo).mul(&m).mul(&a.pow(a_hi)).mul(&m)
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SeqError {
    #[error("gap sequence must start with r_1 = 1, r_2 = 2")]
    BadPrefix,
    #[error("gap sequence differences must be strictly increasing (violated at index {0})")]
    NonIncreasingDifferences(usize),
    #[error("gap sequence too short: need index {needed}, have {have}")]
    TooShort { needed: usize, have: usize },
}

/// The sequence {r_i} with r_1 = 1, r_2 = 2 and strictly increasing
/// differences; a_i = r_i - 1 are the taffy exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSequence {
    r: Vec<u64>,
}

impl GapSequence {
    /// Default sequence r_n = 1 + n(n-1)/2: the slowest growth satisfying
    /// the constraints (differences 1, 2, 3, ...).
    pub fn quadratic(len: usize) -> Self {
        let r = (1..=len as u64).map(|n| 1 + n * (n - 1) / 2).collect();
        GapSequence { r }
    }

    pub fn from_list(r: Vec<u64>) -> Result<Self, SeqError> {
        if r.len() < 2 || r[0] != 1 || r[1] != 2 {
            return Err(SeqError::BadPrefix);
        }
        let mut prev_diff = 0u64;
        for i in 1..r.len() {
            let diff = r[i].checked_sub(r[i - 1]).ok_or(SeqError::NonIncreasingDifferences(i))?;
            if diff <= prev_diff {
                return Err(SeqError::NonIncreasingDifferences(i));
            }
            prev_diff = diff;
        }
        Ok(GapSequence { r })
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// r_i with 1-based index, as in the construction.
    pub fn r(&self, i: usize) -> Result<u64, SeqError> {
        self.r
            .get(i - 1)
            .copied()
            .ok_or(SeqError::TooShort { needed: i, have: self.r.len() })
    }

    /// a_i = r_i - 1.
    pub fn a(&self, i: usize) -> Result<u64, SeqError> {
        Ok(self.r(i)? - 1)
    }

    /// The normalized block gap a_{i+1} - a_i.
    pub fn gap(&self, i: usize) -> Result<u64, SeqError> {
        Ok(self.a(i + 1)? - self.a(i)?)
    }

    /// P_i = A^{a_i}·M·A^{a_{i+1}}·M.
    pub fn block(&self, i: usize) -> Result<Matrix9<BigInt>, SeqError> {
        Ok(block_p(self.a(i)?, self.a(i + 1)?))
    }
}

/// Exact weight vector of the n-th curve in the sequence: v_0 = e_9,
/// v_1 = e_2, v_{2n} = P_1 P_3 … P_{2n-1}(v_0), v_{2n+1} = P_1 … P_{2n-1}(v_1).
pub fn gamma_vector(n: usize, seq: &GapSequence) -> Result<Vec<BigInt>, SeqError> {
    let (mut v, top) = if n % 2 == 0 {
        (basis_vector::<BigInt>(9), n)
    } else {
        (basis_vector::<BigInt>(2), n - 1)
    };
    // Apply P_{2k-1} right-to-left: k = top/2 .. 1.
    let mut k = top / 2;
    while k >= 1 {
        let p = seq.block(2 * k - 1)?;
        v = p.mat_vec(&v);
        k -= 1;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactnum::Rational;
    use num_traits::{One, Signed, Zero};

    fn e(k: usize) -> Vec<BigInt> {
        basis_vector::<BigInt>(k)
    }

    #[test]
    fn taffy_matrix_shape() {
        let a = generator_matrix(Generator::Taffy);
        for r in 0..7 {
            for c in 0..9 {
                let expect = if r == c { 1 } else { 0 };
                assert_eq!(a.at(r, c), &BigInt::from(expect));
            }
        }
        let row8: Vec<i64> = (0..9).map(|c| TAFFY_ROWS[7][c]).collect();
        assert_eq!(row8, vec![0, 0, 0, 0, 0, 1, 1, 1, 1]);
        let row9: Vec<i64> = (0..9).map(|c| TAFFY_ROWS[8][c]).collect();
        assert_eq!(row9, vec![0, 0, 0, 1, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn taffy_rot_matrix_shape() {
        let m = generator_matrix(Generator::TaffyRot);
        // Row 5 = (0,0,0,1,1,0,0,0,0); all other rows are unit vectors.
        assert_eq!(m.at(4, 3), &BigInt::one());
        assert_eq!(m.at(4, 4), &BigInt::one());
        assert_eq!(m.at(1, 8), &BigInt::one(), "entry (2,9) = 1");
        for r in 0..9 {
            let s: BigInt = (0..9).map(|c| m.at(r, c).clone()).sum();
            let expect = if r == 4 || r == 6 { 2 } else { 1 };
            assert_eq!(s, BigInt::from(expect), "row {r}");
        }
    }

    #[test]
    fn taffy_determinant_is_unit() {
        let det = generator_matrix(Generator::Taffy).determinant();
        assert_eq!(det.abs(), Rational::one());
        // Oracle: the determinant reduces to the 2×2 block [[1,1],[1,2]]
        // on coordinates (8,9), whose determinant is 1.
        assert_eq!(1i64 * 2 - 1 * 1, 1);
        // The rotation composite is invertible over the rationals too.
        assert!(!generator_matrix(Generator::TaffyRot).determinant().is_zero());
    }

    #[test]
    fn phi_matrix_sends_e9_to_e2() {
        for r in 1..=20 {
            assert_eq!(phi_matrix(r).mat_vec(&e(9)), e(2), "r = {r}");
        }
        assert_eq!(phi_matrix(1), generator_matrix(Generator::TaffyRot));
    }

    #[test]
    fn taffy_fixes_e2() {
        let a = generator_matrix(Generator::Taffy);
        assert_eq!(a.mat_vec(&e(2)), e(2));
        // Note: e_4 is NOT fixed; A·e_4 = e_4 + e_9 per the displayed row 9.
        let mut e4_plus_e9 = e(4);
        e4_plus_e9[8] = BigInt::one();
        assert_eq!(a.mat_vec(&e(4)), e4_plus_e9);
    }

    #[test]
    fn block_p_examples() {
        let a = generator_matrix(Generator::Taffy);
        let m = generator_matrix(Generator::TaffyRot);
        assert_eq!(block_p(0, 1), m.mul(&a).mul(&m));
        assert_eq!(block_p(0, 1).mat_vec(&e(9)), e(4));
        // Entries of any block are nonnegative integers.
        let b = block_p(4, 9);
        for r in 0..9 {
            for c in 0..9 {
                assert!(!b.at(r, c).is_negative());
            }
        }
    }

    #[test]
    fn quadratic_sequence_is_valid() {
        let s = GapSequence::quadratic(12);
        assert_eq!(s.r(1).unwrap(), 1);
        assert_eq!(s.r(2).unwrap(), 2);
        assert_eq!(s.r(3).unwrap(), 4);
        assert_eq!(s.r(5).unwrap(), 11);
        assert!(GapSequence::from_list(s.r.clone()).is_ok());
    }

    #[test]
    fn bad_sequences_rejected() {
        assert_eq!(GapSequence::from_list(vec![1, 3]).unwrap_err(), SeqError::BadPrefix);
        // Constant gaps: differences not strictly increasing.
        assert!(matches!(
            GapSequence::from_list(vec![1, 2, 3, 4]).unwrap_err(),
            SeqError::NonIncreasingDifferences(_)
        ));
    }

    #[test]
    fn gamma_vector_anchors() {
        let s = GapSequence::quadratic(12);
        assert_eq!(gamma_vector(0, &s).unwrap(), e(9));
        assert_eq!(gamma_vector(1, &s).unwrap(), e(2));
        // Oracle: v_2 = P_1(v_0) = block_p(0,1)·e_9 = e_4.
        assert_eq!(gamma_vector(2, &s).unwrap(), e(4));
    }

    #[test]
    fn gamma_vector_association_order_is_irrelevant() {
        let s = GapSequence::quadratic(12);
        // Left-to-right accumulation of the matrix product gives the same
        // exact vector as the right-to-left vector recursion.
        let n = 8;
        let mut prod = Matrix9::<BigInt>::identity();
        let mut k = 1;
        while 2 * k - 1 <= n - 1 {
            prod = prod.mul(&s.block(2 * k - 1).unwrap());
            k += 1;
        }
        assert_eq!(prod.mat_vec(&e(9)), gamma_vector(n, &s).unwrap());
    }

    #[test]
    fn gamma_vectors_nonnegative_nonzero() {
        let s = GapSequence::quadratic(14);
        for n in 0..=9 {
            let v = gamma_vector(n, &s).unwrap();
            assert!(v.iter().all(|x| !x.is_negative()));
            assert!(v.iter().any(|x| !x.is_zero()));
        }
    }

    #[test]
    fn sequence_too_short_is_reported() {
        let s = GapSequence::quadratic(3);
        assert!(matches!(gamma_vector(9, &s), Err(SeqError::TooShort { .. })));
    }
}
