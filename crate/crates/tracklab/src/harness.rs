//! Generic convergence harness for products of near-idempotent factors
//! S_n = (B_1 + δ_1)…(B_n + δ_n) in a submultiplicative matrix norm.
//!
//! The bundled instance is the normalized-block family conjugated into a
//! basis where the limit matrix becomes the elementary idempotent E_11 (so
//! its Frobenius norm is exactly 1); the harness itself only assumes the
//! chain property B_{l+1}·B_l = B_{l+1} shared by any constant idempotent
//! family.

use exactnum::{ApproxScalar, Dyadic, GoldenNumber};

use crate::matrix::Matrix9;

pub struct Factor {
    pub base: Matrix9<ApproxScalar>,
    pub perturbation: Matrix9<ApproxScalar>,
}

pub struct ConvergenceReport {
    /// ‖S_n − S_last‖ for each prefix n.
    pub cauchy_differences: Vec<ApproxScalar>,
    /// Theoretical tail bound for the same differences.
    pub tail_bounds: Vec<ApproxScalar>,
    /// Factors whose base norm enclosure excludes 1.
    pub norm_violations: Vec<usize>,
    /// Partial sums of the perturbation norms.
    pub perturbation_partial_sums: Vec<ApproxScalar>,
    /// Set when the perturbation norms look non-summable on this prefix.
    pub non_summable_flag: bool,
}

/// Runs the harness on an explicit factor family.
pub fn product_convergence_harness(factors: &[Factor], prec: u32) -> ConvergenceReport {
    assert!(!factors.is_empty());
    let one = ApproxScalar::one(prec);

    let mut norm_violations = Vec::new();
    for (idx, f) in factors.iter().enumerate() {
        let n = f.base.frobenius_norm();
        if !n.possibly_eq(&one) {
            norm_violations.push(idx);
        }
    }

    // Partial products.
    let mut partials: Vec<Matrix9<ApproxScalar>> = Vec::with_capacity(factors.len());
    let mut acc: Option<Matrix9<ApproxScalar>> = None;
    for f in factors {
        let term = f.base.add(&f.perturbation);
        acc = Some(match acc {
            None => term,
            Some(a) => a.mul(&term),
        });
        partials.push(acc.clone().unwrap());
    }

    // Perturbation norms and partial sums.
    let delta_norms: Vec<ApproxScalar> = factors.iter().map(|f| f.perturbation.frobenius_norm()).collect();
    let mut sums = Vec::with_capacity(delta_norms.len());
    let mut s = ApproxScalar::zero(prec);
    for d in &delta_norms {
        s = s.add(d);
        sums.push(s.clone());
    }

    // Cauchy differences against the final partial product.
    let last = partials.last().unwrap();
    let cauchy: Vec<ApproxScalar> = partials
        .iter()
        .map(|p| p.sub(last).frobenius_norm())
        .collect();

    // Tail bound: ‖S_m − S_n‖ ≤ P·(1 + max‖B−I‖)·Σ_{l>n}‖δ_l‖ where
    // P = Π(1+‖δ_l‖) bounds every ‖S_j‖ (valid when ‖B_l‖ = 1 and the bases
    // form an idempotent chain; see the module docs).
    let mut p_all = one.clone();
    for d in &delta_norms {
        p_all = p_all.mul(&one.add(d));
    }
    let ident = Matrix9::<ApproxScalar>::identity();
    let mut b_minus_i_max = ApproxScalar::zero(prec);
    for f in factors {
        let n = f.base.sub(&ident).frobenius_norm();
        b_minus_i_max = crate::fitting::interval_max(&b_minus_i_max, &n);
    }
    // For the prefix S_{j+1}, the telescoping uses every δ_l with l ≥ j+1
    // (1-based), i.e. the tail starting at 0-based index j.
    let total = sums.last().unwrap().clone();
    let tail_bounds: Vec<ApproxScalar> = (0..sums.len())
        .map(|j| {
            let consumed = if j == 0 { ApproxScalar::zero(prec) } else { sums[j - 1].clone() };
            let tail_sum = total.sub(&consumed);
            // Clamp at zero: outward rounding can leave a sliver below 0.
            let tail_sum = ApproxScalar::from_interval(
                Dyadic::max(&tail_sum.lo, &Dyadic::zero()),
                Dyadic::max(&tail_sum.hi, &Dyadic::zero()),
                prec,
            );
            p_all.mul(&one.add(&b_minus_i_max)).mul(&tail_sum)
        })
        .collect();

    // Non-summability check: the increments over successive dyadic windows
    // fail to shrink (a harmonic-like family adds ≈ const per doubling).
    let non_summable_flag = detect_non_summable(&sums, prec);

    ConvergenceReport {
        cauchy_differences: cauchy,
        tail_bounds,
        norm_violations,
        perturbation_partial_sums: sums,
        non_summable_flag,
    }
}

fn detect_non_summable(sums: &[ApproxScalar], prec: u32) -> bool {
    let n = sums.len();
    if n < 8 {
        return false;
    }
    let window = |a: usize, b: usize| sums[b].sub(&sums[a]);
    let last = window(n / 2 - 1, n - 1);
    let prev = window(n / 4 - 1, n / 2 - 1);
    // Growth per doubling window stays at ≥ 80% of the previous window and
    // above an absolute floor: the partial sums are still marching.
    let floor = ApproxScalar::from_rational(&exactnum::ratio(1, 100), prec);
    let eighty_percent = prev.mul(&ApproxScalar::from_rational(&exactnum::ratio(4, 5), prec));
    floor.certainly_lt(&last) && (eighty_percent.certainly_lt(&last) || eighty_percent.possibly_eq(&last))
}

/// The bundled instance: the normalized-block family in a basis adapted to
/// the limit matrix. Returns (renormed bases, renormed perturbations) =
/// (U⁻¹LU, U⁻¹ε_iU) where U's first column spans the range of L, the rest
/// its kernel, so U⁻¹LU = E_11 with Frobenius norm exactly 1.
pub fn renormed_block_family(
    indices: &[usize],
    seq: &crate::traintrack::GapSequence,
    prec: u32,
) -> Result<Vec<Factor>, crate::traintrack::SeqError> {
    let (u, u_inv) = limit_adapted_basis();
    let l = crate::asymptotics::limit_matrix();
    let l_renormed = u_inv.mul(&l).mul(&u);
    let mut out = Vec::new();
    for &i in indices {
        let eps = crate::asymptotics::epsilon_matrix(i, seq)?;
        let eps_renormed = u_inv.mul(&eps).mul(&u);
        out.push(Factor {
            base: l_renormed.to_approx(prec),
            perturbation: eps_renormed.to_approx(prec),
        });
    }
    Ok(out)
}

/// Basis change taking the limit matrix to E_11: first basis vector is L's
/// range direction (column 2 of L), the others complete it from ker L.
pub fn limit_adapted_basis() -> (Matrix9<GoldenNumber>, Matrix9<GoldenNumber>) {
    let l = crate::asymptotics::limit_matrix();
    // Range direction u = L e_2 (nonzero in rows 2,3).
    let u_vec = l.column(1);
    // Kernel basis: solve row2·x = 0 (row3 is proportional to row2, so one
    // linear functional cuts the kernel). Free coordinates: all but one of
    // the support columns plus the zero columns.
    // row2 = (q1, q2, q3, q4, q2, 0, q4, 0, 0); pick coordinate 2 (0-based 1)
    // as pivot: x_1 = -(q1 x_0 + q3 x_2 + q4 x_3 + q2 x_4 + q4 x_6)/q2.
    let row2: Vec<GoldenNumber> = (0..9).map(|c| l.at(1, c).clone()).collect();
    let pivot = row2[1].clone();
    let mut basis: Vec<Vec<GoldenNumber>> = Vec::new();
    for free in [0usize, 2, 3, 4, 5, 6, 7, 8] {
        let mut v = vec![GoldenNumber::zero(); 9];
        v[free] = GoldenNumber::one();
        let coeff = &row2[free] / &pivot;
        v[1] = -coeff;
        basis.push(v);
    }
    let u = Matrix9::from_fn(|r, c| {
        if c == 0 {
            u_vec[r].clone()
        } else {
            basis[c - 1][r].clone()
        }
    });
    let u_inv = invert_golden(&u);
    (u, u_inv)
}

/// Gauss-Jordan inverse over Q(√5). Panics if singular (the adapted basis
/// is constructed nonsingular).
pub fn invert_golden(m: &Matrix9<GoldenNumber>) -> Matrix9<GoldenNumber> {
    let mut a = m.clone();
    let mut inv = Matrix9::<GoldenNumber>::identity();
    for col in 0..9 {
        let p = (col..9)
            .find(|&r| !a.at(r, col).is_zero())
            .expect("singular matrix in invert_golden");
        if p != col {
            for c in 0..9 {
                let tmp = a.at(p, c).clone();
                *a.at_mut(p, c) = a.at(col, c).clone();
                *a.at_mut(col, c) = tmp;
                let tmp = inv.at(p, c).clone();
                *inv.at_mut(p, c) = inv.at(col, c).clone();
                *inv.at_mut(col, c) = tmp;
            }
        }
        let piv = a.at(col, col).clone();
        let piv_inv = piv.inv();
        for c in 0..9 {
            *a.at_mut(col, c) = &(a.at(col, c).clone()) * &piv_inv;
            *inv.at_mut(col, c) = &(inv.at(col, c).clone()) * &piv_inv;
        }
        for r in 0..9 {
            if r == col || a.at(r, col).is_zero() {
                continue;
            }
            let f = a.at(r, col).clone();
            for c in 0..9 {
                let da = &f * a.at(col, c);
                *a.at_mut(r, c) = &(a.at(r, c).clone()) - &da;
                let di = &f * inv.at(col, c);
                *inv.at_mut(r, c) = &(inv.at(r, c).clone()) - &di;
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traintrack::GapSequence;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn idempotent_e11(prec: u32) -> Matrix9<ApproxScalar> {
        let mut m = Matrix9::<GoldenNumber>::zero();
        *m.at_mut(0, 0) = GoldenNumber::one();
        m.to_approx(prec)
    }

    #[test]
    fn zero_perturbations_make_constant_products() {
        let prec = 96;
        let factors: Vec<Factor> = (0..6)
            .map(|_| Factor {
                base: idempotent_e11(prec),
                perturbation: Matrix9::<GoldenNumber>::zero().to_approx(prec),
            })
            .collect();
        let rep = product_convergence_harness(&factors, prec);
        assert!(rep.norm_violations.is_empty());
        assert!(!rep.non_summable_flag);
        for d in &rep.cauchy_differences {
            assert!(d.hi.cmp(&Dyadic::new(BigInt::from(1), -80)) == std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn renormed_limit_has_unit_norm() {
        let (u, u_inv) = limit_adapted_basis();
        let l = crate::asymptotics::limit_matrix();
        let e11 = u_inv.mul(&l).mul(&u);
        for r in 0..9 {
            for c in 0..9 {
                let expect = if r == 0 && c == 0 { GoldenNumber::one() } else { GoldenNumber::zero() };
                assert_eq!(e11.at(r, c), &expect, "({r},{c})");
            }
        }
        assert_eq!(e11.frobenius_sq(), GoldenNumber::one());
    }

    #[test]
    fn paper_family_cauchy_below_tail_bound() {
        let prec = 192;
        let seq = GapSequence::quadratic(24);
        let indices: Vec<usize> = (0..=8).map(|l| 2 + 2 * l).collect();
        let factors = renormed_block_family(&indices, &seq, prec).unwrap();
        let rep = product_convergence_harness(&factors, prec);
        assert!(rep.norm_violations.is_empty());
        assert!(!rep.non_summable_flag);
        for (n, (c, b)) in rep.cauchy_differences.iter().zip(&rep.tail_bounds).enumerate() {
            // Last difference is zero by construction; earlier ones must sit
            // below their theoretical tail bound.
            if n + 1 < rep.cauchy_differences.len() {
                assert!(
                    c.certainly_lt(b) || c.possibly_eq(b),
                    "prefix {n}: {} vs bound {}",
                    c.dec(8),
                    b.dec(8)
                );
            }
        }
    }

    #[test]
    fn harmonic_family_is_flagged() {
        let prec = 96;
        let factors: Vec<Factor> = (1i64..=64)
            .map(|l| {
                let mut pert = Matrix9::<GoldenNumber>::zero();
                *pert.at_mut(0, 0) = GoldenNumber::new(exactnum::ratio(1, l), exactnum::Rational::zero());
                Factor { base: idempotent_e11(prec), perturbation: pert.to_approx(prec) }
            })
            .collect();
        let rep = product_convergence_harness(&factors, prec);
        assert!(rep.non_summable_flag);
    }
}
