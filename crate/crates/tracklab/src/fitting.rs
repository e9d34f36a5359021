//! Fitting the multiplicative constants that the source estimates leave
//! implicit: smallest constants consistent with a computed grid, reported
//! alongside the data they were fitted on.

use exactnum::ApproxScalar;

/// Smallest C with value ≤ C·reference over all pairs (interval max of
/// quotients). References must be certainly positive.
pub fn fit_upper_constant(pairs: &[(ApproxScalar, ApproxScalar)]) -> ApproxScalar {
    let mut best: Option<ApproxScalar> = None;
    for (value, reference) in pairs {
        assert!(
            reference.is_certainly_positive(),
            "fit reference must be positive"
        );
        let q = value.div(reference);
        best = Some(match best {
            None => q,
            Some(b) => interval_max(&b, &q),
        });
    }
    best.expect("fit_upper_constant on empty grid")
}

/// Smallest K with 1/K ≤ value/reference ≤ K over the grid.
pub fn fit_band_constant(pairs: &[(ApproxScalar, ApproxScalar)]) -> ApproxScalar {
    let mut best: Option<ApproxScalar> = None;
    for (value, reference) in pairs {
        assert!(value.is_certainly_positive() && reference.is_certainly_positive());
        let q = value.div(reference);
        let qi = reference.div(value);
        let m = interval_max(&q, &qi);
        best = Some(match best {
            None => m,
            Some(b) => interval_max(&b, &m),
        });
    }
    best.expect("fit_band_constant on empty grid")
}

/// Largest consecutive ratio value_{n+1}/value_n (decay rate fit).
pub fn fit_decay_ratio(values: &[ApproxScalar]) -> ApproxScalar {
    assert!(values.len() >= 2);
    let mut best: Option<ApproxScalar> = None;
    for w in values.windows(2) {
        let q = w[1].div(&w[0]);
        best = Some(match best {
            None => q,
            Some(b) => interval_max(&b, &q),
        });
    }
    best.unwrap()
}

/// Largest value_i^{1/i} over (i, value) pairs: the geometric rate q such
/// that value_i ≤ q^i across the grid.
pub fn fit_geometric_rate(indexed: &[(u32, ApproxScalar)]) -> ApproxScalar {
    let mut best: Option<ApproxScalar> = None;
    for (i, v) in indexed {
        assert!(*i >= 1);
        let root = v.nth_root(*i);
        best = Some(match best {
            None => root,
            Some(b) => interval_max(&b, &root),
        });
    }
    best.expect("fit_geometric_rate on empty grid")
}

/// Pointwise interval maximum.
pub fn interval_max(a: &ApproxScalar, b: &ApproxScalar) -> ApproxScalar {
    ApproxScalar::from_interval(
        exactnum::Dyadic::max(&a.lo, &b.lo),
        exactnum::Dyadic::max(&a.hi, &b.hi),
        a.prec.max(b.prec),
    )
}

/// Enclosure of |x|.
pub fn interval_abs(x: &ApproxScalar) -> ApproxScalar {
    let hi = exactnum::Dyadic::max(&x.lo.abs(), &x.hi.abs());
    let lo = if x.contains_zero() {
        exactnum::Dyadic::zero()
    } else {
        exactnum::Dyadic::min(&x.lo.abs(), &x.hi.abs())
    };
    ApproxScalar::from_interval(lo, hi, x.prec)
}

/// Relative drift |a-b| / max(a,b) stays below `tol_num/tol_den`, certified.
pub fn within_relative(a: &ApproxScalar, b: &ApproxScalar, tol_num: i64, tol_den: i64) -> bool {
    let diff = interval_abs(&a.sub(b));
    let base = interval_max(a, b);
    let tol = ApproxScalar::from_int(tol_num, a.prec).div(&ApproxScalar::from_int(tol_den, a.prec));
    diff.certainly_le(&tol.mul(&base))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: i64, prec: u32) -> ApproxScalar {
        ApproxScalar::from_int(x, prec)
    }

    #[test]
    fn band_constant_symmetric() {
        let pairs = vec![(c(2, 64), c(1, 64)), (c(1, 64), c(3, 64))];
        let k = fit_band_constant(&pairs);
        assert!(k.possibly_eq(&c(3, 64)));
    }

    #[test]
    fn geometric_rate() {
        // value_i = 2^-i fits q = 1/2 exactly.
        let vals: Vec<(u32, ApproxScalar)> = (1..=6)
            .map(|i| (i, ApproxScalar::from_rational(&exactnum::ratio(1, 1 << i), 96)))
            .collect();
        let q = fit_geometric_rate(&vals);
        let half = ApproxScalar::from_rational(&exactnum::ratio(1, 2), 96);
        assert!(q.possibly_eq(&half));
    }
}
