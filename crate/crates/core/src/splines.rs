//! One-dimensional B-spline bases on uniform open knot vectors over [0, 1].
//!
//! Values and first derivatives are evaluated with the local triangular
//! Cox-de Boor scheme over the knot span containing the point, so a single
//! evaluation costs O(p^2) regardless of the number of elements.

use crate::error::{Error, Result};

/// Degree, inter-element continuity and element count of a uniform 1D spline space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisSpec1D {
    degree: usize,
    continuity: usize,
    n_elements: usize,
}

impl BasisSpec1D {
    /// `continuity` is the smoothness `k` across interior breakpoints, `0 <= k <= p - 1`.
    pub fn new(degree: usize, continuity: usize, n_elements: usize) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidBasis("degree must be at least 1".into()));
        }
        if continuity >= degree {
            return Err(Error::InvalidBasis(format!(
                "continuity {continuity} must be below the degree {degree}"
            )));
        }
        if n_elements < 1 {
            return Err(Error::InvalidBasis("at least one element is required".into()));
        }
        Ok(Self {
            degree,
            continuity,
            n_elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn continuity(&self) -> usize {
        self.continuity
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn element_size(&self) -> f64 {
        1.0 / self.n_elements as f64
    }

    /// Number of basis functions before boundary elimination.
    pub fn n_basis(&self) -> usize {
        self.n_elements * (self.degree - self.continuity) + self.continuity + 1
    }

    /// Number of basis functions that vanish on both end points.
    pub fn n_interior(&self) -> usize {
        self.n_basis() - 2
    }

    /// Breakpoints `0, 1/n, ..., 1`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let n = self.n_elements;
        (0..=n).map(|e| e as f64 / n as f64).collect()
    }

    pub fn knots(&self) -> Vec<f64> {
        make_open_knot_vector(self)
    }

    /// Greville abscissae (knot averages), one per basis function.
    pub fn greville(&self) -> Vec<f64> {
        let t = self.knots();
        let p = self.degree;
        (0..self.n_basis())
            .map(|j| t[j + 1..=j + p].iter().sum::<f64>() / p as f64)
            .collect()
    }

    /// Index of the first global basis function active on element `e`.
    pub fn element_first_basis(&self, e: usize) -> usize {
        e * (self.degree - self.continuity)
    }
}

/// Open knot vector with uniform breakpoints, boundary multiplicity `p + 1`
/// and interior multiplicity `p - k`.
pub fn make_open_knot_vector(spec: &BasisSpec1D) -> Vec<f64> {
    let p = spec.degree;
    let mult = p - spec.continuity;
    let n = spec.n_elements;
    let mut knots = Vec::with_capacity(2 * (p + 1) + (n - 1) * mult);
    knots.extend(std::iter::repeat_n(0.0, p + 1));
    for e in 1..n {
        knots.extend(std::iter::repeat_n(e as f64 / n as f64, mult));
    }
    knots.extend(std::iter::repeat_n(1.0, p + 1));
    knots
}

/// The `p + 1` basis functions that are nonzero at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisEvaluation {
    pub x: f64,
    /// Global index of the first active function.
    pub first: usize,
    pub values: Vec<f64>,
    pub derivatives: Vec<f64>,
}

impl BasisEvaluation {
    pub fn active_indices(&self) -> std::ops::Range<usize> {
        self.first..self.first + self.values.len()
    }
}

/// Knot span `s` with `knots[s] <= x < knots[s + 1]`; the right end point
/// belongs to the last nonempty span.
pub fn find_span(knots: &[f64], p: usize, x: f64) -> Result<usize> {
    let n_basis = knots
        .len()
        .checked_sub(p + 1)
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidBasis("knot vector too short for the degree".into()))?;
    let lo = knots[p];
    let hi = knots[n_basis];
    if !(x >= lo && x <= hi) {
        return Err(Error::OutOfDomain { x });
    }
    if x >= hi {
        let mut s = n_basis - 1;
        while s > p && knots[s] >= hi {
            s -= 1;
        }
        return Ok(s);
    }
    // last index in [p, n_basis - 1] with knots[s] <= x
    let upper = knots[p..=n_basis].partition_point(|&k| k <= x);
    Ok(p + upper - 1)
}

/// Values and first derivatives of the active degree-`p` functions at `x`.
pub fn eval_basis(knots: &[f64], p: usize, x: f64) -> Result<BasisEvaluation> {
    let span = find_span(knots, p, x)?;
    // table[d][r] holds the degree-d function with global index span - d + r
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(p + 1);
    table.push(vec![1.0]);
    let mut left = vec![0.0; p + 1];
    let mut right = vec![0.0; p + 1];
    for d in 1..=p {
        left[d] = x - knots[span + 1 - d];
        right[d] = knots[span + d] - x;
        let prev = &table[d - 1];
        let mut next = vec![0.0; d + 1];
        let mut saved = 0.0;
        for r in 0..d {
            let denom = right[r + 1] + left[d - r];
            let temp = if denom == 0.0 { 0.0 } else { prev[r] / denom };
            next[r] = saved + right[r + 1] * temp;
            saved = left[d - r] * temp;
        }
        next[d] = saved;
        table.push(next);
    }

    let first = span - p;
    let values = table[p].clone();
    let mut derivatives = vec![0.0; p + 1];
    if p > 0 {
        let lower = &table[p - 1];
        let pf = p as f64;
        for (r, der) in derivatives.iter_mut().enumerate() {
            let i = first + r;
            let mut acc = 0.0;
            if r >= 1 {
                let w = knots[i + p] - knots[i];
                if w > 0.0 {
                    acc += lower[r - 1] / w;
                }
            }
            if r < p {
                let w = knots[i + p + 1] - knots[i + 1];
                if w > 0.0 {
                    acc -= lower[r] / w;
                }
            }
            *der = pf * acc;
        }
    }
    Ok(BasisEvaluation {
        x,
        first,
        values,
        derivatives,
    })
}

impl BasisSpec1D {
    /// Evaluates this basis at `x`; rebuilds the knot vector, so prefer
    /// [`eval_basis`] with cached knots in loops.
    pub fn eval(&self, x: f64) -> Result<BasisEvaluation> {
        eval_basis(&self.knots(), self.degree, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(p: usize, k: usize, n: usize) -> BasisSpec1D {
        BasisSpec1D::new(p, k, n).unwrap()
    }

    #[test]
    fn knot_vectors() {
        assert_eq!(spec(1, 0, 2).knots(), vec![0.0, 0.0, 0.5, 1.0, 1.0]);
        assert_eq!(spec(2, 1, 2).knots(), vec![0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0]);
        assert_eq!(
            spec(2, 0, 2).knots(),
            vec![0.0, 0.0, 0.0, 0.5, 0.5, 1.0, 1.0, 1.0]
        );
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(BasisSpec1D::new(2, 2, 4).is_err());
        assert!(BasisSpec1D::new(2, 3, 4).is_err());
        assert!(BasisSpec1D::new(2, 1, 0).is_err());
        assert!(BasisSpec1D::new(0, 0, 4).is_err());
    }

    #[test]
    fn basis_count() {
        for (p, k, n) in [(1, 0, 4), (2, 1, 8), (2, 0, 8), (3, 2, 5), (3, 0, 3)] {
            let s = spec(p, k, n);
            assert_eq!(s.n_basis(), s.knots().len() - p - 1);
            assert_eq!(s.n_basis(), n * (p - k) + k + 1);
        }
    }

    #[test]
    fn degree_zero_indicator() {
        let ev = eval_basis(&[0.0, 0.5, 1.0], 0, 0.25).unwrap();
        assert_eq!(ev.first, 0);
        assert_eq!(ev.values, vec![1.0]);
        let ev = eval_basis(&[0.0, 0.5, 1.0], 0, 0.75).unwrap();
        assert_eq!(ev.first, 1);
    }

    #[test]
    fn hat_peak() {
        let ev = spec(1, 0, 2).eval(0.5).unwrap();
        let mut full = [0.0; 3];
        for (i, v) in ev.active_indices().zip(&ev.values) {
            full[i] = *v;
        }
        assert_eq!(full, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn right_end_belongs_to_last_span() {
        let s = spec(2, 1, 4);
        let ev = s.eval(1.0).unwrap();
        assert_eq!(ev.first, s.n_basis() - 3);
        assert!((ev.values[2] - 1.0).abs() < 1e-15);
        assert!(s.eval(1.0 + 1e-12).is_err());
        assert!(s.eval(-1e-12).is_err());
        assert!(s.eval(f64::NAN).is_err());
    }

    // Frozen from exact rational evaluation of the global recursion.
    #[test]
    fn matches_rational_recursion() {
        let cases: [(usize, usize, usize, f64, usize, Vec<f64>, Vec<f64>); 3] = [
            (
                2,
                1,
                4,
                0.3,
                1,
                vec![8.0 / 25.0, 33.0 / 50.0, 1.0 / 50.0],
                vec![-16.0 / 5.0, 12.0 / 5.0, 4.0 / 5.0],
            ),
            (
                3,
                2,
                5,
                0.7,
                3,
                vec![1.0 / 48.0, 23.0 / 48.0, 15.0 / 32.0, 1.0 / 32.0],
                vec![-5.0 / 8.0, -25.0 / 8.0, 45.0 / 16.0, 15.0 / 16.0],
            ),
            (
                2,
                0,
                3,
                0.5,
                2,
                vec![0.25, 0.5, 0.25],
                vec![-3.0, 0.0, 3.0],
            ),
        ];
        for (p, k, n, x, first, vals, ders) in cases {
            let ev = spec(p, k, n).eval(x).unwrap();
            assert_eq!(ev.first, first);
            for (a, b) in ev.values.iter().zip(&vals) {
                assert!((a - b).abs() < 1e-14, "{a} vs {b}");
            }
            for (a, b) in ev.derivatives.iter().zip(&ders) {
                assert!((a - b).abs() < 1e-12, "{a} vs {b}");
            }
            assert!((ev.values.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn greville_points_of_hats_are_breakpoints() {
        let s = spec(1, 0, 4);
        assert_eq!(s.greville(), s.breakpoints());
    }

    fn spaces() -> impl Strategy<Value = BasisSpec1D> {
        (1usize..=5, 0usize..5, 1usize..20)
            .prop_filter("k < p", |(p, k, _)| k < p)
            .prop_map(|(p, k, n)| spec(p, k, n))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn partition_of_unity(s in spaces(), x in 0.0f64..=1.0) {
            let ev = s.eval(x).unwrap();
            prop_assert_eq!(ev.values.len(), s.degree() + 1);
            prop_assert!((ev.values.iter().sum::<f64>() - 1.0).abs() < 1e-13);
            prop_assert!(ev.derivatives.iter().sum::<f64>().abs() < 1e-9 * s.n_elements() as f64);
            prop_assert!(ev.values.iter().all(|&v| v >= 0.0));
            prop_assert!(ev.first + ev.values.len() <= s.n_basis());
        }

        #[test]
        fn derivative_matches_finite_difference(s in spaces(), x in 0.0f64..=1.0) {
            let h = s.element_size();
            let step = 1e-6;
            // stay away from breakpoints so the central difference sees one polynomial piece
            let local = (x / h).fract();
            prop_assume!(local > 1e-3 && local < 1.0 - 1e-3 && x > step && x < 1.0 - step);
            let knots = s.knots();
            let p = s.degree();
            let ev = eval_basis(&knots, p, x).unwrap();
            let lo = eval_basis(&knots, p, x - step).unwrap();
            let hi = eval_basis(&knots, p, x + step).unwrap();
            prop_assert_eq!(lo.first, ev.first);
            prop_assert_eq!(hi.first, ev.first);
            let scale = ev.derivatives.iter().fold(1.0f64, |m, d| m.max(d.abs()));
            for r in 0..=p {
                let fd = (hi.values[r] - lo.values[r]) / (2.0 * step);
                prop_assert!((fd - ev.derivatives[r]).abs() <= 1e-6 * scale,
                    "fd {} vs {}", fd, ev.derivatives[r]);
            }
        }
    }

    #[test]
    fn partition_of_unity_dense_sweep() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, k, n) in [(1, 0, 7), (2, 0, 5), (2, 1, 16), (3, 2, 9), (3, 1, 4), (4, 3, 11)] {
            let s = spec(p, k, n);
            let knots = s.knots();
            for _ in 0..10_000 {
                let x: f64 = rng.random();
                let ev = eval_basis(&knots, p, x).unwrap();
                assert!((ev.values.iter().sum::<f64>() - 1.0).abs() < 1e-13);
                assert!(ev.values.iter().all(|&v| v >= 0.0));
            }
        }
    }
}
