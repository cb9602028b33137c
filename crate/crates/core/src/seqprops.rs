//! Log-concavity, unimodality and internal-zero checks for coefficient
//! arrays, plus sequence convolution and the shifted-product inequality.
//!
//! The checkers work on a dense [`CoefficientArray`] over the support box of
//! a Laurent polynomial. All verdicts are computed in exact integer
//! arithmetic; a failing check always carries a [`Witness`] naming the axis,
//! the cell (in absolute coordinates, i.e. exponents) and the offending
//! values.
//!
//! Witness conventions per check:
//! - log-concavity: `index` is the middle cell, `values` are
//!   `(left, mid, right)` with `mid^2 < left*right`;
//! - internal zeros: `index` is the zero cell, `values` are
//!   `(prev_nonzero, 0, next_nonzero)`;
//! - unimodality: `index` is the cell breaking every admissible peak chain,
//!   `values` are a `(high, low, high)` or chain-break triple from the fiber
//!   that emptied the peak-index intersection;
//! - shifted products: `index` is `(i-r, i, j, j+r)` and `values` are the
//!   four sequence entries with `a_i*a_j < a_{i-r}*a_{j+r}`.

use num::bigint::BigInt;
use num::{Signed, Zero};
use std::fmt;

/// Outcome of a property check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Location and values of a failed inequality or broken chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Axis along which the property breaks, 0-based.
    pub axis: usize,
    /// Cell in absolute coordinates (box index plus per-axis offset).
    pub index: Vec<i32>,
    /// Offending values; three for the array checks, four for shifted
    /// products, two for analytic certificates.
    pub values: Vec<BigInt>,
}

/// Machine-readable verdict of any property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    /// Present exactly when the verdict is `Fail`.
    pub witness: Option<Witness>,
    /// Number of cells examined by the scan.
    pub cells_examined: u64,
}

impl CheckReport {
    pub fn pass(cells_examined: u64) -> Self {
        CheckReport {
            verdict: Verdict::Pass,
            witness: None,
            cells_examined,
        }
    }

    pub fn fail(witness: Witness, cells_examined: u64) -> Self {
        CheckReport {
            verdict: Verdict::Fail,
            witness: Some(witness),
            cells_examined,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for CheckReport {
    /// Stable text record: `verdict=… [axis=… index=(…) values=(…)] cells=…`.
    /// Axes are numbered from 1 in reports, matching variable names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Pass => write!(f, "verdict=pass cells={}", self.cells_examined),
            Verdict::Fail => {
                let w = self.witness.as_ref().expect("fail verdict carries witness");
                let idx = w
                    .index
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let vals = w
                    .values
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                write!(
                    f,
                    "verdict=fail axis={} index=({}) values=({}) cells={}",
                    w.axis + 1,
                    idx,
                    vals,
                    self.cells_examined
                )
            }
        }
    }
}

/// Errors from array construction and checker preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqError {
    /// A negative value reached a checker input; the checks are defined for
    /// nonnegative coefficients only.
    NegativeValue { index: usize },
    /// Array shape does not match the data length.
    ShapeMismatch { expected: usize, actual: usize },
    /// Empty axis or empty data.
    EmptyArray,
    /// A stated precondition of the check failed; carries the report of the
    /// precondition check so it is distinguishable from a main-inequality
    /// failure.
    Precondition {
        check: &'static str,
        report: CheckReport,
    },
}

impl fmt::Display for SeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqError::NegativeValue { index } => {
                write!(f, "negative value at flat index {index}")
            }
            SeqError::ShapeMismatch { expected, actual } => {
                write!(f, "shape mismatch: expected {expected} cells, got {actual}")
            }
            SeqError::EmptyArray => write!(f, "empty coefficient array"),
            SeqError::Precondition { check, report } => {
                write!(f, "precondition `{check}` violated: {report}")
            }
        }
    }
}

impl std::error::Error for SeqError {}

/// Dense nonnegative coefficient array over a support box.
///
/// Axis 0 is the most significant (row-major layout). `offsets[j]` is the
/// lower bound `l_j` of axis `j`, so box index `i` along axis `j`
/// corresponds to absolute coordinate (exponent) `offsets[j] + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientArray {
    offsets: Vec<i32>,
    lens: Vec<usize>,
    data: Vec<BigInt>,
}

impl CoefficientArray {
    /// Builds an array from dense row-major data, rejecting negative values
    /// and shape mismatches.
    pub fn from_dense(
        offsets: Vec<i32>,
        lens: Vec<usize>,
        data: Vec<BigInt>,
    ) -> Result<Self, SeqError> {
        if offsets.len() != lens.len() {
            return Err(SeqError::ShapeMismatch {
                expected: offsets.len(),
                actual: lens.len(),
            });
        }
        if lens.iter().any(|&l| l == 0) || lens.is_empty() {
            return Err(SeqError::EmptyArray);
        }
        let cells: usize = lens.iter().product();
        if cells != data.len() {
            return Err(SeqError::ShapeMismatch {
                expected: cells,
                actual: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| v.is_negative()) {
            return Err(SeqError::NegativeValue { index });
        }
        Ok(CoefficientArray {
            offsets,
            lens,
            data,
        })
    }

    /// One-dimensional array starting at offset 0.
    pub fn from_sequence(seq: Vec<BigInt>) -> Result<Self, SeqError> {
        let len = seq.len();
        Self::from_dense(vec![0], vec![len], seq)
    }

    pub fn dims(&self) -> usize {
        self.lens.len()
    }

    pub fn lens(&self) -> &[usize] {
        &self.lens
    }

    pub fn offsets(&self) -> &[i32] {
        &self.offsets
    }

    pub fn total_cells(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[BigInt] {
        &self.data
    }

    fn stride(&self, axis: usize) -> usize {
        self.lens[axis + 1..].iter().product()
    }

    fn flat(&self, coords: &[usize]) -> usize {
        let mut idx = 0;
        for (axis, &c) in coords.iter().enumerate() {
            idx = idx * self.lens[axis] + c;
        }
        idx
    }

    /// Value at box coordinates (0-based per axis).
    pub fn get(&self, coords: &[usize]) -> &BigInt {
        &self.data[self.flat(coords)]
    }

    fn coords_of(&self, mut flat: usize) -> Vec<usize> {
        let mut coords = vec![0usize; self.dims()];
        for axis in (0..self.dims()).rev() {
            coords[axis] = flat % self.lens[axis];
            flat /= self.lens[axis];
        }
        coords
    }

    fn absolute(&self, coords: &[usize]) -> Vec<i32> {
        coords
            .iter()
            .zip(&self.offsets)
            .map(|(&c, &o)| o + c as i32)
            .collect()
    }

    /// Iterates `(absolute coordinates, value)` over nonzero cells, used for
    /// sparse reconstruction.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (Vec<i32>, &BigInt)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(flat, v)| (self.absolute(&self.coords_of(flat)), v))
    }

    /// Iterates the fibers along `axis` in lexicographic order of the
    /// complement coordinates. Yields (complement coords, fiber values).
    fn fibers(&self, axis: usize) -> FiberIter<'_> {
        FiberIter {
            arr: self,
            axis,
            complement: vec![0; self.dims().saturating_sub(1)],
            done: false,
        }
    }

    /// Permutes the axes; used by the axis-symmetry property tests.
    pub fn permute_axes(&self, perm: &[usize]) -> CoefficientArray {
        let m = self.dims();
        assert_eq!(perm.len(), m);
        let offsets: Vec<i32> = perm.iter().map(|&a| self.offsets[a]).collect();
        let lens: Vec<usize> = perm.iter().map(|&a| self.lens[a]).collect();
        let mut data = vec![BigInt::zero(); self.data.len()];
        let mut new = CoefficientArray {
            offsets,
            lens,
            data: Vec::new(),
        };
        for flat in 0..self.data.len() {
            let coords = self.coords_of(flat);
            let permuted: Vec<usize> = perm.iter().map(|&a| coords[a]).collect();
            data[new.flat(&permuted)] = self.data[flat].clone();
        }
        new.data = data;
        new
    }
}

struct FiberIter<'a> {
    arr: &'a CoefficientArray,
    axis: usize,
    complement: Vec<usize>,
    done: bool,
}

impl<'a> FiberIter<'a> {
    /// Complement axes in ascending order (all axes except `self.axis`).
    fn complement_axes(&self) -> Vec<usize> {
        (0..self.arr.dims()).filter(|&a| a != self.axis).collect()
    }
}

impl<'a> Iterator for FiberIter<'a> {
    type Item = (Vec<usize>, Vec<&'a BigInt>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let axes = self.complement_axes();
        let mut coords = vec![0usize; self.arr.dims()];
        for (slot, &a) in axes.iter().enumerate() {
            coords[a] = self.complement[slot];
        }
        let fiber: Vec<&BigInt> = (0..self.arr.lens[self.axis])
            .map(|i| {
                coords[self.axis] = i;
                self.arr.get(&coords)
            })
            .collect();
        let complement = self.complement.clone();
        // odometer increment over the complement coordinates
        let mut slot = axes.len();
        loop {
            if slot == 0 {
                self.done = true;
                break;
            }
            slot -= 1;
            self.complement[slot] += 1;
            if self.complement[slot] < self.arr.lens[axes[slot]] {
                break;
            }
            self.complement[slot] = 0;
        }
        if axes.is_empty() {
            self.done = true;
        }
        Some((complement, fiber))
    }
}

/// Checks the squared-middle inequality `a_i^2 >= a_{i-1} a_{i+1}` along
/// every axis, with out-of-box values taken as zero. Cells are scanned in
/// lexicographic order of the index tuple, axes innermost, and the first
/// violation found is reported.
pub fn is_log_concave(arr: &CoefficientArray) -> CheckReport {
    let m = arr.dims();
    let total = arr.total_cells();
    for flat in 0..total {
        let coords = arr.coords_of(flat);
        let mid = &arr.data[flat];
        for axis in 0..m {
            let stride = arr.stride(axis);
            let left = (coords[axis] > 0).then(|| &arr.data[flat - stride]);
            let right = (coords[axis] + 1 < arr.lens[axis]).then(|| &arr.data[flat + stride]);
            // an out-of-box neighbor is zero, so the inequality is automatic
            if let (Some(l), Some(r)) = (left, right) {
                if mid * mid < l * r {
                    return CheckReport::fail(
                        Witness {
                            axis,
                            index: arr.absolute(&coords),
                            values: vec![l.clone(), mid.clone(), r.clone()],
                        },
                        total as u64,
                    );
                }
            }
        }
    }
    CheckReport::pass(total as u64)
}

/// Looks for an internal zero: indices p < q < r along some axis fiber with
/// `a_p != 0`, `a_q = 0`, `a_r != 0`. The verdict is `Fail` when such a zero
/// exists. Fibers are scanned axis-major.
pub fn has_internal_zeros(arr: &CoefficientArray) -> CheckReport {
    let mut cells = 0u64;
    for axis in 0..arr.dims() {
        for (complement, fiber) in arr.fibers(axis) {
            cells += fiber.len() as u64;
            let first = fiber.iter().position(|v| !v.is_zero());
            let last = fiber.iter().rposition(|v| !v.is_zero());
            let (Some(first), Some(last)) = (first, last) else {
                continue;
            };
            if let Some(q) = (first..=last).find(|&i| fiber[i].is_zero()) {
                let prev = (0..q).rev().find(|&i| !fiber[i].is_zero()).unwrap();
                let next = (q + 1..=last).find(|&i| !fiber[i].is_zero()).unwrap();
                let coords = coords_with(arr, axis, &complement, q);
                return CheckReport::fail(
                    Witness {
                        axis,
                        index: arr.absolute(&coords),
                        values: vec![fiber[prev].clone(), BigInt::zero(), fiber[next].clone()],
                    },
                    cells,
                );
            }
        }
    }
    CheckReport::pass(cells)
}

fn coords_with(
    arr: &CoefficientArray,
    axis: usize,
    complement: &[usize],
    position: usize,
) -> Vec<usize> {
    let mut coords = vec![0usize; arr.dims()];
    let mut slot = 0;
    for a in 0..arr.dims() {
        if a == axis {
            coords[a] = position;
        } else {
            coords[a] = complement[slot];
            slot += 1;
        }
    }
    coords
}

/// Interval `[s, d]` of valid peak indices of a fiber, empty when `s > d`.
fn peak_interval(seq: &[&BigInt]) -> (usize, usize) {
    let n = seq.len();
    let mut d = 0;
    while d + 1 < n && seq[d] <= seq[d + 1] {
        d += 1;
    }
    let mut s = n - 1;
    while s > 0 && seq[s - 1] >= seq[s] {
        s -= 1;
    }
    (s, d)
}

/// All indices `k` such that the sequence is nondecreasing up to `k` and
/// nonincreasing from `k` on. The result is a contiguous (possibly empty)
/// range.
pub fn valid_peaks(seq: &[BigInt]) -> Vec<usize> {
    if seq.is_empty() {
        return Vec::new();
    }
    let refs: Vec<&BigInt> = seq.iter().collect();
    let (s, d) = peak_interval(&refs);
    (s..=d).collect()
}

/// Uniform-peak unimodality: for every axis there must exist a single peak
/// index valid simultaneously for all fibers along that axis. Implemented as
/// the intersection over fibers of each fiber's valid-peak interval.
pub fn is_unimodal(arr: &CoefficientArray) -> CheckReport {
    let mut cells = 0u64;
    for axis in 0..arr.dims() {
        let mut lo = 0usize;
        let mut hi = arr.lens[axis] - 1;
        for (complement, fiber) in arr.fibers(axis) {
            cells += fiber.len() as u64;
            let (s, d) = peak_interval(&fiber);
            if s > d {
                // the fiber alone is not unimodal: it has a strict valley
                let valley = (d + 1..s)
                    .min_by_key(|&i| fiber[i])
                    .expect("empty peak interval implies a valley");
                let coords = coords_with(arr, axis, &complement, valley);
                return CheckReport::fail(
                    Witness {
                        axis,
                        index: arr.absolute(&coords),
                        values: vec![fiber[d].clone(), fiber[valley].clone(), fiber[s].clone()],
                    },
                    cells,
                );
            }
            if d < lo {
                // this fiber already descends at d, before every peak index
                // the previous fibers still admit
                let coords = coords_with(arr, axis, &complement, d + 1);
                return CheckReport::fail(
                    Witness {
                        axis,
                        index: arr.absolute(&coords),
                        values: vec![fiber[d].clone(), fiber[d + 1].clone(), fiber[lo].clone()],
                    },
                    cells,
                );
            }
            if s > hi {
                // this fiber still ascends at s-1, after every admissible peak
                let coords = coords_with(arr, axis, &complement, s - 1);
                return CheckReport::fail(
                    Witness {
                        axis,
                        index: arr.absolute(&coords),
                        values: vec![fiber[hi].clone(), fiber[s - 1].clone(), fiber[s].clone()],
                    },
                    cells,
                );
            }
            lo = lo.max(s);
            hi = hi.min(d);
        }
    }
    CheckReport::pass(cells)
}

/// Cauchy product of two sequences; entry `t` is `sum_{i+j=t} a_i b_j`.
pub fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Verifies `a_i a_j >= a_{i-r} a_{j+r}` for all `i <= j` and `r >= 1`
/// within bounds. Requires a nonnegative, log-concave sequence with no
/// internal zeros; a precondition violation is reported as an error,
/// distinct from a failure of the main inequality.
pub fn check_shifted_products(seq: &[BigInt]) -> Result<CheckReport, SeqError> {
    let arr = CoefficientArray::from_sequence(seq.to_vec())?;
    let lc = is_log_concave(&arr);
    if !lc.is_pass() {
        return Err(SeqError::Precondition {
            check: "log-concave",
            report: lc,
        });
    }
    let zeros = has_internal_zeros(&arr);
    if !zeros.is_pass() {
        return Err(SeqError::Precondition {
            check: "no-internal-zeros",
            report: zeros,
        });
    }
    let n = seq.len();
    let mut cells = 0u64;
    for i in 0..n {
        for j in i..n {
            for r in 1..=i.min(n - 1 - j) {
                cells += 1;
                if &seq[i] * &seq[j] < &seq[i - r] * &seq[j + r] {
                    return Ok(CheckReport::fail(
                        Witness {
                            axis: 0,
                            index: vec![(i - r) as i32, i as i32, j as i32, (j + r) as i32],
                            values: vec![
                                seq[i - r].clone(),
                                seq[i].clone(),
                                seq[j].clone(),
                                seq[j + r].clone(),
                            ],
                        },
                        cells,
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass(cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn seq_array(v: &[i64]) -> CoefficientArray {
        CoefficientArray::from_sequence(ints(v)).unwrap()
    }

    #[test]
    fn log_concave_binomial_row() {
        let arr = seq_array(&[1, 4, 6, 4, 1]);
        assert!(is_log_concave(&arr).is_pass());
    }

    #[test]
    fn log_concave_detects_violation() {
        let arr = seq_array(&[32, 16, 8, 2, 4]);
        let report = is_log_concave(&arr);
        assert_eq!(report.verdict, Verdict::Fail);
        let w = report.witness.unwrap();
        assert_eq!(w.index, vec![3]);
        assert_eq!(w.values, ints(&[8, 2, 4]));
    }

    #[test]
    fn log_concave_is_literal_about_zero_runs() {
        // run of two zeros passes the literal inequality, a single internal
        // zero between nonzero neighbors does not
        assert!(is_log_concave(&seq_array(&[1, 0, 0, 2])).is_pass());
        assert!(!is_log_concave(&seq_array(&[1, 0, 2])).is_pass());
    }

    #[test]
    fn log_concave_constant_array() {
        let arr = CoefficientArray::from_dense(
            vec![0, 0],
            vec![2, 3],
            ints(&[5, 5, 5, 5, 5, 5]),
        )
        .unwrap();
        assert!(is_log_concave(&arr).is_pass());
    }

    #[test]
    fn example_array_log_concave_and_unimodal() {
        // coefficients of 1 + 2 x2 + x2^2 + x1 x3 over its box
        let mut data = vec![BigInt::zero(); 2 * 3 * 2];
        // axes (x1, x2, x3), lens (2, 3, 2)
        let arr = |i1: usize, i2: usize, i3: usize| (i1 * 3 + i2) * 2 + i3;
        data[arr(0, 0, 0)] = BigInt::from(1);
        data[arr(0, 1, 0)] = BigInt::from(2);
        data[arr(0, 2, 0)] = BigInt::from(1);
        data[arr(1, 0, 1)] = BigInt::from(1);
        let arr = CoefficientArray::from_dense(vec![0, 0, 0], vec![2, 3, 2], data).unwrap();
        assert!(is_log_concave(&arr).is_pass());
        assert!(has_internal_zeros(&arr).is_pass());
        assert!(is_unimodal(&arr).is_pass());
    }

    #[test]
    fn internal_zero_found() {
        let report = has_internal_zeros(&seq_array(&[1, 0, 2]));
        assert_eq!(report.verdict, Verdict::Fail);
        let w = report.witness.unwrap();
        assert_eq!(w.index, vec![1]);
        assert_eq!(w.values, ints(&[1, 0, 2]));
    }

    #[test]
    fn boundary_zeros_allowed() {
        assert!(has_internal_zeros(&seq_array(&[0, 1, 2, 0])).is_pass());
    }

    #[test]
    fn valid_peaks_examples() {
        assert_eq!(valid_peaks(&ints(&[1, 2, 2, 1])), vec![1, 2]);
        assert_eq!(valid_peaks(&ints(&[5])), vec![0]);
        assert_eq!(valid_peaks(&ints(&[3, 4, 1])), vec![1]);
        assert!(valid_peaks(&ints(&[3, 1, 3])).is_empty());
    }

    #[test]
    fn unimodal_single_fiber() {
        assert!(is_unimodal(&seq_array(&[1, 3, 2])).is_pass());
    }

    #[test]
    fn unimodal_valley_fails() {
        let report = is_unimodal(&seq_array(&[3, 1, 3]));
        assert_eq!(report.verdict, Verdict::Fail);
        let w = report.witness.unwrap();
        assert_eq!(w.values, ints(&[3, 1, 3]));
    }

    #[test]
    fn unimodal_requires_common_peak() {
        // fibers (3,9,3) and (3,1,1) along axis 1 are unimodal alone but
        // admit no common peak index; axis 0 still has the common peak 0
        let data = ints(&[3, 9, 3, 3, 1, 1]);
        let arr = CoefficientArray::from_dense(vec![0, 0], vec![2, 3], data).unwrap();
        let report = is_unimodal(&arr);
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.witness.unwrap().axis, 1);
    }

    #[test]
    fn zero_fiber_accepts_any_peak() {
        let data = ints(&[0, 0, 0, 1, 2, 1]);
        let arr = CoefficientArray::from_dense(vec![0, 0], vec![2, 3], data).unwrap();
        assert!(is_unimodal(&arr).is_pass());
    }

    #[test]
    fn convolve_examples() {
        assert_eq!(convolve(&ints(&[1, 1]), &ints(&[1, 1])), ints(&[1, 2, 1]));
        assert_eq!(
            convolve(&ints(&[1, 2, 1]), &ints(&[1, 1])),
            ints(&[1, 3, 3, 1])
        );
        assert_eq!(
            convolve(&ints(&[1, 3, 2]), &ints(&[2, 2, 1])),
            ints(&[2, 8, 11, 7, 2])
        );
    }

    #[test]
    fn shifted_products_binomial_row() {
        let report = check_shifted_products(&ints(&[1, 3, 3, 1])).unwrap();
        assert!(report.is_pass());
    }

    #[test]
    fn shifted_products_rejects_non_log_concave() {
        let err = check_shifted_products(&ints(&[1, 2, 4])).unwrap_err();
        match err {
            SeqError::Precondition { check, .. } => assert_eq!(check, "log-concave"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn negative_values_rejected() {
        let err = CoefficientArray::from_sequence(ints(&[1, -2, 3])).unwrap_err();
        assert_eq!(err, SeqError::NegativeValue { index: 1 });
    }

    #[test]
    fn report_display_is_stable() {
        let report = is_log_concave(&seq_array(&[23, 8, 4]));
        assert_eq!(
            report.to_string(),
            "verdict=fail axis=1 index=(1) values=(23,8,4) cells=3"
        );
        assert_eq!(
            CheckReport::pass(7).to_string(),
            "verdict=pass cells=7"
        );
    }

    // brute-force re-implementations used as oracles

    fn brute_log_concave(arr: &CoefficientArray) -> bool {
        let lens = arr.lens().to_vec();
        let total = arr.total_cells();
        for flat in 0..total {
            let coords = arr.coords_of(flat);
            for axis in 0..arr.dims() {
                let mut l = coords.clone();
                let mut r = coords.clone();
                let left = if coords[axis] == 0 {
                    BigInt::zero()
                } else {
                    l[axis] -= 1;
                    arr.get(&l).clone()
                };
                let right = if coords[axis] + 1 == lens[axis] {
                    BigInt::zero()
                } else {
                    r[axis] += 1;
                    arr.get(&r).clone()
                };
                let mid = arr.get(&coords);
                if mid * mid < left * right {
                    return false;
                }
            }
        }
        true
    }

    fn brute_unimodal(arr: &CoefficientArray) -> bool {
        for axis in 0..arr.dims() {
            let len = arr.lens()[axis];
            let mut found = false;
            'peak: for k in 0..len {
                for (_, fiber) in arr.fibers(axis) {
                    for i in 0..len.saturating_sub(1) {
                        if i < k && fiber[i] > fiber[i + 1] {
                            continue 'peak;
                        }
                        if i >= k && fiber[i] < fiber[i + 1] {
                            continue 'peak;
                        }
                    }
                }
                found = true;
                break;
            }
            if !found {
                return false;
            }
        }
        true
    }

    fn small_array() -> impl Strategy<Value = CoefficientArray> {
        (1usize..=3)
            .prop_flat_map(|dims| {
                proptest::collection::vec(1usize..=4, dims).prop_flat_map(move |lens| {
                    let cells: usize = lens.iter().product();
                    proptest::collection::vec(0i64..=9, cells).prop_map(move |data| {
                        CoefficientArray::from_dense(
                            vec![0; lens.len()],
                            lens.clone(),
                            data.into_iter().map(BigInt::from).collect(),
                        )
                        .unwrap()
                    })
                })
            })
    }

    proptest! {
        #[test]
        fn log_concave_matches_bruteforce(arr in small_array()) {
            prop_assert_eq!(is_log_concave(&arr).is_pass(), brute_log_concave(&arr));
        }

        #[test]
        fn unimodal_matches_bruteforce(arr in small_array()) {
            prop_assert_eq!(is_unimodal(&arr).is_pass(), brute_unimodal(&arr));
        }

        #[test]
        fn axis_permutation_preserves_verdicts(arr in small_array()) {
            let mut perm: Vec<usize> = (0..arr.dims()).collect();
            perm.reverse();
            let permuted = arr.permute_axes(&perm);
            prop_assert_eq!(is_log_concave(&arr).is_pass(), is_log_concave(&permuted).is_pass());
            prop_assert_eq!(is_unimodal(&arr).is_pass(), is_unimodal(&permuted).is_pass());
            prop_assert_eq!(has_internal_zeros(&arr).is_pass(), has_internal_zeros(&permuted).is_pass());
        }

        #[test]
        fn log_concave_no_internal_zeros_implies_unimodal(arr in small_array()) {
            if is_log_concave(&arr).is_pass() && has_internal_zeros(&arr).is_pass() {
                prop_assert!(is_unimodal(&arr).is_pass());
            }
        }

        #[test]
        fn convolution_of_log_concave_is_log_concave_and_unimodal(
            (a, b) in (log_concave_sequence(), log_concave_sequence())
        ) {
            let c = convolve(&a, &b);
            let arr = CoefficientArray::from_sequence(c).unwrap();
            prop_assert!(is_log_concave(&arr).is_pass());
            prop_assert!(has_internal_zeros(&arr).is_pass());
            prop_assert!(is_unimodal(&arr).is_pass());
        }

        #[test]
        fn shifted_products_hold_for_log_concave(a in log_concave_sequence()) {
            prop_assert!(check_shifted_products(&a).unwrap().is_pass());
        }
    }

    /// Positive log-concave integer sequences built from nonincreasing
    /// ratios `p_i / q`: `a_i = q^(m-i) * p_1 * ... * p_i`.
    fn log_concave_sequence() -> impl Strategy<Value = Vec<BigInt>> {
        (
            1u64..=9,
            proptest::collection::vec(1u64..=15, 0..=6),
        )
            .prop_map(|(q, mut ps)| {
                ps.sort_unstable_by(|a, b| b.cmp(a));
                let m = ps.len();
                let mut out = Vec::with_capacity(m + 1);
                let mut acc = BigInt::from(q).pow(m as u32);
                out.push(acc.clone());
                for (i, &p) in ps.iter().enumerate() {
                    acc = acc * p / q;
                    // acc stays integral: a_i = q^(m-i) * prod(p_1..p_i)
                    let _ = i;
                    out.push(acc.clone());
                }
                out
            })
    }

    #[test]
    fn binomial_rows_are_log_concave_up_to_64() {
        // Pascal triangle built by convolution
        let mut row = ints(&[1]);
        for n in 1..=64 {
            row = convolve(&row, &ints(&[1, 1]));
            let arr = CoefficientArray::from_sequence(row.clone()).unwrap();
            assert!(is_log_concave(&arr).is_pass(), "row {n} not log-concave");
            assert!(is_unimodal(&arr).is_pass(), "row {n} not unimodal");
        }
    }

    #[test]
    fn binomial_column_inequality() {
        // C(n,k)^2 >= C(n-1,k) C(n+1,k) for 0 <= k <= n-1 <= 63
        let mut rows: Vec<Vec<BigInt>> = vec![ints(&[1])];
        for _ in 1..=65 {
            rows.push(convolve(rows.last().unwrap(), &ints(&[1, 1])));
        }
        for n in 1..=64usize {
            for k in 0..n {
                let mid = &rows[n][k];
                let lo = &rows[n - 1][k];
                let hi = &rows[n + 1][k];
                assert!(mid * mid >= lo * hi, "n={n} k={k}");
            }
        }
    }
}
