//! Scale/shift analysis grids and measurable subsets of the half-plane.

use crate::error::{LcwtError, Result};
use crate::float::LcFloat;

/// Geometric scale grid crossed with a uniform shift grid.
///
/// Scales satisfy `a_j = a_min * r^j` with a constant ratio `r > 1`; shifts
/// are `b_k = b0 + k * db`. The measure of the cell at `(j, k)` is
/// `a_j * ln(r) * db`, the exact Lebesgue measure of the log-scale cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleShiftGrid<T> {
    scales: Vec<T>,
    shifts: Vec<T>,
    ratio: T,
    db: T,
}

impl<T: LcFloat> ScaleShiftGrid<T> {
    /// Builds the grid from generator parameters; this is the canonical
    /// constructor and the one the serialized format reproduces bit-exactly.
    pub fn geometric(
        a_min: T,
        ratio: T,
        n_scales: usize,
        b0: T,
        db: T,
        n_shifts: usize,
    ) -> Result<Self> {
        if !(a_min > T::zero()) || !a_min.is_finite() {
            return Err(LcwtError::InvalidGrid(format!(
                "a_min = {} must be > 0",
                a_min.to_f64_lossy()
            )));
        }
        if !(ratio > T::one()) || !ratio.is_finite() {
            return Err(LcwtError::InvalidGrid(format!(
                "scale ratio = {} must be > 1",
                ratio.to_f64_lossy()
            )));
        }
        if !(db > T::zero()) || !db.is_finite() {
            return Err(LcwtError::InvalidGrid(format!(
                "db = {} must be > 0",
                db.to_f64_lossy()
            )));
        }
        if n_scales == 0 || n_shifts == 0 {
            return Err(LcwtError::InvalidGrid("empty scale or shift axis".into()));
        }
        let mut scales = Vec::with_capacity(n_scales);
        let mut a = a_min;
        for _ in 0..n_scales {
            scales.push(a);
            a = a * ratio;
        }
        let shifts = (0..n_shifts)
            .map(|k| b0 + db * T::from_usize(k).unwrap())
            .collect();
        Ok(Self {
            scales,
            shifts,
            ratio,
            db,
        })
    }

    /// Builds a grid from explicit axes, validating geometric/uniform spacing
    /// to 1e-12 relative.
    pub fn from_axes(scales: Vec<T>, shifts: Vec<T>) -> Result<Self> {
        if scales.len() < 2 || shifts.len() < 2 {
            return Err(LcwtError::InvalidGrid(
                "need at least 2 scales and 2 shifts".into(),
            ));
        }
        let tol = T::of(1e-12);
        if scales.iter().any(|&a| !(a > T::zero())) {
            return Err(LcwtError::InvalidGrid("scales must be > 0".into()));
        }
        let ratio = scales[1] / scales[0];
        if !(ratio > T::one()) {
            return Err(LcwtError::InvalidGrid(
                "scales must be strictly increasing".into(),
            ));
        }
        for w in scales.windows(2) {
            let r = w[1] / w[0];
            if ((r - ratio) / ratio).abs() > tol {
                return Err(LcwtError::InvalidGrid(format!(
                    "scale ratio varies: {} vs {}",
                    r.to_f64_lossy(),
                    ratio.to_f64_lossy()
                )));
            }
        }
        let db = shifts[1] - shifts[0];
        if !(db > T::zero()) {
            return Err(LcwtError::InvalidGrid(
                "shifts must be strictly increasing".into(),
            ));
        }
        for w in shifts.windows(2) {
            let d = w[1] - w[0];
            if ((d - db) / db).abs() > tol {
                return Err(LcwtError::InvalidGrid(format!(
                    "shift spacing varies: {} vs {}",
                    d.to_f64_lossy(),
                    db.to_f64_lossy()
                )));
            }
        }
        Ok(Self {
            scales,
            shifts,
            ratio,
            db,
        })
    }

    pub fn scales(&self) -> &[T] {
        &self.scales
    }

    pub fn shifts(&self) -> &[T] {
        &self.shifts
    }

    pub fn n_scales(&self) -> usize {
        self.scales.len()
    }

    pub fn n_shifts(&self) -> usize {
        self.shifts.len()
    }

    pub fn ratio(&self) -> T {
        self.ratio
    }

    pub fn db(&self) -> T {
        self.db
    }

    /// Scale-cell width `da_j = a_j * ln(r)`.
    pub fn da(&self, j: usize) -> T {
        self.scales[j] * self.ratio.ln()
    }

    /// Measure `da_j * db` of one cell in row `j`.
    pub fn cell_measure(&self, j: usize) -> T {
        self.da(j) * self.db
    }

    /// Total measure of the grid.
    pub fn total_measure(&self) -> T {
        let nb = T::from_usize(self.n_shifts()).unwrap();
        (0..self.n_scales()).map(|j| self.da(j) * self.db * nb).sum()
    }
}

/// A measurable subset of a [`ScaleShiftGrid`]: a boolean mask plus the
/// per-row cell measures.
#[derive(Debug, Clone)]
pub struct PlaneMeasureSet<T> {
    n_scales: usize,
    n_shifts: usize,
    mask: Vec<bool>,
    /// `da_j * db` for each scale row; cells in one row share a measure.
    row_cell_measure: Vec<T>,
}

impl<T: LcFloat> PlaneMeasureSet<T> {
    /// Empty set on the given grid.
    pub fn empty(grid: &ScaleShiftGrid<T>) -> Self {
        Self {
            n_scales: grid.n_scales(),
            n_shifts: grid.n_shifts(),
            mask: vec![false; grid.n_scales() * grid.n_shifts()],
            row_cell_measure: (0..grid.n_scales()).map(|j| grid.cell_measure(j)).collect(),
        }
    }

    /// Full grid.
    pub fn full(grid: &ScaleShiftGrid<T>) -> Self {
        let mut s = Self::empty(grid);
        s.mask.iter_mut().for_each(|m| *m = true);
        s
    }

    /// Set containing the cells whose centres satisfy the predicate.
    pub fn from_predicate(grid: &ScaleShiftGrid<T>, pred: impl Fn(T, T) -> bool) -> Self {
        let mut s = Self::empty(grid);
        for j in 0..s.n_scales {
            for k in 0..s.n_shifts {
                if pred(grid.scales()[j], grid.shifts()[k]) {
                    s.mask[j * s.n_shifts + k] = true;
                }
            }
        }
        s
    }

    pub fn n_scales(&self) -> usize {
        self.n_scales
    }

    pub fn n_shifts(&self) -> usize {
        self.n_shifts
    }

    pub fn contains(&self, j: usize, k: usize) -> bool {
        self.mask[j * self.n_shifts + k]
    }

    pub fn insert(&mut self, j: usize, k: usize) {
        self.mask[j * self.n_shifts + k] = true;
    }

    /// Number of cells in the set.
    pub fn cell_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Lebesgue measure: sum of `da_j * db` over member cells, accumulated as
    /// integer cell counts per row so that disjoint unions add exactly.
    pub fn measure(&self) -> T {
        let mut total = T::zero();
        for j in 0..self.n_scales {
            let row = &self.mask[j * self.n_shifts..(j + 1) * self.n_shifts];
            let count = row.iter().filter(|&&m| m).count();
            if count > 0 {
                total = total + self.row_cell_measure[j] * T::from_usize(count).unwrap();
            }
        }
        total
    }

    /// Complement within the same grid.
    pub fn complement(&self) -> Self {
        Self {
            n_scales: self.n_scales,
            n_shifts: self.n_shifts,
            mask: self.mask.iter().map(|m| !m).collect(),
            row_cell_measure: self.row_cell_measure.clone(),
        }
    }

    /// True when the two sets share a grid shape and cell measures.
    pub fn same_grid(&self, other: &Self) -> bool {
        self.n_scales == other.n_scales
            && self.n_shifts == other.n_shifts
            && self
                .row_cell_measure
                .iter()
                .zip(&other.row_cell_measure)
                .all(|(&a, &b)| a == b)
    }

    /// Union with another set on the same grid.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if !self.same_grid(other) {
            return Err(LcwtError::GridMismatch(
                "measure sets live on different grids".into(),
            ));
        }
        Ok(Self {
            n_scales: self.n_scales,
            n_shifts: self.n_shifts,
            mask: self
                .mask
                .iter()
                .zip(&other.mask)
                .map(|(a, b)| *a || *b)
                .collect(),
            row_cell_measure: self.row_cell_measure.clone(),
        })
    }

    /// True when the sets have no common cell.
    pub fn disjoint(&self, other: &Self) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| !(*a && *b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> ScaleShiftGrid<f64> {
        ScaleShiftGrid::geometric(0.5, 1.2, 8, -2.0, 0.25, 16).unwrap()
    }

    #[test]
    fn geometric_axes() {
        let g = grid();
        assert_eq!(g.n_scales(), 8);
        assert_eq!(g.n_shifts(), 16);
        assert!((g.scales()[3] - 0.5 * 1.2f64.powi(3)).abs() < 1e-15);
        assert!((g.shifts()[5] - (-2.0 + 5.0 * 0.25)).abs() < 1e-15);
    }

    #[test]
    fn from_axes_validates_spacing() {
        let scales: Vec<f64> = vec![1.0, 2.0, 4.0, 8.0];
        let shifts = vec![0.0, 0.5, 1.0];
        let g = ScaleShiftGrid::from_axes(scales, shifts).unwrap();
        assert!((g.ratio() - 2.0).abs() < 1e-15);

        let bad = ScaleShiftGrid::<f64>::from_axes(vec![1.0, 2.0, 3.0], vec![0.0, 0.5, 1.0]);
        assert!(matches!(bad, Err(LcwtError::InvalidGrid(_))));
    }

    #[test]
    fn empty_and_full_measure() {
        let g = grid();
        assert_eq!(PlaneMeasureSet::empty(&g).measure(), 0.0);
        let full = PlaneMeasureSet::full(&g).measure();
        assert!((full - g.total_measure()).abs() < 1e-12 * full);
    }

    #[test]
    fn measure_additive_over_disjoint_masks() {
        let g = grid();
        let left = PlaneMeasureSet::from_predicate(&g, |_, b| b < 0.0);
        let right = PlaneMeasureSet::from_predicate(&g, |_, b| b >= 0.0);
        assert!(left.disjoint(&right));
        let union = left.union(&right).unwrap();
        // Exact: same cells, same order of summation per row.
        assert_eq!(union.measure(), PlaneMeasureSet::full(&g).measure());
        assert_eq!(
            left.measure() + right.measure(),
            union.measure()
        );
    }
}
