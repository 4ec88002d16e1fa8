//! Uniform meshes and the three imbedded refinements used by the
//! convergence studies.

use crate::error::{Error, Result};

/// Uniform 1-D mesh: `m` cells of width `dx` covering `[a, b]`.
///
/// Cell `k` spans `[a + k·dx, a + (k+1)·dx]`; positions are always computed
/// by multiplication so that interface positions agree across refinement
/// levels to rounding error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    a: f64,
    b: f64,
    m: usize,
    dx: f64,
}

impl Grid1D {
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !(b > a) || m == 0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::DegenerateDomain { a, b, cells: m });
        }
        Ok(Grid1D {
            a,
            b,
            m,
            dx: (b - a) / m as f64,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of cells.
    pub fn cells(&self) -> usize {
        self.m
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Position of interface `k`, `k = 0..=m`.
    pub fn interface(&self, k: usize) -> f64 {
        self.a + k as f64 * self.dx
    }

    /// Position of the center of cell `k`, `k = 0..m`.
    pub fn center(&self, k: usize) -> f64 {
        self.a + (k as f64 + 0.5) * self.dx
    }
}

/// Selector for one member of an [`ImbeddedTriple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridLevel {
    Coarse,
    Mid,
    Fine,
}

/// Three imbedded uniform grids with `N`, `2N`, and `4N` cells on the same
/// interval, so every interface of the coarse grid is also an interface of
/// the mid and fine grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImbeddedTriple {
    coarse: Grid1D,
    mid: Grid1D,
    fine: Grid1D,
}

impl ImbeddedTriple {
    /// Builds the triple with `n >= 2` coarse cells on `[a, b]`.
    pub fn build(a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegenerateDomain { a, b, cells: n });
        }
        Ok(ImbeddedTriple {
            coarse: Grid1D::new(a, b, n)?,
            mid: Grid1D::new(a, b, 2 * n)?,
            fine: Grid1D::new(a, b, 4 * n)?,
        })
    }

    pub fn coarse(&self) -> &Grid1D {
        &self.coarse
    }

    pub fn mid(&self) -> &Grid1D {
        &self.mid
    }

    pub fn fine(&self) -> &Grid1D {
        &self.fine
    }

    pub fn level(&self, level: GridLevel) -> &Grid1D {
        match level {
            GridLevel::Coarse => &self.coarse,
            GridLevel::Mid => &self.mid,
            GridLevel::Fine => &self.fine,
        }
    }

    /// Interface index of the `j`-th coarse endpoint on the requested level
    /// (`j`, `2j`, or `4j`).
    pub fn coincident_index(&self, j: usize, level: GridLevel) -> Result<usize> {
        if j > self.coarse.cells() {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.coarse.cells(),
            });
        }
        Ok(match level {
            GridLevel::Coarse => j,
            GridLevel::Mid => 2 * j,
            GridLevel::Fine => 4 * j,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_scale_spacings() {
        let t = ImbeddedTriple::build(0.0, 10.0, 1000).unwrap();
        assert_eq!(t.coarse().dx(), 0.01);
        assert_eq!(t.fine().dx(), 0.0025);
        assert_eq!(t.mid().cells(), 2000);
    }

    #[test]
    fn coarse_interfaces_present_in_finer_grids() {
        let t = ImbeddedTriple::build(0.0, 1.0, 2).unwrap();
        for j in 0..=2 {
            let x = t.coarse().interface(j);
            let xm = t.mid().interface(2 * j);
            let xf = t.fine().interface(4 * j);
            assert!((x - xm).abs() <= 4.0 * f64::EPSILON);
            assert!((x - xf).abs() <= 4.0 * f64::EPSILON);
        }
        assert_eq!(t.coarse().interface(1), 0.5);
    }

    #[test]
    fn fine_cell_centers() {
        let t = ImbeddedTriple::build(0.0, 10.0, 5).unwrap();
        assert_eq!(t.fine().cells(), 20);
        assert!((t.fine().center(0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn coincident_indices() {
        let t = ImbeddedTriple::build(0.0, 10.0, 8).unwrap();
        assert_eq!(t.coincident_index(3, GridLevel::Fine).unwrap(), 12);
        assert_eq!(t.coincident_index(3, GridLevel::Mid).unwrap(), 6);
        assert_eq!(t.coincident_index(0, GridLevel::Coarse).unwrap(), 0);
        assert!(t.coincident_index(9, GridLevel::Fine).is_err());
    }

    #[test]
    fn rejects_degenerate_domains() {
        assert!(ImbeddedTriple::build(0.0, 10.0, 1).is_err());
        assert!(ImbeddedTriple::build(1.0, 1.0, 4).is_err());
        assert!(ImbeddedTriple::build(2.0, 1.0, 4).is_err());
    }

    #[test]
    fn cell_widths_sum_to_domain_length() {
        let g = Grid1D::new(0.0, 10.0, 977).unwrap();
        let sum: f64 = (0..g.cells()).map(|_| g.dx()).sum();
        assert!((sum - 10.0).abs() <= 977.0 * f64::EPSILON * 10.0);
    }

    #[test]
    fn coincidence_across_all_coarse_endpoints() {
        let t = ImbeddedTriple::build(-1.5, 8.25, 37).unwrap();
        let scale = t.coarse().b().abs().max(t.coarse().a().abs());
        for j in 0..=37 {
            let x = t.coarse().interface(j);
            for (lvl, idx) in [(GridLevel::Mid, 2 * j), (GridLevel::Fine, 4 * j)] {
                let y = t.level(lvl).interface(idx);
                assert!((x - y).abs() <= 8.0 * f64::EPSILON * scale.max(1.0));
            }
        }
    }
}
