//! Floating-point samples of a surface on a square grid of the real plane.

use num_complex::Complex64;

use crate::algebra::RationalEvaluator;
use crate::matrix::MatrixEvaluator;
use crate::par;
use crate::projector::ProjectorTower;
use crate::surface::{gauss_curvature, gell_mann, su_coordinates, surface_from_tower, SurfaceError};

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub xi1: f64,
    pub xi2: f64,
    /// `None` when some denominator vanishes at the point.
    pub values: Option<SampleValues>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleValues {
    /// Coordinates in the `iλ_a` basis of `su(N)`.
    pub coords: Vec<f64>,
    pub lagrangian: f64,
    pub charge_density: f64,
    pub curvature: f64,
}

pub struct SurfaceSampler {
    n: usize,
    f: MatrixEvaluator,
    l: RationalEvaluator,
    q: RationalEvaluator,
    k: RationalEvaluator,
    basis: Vec<Vec<Complex64>>,
}

impl SurfaceSampler {
    pub fn new(tower: &ProjectorTower, k: usize) -> Result<Self, SurfaceError> {
        let surface = surface_from_tower(tower, k)?;
        let p = &tower.elements()[k];
        let n = tower.dim();
        Ok(Self {
            n,
            f: surface.matrix().evaluator(),
            l: RationalEvaluator::new(&p.lagrangian()),
            q: RationalEvaluator::new(&p.charge_density()),
            k: RationalEvaluator::new(&gauss_curvature(p)?),
            basis: gell_mann(n),
        })
    }

    /// Number of `su(N)` coordinates, `N² − 1`.
    pub fn coord_count(&self) -> usize {
        self.basis.len()
    }

    pub fn at(&self, xi1: f64, xi2: f64) -> SamplePoint {
        let z = Complex64::new(xi1, xi2);
        let values = (|| {
            let f = self.f.eval(z).ok()?;
            let vals = SampleValues {
                coords: su_coordinates(&f, self.n, &self.basis),
                lagrangian: self.l.eval(z).ok()?.re,
                charge_density: self.q.eval(z).ok()?.re,
                curvature: self.k.eval(z).ok()?.re,
            };
            let finite = vals.coords.iter().all(|x| x.is_finite())
                && vals.lagrangian.is_finite()
                && vals.charge_density.is_finite()
                && vals.curvature.is_finite();
            finite.then_some(vals)
        })();
        SamplePoint { xi1, xi2, values }
    }

    /// `res × res` grid over `[−extent, extent]²`, row-major with `ξ₂`
    /// varying fastest.
    pub fn grid(&self, extent: f64, res: usize) -> Vec<SamplePoint> {
        let coord = |i: usize| if res == 1 { 0.0 } else { -extent + 2.0 * extent * i as f64 / (res - 1) as f64 };
        par::map_indices(res * res, |idx| self.at(coord(idx / res), coord(idx % res)))
    }
}
