//! Graded data of the Jacobian ideal `J_f = (f_x, f_y, f_z)`: the Milnor
//! algebra `M(f) = S/J_f`, the Tjurina number, the minimal degree of a
//! Jacobian relation, the relation module `AR(f)` and the coincidence
//! threshold with a smooth curve of the same degree.

use crate::error::{Error, Result};
use crate::exactla::kernel_basis;
use crate::graded::{image_basis, nakayama, FreeModule, GradedSubspace, MinimalGenerators};
use crate::inverse::QuotientRing;
use crate::poly::{dim_s, dim_s_signed, jacobian_map_matrix, partials, HomogeneousPoly};

/// Default scan bound `3d - 3`; never below `3d - 4`, where the Tjurina
/// number is read off.
pub fn default_kmax(d: u32) -> usize {
    3 * d as usize - 3
}

pub fn clamp_kmax(d: u32, kmax: Option<usize>) -> usize {
    let floor = 3 * d as usize - 4;
    kmax.unwrap_or_else(|| default_kmax(d)).max(floor)
}

/// Degrees computed beyond the scan bound.
pub const SCAN_MARGIN: usize = 2;

/// `M(f)` through degree `kmax` with the numerical invariants read from it.
#[derive(Clone, Debug)]
pub struct JacobianData {
    f: HomogeneousPoly,
    kmax: usize,
    milnor: QuotientRing,
    tau: usize,
    mdr: usize,
}

impl JacobianData {
    /// Computes `M(f)` in degrees `0..=kmax + SCAN_MARGIN` (`kmax` clamped to
    /// at least `3d - 4`)
    /// and checks that its Hilbert function is constant at `3d - 5, 3d - 4`.
    pub fn new(f: &HomogeneousPoly, kmax: Option<usize>) -> Result<Self> {
        let d = f.degree();
        if d < 2 {
            return Err(Error::DegreeTooSmall(d));
        }
        let kmax = clamp_kmax(d, kmax);
        let (fx, fy, fz) = partials(f);
        // two extra degrees so that vanishing checks at the scan bound look
        // past it
        let milnor = QuotientRing::of_ideal(&[fx, fy, fz], kmax + SCAN_MARGIN);
        let k = 3 * d as usize - 5;
        let (first, second) = (milnor.dim(k), milnor.dim(k + 1));
        if first != second {
            return Err(Error::NonReducedInput { k, first, second });
        }
        let dm1 = d as usize - 1;
        // dim AR(f)_m = 3 dim S_m - dim J_{m+d-1}; the Koszul relations
        // give a nonzero value at m = d - 1 at the latest
        let mdr = (0..=dm1)
            .find(|&m| 3 * dim_s(m) > milnor.ideal_dim(m + dm1))
            .expect("Koszul relations exist in degree d - 1");
        Ok(JacobianData {
            f: f.clone(),
            kmax,
            milnor,
            tau: first,
            mdr,
        })
    }

    pub fn f(&self) -> &HomogeneousPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    /// `T = 3d - 6`.
    pub fn t(&self) -> usize {
        3 * self.degree() as usize - 6
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn milnor(&self) -> &QuotientRing {
        &self.milnor
    }

    /// `dim M(f)_k` for `k = 0..=kmax`.
    pub fn milnor_dims(&self) -> Vec<usize> {
        self.milnor.dims()[..=self.kmax].to_vec()
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn mdr(&self) -> usize {
        self.mdr
    }

    /// `dim AR(f)_m`, by rank-nullity on `(S_m)^3 -> J_{m+d-1}`.
    pub fn ar_dim(&self, m: usize) -> usize {
        let k = m + self.degree() as usize - 1;
        3 * dim_s(m) - self.milnor.ideal_dim(k)
    }

    pub fn smooth_reference_dims(&self) -> Vec<usize> {
        smooth_reference_dims(self.degree(), self.kmax)
    }

    /// Coincidence threshold with a smooth curve of the same degree.
    pub fn ct(&self) -> Result<usize> {
        if self.tau == 0 {
            return Err(Error::SmoothCurve);
        }
        let smooth = self.smooth_reference_dims();
        let first_diff = self
            .milnor_dims()
            .iter()
            .zip(&smooth)
            .position(|(a, b)| a != b)
            .ok_or_else(|| Error::Internal("Milnor algebra agrees with the smooth one".into()))?;
        first_diff
            .checked_sub(1)
            .ok_or_else(|| Error::Internal("Milnor algebra differs in degree 0".into()))
    }
}

/// Explicit bases of `J_{f,k}` for `k <= kmax`: column spaces of the Jacobian
/// map `(S_{k-d+1})^3 -> S_k`.
pub fn jacobian_slices(f: &HomogeneousPoly, kmax: usize) -> GradedSubspace {
    let d = f.degree() as usize;
    let mut out = GradedSubspace::new(FreeModule::standard(1));
    for k in 0..=kmax {
        let basis = match k.checked_sub(d - 1) {
            None => Vec::new(),
            Some(m) => image_basis(&jacobian_map_matrix(f, m)),
        };
        out.set_slice(k, basis);
    }
    out
}

/// `dim M(f)_k` for `k = 0..=kmax`.
pub fn milnor_dims(f: &HomogeneousPoly, kmax: usize) -> Vec<usize> {
    let (fx, fy, fz) = partials(f);
    QuotientRing::of_ideal(&[fx, fy, fz], kmax).dims()
}

/// Tjurina number of a reduced curve.
pub fn tjurina(f: &HomogeneousPoly) -> Result<usize> {
    Ok(JacobianData::new(f, None)?.tau())
}

/// Minimal degree of a Jacobian relation, by scanning the Jacobian map
/// kernels directly.
pub fn mdr(f: &HomogeneousPoly) -> usize {
    let d = f.degree() as usize;
    (0..d)
        .find(|&m| !kernel_basis(&jacobian_map_matrix(f, m)).is_empty())
        .unwrap_or(d - 1)
}

/// `AR(f)_m` for `m` in `lo..=hi`, as kernels of the Jacobian map inside
/// `S^3` (blocks `a, b, c`).
pub fn ar_slices(f: &HomogeneousPoly, lo: usize, hi: usize) -> GradedSubspace {
    let mut out = GradedSubspace::new(FreeModule::standard(3));
    for m in lo..=hi {
        out.set_slice(m, kernel_basis(&jacobian_map_matrix(f, m)));
    }
    out
}

/// Minimal generators of `AR(f)` found in degrees `<= hi`.
pub fn ar_min_generators(f: &HomogeneousPoly, hi: usize) -> MinimalGenerators {
    nakayama(&ar_slices(f, 0, hi))
}

/// Hilbert function of `S/(x^{d-1}, y^{d-1}, z^{d-1})`, the Milnor algebra
/// of any smooth curve of degree `d`: coefficients of
/// `((1 - t^{d-1}) / (1 - t))^3`.
pub fn smooth_reference_dims(d: u32, kmax: usize) -> Vec<usize> {
    let e = d as i64 - 1;
    (0..=kmax as i64)
        .map(|k| {
            // inclusion-exclusion over the three cubes
            let v = dim_s_signed(k) as i64 - 3 * dim_s_signed(k - e) as i64
                + 3 * dim_s_signed(k - 2 * e) as i64
                - dim_s_signed(k - 3 * e) as i64;
            v as usize
        })
        .collect()
}
