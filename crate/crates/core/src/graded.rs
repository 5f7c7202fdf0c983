//! Explicit graded pieces of submodules of graded free modules
//! `F = S(-s_1) ⊕ ... ⊕ S(-s_r)`, and minimal generators by Nakayama counts.
//!
//! A vector of `F_k` is the concatenation of coordinate vectors of the blocks
//! `S_{k - s_i}` (empty blocks when `k < s_i`), each in the monomial basis.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactla::{kernel_basis, Echelon, QMatrix, QVec, Rat};
use crate::poly::{dim_s, monomial_basis, HomogeneousPoly, Monomial, Var};

/// Graded free module `⊕ S(-shift_i)` over `S = Q[x, y, z]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    shifts: Vec<usize>,
}

impl FreeModule {
    pub fn new(shifts: Vec<usize>) -> Self {
        FreeModule { shifts }
    }

    /// `S^r`, unshifted.
    pub fn standard(rank: usize) -> Self {
        FreeModule {
            shifts: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    fn block_dim(&self, i: usize, k: usize) -> usize {
        k.checked_sub(self.shifts[i]).map_or(0, dim_s)
    }

    pub fn dim(&self, k: usize) -> usize {
        (0..self.rank()).map(|i| self.block_dim(i, k)).sum()
    }

    /// Start offset of block `i` inside `F_k`.
    fn offset(&self, i: usize, k: usize) -> usize {
        (0..i).map(|j| self.block_dim(j, k)).sum()
    }

    /// `mono * v` for `v ∈ F_k`.
    pub fn mul_monomial(&self, v: &[Rat], k: usize, mono: &Monomial) -> QVec {
        let t = k + mono.degree() as usize;
        let mut out = vec![Rat::zero(); self.dim(t)];
        for i in 0..self.rank() {
            let Some(local) = k.checked_sub(self.shifts[i]) else {
                continue;
            };
            let src = self.offset(i, k);
            let dst = self.offset(i, t);
            for (q, m) in monomial_basis(local).iter().enumerate() {
                let c = &v[src + q];
                if !c.is_zero() {
                    out[dst + m.mul(mono).index()] = c.clone();
                }
            }
        }
        out
    }

    pub fn mul_var(&self, v: &[Rat], k: usize, var: Var) -> QVec {
        self.mul_monomial(v, k, &Monomial::var(var))
    }

    /// Element of `F` in degree `k` from one homogeneous polynomial per block.
    pub fn element(&self, k: usize, parts: &[HomogeneousPoly]) -> QVec {
        assert_eq!(parts.len(), self.rank());
        let mut out = Vec::with_capacity(self.dim(k));
        for (i, p) in parts.iter().enumerate() {
            match k.checked_sub(self.shifts[i]) {
                None => assert!(p.is_zero()),
                Some(local) => {
                    if p.is_zero() {
                        out.extend(std::iter::repeat_n(Rat::zero(), dim_s(local)));
                    } else {
                        assert_eq!(p.degree() as usize, local);
                        out.extend(p.coeffs());
                    }
                }
            }
        }
        out
    }

    /// Splits `v ∈ F_k` into its block polynomials.
    pub fn components(&self, v: &[Rat], k: usize) -> Vec<HomogeneousPoly> {
        (0..self.rank())
            .map(|i| match k.checked_sub(self.shifts[i]) {
                None => HomogeneousPoly::zero(0),
                Some(local) => {
                    let o = self.offset(i, k);
                    HomogeneousPoly::from_coeffs(local as u32, &v[o..o + dim_s(local)])
                }
            })
            .collect()
    }

    /// Matrix in degree `k` of the map `self -> target` sending the `i`-th
    /// basis element to `images[i] ∈ target_{shift_i}`.
    pub fn map_matrix(&self, target: &FreeModule, images: &[QVec], k: usize) -> QMatrix {
        assert_eq!(images.len(), self.rank());
        let mut m = QMatrix::zeros(target.dim(k), self.dim(k));
        let mut col = 0;
        for (i, img) in images.iter().enumerate() {
            let Some(local) = k.checked_sub(self.shifts[i]) else {
                continue;
            };
            for mono in monomial_basis(local) {
                let v = target.mul_monomial(img, self.shifts[i], &mono);
                for (r, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        m.set(r, col, c);
                    }
                }
                col += 1;
            }
        }
        m
    }
}

/// Per-degree bases of a graded subspace of a free module (an ideal of `S`
/// when the ambient rank is 1, a submodule of `S^3` for syzygies).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    ambient: FreeModule,
    slices: BTreeMap<usize, Vec<QVec>>,
}

impl GradedSubspace {
    pub fn new(ambient: FreeModule) -> Self {
        GradedSubspace {
            ambient,
            slices: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient.rank()
    }

    /// Stores a basis for degree `k`; vectors must be independent.
    pub fn set_slice(&mut self, k: usize, basis: Vec<QVec>) {
        debug_assert!(basis.iter().all(|v| v.len() == self.ambient.dim(k)));
        self.slices.insert(k, basis);
    }

    pub fn slice(&self, k: usize) -> &[QVec] {
        self.slices.get(&k).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, k: usize) -> usize {
        self.slice(k).len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.slices.keys().copied()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.slices.keys().next_back().copied()
    }

    /// Polynomials of a rank-1 slice.
    pub fn polys(&self, k: usize) -> Vec<HomogeneousPoly> {
        assert_eq!(self.ambient_rank(), 1);
        self.slice(k)
            .iter()
            .map(|v| HomogeneousPoly::from_coeffs(k as u32, v))
            .collect()
    }
}

/// Minimal generators found by Nakayama counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalGenerators {
    /// Degree of each generator, nondecreasing.
    pub degrees: Vec<usize>,
    /// The generators, as vectors of the ambient free module in their degree.
    pub vectors: Vec<QVec>,
}

impl MinimalGenerators {
    pub fn count(&self) -> usize {
        self.degrees.len()
    }

    pub fn count_in(&self, k: usize) -> usize {
        self.degrees.iter().filter(|&&d| d == k).count()
    }
}

/// Nakayama scan: in each degree `k` of `sub`, the number of minimal
/// generators is `dim V_k - dim(S_1 V_{k-1})`; generators are taken greedily
/// from the stored basis of `V_k` as a complement of `S_1 V_{k-1}`.
pub fn nakayama(sub: &GradedSubspace) -> MinimalGenerators {
    let amb = sub.ambient();
    let mut degrees = Vec::new();
    let mut vectors = Vec::new();
    let Some(top) = sub.max_degree() else {
        return MinimalGenerators { degrees, vectors };
    };
    for k in 0..=top {
        let basis = sub.slice(k);
        if basis.is_empty() {
            continue;
        }
        let mut ech = Echelon::new(amb.dim(k));
        if k > 0 {
            for v in sub.slice(k - 1) {
                for var in Var::ALL {
                    ech.insert(&amb.mul_var(v, k - 1, var));
                }
            }
        }
        for v in basis {
            if ech.rank() == basis.len() {
                break;
            }
            if ech.insert(v) {
                degrees.push(k);
                vectors.push(v.clone());
            }
        }
    }
    MinimalGenerators { degrees, vectors }
}

/// Kernel slices `K_k = ker(F_k -> G_k)` for `k` in `lo..=hi`, where the map
/// sends the `i`-th basis element of `source` to `images[i]`.
pub fn kernel_slices(
    source: &FreeModule,
    target: &FreeModule,
    images: &[QVec],
    lo: usize,
    hi: usize,
) -> GradedSubspace {
    let mut out = GradedSubspace::new(source.clone());
    for k in lo..=hi {
        let m = source.map_matrix(target, images, k);
        out.set_slice(k, kernel_basis(&m));
    }
    out
}

/// Column-space basis of a matrix, as reduced echelon rows.
pub fn image_basis(m: &QMatrix) -> Vec<QVec> {
    let mut e = Echelon::new(m.rows());
    for c in 0..m.cols() {
        e.insert(&m.column(c));
    }
    e.rref()
}
