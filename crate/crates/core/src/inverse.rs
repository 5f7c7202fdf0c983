//! Graded quotients `S/W` described through their annihilators.
//!
//! For a homogeneous ideal `W`, degree `k` is stored as the reduced echelon
//! basis of `W_k^⊥ ⊂ S_k^*` (functionals on `S_k` in the dual monomial basis).
//! These spaces have dimension `dim (S/W)_k`, which stays small even when
//! `S_k` is large, so all quotient computations run on small matrices:
//!
//! * ideal generated in degrees `<= k-1` plus new generators in degree `k`:
//!   `W_k^⊥ = {λ : λ∘x, λ∘y, λ∘z ∈ W_{k-1}^⊥, λ(g) = 0 for new g}`;
//! * saturation, descending: `I_k^⊥ = span{λ∘x, λ∘y, λ∘z : λ ∈ I_{k+1}^⊥}`,
//!   which is the dual of `I_k = {g : x g, y g, z g ∈ I_{k+1}}`.
//!
//! Here `(λ∘v)(g) = λ(v g)`. The class of `g ∈ S_k` in `(S/W)_k` has
//! coordinates `(ρ_1(g), ..., ρ_r(g))` for the echelon rows `ρ_j`; in these
//! coordinates multiplication by `v` has entries `(ρ'_i ∘ v)[pivot_j]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactla::{kernel_from_echelon, make_primitive, rank, to_primitive, Echelon, QMatrix, QVec, Rat};
use crate::graded::GradedSubspace;
use crate::graded::FreeModule;
use crate::poly::{dim_s, monomial_basis, HomogeneousPoly, Monomial, Var};

/// Reduced echelon basis of an annihilator `W_k^⊥` in degree `k`.
///
/// `rows` are the rational rows with pivot entries 1; `ints` are the same
/// rows scaled to primitive integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPiece {
    degree: usize,
    rows: Vec<QVec>,
    ints: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl DualPiece {
    /// All of `S_k^*` (the ideal is zero in degree `k`).
    pub fn full(k: usize) -> Self {
        let n = dim_s(k);
        let ints: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = BigInt::one();
                v
            })
            .collect();
        DualPiece {
            degree: k,
            rows: ints
                .iter()
                .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
                .collect(),
            ints,
            pivots: (0..n).collect(),
        }
    }

    pub fn empty(k: usize) -> Self {
        DualPiece {
            degree: k,
            rows: Vec::new(),
            ints: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// From primitive integer rows each nonzero at its own pivot and zero at
    /// the pivots of the others.
    fn from_reduced(k: usize, rows: Vec<(usize, Vec<BigInt>)>) -> Self {
        let (pivots, ints): (Vec<usize>, Vec<Vec<BigInt>>) = rows.into_iter().unzip();
        let rows = ints
            .iter()
            .zip(&pivots)
            .map(|(row, &p)| row.iter().map(|x| Rat::new(x.clone(), row[p].clone())).collect())
            .collect();
        DualPiece {
            degree: k,
            rows,
            ints,
            pivots,
        }
    }

    fn from_echelon(k: usize, e: &Echelon) -> Self {
        let ints = e.reduced_int();
        let rows = ints
            .iter()
            .zip(e.pivots())
            .map(|(row, &p)| row.iter().map(|x| Rat::new(x.clone(), row[p].clone())).collect())
            .collect();
        DualPiece {
            degree: k,
            rows,
            ints,
            pivots: e.pivots().to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `dim (S/W)_k`.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == dim_s(self.degree)
    }

    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of the class of `g ∈ S_k` in `(S/W)_k`.
    pub fn coords(&self, g: &[Rat]) -> QVec {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(g)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Coefficients of a functional `λ ∈ span(rows)` in the row basis.
    pub fn express(&self, lambda: &[Rat]) -> QVec {
        self.pivots.iter().map(|&p| lambda[p].clone()).collect()
    }

    /// Basis of `W_k` (the kernel of the annihilator), one vector per
    /// non-pivot monomial.
    pub fn ideal_basis(&self) -> Vec<QVec> {
        let n = dim_s(self.degree);
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rat::zero(); n];
                v[free] = Rat::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[free].is_zero() {
                        v[p] = -row[free].clone();
                    }
                }
                v
            })
            .collect()
    }

    pub fn contains_poly(&self, g: &HomogeneousPoly) -> bool {
        g.is_zero() || self.coords(&g.coeffs()).iter().all(Zero::is_zero)
    }
}

/// `λ∘v` for `λ ∈ S_{k+1}^*`, as a functional on `S_k`.
fn contract(lambda: &[Rat], k: usize, v: Var) -> QVec {
    monomial_basis(k)
        .iter()
        .map(|m| lambda[m.times(v).index()].clone())
        .collect()
}

/// Index in `S_k` of `v * m_q` for every monomial `m_q` of degree `k-1`.
fn shift_table(k: usize, v: Var) -> Vec<usize> {
    monomial_basis(k - 1)
        .iter()
        .map(|m| m.times(v).index())
        .collect()
}

/// `{λ ∈ S_k^* : λ∘x, λ∘y, λ∘z ∈ span(prev)}`.
///
/// Monomials of degree `k` divisible by `x` are `x * m_q` with the same
/// index `q`, so `λ` is determined by `λ∘x = Σ α_i ρ_i` together with its
/// values `u` on the `k+1` monomials `y^b z^{k-b}`. The unknowns are
/// `(α, u)`; the conditions on `λ∘y` and `λ∘z` are the non-pivot equations
/// of membership in `span(prev)`.
fn ascend(prev: &DualPiece) -> DualPiece {
    let k = prev.degree + 1;
    if prev.is_full() {
        return DualPiece::full(k);
    }
    let s = dim_s(k - 1);
    let r = prev.dim();
    let n = r + k + 1;
    let rho = &prev.ints;
    let piv = prev.pivots();
    let mut is_pivot = vec![false; s];
    for &p in piv {
        is_pivot[p] = true;
    }
    // λ∘x = Σ β_l rho_l; the rational row i is rho_i / c_i, and scaling the
    // constraints by lcm(c_i) keeps everything integral
    let lcm = piv
        .iter()
        .zip(rho)
        .fold(BigInt::one(), |acc, (&p, row)| acc.lcm(&row[p]));
    let weights: Vec<BigInt> = piv.iter().zip(rho).map(|(&p, row)| &lcm / &row[p]).collect();

    // linear expression of λ[t] in the unknowns (β, u)
    let expr = |t: usize| -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); n];
        if t < s {
            for (l, row) in rho.iter().enumerate() {
                e[l] = row[t].clone();
            }
        } else {
            e[r + (t - s)] = BigInt::one();
        }
        e
    };

    let tables: Vec<(Vec<usize>, Vec<Vec<BigInt>>)> = [Var::Y, Var::Z]
        .iter()
        .map(|&v| {
            let t = shift_table(k, v);
            let at = piv.iter().map(|&p| expr(t[p])).collect();
            (t, at)
        })
        .collect();
    let build = |(slot, q): (usize, usize)| -> Vec<BigInt> {
        let (t, at_pivots) = &tables[slot];
        let mut row: Vec<BigInt> = expr(t[q]).into_iter().map(|x| x * &lcm).collect();
        for (i, ap) in at_pivots.iter().enumerate() {
            let c = &rho[i][q];
            if c.is_zero() {
                continue;
            }
            let c = c * &weights[i];
            for (dst, a) in row.iter_mut().zip(ap) {
                if !a.is_zero() {
                    *dst -= &c * a;
                }
            }
        }
        row
    };
    let free: Vec<usize> = (0..s).filter(|&q| !is_pivot[q]).collect();
    let work: Vec<(usize, usize)> = (0..2).flat_map(|slot| free.iter().map(move |&q| (slot, q))).collect();

    let mut constraints = Echelon::new(n);
    for chunk in work.chunks(CHUNK) {
        let rows: Vec<Vec<BigInt>> = chunk.par_iter().map(|&job| build(job)).collect();
        for mut row in rows {
            // unknowns are stored in reverse order, see below
            row.reverse();
            constraints.insert_int(row);
        }
        if constraints.rank() == n {
            return DualPiece::empty(k);
        }
    }

    // With the unknowns reversed, the kernel vector of each free unknown f
    // is 1 at f, 0 at the other free unknowns and nonzero otherwise only at
    // unknowns after f. Since β_l sits at column P_l of λ (factor c_l), u_j
    // at column s + j, and the order of unknowns follows the column order,
    // the resulting λ already form the reduced echelon basis.
    let free_cols: Vec<usize> = (0..n)
        .filter(|c| constraints.pivots().binary_search(c).is_err())
        .map(|c| n - 1 - c)
        .collect();
    let mut out: Vec<(usize, Vec<BigInt>)> = kernel_from_echelon(&constraints)
        .into_iter()
        .zip(free_cols)
        .map(|(mut w, free)| {
            w.reverse();
            let w = to_primitive(&w);
            let mut lambda = vec![BigInt::zero(); dim_s(k)];
            for (i, row) in rho.iter().enumerate() {
                let a = &w[i];
                if a.is_zero() {
                    continue;
                }
                for (dst, c) in lambda[..s].iter_mut().zip(row) {
                    if !c.is_zero() {
                        *dst += a * c;
                    }
                }
            }
            lambda[s..].clone_from_slice(&w[r..]);
            let pivot = if free < r { piv[free] } else { s + free - r };
            make_primitive(&mut lambda);
            (pivot, lambda)
        })
        .collect();
    out.sort_by_key(|(p, _)| *p);
    DualPiece::from_reduced(k, out)
}

/// Constraint rows built in parallel per batch before sequential insertion.
const CHUNK: usize = 64;

/// Restricts `piece` to the functionals vanishing on every generator.
fn impose(piece: DualPiece, gens: &[&HomogeneousPoly]) -> DualPiece {
    if gens.is_empty() || piece.dim() == 0 {
        return piece;
    }
    let k = piece.degree;
    let cols = piece.dim();
    let vals: Vec<QVec> = gens.iter().map(|g| piece.coords(&g.coeffs())).collect();
    let mut e = Echelon::new(cols);
    for v in &vals {
        e.insert(v);
    }
    if e.rank() == 0 {
        return piece;
    }
    let mut out = Echelon::new(dim_s(k));
    for c in kernel_from_echelon(&e) {
        let mut lambda = vec![Rat::zero(); dim_s(k)];
        for (a, row) in c.iter().zip(piece.rows()) {
            if a.is_zero() {
                continue;
            }
            for (dst, x) in lambda.iter_mut().zip(row) {
                if !x.is_zero() {
                    *dst += a * x;
                }
            }
        }
        out.insert(&lambda);
    }
    DualPiece::from_echelon(k, &out)
}

/// One descending saturation step: `I_k^⊥` from `I_{k+1}^⊥`, where `floor`
/// is `W_k^⊥` for an ideal `W ⊂ I` (so the result lies inside `floor`).
///
/// `(b∘x)[q] = b[q]`, so the rows of `next` whose pivot is divisible by `x`
/// truncate to independent reduced rows; if there are already `dim floor`
/// of them the step is done.
fn descend(next: &DualPiece, floor: &DualPiece) -> DualPiece {
    let k = next.degree - 1;
    let s = dim_s(k);
    let leading = next.pivots().iter().filter(|&&p| p < s).count();
    if leading == floor.dim() {
        return floor.clone();
    }
    let mut e = Echelon::new(s);
    for (row, &p) in next.ints.iter().zip(next.pivots()) {
        if p < s {
            e.insert_int(row[..s].to_vec());
        }
    }
    'outer: for row in next.rows() {
        for v in [Var::Y, Var::Z] {
            if e.rank() == floor.dim() {
                break 'outer;
            }
            e.insert(&contract(row, k, v));
        }
    }
    DualPiece::from_echelon(k, &e)
}

/// The graded quotient `S/W` in degrees `0..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    pieces: Vec<DualPiece>,
}

impl QuotientRing {
    /// `S/(gens)` in degrees `0..=top`.
    pub fn of_ideal(gens: &[HomogeneousPoly], top: usize) -> Self {
        let mut pieces: Vec<DualPiece> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let base = match pieces.last() {
                None => DualPiece::full(0),
                Some(prev) => ascend(prev),
            };
            let new: Vec<&HomogeneousPoly> = gens
                .iter()
                .filter(|g| !g.is_zero() && g.degree() as usize == k)
                .collect();
            pieces.push(impose(base, &new));
        }
        QuotientRing { pieces }
    }

    /// Saturation of `self` with base degree `base`: the result agrees with
    /// `self` in degrees `>= base` and is obtained below by descent.
    pub fn saturate_from(&self, base: usize) -> Self {
        assert!(base <= self.top());
        let mut pieces = self.pieces.clone();
        for k in (0..base).rev() {
            pieces[k] = descend(&pieces[k + 1], &self.pieces[k]);
        }
        QuotientRing { pieces }
    }

    pub fn top(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, k: usize) -> &DualPiece {
        &self.pieces[k]
    }

    /// `dim (S/W)_k`.
    pub fn dim(&self, k: usize) -> usize {
        self.pieces[k].dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(DualPiece::dim).collect()
    }

    /// `dim W_k`.
    pub fn ideal_dim(&self, k: usize) -> usize {
        dim_s(k) - self.dim(k)
    }

    /// Explicit bases of `W_k` for `k` in `lo..=hi`.
    pub fn ideal_slices(&self, lo: usize, hi: usize) -> GradedSubspace {
        let mut out = GradedSubspace::new(FreeModule::standard(1));
        for k in lo..=hi.min(self.top()) {
            out.set_slice(k, self.pieces[k].ideal_basis());
        }
        out
    }

    /// Matrix of multiplication by `v`: `(S/W)_k -> (S/W)_{k+1}`.
    pub fn mult_matrix(&self, k: usize, v: Var) -> QMatrix {
        let src = &self.pieces[k];
        let dst = &self.pieces[k + 1];
        let mut m = QMatrix::zeros(dst.dim(), src.dim());
        let targets: Vec<usize> = src
            .pivots()
            .iter()
            .map(|&p| monomial_basis(k)[p].times(v).index())
            .collect();
        for (i, row) in dst.rows().iter().enumerate() {
            for (j, &t) in targets.iter().enumerate() {
                if !row[t].is_zero() {
                    m.set(i, j, row[t].clone());
                }
            }
        }
        m
    }

    /// The quotient as a module given by its multiplication matrices.
    pub fn module(&self) -> GradedModule {
        let top = self.top();
        let maps = (0..top)
            .map(|k| Var::ALL.map(|v| self.mult_matrix(k, v)))
            .collect();
        GradedModule {
            dims: self.dims(),
            maps,
            vanishes_above_top: self.dim(top) == 0,
        }
    }

    /// Coordinates, in `self`, of the subspace `U_k / W_k` of `(S/W)_k`
    /// for an ideal `U ⊇ W` given by its own quotient `sup = S/U`:
    /// the kernel of `(S/W)_k -> (S/U)_k`.
    pub fn sub_quotient_basis(&self, sup: &QuotientRing, k: usize) -> Vec<QVec> {
        let mine = &self.pieces[k];
        let theirs = &sup.pieces[k];
        // each functional of U_k^⊥ lies in W_k^⊥; express it in our rows
        let m = QMatrix::from_rows(
            mine.dim(),
            theirs.rows().iter().map(|b| mine.express(b)).collect(),
        );
        let mut e = Echelon::new(mine.dim());
        for r in 0..m.rows() {
            e.insert(m.row(r));
        }
        let mut basis = Echelon::new(mine.dim());
        for v in kernel_from_echelon(&e) {
            basis.insert(&v);
        }
        basis.rref()
    }
}

/// A graded module over `S` with finite-dimensional pieces in degrees
/// `0..=top`, presented by the matrices of multiplication by `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    dims: Vec<usize>,
    /// `maps[k][v]`: `M_k -> M_{k+1}` for `k < top`.
    maps: Vec<[QMatrix; 3]>,
    vanishes_above_top: bool,
}

fn var_slot(v: Var) -> usize {
    match v {
        Var::X => 0,
        Var::Y => 1,
        Var::Z => 2,
    }
}

impl GradedModule {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// `dim M_k`; degrees beyond `top` are zero only for modules known to
    /// vanish there.
    pub fn dim(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        let k = k as usize;
        if k > self.top() {
            assert!(self.vanishes_above_top, "degree {k} beyond computed range");
            return 0;
        }
        self.dims[k]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn vanishes_above_top(&self) -> bool {
        self.vanishes_above_top
    }

    /// Multiplication by `v` from degree `k`.
    pub fn mult(&self, k: i64, v: Var) -> QMatrix {
        let rows = self.dim(k + 1);
        let cols = self.dim(k);
        if k < 0 || rows == 0 || cols == 0 {
            return QMatrix::zeros(rows, cols);
        }
        self.maps[k as usize][var_slot(v)].clone()
    }

    /// Multiplication by the linear form `a x + b y + c z` from degree `k`.
    pub fn mult_linear(&self, k: i64, l: &HomogeneousPoly) -> QMatrix {
        assert_eq!(l.degree(), 1);
        let rows = self.dim(k + 1);
        let cols = self.dim(k);
        let mut out = QMatrix::zeros(rows, cols);
        for v in Var::ALL {
            let c = l.coeff(&Monomial::var(v));
            if c.is_zero() {
                continue;
            }
            let m = self.mult(k, v);
            for i in 0..rows {
                for j in 0..cols {
                    let e = m.get(i, j);
                    if !e.is_zero() {
                        let s = out.get(i, j) + &c * e;
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }

    /// Submodule with the given per-degree bases (reduced echelon rows in
    /// this module's coordinates). Returns `None` if the bases are not
    /// closed under multiplication.
    pub fn submodule(&self, bases: &[QVec2]) -> Option<GradedModule> {
        assert_eq!(bases.len(), self.dims.len());
        let pivots: Vec<Vec<usize>> = bases
            .iter()
            .map(|b| {
                b.iter()
                    .map(|row| row.iter().position(|c| !c.is_zero()).expect("nonzero row"))
                    .collect()
            })
            .collect();
        let mut maps = Vec::with_capacity(self.top());
        for k in 0..self.top() {
            let mut slot: Vec<QMatrix> = Vec::with_capacity(3);
            for v in Var::ALL {
                let m = &self.maps[k][var_slot(v)];
                let mut out = QMatrix::zeros(bases[k + 1].len(), bases[k].len());
                let mut target = Echelon::new(self.dims[k + 1]);
                for row in &bases[k + 1] {
                    target.insert(row);
                }
                for (j, e) in bases[k].iter().enumerate() {
                    let img = m.mul_vec(e);
                    if !target.contains(&img) {
                        return None;
                    }
                    for (i, &p) in pivots[k + 1].iter().enumerate() {
                        out.set(i, j, img[p].clone());
                    }
                }
                slot.push(out);
            }
            let [a, b, c]: [QMatrix; 3] = slot.try_into().expect("three maps");
            maps.push([a, b, c]);
        }
        Some(GradedModule {
            dims: bases.iter().map(Vec::len).collect(),
            maps,
            vanishes_above_top: self.vanishes_above_top
                || bases.last().is_some_and(|b| b.is_empty()),
        })
    }

    /// Minimal generator count in each degree: `dim M_k - dim(S_1 M_{k-1})`.
    pub fn generator_counts(&self) -> Vec<usize> {
        (0..=self.top())
            .map(|k| {
                let n = self.dims[k];
                if k == 0 || n == 0 {
                    return n;
                }
                let mut e = Echelon::new(n);
                for v in Var::ALL {
                    let m = &self.maps[k - 1][var_slot(v)];
                    for c in 0..m.cols() {
                        e.insert(&m.column(c));
                    }
                }
                n - e.rank()
            })
            .collect()
    }

    /// Graded Betti number `β_{i,j} = dim Tor_i(M, Q)_j`, from the Koszul
    /// complex `M_{j-3} -> M_{j-2}^3 -> M_{j-1}^3 -> M_j`.
    pub fn betti(&self, i: usize, j: i64) -> usize {
        let d = |k: i64| self.dim(k);
        let kdim = [d(j), 3 * d(j - 1), 3 * d(j - 2), d(j - 3)];
        let ranks = [
            0,
            rank(&self.koszul_d1(j)),
            rank(&self.koszul_d2(j)),
            rank(&self.koszul_d3(j)),
            0,
        ];
        kdim[i] - ranks[i] - ranks[i + 1]
    }

    /// All Betti numbers in internal degrees `0..=jmax`.
    pub fn betti_upto(&self, jmax: i64) -> Vec<[usize; 4]> {
        (0..=jmax)
            .map(|j| {
                let d = |k: i64| self.dim(k);
                let kdim = [d(j), 3 * d(j - 1), 3 * d(j - 2), d(j - 3)];
                let r1 = rank(&self.koszul_d1(j));
                let r2 = rank(&self.koszul_d2(j));
                let r3 = rank(&self.koszul_d3(j));
                [kdim[0] - r1, kdim[1] - r1 - r2, kdim[2] - r2 - r3, kdim[3] - r3]
            })
            .collect()
    }

    /// `(a, b, c) |-> x a + y b + z c`, `M_{j-1}^3 -> M_j`.
    fn koszul_d1(&self, j: i64) -> QMatrix {
        let blocks = [[self.mult(j - 1, Var::X), self.mult(j - 1, Var::Y), self.mult(j - 1, Var::Z)]];
        assemble(&blocks, self.dim(j), self.dim(j - 1))
    }

    /// `M_{j-2}^3 -> M_{j-1}^3` on `e_xy, e_xz, e_yz`.
    fn koszul_d2(&self, j: i64) -> QMatrix {
        let (r, c) = (self.dim(j - 1), self.dim(j - 2));
        let x = self.mult(j - 2, Var::X);
        let y = self.mult(j - 2, Var::Y);
        let z = self.mult(j - 2, Var::Z);
        let zero = QMatrix::zeros(r, c);
        let blocks = [
            [neg(&y), neg(&z), zero.clone()],
            [x.clone(), zero.clone(), neg(&z)],
            [zero, x, y],
        ];
        assemble(&blocks, r, c)
    }

    /// `M_{j-3} -> M_{j-2}^3`, `u |-> (z u, -y u, x u)`.
    fn koszul_d3(&self, j: i64) -> QMatrix {
        let blocks = [
            [self.mult(j - 3, Var::Z)],
            [neg(&self.mult(j - 3, Var::Y))],
            [self.mult(j - 3, Var::X)],
        ];
        assemble(&blocks, self.dim(j - 2), self.dim(j - 3))
    }
}

/// Per-degree list of basis vectors.
pub type QVec2 = Vec<QVec>;

fn neg(m: &QMatrix) -> QMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                out.set(i, j, -m.get(i, j).clone());
            }
        }
    }
    out
}

fn assemble<const R: usize, const C: usize>(
    blocks: &[[QMatrix; C]; R],
    block_rows: usize,
    block_cols: usize,
) -> QMatrix {
    let mut out = QMatrix::zeros(R * block_rows, C * block_cols);
    for (bi, brow) in blocks.iter().enumerate() {
        for (bj, b) in brow.iter().enumerate() {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    let e = b.get(i, j);
                    if !e.is_zero() {
                        out.set(bi * block_rows + i, bj * block_cols + j, e.clone());
                    }
                }
            }
        }
    }
    out
}

/// Primitive integer form of a functional, for display and hashing.
pub fn primitive_functional(v: &[Rat]) -> Vec<num_bigint::BigInt> {
    to_primitive(v)
}
