//! Minimal graded free resolutions.
//!
//! Tables are read off Koszul homology of the quotient modules. The explicit
//! route (minimal generators by Nakayama counts, then syzygy kernels) is
//! kept as an independent computation of the same twists.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::QVec;
use crate::graded::{kernel_slices, nakayama, FreeModule, GradedSubspace, MinimalGenerators};
use crate::inverse::GradedModule;
use crate::jacobian::ar_slices;
use crate::poly::{dim_s_signed, HomogeneousPoly};

/// Twists of a minimal graded free resolution: `columns[p]` is the sorted
/// multiset of twists in homological position `p`. For `S/I` the first
/// column is `[0]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiTable {
    columns: Vec<Vec<usize>>,
}

impl BettiTable {
    /// Drops trailing empty columns and sorts each column.
    pub fn from_columns(mut columns: Vec<Vec<usize>>) -> Self {
        for c in &mut columns {
            c.sort_unstable();
        }
        while columns.len() > 1 && columns.last().is_some_and(Vec::is_empty) {
            columns.pop();
        }
        BettiTable { columns }
    }

    /// From `rows[j][i] = β_{i,j}`.
    pub fn from_koszul(rows: &[[usize; 4]]) -> Self {
        let mut columns = vec![Vec::new(); 4];
        for (j, row) in rows.iter().enumerate() {
            for (i, &b) in row.iter().enumerate() {
                columns[i].extend(std::iter::repeat_n(j, b));
            }
        }
        Self::from_columns(columns)
    }

    /// The table of `S/(g_1..g_r)` with the given relation twists.
    pub fn cyclic(generators: &[usize], relations: &[usize]) -> Self {
        Self::from_columns(vec![vec![0], generators.to_vec(), relations.to_vec()])
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn column(&self, p: usize) -> &[usize] {
        self.columns.get(p).map_or(&[], Vec::as_slice)
    }

    /// Projective dimension: the last nonempty position.
    pub fn pd(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn is_cyclic(&self) -> bool {
        self.column(0) == [0]
    }

    /// `max(a_i - 1, b_j - 2)` for a projective dimension 2 table.
    pub fn regularity(&self) -> Result<usize> {
        if self.pd() != 2 {
            return Err(Error::WrongShape { pd: self.pd() });
        }
        Ok(self.reg_general())
    }

    /// `max over p of (twist - p)`.
    pub fn reg_general(&self) -> usize {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(p, c)| c.iter().map(move |&t| t.saturating_sub(p)))
            .max()
            .unwrap_or(0)
    }

    /// Alternating sum `Σ_p (-1)^p Σ_t dim S_{k-t}`: the Hilbert function of
    /// the resolved module.
    pub fn hilbert(&self, k: usize) -> i64 {
        self.columns
            .iter()
            .enumerate()
            .map(|(p, c)| {
                let s: i64 = c.iter().map(|&t| dim_s_signed(k as i64 - t as i64) as i64).sum();
                if p % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .sum()
    }
}

impl fmt::Debug for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.columns)
    }
}

impl fmt::Display for BettiTable {
    /// `{8^4, 9 | 10^3, 11}`, positions from 1 on.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for c in self.columns.iter().skip(1) {
            let mut items = Vec::new();
            let mut i = 0;
            while i < c.len() {
                let j = c[i..].iter().take_while(|&&t| t == c[i]).count();
                items.push(if j == 1 {
                    c[i].to_string()
                } else {
                    format!("{}^{}", c[i], j)
                });
                i += j;
            }
            parts.push(items.join(", "));
        }
        write!(f, "{{{}}}", parts.join(" | "))
    }
}

/// `Tor_i(M, Q)_j` for all degrees where it can be decided.
///
/// A module whose last computed piece is zero has finite length and is
/// resolved completely. Otherwise the table is read up to the top computed
/// degree and must vanish in its last two degrees.
pub fn koszul_betti(module: &GradedModule, what: &str) -> Result<Vec<[usize; 4]>> {
    let top = module.top() as i64;
    if module.vanishes_above_top() {
        return Ok(module.betti_upto(top + 3));
    }
    let rows = module.betti_upto(top);
    let tail = &rows[rows.len().saturating_sub(2)..];
    if tail.iter().any(|r| r.iter().any(|&b| b != 0)) {
        return Err(Error::KmaxExhausted {
            kmax: top as usize,
            what: what.to_string(),
        });
    }
    Ok(rows)
}

/// Minimal generators of an ideal or submodule of a free module.
pub fn min_generators(ideal: &GradedSubspace) -> MinimalGenerators {
    nakayama(ideal)
}

/// Generator vectors of a rank-1 ideal as polynomials.
pub fn generator_polys(gens: &MinimalGenerators) -> Vec<HomogeneousPoly> {
    gens.degrees
        .iter()
        .zip(&gens.vectors)
        .map(|(&k, v)| HomogeneousPoly::from_coeffs(k as u32, v))
        .collect()
}

/// Relation module of a list of generators of an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syzygies {
    /// Minimal generator degrees of the relations, nondecreasing.
    pub degrees: Vec<usize>,
    /// `dim R_k = Σ_j dim S_{k - b_j}` held for every `k` checked.
    pub freeness_verified: bool,
}

/// Relations among `gens`: explicit kernels of `⊕ S(-a_i) -> S` in degrees
/// `<= hi`, then the freeness check `dim R_k = Σ_j dim S_{k-b_j}` for
/// `k <= check_to`, with `dim R_k = Σ_i dim S_{k-a_i} - dim I_k` from the
/// given Hilbert function of the ideal.
pub fn syzygies(
    gens: &[HomogeneousPoly],
    hi: usize,
    check_to: usize,
    ideal_dim: impl Fn(usize) -> usize,
) -> Result<Syzygies> {
    let shifts: Vec<usize> = gens.iter().map(|g| g.degree() as usize).collect();
    let source = FreeModule::new(shifts.clone());
    let target = FreeModule::standard(1);
    let images: Vec<QVec> = gens.iter().map(HomogeneousPoly::coeffs).collect();
    let kernel = kernel_slices(&source, &target, &images, 0, hi);
    let degrees = nakayama(&kernel).degrees;
    let relations = |k: usize| -> i64 {
        let free: i64 = shifts.iter().map(|&a| dim_s_signed(k as i64 - a as i64) as i64).sum();
        free - ideal_dim(k) as i64
    };
    for k in 0..=hi {
        if kernel.dim(k) as i64 != relations(k) {
            return Err(Error::Internal(format!(
                "generators do not span the ideal in degree {k}"
            )));
        }
    }
    for k in 0..=check_to {
        let expected: i64 = degrees.iter().map(|&b| dim_s_signed(k as i64 - b as i64) as i64).sum();
        let found = relations(k);
        if found != expected {
            return Err(Error::FreenessCheckFailed {
                k,
                found: found.max(0) as usize,
                expected: expected as usize,
            });
        }
    }
    Ok(Syzygies {
        degrees,
        freeness_verified: true,
    })
}

/// Explicit resolution data of `S/J_f`: generator degrees of `AR(f)` and of
/// their relations, both as degrees in `S^3` (add `d - 1` for twists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitJacobian {
    pub ar_generators: MinimalGenerators,
    pub second_syzygies: Vec<usize>,
}

impl ExplicitJacobian {
    pub fn table(&self, d: u32) -> BettiTable {
        let shift = d as usize - 1;
        BettiTable::from_columns(vec![
            vec![0],
            vec![shift; 3],
            self.ar_generators.degrees.iter().map(|m| m + shift).collect(),
            self.second_syzygies.iter().map(|m| m + shift).collect(),
        ])
    }
}

/// `AR(f)` generators from Jacobian-map kernels in degrees `<= ar_hi`, and
/// their relations from kernels of `⊕ S(-α_i) -> S^3` in degrees `<= syz_hi`.
pub fn explicit_jacobian(f: &HomogeneousPoly, ar_hi: usize, syz_hi: usize) -> ExplicitJacobian {
    let gens = nakayama(&ar_slices(f, 0, ar_hi));
    let source = FreeModule::new(gens.degrees.clone());
    let kernel = kernel_slices(&source, &FreeModule::standard(3), &gens.vectors, 0, syz_hi);
    ExplicitJacobian {
        second_syzygies: nakayama(&kernel).degrees,
        ar_generators: gens,
    }
}
