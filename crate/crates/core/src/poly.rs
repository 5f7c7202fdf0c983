//! Homogeneous polynomials in `S = Q[x, y, z]` and the matrices of the graded
//! linear maps between pieces `S_k`.
//!
//! Every graded piece `S_k` carries one fixed basis: the degree-`k` monomials
//! in graded-lex order with `x > y > z`, listed from largest to smallest
//! (`x^k, x^{k-1}y, x^{k-1}z, ..., z^k`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactla::{QMatrix, QVec, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

/// `x^ex * y^ey * z^ez`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ex: 0, ey: 0, ez: 0 };

    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Monomial { ex, ey, ez }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Monomial::new(1, 0, 0),
            Var::Y => Monomial::new(0, 1, 0),
            Var::Z => Monomial::new(0, 0, 1),
        }
    }

    pub fn degree(&self) -> u32 {
        self.ex + self.ey + self.ez
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::X => self.ex,
            Var::Y => self.ey,
            Var::Z => self.ez,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.ex + other.ex, self.ey + other.ey, self.ez + other.ez)
    }

    pub fn times(&self, v: Var) -> Monomial {
        self.mul(&Monomial::var(v))
    }

    /// `self / v`, if `v` divides `self`.
    pub fn div_var(&self, v: Var) -> Option<Monomial> {
        match v {
            Var::X if self.ex > 0 => Some(Monomial::new(self.ex - 1, self.ey, self.ez)),
            Var::Y if self.ey > 0 => Some(Monomial::new(self.ex, self.ey - 1, self.ez)),
            Var::Z if self.ez > 0 => Some(Monomial::new(self.ex, self.ey, self.ez - 1)),
            _ => None,
        }
    }

    /// Position of this monomial in `monomial_basis(self.degree())`.
    pub fn index(&self) -> usize {
        let k = self.degree() as usize;
        let a = self.ex as usize;
        let b = self.ey as usize;
        (k - a) * (k - a + 1) / 2 + (k - a - b)
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        num_traits::pow(p[0].clone(), self.ex as usize)
            * num_traits::pow(p[1].clone(), self.ey as usize)
            * num_traits::pow(p[2].clone(), self.ez as usize)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.ex.cmp(&other.ex))
            .then(self.ey.cmp(&other.ey))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for v in Var::ALL {
            match self.exponent(v) {
                0 => {}
                1 => parts.push(v.name().to_string()),
                e => parts.push(format!("{}^{}", v.name(), e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// `dim S_k = (k+1)(k+2)/2`.
pub fn dim_s(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

/// `dim S_k` for a possibly negative degree (zero below 0).
pub fn dim_s_signed(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        dim_s(k as usize)
    }
}

/// Monomials of degree `k`, largest first in graded-lex order.
pub fn monomial_basis(k: usize) -> Vec<Monomial> {
    let k = k as u32;
    let mut out = Vec::with_capacity(dim_s(k as usize));
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push(Monomial::new(a, b, k - a - b));
        }
    }
    out
}

/// Homogeneous polynomial with exact rational coefficients. The zero
/// polynomial keeps its degree tag.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rat>,
}

impl HomogeneousPoly {
    pub fn zero(degree: u32) -> Self {
        HomogeneousPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero(m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rat::one())
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs; every
    /// monomial must have degree `degree`. Repeated monomials are summed.
    pub fn from_terms(
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
    ) -> Option<Self> {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return None;
            }
            p.add_term(m, c);
        }
        Some(p)
    }

    /// Polynomial of degree `degree` from coordinates in the monomial basis.
    pub fn from_coeffs(degree: u32, coeffs: &[Rat]) -> Self {
        let basis = monomial_basis(degree as usize);
        assert_eq!(basis.len(), coeffs.len());
        let mut p = Self::zero(degree);
        for (m, c) in basis.into_iter().zip(coeffs) {
            if !c.is_zero() {
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coordinates in the monomial basis of `S_degree`.
    pub fn coeffs(&self) -> QVec {
        let mut v = vec![Rat::zero(); dim_s(self.degree as usize)];
        for (m, c) in &self.terms {
            v[m.index()] = c.clone();
        }
        v
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        HomogeneousPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        HomogeneousPoly {
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative; degree drops by one (the derivative of a
    /// constant is the zero polynomial of degree 0).
    pub fn derivative(&self, v: Var) -> Self {
        let mut p = Self::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let q = m.div_var(v).expect("exponent is positive");
                p.add_term(q, c * Rat::from_integer(BigInt::from(e)));
            }
        }
        p
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        self.terms
            .iter()
            .fold(Rat::zero(), |acc, (m, c)| acc + c * m.eval(p))
    }

    /// Rescales to integer coefficients with content 1 and positive leading
    /// coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<Rat> = self.terms().map(|(_, c)| c.clone()).collect();
        let ints = crate::exactla::to_primitive(&coeffs);
        let monos: Vec<Monomial> = self.terms().map(|(m, _)| *m).collect();
        HomogeneousPoly {
            degree: self.degree,
            terms: monos
                .into_iter()
                .zip(ints)
                .map(|(m, c)| (m, Rat::from_integer(c)))
                .collect(),
        }
    }
}

/// `(f_x, f_y, f_z)`.
pub fn partials(f: &HomogeneousPoly) -> (HomogeneousPoly, HomogeneousPoly, HomogeneousPoly) {
    (
        f.derivative(Var::X),
        f.derivative(Var::Y),
        f.derivative(Var::Z),
    )
}

/// Matrix of `S_k -> S_{k + deg g}`, `h |-> g h`, in the monomial bases.
pub fn mult_map_matrix(g: &HomogeneousPoly, k: usize) -> QMatrix {
    let target = k + g.degree() as usize;
    let mut m = QMatrix::zeros(dim_s(target), dim_s(k));
    for (j, mono) in monomial_basis(k).iter().enumerate() {
        for (t, c) in &g.terms {
            m.set(t.mul(mono).index(), j, c.clone());
        }
    }
    m
}

/// Matrix of `(S_m)^3 -> S_{m+d-1}`, `(a, b, c) |-> a f_x + b f_y + c f_z`;
/// columns are the `a`-block, then `b`, then `c`, each in monomial order.
pub fn jacobian_map_matrix(f: &HomogeneousPoly, m: usize) -> QMatrix {
    let (fx, fy, fz) = partials(f);
    forms_map_matrix(&[fx, fy, fz], m)
}

/// Matrix of `(S_m)^r -> S_{m+e}` for forms `g_1..g_r` of common degree `e`.
pub fn forms_map_matrix(forms: &[HomogeneousPoly], m: usize) -> QMatrix {
    let e = forms.first().map_or(0, |g| g.degree() as usize);
    let block = dim_s(m);
    let mut out = QMatrix::zeros(dim_s(m + e), block * forms.len());
    for (i, g) in forms.iter().enumerate() {
        assert_eq!(g.degree() as usize, e, "forms must share one degree");
        for (j, mono) in monomial_basis(m).iter().enumerate() {
            for (t, c) in &g.terms {
                out.set(t.mul(mono).index(), i * block + j, c.clone());
            }
        }
    }
    out
}

impl Add for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn add(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn neg(self) -> HomogeneousPoly {
        HomogeneousPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Sub for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn sub(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        self + &(-rhs)
    }
}

impl Mul for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn mul(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        let mut out = HomogeneousPoly::zero(self.degree + rhs.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let is_const = *m == Monomial::ONE;
            if a.is_one() {
                write!(f, "{m}")?;
            } else if is_const {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogeneousPoly(deg {}: {})", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{kernel_basis, rank, rat};

    fn x() -> HomogeneousPoly {
        HomogeneousPoly::var(Var::X)
    }
    fn y() -> HomogeneousPoly {
        HomogeneousPoly::var(Var::Y)
    }
    fn z() -> HomogeneousPoly {
        HomogeneousPoly::var(Var::Z)
    }

    #[test]
    fn basis_sizes_and_order() {
        assert_eq!(monomial_basis(0), vec![Monomial::ONE]);
        assert_eq!(
            monomial_basis(1),
            vec![Monomial::new(1, 0, 0), Monomial::new(0, 1, 0), Monomial::new(0, 0, 1)]
        );
        assert_eq!(monomial_basis(4).len(), 15);
        for k in 0..20 {
            let b = monomial_basis(k);
            assert_eq!(b.len(), dim_s(k));
            for (i, m) in b.iter().enumerate() {
                assert_eq!(m.index(), i);
            }
            assert!(b.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn partial_derivatives() {
        let f = &y().pow(4) + &(&x() * &z().pow(3));
        let (fx, fy, fz) = partials(&f);
        assert_eq!(fx, z().pow(3));
        assert_eq!(fy, y().pow(3).scale(&rat(4)));
        assert_eq!(fz, (&x() * &z().pow(2)).scale(&rat(3)));

        let (fx, fy, fz) = partials(&(&x() * &y()));
        assert_eq!((fx, fy), (y(), x()));
        assert!(fz.is_zero());
        assert_eq!(fz.degree(), 1);

        let fermat = &(&x().pow(3) + &y().pow(3)) + &z().pow(3);
        let (fx, fy, fz) = partials(&fermat);
        assert_eq!(fx, x().pow(2).scale(&rat(3)));
        assert_eq!(fy, y().pow(2).scale(&rat(3)));
        assert_eq!(fz, z().pow(2).scale(&rat(3)));
    }

    #[test]
    fn jacobian_map_examples() {
        let m = jacobian_map_matrix(&(&x() * &y()), 0);
        assert_eq!(m.cols(), 3);
        assert_eq!(kernel_basis(&m), vec![vec![rat(0), rat(0), rat(1)]]);

        let fermat = &(&x().pow(3) + &y().pow(3)) + &z().pow(3);
        assert_eq!(rank(&jacobian_map_matrix(&fermat, 0)), 3);

        let f = &y().pow(4) + &(&x() * &z().pow(3));
        assert_eq!(kernel_basis(&jacobian_map_matrix(&f, 1)).len(), 1);
        assert_eq!(kernel_basis(&jacobian_map_matrix(&f, 0)).len(), 0);
    }

    #[test]
    fn mult_map_examples() {
        assert_eq!(mult_map_matrix(&HomogeneousPoly::constant(rat(1)), 3), QMatrix::identity(10));
        let mx = mult_map_matrix(&x(), 1);
        assert_eq!((mx.rows(), mx.cols()), (6, 3));
        assert_eq!(rank(&mx), 3);
        let l = &(&x() + &y()) + &z();
        let m = mult_map_matrix(&l, 2);
        assert_eq!((m.rows(), m.cols()), (10, 6));
        assert_eq!(rank(&m), 6);
    }

    #[test]
    fn jacobian_map_is_three_mult_blocks() {
        let f = &(&x().pow(3) + &(&x() * &y().pow(2))) + &(&y() * &z().pow(2)).scale(&rat(-2));
        let (fx, fy, fz) = partials(&f);
        for m in 0..4 {
            let j = jacobian_map_matrix(&f, m);
            let blocks = [mult_map_matrix(&fx, m), mult_map_matrix(&fy, m), mult_map_matrix(&fz, m)];
            let b = dim_s(m);
            for (i, blk) in blocks.iter().enumerate() {
                for c in 0..b {
                    assert_eq!(j.column(i * b + c), blk.column(c));
                }
            }
        }
    }

    #[test]
    fn display_round_trips_visually() {
        let f = &(&y().pow(4) + &(&x() * &z().pow(3))) + &x().pow(4).scale(&crate::exactla::rat_frac(-3, 2));
        assert_eq!(f.to_string(), "-3/2*x^4 + x*z^3 + y^4");
        assert_eq!(HomogeneousPoly::zero(3).to_string(), "0");
        assert_eq!(HomogeneousPoly::constant(rat(-7)).to_string(), "-7");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        pub fn arb_form(deg: u32) -> impl Strategy<Value = HomogeneousPoly> {
            let n = dim_s(deg as usize);
            prop::collection::vec(-6i64..=6, n).prop_map(move |cs| {
                let coeffs: Vec<Rat> = cs.into_iter().map(rat).collect();
                HomogeneousPoly::from_coeffs(deg, &coeffs)
            })
        }

        proptest! {
            #[test]
            fn euler_relation(f in (1u32..7).prop_flat_map(arb_form)) {
                let d = f.degree();
                let (fx, fy, fz) = partials(&f);
                let lhs = &(&(&x() * &fx) + &(&y() * &fy)) + &(&z() * &fz);
                let rhs = f.scale(&rat(d as i64));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn coeff_vector_round_trip(f in (0u32..6).prop_flat_map(arb_form)) {
                prop_assert_eq!(HomogeneousPoly::from_coeffs(f.degree(), &f.coeffs()), f);
            }
        }
    }
}
