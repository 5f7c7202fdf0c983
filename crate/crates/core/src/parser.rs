//! Text input for curves and line arrangements.
//!
//! Polynomial grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" INTEGER)?
//! atom   := INTEGER | "x" | "y" | "z" | "(" expr ")"
//! ```
//!
//! Products need an explicit `*`; division is only allowed by a nonzero
//! constant, so `3/4*x` is a rational coefficient. The Unicode minus sign
//! `−` is accepted as `-`.
//!
//! Arrangement files hold one linear form per line; `#` starts a comment.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::exactla::{QVec, Rat};
use crate::poly::{HomogeneousPoly, Monomial, Var};

type Sparse = BTreeMap<Monomial, Rat>;

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
                continue;
            }
            'x' => Tok::Var(Var::X),
            'y' => Tok::Var(Var::Y),
            'z' => Tok::Var(Var::Z),
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(i, format!("unexpected character `{other}`"))),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Sparse, ParseError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            let neg = match t {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            add_into(&mut acc, rhs, neg);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Sparse, ParseError> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = mul(&acc, &rhs);
                }
                Tok::Slash => {
                    let at = self.here();
                    self.bump();
                    let rhs = self.unary()?;
                    let c = as_constant(&rhs)
                        .ok_or_else(|| syntax(at, "division by a non-constant expression"))?;
                    if c.is_zero() {
                        return Err(syntax(at, "division by zero"));
                    }
                    let inv = c.recip();
                    for v in acc.values_mut() {
                        *v *= &inv;
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Sparse, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                let mut v = self.unary()?;
                for c in v.values_mut() {
                    *c = -c.clone();
                }
                Ok(v)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Sparse, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = u32::try_from(&n)
                        .ok()
                        .filter(|&e| e <= MAX_EXPONENT)
                        .ok_or_else(|| syntax(at, "exponent too large"))?;
                    let mut acc = constant(Rat::one());
                    for _ in 0..e {
                        acc = mul(&acc, &base);
                    }
                    Ok(acc)
                }
                _ => Err(syntax(at, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Sparse, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(constant(Rat::from_integer(n))),
            Some(Tok::Var(v)) => {
                let mut s = Sparse::new();
                s.insert(Monomial::var(v), Rat::one());
                Ok(s)
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected `)`")),
                }
            }
            Some(t) => Err(syntax(at, format!("unexpected token {t:?}"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

fn constant(c: Rat) -> Sparse {
    let mut s = Sparse::new();
    if !c.is_zero() {
        s.insert(Monomial::ONE, c);
    }
    s
}

fn as_constant(s: &Sparse) -> Option<Rat> {
    match s.len() {
        0 => Some(Rat::zero()),
        1 => s.get(&Monomial::ONE).cloned(),
        _ => None,
    }
}

fn add_into(acc: &mut Sparse, rhs: Sparse, negate: bool) {
    for (m, c) in rhs {
        let e = acc.entry(m).or_insert_with(Rat::zero);
        if negate {
            *e -= c;
        } else {
            *e += c;
        }
        if e.is_zero() {
            acc.remove(&m);
        }
    }
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            let e = out.entry(m).or_insert_with(Rat::zero);
            *e += ca * cb;
            if e.is_zero() {
                out.remove(&m);
            }
        }
    }
    out
}

/// Parses a homogeneous polynomial in `x, y, z`.
pub fn parse_poly(text: &str) -> Result<HomogeneousPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let s = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.here(), "unexpected trailing input"));
    }
    if s.is_empty() {
        return Err(ParseError::ZeroPolynomial);
    }
    let degrees: BTreeSet<u32> = s.keys().map(Monomial::degree).collect();
    let mut it = degrees.iter();
    let first = *it.next().expect("nonempty");
    if let Some(&second) = it.next() {
        return Err(ParseError::NotHomogeneous { first, second });
    }
    Ok(HomogeneousPoly::from_terms(first, s).expect("degrees checked"))
}

/// A reduced union of distinct lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementSpec {
    forms: Vec<HomogeneousPoly>,
    source_text: String,
}

impl ArrangementSpec {
    pub fn forms(&self) -> &[HomogeneousPoly] {
        &self.forms
    }

    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Product of the forms: the defining equation of the arrangement.
    pub fn product(&self) -> HomogeneousPoly {
        self.forms
            .iter()
            .fold(HomogeneousPoly::constant(Rat::one()), |acc, l| &acc * l)
    }

    fn coefficient_vector(l: &HomogeneousPoly) -> [Rat; 3] {
        Var::ALL.map(|v| l.coeff(&Monomial::var(v)))
    }
}

fn cross(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Parses one linear form per entry; blank entries and `#` comments are skipped.
pub fn parse_arrangement<S: AsRef<str>>(lines: &[S]) -> Result<ArrangementSpec, ParseError> {
    let mut forms = Vec::new();
    let mut kept = Vec::new();
    let mut line_no = Vec::new();
    for (i, raw) in lines.iter().enumerate() {
        let text = raw.as_ref();
        let body = text.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let l = parse_poly(body)?;
        if l.degree() != 1 {
            return Err(ParseError::NotLinear {
                line: i + 1,
                degree: l.degree(),
            });
        }
        forms.push(l);
        kept.push(body.to_string());
        line_no.push(i + 1);
    }
    if forms.is_empty() {
        return Err(ParseError::EmptyArrangement);
    }
    let vecs: Vec<[Rat; 3]> = forms.iter().map(ArrangementSpec::coefficient_vector).collect();
    for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            if cross(&vecs[i], &vecs[j]).iter().all(Zero::is_zero) {
                return Err(ParseError::ProportionalLines {
                    first: line_no[i],
                    second: line_no[j],
                });
            }
        }
    }
    Ok(ArrangementSpec {
        forms,
        source_text: kept.join("\n"),
    })
}

/// Parses the contents of an arrangement file.
pub fn parse_arrangement_text(text: &str) -> Result<ArrangementSpec, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    parse_arrangement(&lines)
}

/// Intersection points of an arrangement with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combinatorics {
    /// Points normalized so the first nonzero coordinate is 1, each with the
    /// indices of the lines through it.
    pub points: Vec<(QVec, Vec<usize>)>,
    /// Multiplicity of each point, in decreasing order.
    pub point_multiplicities: Vec<usize>,
    /// `n_m`: number of points of multiplicity `m`.
    pub n_table: BTreeMap<usize, usize>,
}

impl Combinatorics {
    /// `sum_p (m_p - 1)^2`, the total Tjurina number of the arrangement.
    pub fn tjurina_sum(&self) -> usize {
        self.point_multiplicities.iter().map(|m| (m - 1) * (m - 1)).sum()
    }

    /// `sum_p binom(m_p, 2)`.
    pub fn pair_count(&self) -> usize {
        self.point_multiplicities.iter().map(|m| m * (m - 1) / 2).sum()
    }
}

fn normalize_point(p: [Rat; 3]) -> QVec {
    let lead = p.iter().find(|c| !c.is_zero()).cloned().expect("nonzero point");
    p.iter().map(|c| c / &lead).collect()
}

pub fn combinatorics(spec: &ArrangementSpec) -> Combinatorics {
    let vecs: Vec<[Rat; 3]> = spec.forms.iter().map(ArrangementSpec::coefficient_vector).collect();
    let mut points: BTreeMap<QVec, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            let p = normalize_point(cross(&vecs[i], &vecs[j]));
            let e = points.entry(p).or_default();
            e.insert(i);
            e.insert(j);
        }
    }
    let points: Vec<(QVec, Vec<usize>)> = points
        .into_iter()
        .map(|(p, s)| (p, s.into_iter().collect()))
        .collect();
    let mut mults: Vec<usize> = points.iter().map(|(_, s)| s.len()).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    let mut n_table = BTreeMap::new();
    for &m in &mults {
        *n_table.entry(m).or_insert(0) += 1;
    }
    Combinatorics {
        points,
        point_multiplicities: mults,
        n_table,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    pub const ZIEGLER_A: [&str; 9] = [
        "x", "y", "x-y-z", "x-y+z", "2*x+y-2*z", "x+3*y-3*z", "3*x+2*y+3*z", "x+5*y+5*z", "7*x-4*y-z",
    ];
    pub const ZIEGLER_A_PRIME: [&str; 9] = [
        "x", "y", "x+y-z", "5*x+2*y-10*z", "3*x+2*y-6*z", "x-3*y+15*z", "2*x-y+10*z", "6*x+5*y+30*z",
        "3*x-4*y-24*z",
    ];

    #[test]
    fn parses_examples() {
        let f = parse_poly("y^4 + x*z^3").unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&Monomial::new(1, 0, 3)), rat(1));
        let g = parse_poly("x*y").unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.to_string(), "x*y");
        assert_eq!(
            parse_poly("x + y^2"),
            Err(ParseError::NotHomogeneous { first: 1, second: 2 })
        );
        assert_eq!(parse_poly("x - x"), Err(ParseError::ZeroPolynomial));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_poly("x +* y"), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("(x + y"), Err(ParseError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_poly("x w"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x^y"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x / y"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x y"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn rationals_powers_and_unicode_minus() {
        let f = parse_poly("3/4*x^2 − (x+y)^2").unwrap();
        assert_eq!(f.coeff(&Monomial::new(2, 0, 0)), crate::exactla::rat_frac(-1, 4));
        assert_eq!(f.coeff(&Monomial::new(1, 1, 0)), rat(-2));
        assert_eq!(parse_poly("2^3*z").unwrap().coeff(&Monomial::new(0, 0, 1)), rat(8));
        assert_eq!(parse_poly("-(-x)").unwrap(), parse_poly("x").unwrap());
    }

    #[test]
    fn arrangements() {
        let a = parse_arrangement(&ZIEGLER_A).unwrap();
        assert_eq!(a.len(), 9);
        assert_eq!(a.product().degree(), 9);
        let small = parse_arrangement(&["x", "y", "x+y"]).unwrap();
        assert_eq!(small.len(), 3);
        assert_eq!(
            parse_arrangement(&["x", "2*x", "y"]),
            Err(ParseError::ProportionalLines { first: 1, second: 2 })
        );
        assert_eq!(
            parse_arrangement(&["x", "y^2"]),
            Err(ParseError::NotLinear { line: 2, degree: 2 })
        );
        let file = "# header\nx\n\ny  # second\nx+y\n";
        assert_eq!(parse_arrangement_text(file).unwrap().len(), 3);
    }

    #[test]
    fn ziegler_combinatorics() {
        for lines in [&ZIEGLER_A, &ZIEGLER_A_PRIME] {
            let c = combinatorics(&parse_arrangement(lines).unwrap());
            assert_eq!(c.n_table.get(&2), Some(&18));
            assert_eq!(c.n_table.get(&3), Some(&6));
            assert_eq!(c.n_table.len(), 2);
            assert_eq!(c.pair_count(), 36);
            assert_eq!(c.tjurina_sum(), 42);
        }
    }

    #[test]
    fn concurrent_lines() {
        let c = combinatorics(&parse_arrangement(&["x", "y", "x+y"]).unwrap());
        assert_eq!(c.point_multiplicities, vec![3]);
        assert_eq!(c.points[0].0, vec![rat(0), rat(0), rat(1)]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = HomogeneousPoly> {
            (0u32..5).prop_flat_map(|deg| {
                let n = crate::poly::dim_s(deg as usize);
                (prop::collection::vec(-20i64..=20, n), prop::collection::vec(1i64..=7, n)).prop_map(
                    move |(num, den)| {
                        let cs: Vec<Rat> = num
                            .iter()
                            .zip(&den)
                            .map(|(&a, &b)| crate::exactla::rat_frac(a, b))
                            .collect();
                        HomogeneousPoly::from_coeffs(deg, &cs)
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn print_parse_round_trip(p in arb_poly()) {
                prop_assume!(!p.is_zero());
                prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
            }

            #[test]
            fn pair_count_identity(coeffs in prop::collection::vec(-4i64..=4, 3..=24)) {
                let lines: Vec<String> = coeffs
                    .chunks_exact(3)
                    .map(|c| format!("({})*x + ({})*y + ({})*z", c[0], c[1], c[2]))
                    .collect();
                if let Ok(spec) = parse_arrangement(&lines) {
                    let c = combinatorics(&spec);
                    let d = spec.len();
                    prop_assert_eq!(c.pair_count(), d * (d - 1) / 2);
                }
            }
        }
    }
}
