//! Built-in fixture curves.

use num_integer::Integer;

use crate::analysis::CurveInput;
use crate::error::{Error, Result};
use crate::parser::{parse_arrangement, parse_poly};

/// Nine lines whose six triple points lie on a conic.
pub const ZIEGLER_A: [&str; 9] = [
    "x",
    "y",
    "x-y-z",
    "x-y+z",
    "2*x+y-2*z",
    "x+3*y-3*z",
    "3*x+2*y+3*z",
    "x+5*y+5*z",
    "7*x-4*y-z",
];

/// Same intersection lattice, triple points not on a conic.
pub const ZIEGLER_A_PRIME: [&str; 9] = [
    "x",
    "y",
    "x+y-z",
    "5*x+2*y-10*z",
    "3*x+2*y-6*z",
    "x-3*y+15*z",
    "2*x-y+10*z",
    "6*x+5*y+30*z",
    "3*x-4*y-24*z",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Poly(String),
    Lines(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub description: String,
    pub source: Source,
    pub irreducible: bool,
}

impl Entry {
    fn poly(name: String, description: &str, text: String, irreducible: bool) -> Self {
        Entry {
            name,
            description: description.to_string(),
            source: Source::Poly(text),
            irreducible,
        }
    }

    fn lines(name: &str, description: &str, forms: &[&str]) -> Self {
        Entry {
            name: name.to_string(),
            description: description.to_string(),
            source: Source::Lines(forms.iter().map(|s| s.to_string()).collect()),
            irreducible: false,
        }
    }

    /// The equation as text: the polynomial, or the product of the forms.
    pub fn text(&self) -> String {
        match &self.source {
            Source::Poly(p) => p.clone(),
            Source::Lines(forms) => forms.iter().map(|l| format!("({l})")).collect::<Vec<_>>().join("*"),
        }
    }

    pub fn input(&self) -> Result<CurveInput> {
        let mut input = match &self.source {
            Source::Poly(p) => CurveInput::poly(&self.name, parse_poly(p)?),
            Source::Lines(forms) => CurveInput::arrangement(&self.name, parse_arrangement(forms)?),
        };
        input.irreducible = self.irreducible;
        Ok(input)
    }
}

fn power(var: &str, e: u32) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

pub fn entries() -> Vec<Entry> {
    let mut out = vec![Entry::poly("ex0-xy".into(), "two lines", "x*y".into(), false)];
    for d in 3..=6 {
        out.push(Entry::poly(
            format!("nodal-d{d}"),
            "one node",
            format!("x*y*{} + x^{d} + y^{d}", power("z", d - 2)),
            true,
        ));
    }
    for d in 3..=10u32 {
        for k in 1..d {
            out.push(Entry::poly(
                format!("ex1-d{d}-k{k}"),
                "nearly free, mdr 1",
                format!("y^{d} + {}*{}", power("x", k), power("z", d - k)),
                d.gcd(&k) == 1,
            ));
        }
    }
    for d in 2..=6 {
        out.push(Entry::poly(
            format!("fermat-{d}"),
            "smooth",
            format!("x^{d} + y^{d} + z^{d}"),
            true,
        ));
    }
    out.push(Entry::lines("triangle", "three general lines, free", &["x", "y", "z"]));
    out.push(Entry::lines(
        "generic-4",
        "four general lines, nearly free",
        &["x", "y", "z", "x+y+z"],
    ));
    out.push(Entry::lines(
        "braid",
        "six lines of the braid arrangement, free",
        &["x", "y", "z", "x-y", "x-z", "y-z"],
    ));
    out.push(Entry::lines("ziegler-A", "Ziegler pair, triple points on a conic", &ZIEGLER_A));
    out.push(Entry::lines(
        "ziegler-Aprime",
        "Ziegler pair, triple points off a conic",
        &ZIEGLER_A_PRIME,
    ));
    out
}

pub fn lookup(name: &str) -> Result<Entry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let names: std::collections::BTreeSet<String> = entries().into_iter().map(|e| e.name).collect();
        assert_eq!(names.len(), entries().len());
    }

    #[test]
    fn lookups() {
        assert_eq!(lookup("ex1-d6-k3").unwrap().source, Source::Poly("y^6 + x^3*z^3".into()));
        assert!(!lookup("ex1-d6-k3").unwrap().irreducible);
        assert!(lookup("ex1-d7-k3").unwrap().irreducible);
        assert_eq!(lookup("fermat-4").unwrap().text(), "x^4 + y^4 + z^4");
        let a = lookup("ziegler-Aprime").unwrap().input().unwrap();
        assert_eq!(a.arrangement.unwrap().len(), 9);
        assert_eq!(a.f.degree(), 9);
        assert_eq!(lookup("nope"), Err(Error::UnknownCatalogEntry("nope".into())));
    }
}
