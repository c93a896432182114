//! Monic polynomials in `s` stored as multisets of rational roots.
//!
//! Every b-function formula in this crate is a product of monic linear
//! factors `(s - r)`, so products, lcms and divisibility reduce to
//! pointwise operations on root multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Rational, Result};

/// `∏ (s - r)^m` over the stored `(r, m)` pairs. The empty map is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactoredBPoly {
    roots: BTreeMap<Rational, u32>,
}

impl FactoredBPoly {
    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::default()
    }

    /// Single linear factor `(s - root)`.
    pub fn linear(root: Rational) -> Self {
        Self::from_roots([(root, 1)])
    }

    /// Build from `(root, multiplicity)` pairs; repeated roots accumulate and
    /// zero multiplicities are dropped.
    pub fn from_roots<I>(roots: I) -> Self
    where
        I: IntoIterator<Item = (Rational, u32)>,
    {
        let mut out = Self::one();
        for (r, m) in roots {
            out.add_root(r, m);
        }
        out
    }

    fn add_root(&mut self, root: Rational, mult: u32) {
        if mult > 0 {
            *self.roots.entry(root).or_insert(0) += mult;
        }
    }

    pub fn is_one(&self) -> bool {
        self.roots.is_empty()
    }

    /// Degree, i.e. number of roots counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.roots.values().sum()
    }

    pub fn multiplicity(&self, root: &Rational) -> u32 {
        self.roots.get(root).copied().unwrap_or(0)
    }

    pub fn has_root(&self, root: &Rational) -> bool {
        self.roots.contains_key(root)
    }

    /// Distinct roots with multiplicities, in decreasing root order.
    pub fn roots(&self) -> impl DoubleEndedIterator<Item = (&Rational, u32)> + '_ {
        self.roots.iter().rev().map(|(r, m)| (r, *m))
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, m) in &other.roots {
            out.add_root(r.clone(), *m);
        }
        out
    }

    /// Per-root maximum of multiplicities; the lcm of nothing is 1.
    pub fn lcm<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a FactoredBPoly>,
    {
        let mut roots: BTreeMap<Rational, u32> = BTreeMap::new();
        for item in items {
            for (r, m) in &item.roots {
                let slot = roots.entry(r.clone()).or_insert(0);
                *slot = (*slot).max(*m);
            }
        }
        Self { roots }
    }

    /// `self | other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.roots.iter().all(|(r, m)| other.multiplicity(r) >= *m)
    }

    /// The monic polynomial with the roots of `self(u*s + v)`: each root `r`
    /// moves to `(r - v) / u`.
    pub fn affine_substitute(&self, u: &Rational, v: &Rational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidSubstitution);
        }
        Ok(Self::from_roots(
            self.roots.iter().map(|(r, m)| ((r - v) / u, *m)),
        ))
    }

    /// `self(s + k)` for a rational shift `k`.
    pub fn shift(&self, k: &Rational) -> Self {
        Self::from_roots(self.roots.iter().map(|(r, m)| (r - k, *m)))
    }

    /// Image of the root multiset under `r ↦ 2c - r`.
    pub fn reflect(&self, center: &Rational) -> Self {
        let two_c = center * Rational::from_integer(2.into());
        Self::from_roots(self.roots.iter().map(|(r, m)| (&two_c - r, *m)))
    }

    pub fn is_symmetric_about(&self, center: &Rational) -> bool {
        self.reflect(center) == *self
    }

    /// `(max root, min root)`, or `None` for the constant 1.
    pub fn root_extrema(&self) -> Option<(Rational, Rational)> {
        let min = self.roots.keys().next()?;
        let max = self.roots.keys().next_back()?;
        Some((max.clone(), min.clone()))
    }

    pub fn max_root(&self) -> Option<&Rational> {
        self.roots.keys().next_back()
    }

    pub fn min_root(&self) -> Option<&Rational> {
        self.roots.keys().next()
    }

    /// Coefficients of the expanded polynomial, constant term first.
    pub fn to_coefficients(&self) -> Vec<Rational> {
        let mut coeffs = vec![Rational::one()];
        for (r, m) in &self.roots {
            for _ in 0..*m {
                // multiply by (s - r)
                let mut next = vec![Rational::zero(); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * r;
                }
                coeffs = next;
            }
        }
        coeffs
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, s: &Rational) -> Rational {
        self.roots.iter().fold(Rational::one(), |acc, (r, m)| {
            let f = s - r;
            (0..*m).fold(acc, |a, _| a * &f)
        })
    }
}

/// Format a rational as `p/q` or `p`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q`, `-p/q` or an integer. The result is reduced; a zero
/// denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("malformed rational literal `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

impl fmt::Display for FactoredBPoly {
    /// Factors sorted by decreasing root, e.g. `(s + 2/3) (s + 1)^2 (s + 4/3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (r, m) in self.roots() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if r.is_zero() {
                f.write_str("s")?;
            } else {
                let sign = if r.is_negative() { '+' } else { '-' };
                write!(f, "(s {sign} {})", format_rational(&r.abs()))?;
            }
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RootEntry {
    num: i64,
    den: i64,
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct RootsJson {
    roots: Vec<RootEntry>,
}

impl Serialize for FactoredBPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let roots = self
            .roots()
            .map(|(r, mult)| {
                let num = r.numer().to_i64().ok_or_else(|| S::Error::custom("numerator overflows i64"))?;
                let den = r.denom().to_i64().ok_or_else(|| S::Error::custom("denominator overflows i64"))?;
                Ok(RootEntry { num, den, mult })
            })
            .collect::<std::result::Result<Vec<_>, S::Error>>()?;
        RootsJson { roots }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FactoredBPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RootsJson::deserialize(deserializer)?;
        let mut out = FactoredBPoly::one();
        for e in raw.roots {
            if e.den <= 0 {
                return Err(D::Error::custom("root denominator must be positive"));
            }
            if e.mult == 0 {
                return Err(D::Error::custom("root multiplicity must be positive"));
            }
            let r = Rational::new(e.num.into(), e.den.into());
            if r.denom() != &BigInt::from(e.den) {
                return Err(D::Error::custom("root fraction must be reduced"));
            }
            if out.has_root(&r) {
                return Err(D::Error::custom("duplicate root entry"));
            }
            out.add_root(r, e.mult);
        }
        Ok(out)
    }
}
