//! Sparse multivariate polynomials over an exact coefficient field, plus the
//! symmetric-function identities behind the logarithmic vector fields of the
//! braid arrangement.

mod identities;
mod matrix;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::scalar::Scalar;
use crate::{Error, Result};

pub use identities::*;
pub use matrix::PolyMatrix;
pub use parse::parse_poly;

/// Exponent vector, one entry per context variable.
pub type Monomial = Vec<u32>;

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context(Arc<[String]>);

impl Context {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Context(names.into_iter().map(Into::into).collect())
    }

    /// `x1, …, xn`.
    pub fn xs(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// This context followed by `extra`.
    pub fn extended<I, S>(&self, extra: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(self.0.iter().cloned().chain(extra.into_iter().map(Into::into)))
    }

    fn same(&self, other: &Context) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Map from exponent vector to nonzero coefficient. The zero polynomial has
/// no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<T> {
    ctx: Context,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(ctx: &Context) -> Self {
        Self { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, T::one())
    }

    pub fn constant(ctx: &Context, c: T) -> Self {
        Self::monomial(ctx, vec![0; ctx.len()], c)
    }

    pub fn monomial(ctx: &Context, exps: Monomial, c: T) -> Self {
        assert_eq!(exps.len(), ctx.len(), "exponent vector length must match context");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { ctx: ctx.clone(), terms }
    }

    /// The variable at position `idx`.
    pub fn var(ctx: &Context, idx: usize) -> Self {
        let mut e = vec![0; ctx.len()];
        e[idx] = 1;
        Self::monomial(ctx, e, T::one())
    }

    pub fn var_named(ctx: &Context, name: &str) -> Result<Self> {
        let idx = ctx
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        Ok(Self::var(ctx, idx))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, T)>>(ctx: &Context, terms: I) -> Self {
        let mut out = Self::zero(ctx);
        for (e, c) in terms {
            assert_eq!(e.len(), ctx.len(), "exponent vector length must match context");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exps: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> T {
        self.terms.get(exps).cloned().unwrap_or_else(T::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in a single variable (0 for the zero polynomial).
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// All terms share one total degree (the zero polynomial counts).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = Self::zero(&self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Self {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect(),
        }
    }

    /// Multiply by a monomial `x^exps`.
    pub fn shift_by(&self, exps: &[u32]) -> Self {
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `idx`.
    pub fn partial(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let factor = T::from_u32(e[idx]).expect("exponent fits the scalar type");
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(e2, c.clone() * factor);
        }
        out
    }

    /// Replace variable `idx` by `value`.
    pub fn substitute(&self, idx: usize, value: &Self) -> Result<Self> {
        self.check_ctx(value)?;
        let mut powers = vec![Self::one(&self.ctx)];
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            let k = e[idx] as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[idx] = 0;
            let term = powers[k].shift_by(&rest).scale(c);
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitute several variables in turn.
    pub fn substitute_all(&self, subs: &[(usize, Self)]) -> Result<Self> {
        subs.iter()
            .try_fold(self.clone(), |acc, (idx, value)| acc.substitute(*idx, value))
    }

    /// Re-express in a larger context that contains every variable name of
    /// this one.
    pub fn embed(&self, target: &Context) -> Result<Self> {
        let map: Vec<usize> = self
            .ctx
            .names()
            .iter()
            .map(|name| target.index_of(name).ok_or(Error::ContextMismatch))
            .collect::<Result<_>>()?;
        Ok(Self::from_terms(
            target,
            self.terms.iter().map(|(e, c)| {
                let mut e2 = vec![0; target.len()];
                for (i, &x) in e.iter().enumerate() {
                    e2[map[i]] += x;
                }
                (e2, c.clone())
            }),
        ))
    }

    /// Terms in graded-lexicographic order, highest first.
    pub fn graded_terms(&self) -> Vec<(&Monomial, &T)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }
}

impl<T: Scalar> fmt::Display for MultiPoly<T> {
    /// Graded-lex order, e.g. `x1^2 - 1/2*x1*x2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.graded_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(abs.to_string());
            }
            for (name, &x) in self.ctx.names().iter().zip(e) {
                match x {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{x}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a, T: Scalar> Add<&'a MultiPoly<T>> for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn add(self, rhs: &'a MultiPoly<T>) -> MultiPoly<T> {
        self.checked_add(rhs).expect("polynomial context mismatch")
    }
}

impl<'a, T: Scalar> Sub<&'a MultiPoly<T>> for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn sub(self, rhs: &'a MultiPoly<T>) -> MultiPoly<T> {
        self.checked_sub(rhs).expect("polynomial context mismatch")
    }
}

impl<'a, T: Scalar> Mul<&'a MultiPoly<T>> for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn mul(self, rhs: &'a MultiPoly<T>) -> MultiPoly<T> {
        self.checked_mul(rhs).expect("polynomial context mismatch")
    }
}

impl<T: Scalar> Neg for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn neg(self) -> MultiPoly<T> {
        self.scale(&-T::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, QPoly};
    use num_rational::Ratio;

    fn ctx3() -> Context {
        Context::xs(3)
    }

    #[test]
    fn arithmetic_examples() {
        let c = ctx3();
        let x1 = QPoly::var(&c, 0);
        let x2 = QPoly::var(&c, 1);
        let x3 = QPoly::var(&c, 2);
        let prod = &(&x1 - &x2) * &(&x1 + &x2);
        assert_eq!(prod, &x1.pow(2) - &x2.pow(2));
        let d = (&x1.pow(2) * &x2).partial(0);
        assert_eq!(d, (&x1 * &x2).scale(&int(2)));
        let p = &(&x1 * &x3) + &x2;
        assert_eq!(p.substitute(2, &QPoly::zero(&c)).unwrap(), x2);
    }

    #[test]
    fn context_mismatch_rejected() {
        let a = QPoly::var(&Context::xs(2), 0);
        let b = QPoly::var(&Context::xs(3), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::ContextMismatch)));
        assert!(matches!(a.checked_mul(&b), Err(Error::ContextMismatch)));
        assert!(matches!(a.substitute(0, &b), Err(Error::ContextMismatch)));
    }

    #[test]
    fn display_graded_lex() {
        let c = ctx3();
        let x1 = QPoly::var(&c, 0);
        let x2 = QPoly::var(&c, 1);
        let p = &(&x1.pow(2) - &(&x1 * &x2).scale(&rat(1, 2))) + &QPoly::constant(&c, int(3));
        assert_eq!(p.to_string(), "x1^2 - 1/2*x1*x2 + 3");
        assert_eq!((-&x2).to_string(), "-x2");
        assert_eq!(QPoly::zero(&c).to_string(), "0");
    }

    #[test]
    fn embed_and_homogeneity() {
        let small = Context::new(["y1", "y2"]);
        let big = Context::new(["y1", "y2", "s"]);
        let y1 = QPoly::var(&small, 0);
        let y2 = QPoly::var(&small, 1);
        let f = &(&y1 * &y2) * &(&y1 + &y2);
        assert!(f.is_homogeneous());
        let g = f.embed(&big).unwrap();
        assert_eq!(g.total_degree(), Some(3));
        assert_eq!(g.degree_in(2), 0);
        assert!(f.embed(&Context::new(["y1"])).is_err());
        assert!(!(&f + &y1).is_homogeneous());
    }

    #[test]
    fn generic_over_machine_rationals() {
        let c = Context::xs(2);
        type R = Ratio<i64>;
        let x = MultiPoly::<R>::var(&c, 0);
        let y = MultiPoly::<R>::var(&c, 1);
        let p = (&x + &y).pow(3);
        assert_eq!(p.coefficient(&[2, 1]), R::from_integer(3));
        assert_eq!(p.partial(1).coefficient(&[2, 0]), R::from_integer(3));
    }
}
