use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::ratfactor::format_rational;
use crate::sympoly::{Context, MultiPoly};
use crate::{Error, QPoly, Rational, Result};

/// Normal-ordered term key: `s^s_degree · x^x · ∂^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylTerm {
    pub x: Vec<u32>,
    pub d: Vec<u32>,
    pub s_degree: u32,
}

/// Differential operator `Σ c · s^k x^a ∂^b` with every `x` to the left of
/// every `∂`, acting on functions of the context variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperator {
    ctx: Context,
    terms: BTreeMap<WeylTerm, Rational>,
}

impl WeylOperator {
    pub fn zero(ctx: &Context) -> Self {
        Self { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(ctx: &Context) -> Self {
        let mut op = Self::zero(ctx);
        op.add_term(Rational::one(), vec![0; ctx.len()], vec![0; ctx.len()], 0);
        op
    }

    /// `∂` with respect to variable `idx`.
    pub fn partial(ctx: &Context, idx: usize) -> Self {
        let mut d = vec![0; ctx.len()];
        d[idx] = 1;
        let mut op = Self::zero(ctx);
        op.add_term(Rational::one(), vec![0; ctx.len()], d, 0);
        op
    }

    /// Add `c · s^s_degree x^x ∂^d`, merging with an existing equal key.
    pub fn add_term(&mut self, c: Rational, x: Vec<u32>, d: Vec<u32>, s_degree: u32) {
        assert!(x.len() == self.ctx.len() && d.len() == self.ctx.len(), "exponent length");
        if c.is_zero() {
            return;
        }
        let key = WeylTerm { x, d, s_degree };
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest total `∂`-order among the terms (0 for the zero operator).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|t| t.d.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (k, v) in &self.terms {
            out.add_term(v * c, k.x.clone(), k.d.clone(), k.s_degree);
        }
        out
    }
}

impl fmt::Display for WeylOperator {
    /// Terms such as `1/4*d(x1)^2` or `-s^2*x1*d(x2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = if neg { -c.clone() } else { c.clone() };
            let mut parts = Vec::new();
            let trivial = t.s_degree == 0 && t.x.iter().chain(&t.d).all(|&e| e == 0);
            if !abs.is_one() || trivial {
                parts.push(format_rational(&abs));
            }
            match t.s_degree {
                0 => {}
                1 => parts.push("s".to_string()),
                k => parts.push(format!("s^{k}")),
            }
            for (name, &e) in self.ctx.names().iter().zip(&t.x) {
                match e {
                    0 => {}
                    1 => parts.push(name.clone()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            for (name, &e) in self.ctx.names().iter().zip(&t.d) {
                match e {
                    0 => {}
                    1 => parts.push(format!("d({name})")),
                    _ => parts.push(format!("d({name})^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// Name of the Bernstein parameter appended to a context.
pub const S_VAR: &str = "s";

/// `ctx` followed by the parameter `s`; rejects a context that already has it.
pub fn with_parameter(ctx: &Context) -> Result<Context> {
    if ctx.index_of(S_VAR).is_some() {
        return Err(Error::ReservedVariable(S_VAR.to_string()));
    }
    Ok(ctx.extended([S_VAR]))
}

/// Memo of `Q_b` with `∂^b f^{s+1} = Q_b · f^{s+1-|b|}`, built one
/// derivative at a time: `∂_i (Q f^m) = (∂_i Q · f + m · Q · ∂_i f) f^{m-1}`.
pub(crate) struct PowerDerivatives {
    f: QPoly,
    df: Vec<QPoly>,
    s: QPoly,
    nvars: usize,
    memo: BTreeMap<Vec<u32>, QPoly>,
}

impl PowerDerivatives {
    /// `f` must already live in the context with `s` appended last.
    pub(crate) fn new(f: &QPoly) -> Self {
        let ctx = f.context();
        let nvars = ctx.len() - 1;
        let df = (0..nvars).map(|i| f.partial(i)).collect();
        let mut memo = BTreeMap::new();
        memo.insert(vec![0; nvars], MultiPoly::one(ctx));
        Self { f: f.clone(), df, s: MultiPoly::var(ctx, nvars), nvars, memo }
    }

    pub(crate) fn get(&mut self, b: &[u32]) -> QPoly {
        if let Some(q) = self.memo.get(b) {
            return q.clone();
        }
        let i = b.iter().position(|&e| e > 0).expect("b = 0 is memoized");
        let mut prev = b.to_vec();
        prev[i] -= 1;
        let q_prev = self.get(&prev);
        let taken: u32 = prev.iter().sum();
        let ctx = self.f.context().clone();
        // m = s + 1 - |prev|
        let m = &self.s + &MultiPoly::constant(&ctx, Rational::from_integer((1 - taken as i64).into()));
        let q = &(&q_prev.partial(i) * &self.f) + &(&(&m * &q_prev) * &self.df[i]);
        self.memo.insert(b.to_vec(), q.clone());
        q
    }

    pub(crate) fn nvars(&self) -> usize {
        self.nvars
    }
}

/// Apply `op` to `f^{s+1}`: returns `(Q, drop)` with
/// `op · f^{s+1} = Q(x, s) · f^{s+1-drop}`, where `drop` is the operator
/// order. `Q` lives in `f`'s context with `s` appended.
pub fn apply_to_power(op: &WeylOperator, f: &QPoly) -> Result<(QPoly, u32)> {
    if f.is_zero() {
        return Err(Error::OutOfRange("f must be nonzero".into()));
    }
    if op.context() != f.context() {
        return Err(Error::ContextMismatch);
    }
    let ext = with_parameter(f.context())?;
    let f_ext = f.embed(&ext)?;
    let drop = op.order();
    let mut derivs = PowerDerivatives::new(&f_ext);
    let f_powers: Vec<QPoly> = (0..=drop).map(|k| f_ext.pow(k)).collect();
    let n = derivs.nvars();
    let mut q = QPoly::zero(&ext);
    for (t, c) in op.terms() {
        let qb = derivs.get(&t.d);
        let order: u32 = t.d.iter().sum();
        let mut mono = t.x.clone();
        mono.push(t.s_degree);
        debug_assert_eq!(mono.len(), n + 1);
        let term = (&qb * &f_powers[(drop - order) as usize]).shift_by(&mono).scale(c);
        q = &q + &term;
    }
    Ok((q, drop))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::parse_poly;
    use crate::{int, rat};

    fn s_poly(ctx: &Context, coeffs: &[Rational]) -> QPoly {
        let si = ctx.index_of(S_VAR).unwrap();
        QPoly::from_terms(
            ctx,
            coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; ctx.len()];
                e[si] = k as u32;
                (e, c.clone())
            }),
        )
    }

    #[test]
    fn derivative_of_x() {
        let f = parse_poly("x1").unwrap();
        let op = WeylOperator::partial(f.context(), 0);
        let (q, drop) = apply_to_power(&op, &f).unwrap();
        assert_eq!(drop, 1);
        assert_eq!(q, s_poly(q.context(), &[int(1), int(1)]));
    }

    #[test]
    fn derivative_of_cubic() {
        let f = parse_poly("x1*x2*(x1+x2)").unwrap();
        let op = WeylOperator::partial(f.context(), 0);
        let (q, drop) = apply_to_power(&op, &f).unwrap();
        assert_eq!(drop, 1);
        let ctx = q.context().clone();
        let expected = &s_poly(&ctx, &[int(1), int(1)])
            * &parse_poly("2*x1*x2 + x2^2").unwrap().embed(&ctx).unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn identity_operator() {
        let f = parse_poly("x1^2 + x2").unwrap();
        let (q, drop) = apply_to_power(&WeylOperator::identity(f.context()), &f).unwrap();
        assert_eq!(drop, 0);
        assert_eq!(q, QPoly::one(q.context()));
    }

    #[test]
    fn second_derivative_of_square() {
        // d^2 x^{2s+2} = (2s+2)(2s+1) x^2 · (x^2)^{s-1}
        let f = parse_poly("x1^2").unwrap();
        let mut op = WeylOperator::zero(f.context());
        op.add_term(rat(1, 4), vec![0], vec![2], 0);
        let (q, drop) = apply_to_power(&op, &f).unwrap();
        assert_eq!(drop, 2);
        let ctx = q.context().clone();
        let expected = &s_poly(&ctx, &[rat(1, 2), rat(3, 2), int(1)]) * &QPoly::var(&ctx, 0).pow(2);
        assert_eq!(q, expected);
    }

    #[test]
    fn reserved_parameter_name() {
        let ctx = Context::new(["s"]);
        let f = QPoly::var(&ctx, 0);
        assert!(matches!(
            apply_to_power(&WeylOperator::identity(&ctx), &f),
            Err(Error::ReservedVariable(_))
        ));
    }

    #[test]
    fn display() {
        let ctx = Context::new(["x1", "x2"]);
        let mut op = WeylOperator::zero(&ctx);
        op.add_term(rat(1, 4), vec![0, 0], vec![2, 0], 0);
        op.add_term(int(-1), vec![1, 0], vec![0, 1], 2);
        assert_eq!(op.order(), 2);
        let text = op.to_string();
        assert!(text.contains("1/4*d(x1)^2"), "{text}");
        assert!(text.contains("s^2*x1*d(x2)"), "{text}");
    }
}
