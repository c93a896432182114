use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::operator::{apply_to_power, with_parameter, PowerDerivatives, WeylOperator};
use crate::bfun::b_xi;
use crate::linalg::rational_nullspace;
use crate::sympoly::{Context, Monomial};
use crate::{Error, FactoredBPoly, QPoly, Rational, Result};

/// Refuse searches with more unknowns than this.
pub const MAX_UNKNOWNS: usize = 10_000;

/// Search space: `∂`-order, `s`-degree and coefficient degree of the ansatz.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleBounds {
    pub order: u32,
    pub s_degree: u32,
    pub coeff_degree: u32,
}

impl OracleBounds {
    pub const fn new(order: u32, s_degree: u32, coeff_degree: u32) -> Self {
        Self { order, s_degree, coeff_degree }
    }

    /// Bounds known to reach the minimal polynomial for the discriminant
    /// in `n` points (for `n` = 3 an order-3 ansatz is too small).
    pub fn for_vandermonde(n: usize) -> Self {
        match n {
            0..=2 => Self::new(1, 1, 1),
            3 => Self::new(4, 4, 3),
            _ => Self::new(6, 6, 5),
        }
    }
}

impl Default for OracleBounds {
    fn default() -> Self {
        Self::for_vandermonde(3)
    }
}

/// A verified functional equation `L · f^{s+1} = b(s) · f^s`.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Rational-root part of the monic `b`.
    pub b: FactoredBPoly,
    /// Monic cofactor without rational roots, constant term first; `[1]`
    /// when `b` splits over the rationals.
    pub residual: Vec<Rational>,
    /// Coefficients of the monic `b`, constant term first.
    pub coefficients: Vec<Rational>,
    pub certificate: WeylOperator,
    pub bounds: OracleBounds,
}

impl OracleResult {
    pub fn splits(&self) -> bool {
        self.residual.len() == 1
    }
}

fn compositions(nvars: usize, total: u32, out: &mut Vec<Monomial>) {
    fn rec(prefix: &mut Vec<u32>, left: usize, total: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=total).rev() {
            prefix.push(e);
            rec(prefix, left - 1, total - e, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return;
    }
    rec(&mut Vec::new(), nvars, total, out);
}

fn monomials_of_degree(nvars: usize, total: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    compositions(nvars, total, &mut out);
    out
}

fn monomials_up_to(nvars: usize, max: u32) -> Vec<Monomial> {
    (0..=max).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

struct Unknown {
    x: Monomial,
    d: Monomial,
    s_degree: u32,
}

fn ansatz(f: &QPoly, bounds: &OracleBounds) -> Vec<Unknown> {
    let n = f.context().len();
    let mut pairs = Vec::new();
    let weight = if f.is_homogeneous() { f.total_degree() } else { None };
    for ord in 1..=bounds.order {
        for d in monomials_of_degree(n, ord) {
            let xs = match weight {
                // graded pieces of a homogeneous equation decouple
                Some(m) if ord < m || ord - m > bounds.coeff_degree => continue,
                Some(m) => monomials_of_degree(n, ord - m),
                None => monomials_up_to(n, bounds.coeff_degree),
            };
            for x in xs {
                pairs.push((x, d.clone()));
            }
        }
    }
    if weight.is_none() {
        for x in monomials_up_to(n, bounds.coeff_degree) {
            pairs.push((x, vec![0; n]));
        }
    }
    let mut out = Vec::new();
    for (x, d) in pairs {
        for k in 0..=bounds.s_degree {
            out.push(Unknown { x: x.clone(), d: d.clone(), s_degree: k });
        }
    }
    out
}

/// Search for a Bernstein operator of `f` inside `bounds` and return the
/// one with the monic `b` of least degree, or `None` if the space holds no
/// functional equation.
pub fn find_bernstein(f: &QPoly, bounds: OracleBounds) -> Result<Option<OracleResult>> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let ctx = f.context().clone();
    let ext = with_parameter(&ctx)?;
    let n = ctx.len();
    let unknowns = ansatz(f, &bounds);
    let b_max = bounds.s_degree + bounds.order;
    let cols = unknowns.len() + b_max as usize + 1;
    if cols > MAX_UNKNOWNS {
        return Err(Error::OutOfRange(format!(
            "ansatz has {cols} unknowns (limit {MAX_UNKNOWNS})"
        )));
    }
    if unknowns.is_empty() {
        return Ok(None);
    }

    let top = bounds.order;
    let f_ext = f.embed(&ext)?;
    let f_powers: Vec<QPoly> = (0..=top).map(|k| f_ext.pow(k)).collect();
    let mut derivs = PowerDerivatives::new(&f_ext);

    // column polynomials: s^k x^a Q_b f^{top-|b|}, then -s^j f^{top-1}
    let mut columns: Vec<QPoly> = Vec::with_capacity(cols);
    let mut base: BTreeMap<Monomial, QPoly> = BTreeMap::new();
    for u in &unknowns {
        let p = base.entry(u.d.clone()).or_insert_with(|| {
            let ord: u32 = u.d.iter().sum();
            &derivs.get(&u.d) * &f_powers[(top - ord) as usize]
        });
        let mut shift = u.x.clone();
        shift.push(u.s_degree);
        columns.push(p.shift_by(&shift));
    }
    let rhs_base = -&f_powers[(top - 1) as usize];
    for j in 0..=b_max {
        let mut shift = vec![0; n];
        shift.push(j);
        columns.push(rhs_base.shift_by(&shift));
    }

    let mut row_of: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for col in &columns {
        for (m, _) in col.terms() {
            let next = row_of.len();
            row_of.entry(m).or_insert(next);
        }
    }
    let mut rows = vec![vec![Rational::zero(); cols]; row_of.len()];
    for (j, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            rows[row_of[m]][j] = c.clone();
        }
    }

    let basis = rational_nullspace(&rows, cols);
    let nl = unknowns.len();
    let Some(best) = minimal_b_vector(basis, nl) else {
        return Ok(None);
    };

    let coefficients: Vec<Rational> = {
        let b_part = &best[nl..];
        let deg = b_part.iter().rposition(|c| !c.is_zero()).expect("nonzero b");
        b_part[..=deg].to_vec()
    };
    let mut certificate = WeylOperator::zero(&ctx);
    for (u, c) in unknowns.iter().zip(&best) {
        certificate.add_term(c.clone(), u.x.clone(), u.d.clone(), u.s_degree);
    }

    // round trip: L · f^{s+1} must equal b(s) · f^s
    let (q, drop) = apply_to_power(&certificate, f)?;
    let si = n;
    let b_poly = QPoly::from_terms(
        &ext,
        coefficients.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; n + 1];
            e[si] = k as u32;
            (e, c.clone())
        }),
    );
    if drop == 0 || q != &b_poly * &f_ext.pow(drop - 1) {
        return Err(Error::OutOfRange("oracle certificate failed verification".into()));
    }

    let (b, residual) = factor_rational_roots(&coefficients);
    Ok(Some(OracleResult { b, residual, coefficients, certificate, bounds }))
}

/// Among the span of `basis`, a vector whose `b` part (coordinates from
/// `nl` on) is nonzero of least degree, scaled so that `b` is monic.
fn minimal_b_vector(basis: Vec<Vec<Rational>>, nl: usize) -> Option<Vec<Rational>> {
    let lead = |v: &[Rational]| v[nl..].iter().rposition(|c| !c.is_zero());
    // echelon on the b part, leading degree strictly decreasing
    let mut pivots: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    for mut v in basis {
        while let Some(d) = lead(&v) {
            match pivots.get(&d) {
                Some(p) => {
                    let factor = &v[nl + d] / &p[nl + d];
                    for (x, y) in v.iter_mut().zip(p) {
                        *x -= &factor * y;
                    }
                }
                None => {
                    pivots.insert(d, v);
                    break;
                }
            }
        }
    }
    let (&d, v) = pivots.iter().next()?;
    let lc = v[nl + d].clone();
    Some(v.iter().map(|x| x / &lc).collect())
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

fn eval_poly(coeffs: &[Rational], s: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * s + c)
}

/// Divide by `(s - r)`, assuming `r` is a root.
fn deflate(coeffs: &[Rational], r: &Rational) -> Vec<Rational> {
    let deg = coeffs.len() - 1;
    let mut out = vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for i in (1..=deg).rev() {
        carry = &coeffs[i] + &carry * r;
        out[i - 1] = carry.clone();
    }
    out
}

/// Split a monic polynomial (constant term first) into its rational-root
/// part and the remaining monic cofactor.
pub fn factor_rational_roots(coeffs: &[Rational]) -> (FactoredBPoly, Vec<Rational>) {
    let mut rest = coeffs.to_vec();
    let mut roots: Vec<(Rational, u32)> = Vec::new();
    while rest.len() > 1 && rest[0].is_zero() {
        roots.push((Rational::zero(), 1));
        rest.remove(0);
    }
    if rest.len() > 1 {
        let l = rest.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = rest.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        if let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) {
            let mut candidates: Vec<Rational> = Vec::new();
            for p in &ps {
                for q in &qs {
                    let r = Rational::new(BigInt::from(*p), BigInt::from(*q));
                    candidates.push(-r.clone());
                    candidates.push(r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                while rest.len() > 1 && eval_poly(&rest, &r).is_zero() {
                    rest = deflate(&rest, &r);
                    roots.push((r.clone(), 1));
                }
            }
        }
    }
    (FactoredBPoly::from_roots(roots), rest)
}

/// Discriminant `∏_{i<j} (x_i - x_j)` rewritten in the differences
/// `y_i = x_i - x_{i+1}`, which drops the translation direction.
pub fn essential_vandermonde(n: usize) -> QPoly {
    let m = n.saturating_sub(1);
    let ctx = Context::new((1..=m).map(|i| format!("y{i}")));
    let mut out = QPoly::one(&ctx);
    for i in 0..m {
        for j in (i + 1)..=m {
            let mut factor = QPoly::zero(&ctx);
            for k in i..j {
                factor = &factor + &QPoly::var(&ctx, k);
            }
            out = &out * &factor;
        }
    }
    out
}

/// Outcome of comparing the oracle with the conjectured formula.
#[derive(Clone, Debug)]
pub enum ConjectureVerdict {
    Agrees(OracleResult),
    Disagrees { conjectured: FactoredBPoly, oracle: OracleResult },
    Inconclusive(String),
}

impl ConjectureVerdict {
    pub fn agrees(&self) -> bool {
        matches!(self, Self::Agrees(_))
    }
}

/// Largest `n` checked without `allow_large`.
pub const SMALL_N_LIMIT: usize = 3;

/// Compare the oracle's minimal `b` for the discriminant with the
/// conjectured one. A result that is a proper multiple of the conjecture
/// only means the bounds were too small, so it is inconclusive.
pub fn verify_conjecture_small(
    n: usize,
    bounds: Option<OracleBounds>,
    allow_large: bool,
) -> Result<ConjectureVerdict> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} must be at least 2")));
    }
    if n > SMALL_N_LIMIT && !allow_large {
        return Err(Error::OutOfRange(format!(
            "n = {n} exceeds {SMALL_N_LIMIT}; pass allow_large to opt in"
        )));
    }
    let bounds = bounds.unwrap_or_else(|| OracleBounds::for_vandermonde(n));
    let conjectured = b_xi(n);
    let f = essential_vandermonde(n);
    let Some(found) = find_bernstein(&f, bounds)? else {
        return Ok(ConjectureVerdict::Inconclusive(format!(
            "no functional equation within order {}, s-degree {}, coefficient degree {}",
            bounds.order, bounds.s_degree, bounds.coeff_degree
        )));
    };
    if found.splits() && found.b == conjectured {
        return Ok(ConjectureVerdict::Agrees(found));
    }
    if found.splits() && conjectured.divides(&found.b) {
        return Ok(ConjectureVerdict::Inconclusive(format!(
            "oracle found the multiple {} of the conjectured polynomial",
            found.b
        )));
    }
    Ok(ConjectureVerdict::Disagrees { conjectured, oracle: found })
}
