//! b-function formulas for the Vandermonde determinant `ξ_n`: the recursive
//! conjectural formula, products over partitions, local b-functions, the
//! blow-up and upper-bound formulas, the Kashiwara cover search and the
//! minimal jumping coefficient of the braid arrangement.

use std::collections::BTreeMap;
use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::coxeter::{budur_check, opdam_bg, CoxeterDatum, CoxeterType};
use crate::partitions::{for_each_set_partition, integer_partitions, set_partition_of_point, IntegerPartition};
use crate::{int, rat, Error, FactoredBPoly, Rational, Result};

/// Names of the checks every report carries.
pub const CHECK_NAMES: [&str; 8] = [
    "symmetry",
    "nd_root",
    "partition_divisibility",
    "budur",
    "interval",
    "upper_bound_divisibility",
    "jump_consistency",
    "kashiwara_cover",
];

/// Largest `n` for which the brute-force jumping coefficient is computed.
pub const MAX_JUMP_N: usize = 12;

fn binom2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// `∏_{i=lo}^{hi} (s + i / binom(n, 2))`.
fn linear_block(n: usize, lo: i64, hi: i64) -> FactoredBPoly {
    let c = binom2(n);
    FactoredBPoly::from_roots((lo..=hi).map(|i| (-rat(i, c), 1)))
}

fn require_n_at_least_2(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

/// Memoizing evaluator for the recursive formulas.
///
/// The cache is read-shared and insert-serialized, so one engine may be
/// used from several threads.
#[derive(Debug, Default)]
pub struct BFunEngine {
    cache: RwLock<BTreeMap<usize, FactoredBPoly>>,
}

impl BFunEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Seed the memo table, e.g. from a cache file.
    pub fn with_entries(entries: BTreeMap<usize, FactoredBPoly>) -> Self {
        Self { cache: RwLock::new(entries) }
    }

    /// Copy of the memo table.
    pub fn entries(&self) -> BTreeMap<usize, FactoredBPoly> {
        self.cache.read().expect("cache lock poisoned").clone()
    }

    /// Conjectured `b_{ξ_n}`:
    /// `lcm_{λ ⊢ n, λ ≠ (n)} b_{ξ_λ} · ∏_{i=n-1}^{(n-1)^2} (s + i/binom(n,2))`,
    /// with `b_{ξ_0} = b_{ξ_1} = 1`.
    pub fn b_xi(&self, n: usize) -> FactoredBPoly {
        if n <= 1 {
            return FactoredBPoly::one();
        }
        if let Some(hit) = self.cache.read().expect("cache lock poisoned").get(&n) {
            return hit.clone();
        }
        let n_i = n as i64;
        let value = self
            .proper_lcm(n)
            .product(&linear_block(n, n_i - 1, (n_i - 1) * (n_i - 1)));
        self.cache
            .write()
            .expect("cache lock poisoned")
            .entry(n)
            .or_insert(value)
            .clone()
    }

    /// `b_{ξ_λ} = ∏_i b_{ξ_{λ_i}}`.
    pub fn b_partition(&self, lambda: &IntegerPartition) -> FactoredBPoly {
        lambda
            .parts()
            .iter()
            .fold(FactoredBPoly::one(), |acc, &part| acc.product(&self.b_xi(part)))
    }

    /// `lcm_{λ ⊢ n, λ ≠ (n)} b_{ξ_λ}`.
    ///
    /// Per root `r` the lcm multiplicity is the best total of
    /// `mult_r(b_{ξ_k})` over ways to write `n` as a sum of parts `k < n`,
    /// a max-plus knapsack, so the partitions are never listed.
    pub fn proper_lcm(&self, n: usize) -> FactoredBPoly {
        if n <= 1 {
            return FactoredBPoly::one();
        }
        let smaller: Vec<FactoredBPoly> = (0..n).map(|k| self.b_xi(k)).collect();
        let all_roots = FactoredBPoly::lcm(&smaller);
        let mut out = Vec::new();
        for (r, _) in all_roots.roots() {
            let mut best = vec![0u32; n + 1];
            for total in 1..=n {
                best[total] = (1..total.min(n - 1) + 1)
                    .map(|k| best[total - k] + smaller[k].multiplicity(r))
                    .max()
                    .unwrap_or(0);
            }
            out.push((r.clone(), best[n]));
        }
        FactoredBPoly::from_roots(out)
    }

    /// `proper_lcm` by listing every partition; for cross-checking.
    pub fn proper_lcm_by_enumeration(&self, n: usize) -> FactoredBPoly {
        let parts: Vec<FactoredBPoly> = integer_partitions(n)
            .iter()
            .filter(|l| !l.is_trivial())
            .map(|l| self.b_partition(l))
            .collect();
        FactoredBPoly::lcm(&parts)
    }

    /// Local b-function of `ξ_n` at the point `q`: the product formula for
    /// the shape of its coincidence pattern. Off the divisor this is 1.
    pub fn local_b(&self, q: &[Rational]) -> FactoredBPoly {
        self.b_partition(&set_partition_of_point(q).shape())
    }

    /// b-function of the pullback of `ξ_n` to the blow-up along the diagonal:
    /// `lcm_{λ ≠ (n)} b_{ξ_λ} · ∏_{i=1}^{binom(n,2)} (s + i/binom(n,2))`.
    pub fn blowup_b(&self, n: usize) -> Result<FactoredBPoly> {
        require_n_at_least_2(n)?;
        Ok(self.proper_lcm(n).product(&linear_block(n, 1, binom2(n))))
    }

    /// `lcm_{λ≠(n)} b_{ξ_λ}(s) · lcm_{λ≠(n)} b_{ξ_λ}(s+1) · ∏_{i=n-1}^{(n-1)^2} (s + i/binom(n,2))`.
    pub fn upper_bound_b(&self, n: usize) -> Result<FactoredBPoly> {
        require_n_at_least_2(n)?;
        let lcm = self.proper_lcm(n);
        let shifted = lcm.affine_substitute(&int(1), &int(1))?;
        let n_i = n as i64;
        Ok(lcm
            .product(&shifted)
            .product(&linear_block(n, n_i - 1, (n_i - 1) * (n_i - 1))))
    }

    /// Lexicographically smallest `(N, M)` with `N ≤ max_n`, `M ≤ max_m` and
    /// `b_{ξ_n} | ∏_{k=0}^{N} lcm_{λ≠(n)} b_{ξ_λ}(s+k) · ∏_{i=1}^{M} (s + i/binom(n,2))`.
    pub fn kashiwara_cover(&self, n: usize, max_n: u32, max_m: u32) -> Result<Option<(u32, u32)>> {
        require_n_at_least_2(n)?;
        let target = self.b_xi(n);
        let lcm = self.proper_lcm(n);
        let c = binom2(n);
        let mut shifted_product = FactoredBPoly::one();
        for big_n in 0..=max_n {
            shifted_product = shifted_product.product(&lcm.shift(&int(big_n.into())));
            let mut candidate = shifted_product.clone();
            for m in 0..=max_m {
                if m > 0 {
                    candidate = candidate.product(&FactoredBPoly::linear(-rat(m.into(), c)));
                }
                if target.divides(&candidate) {
                    return Ok(Some((big_n, m)));
                }
            }
        }
        Ok(None)
    }

    /// Evaluate every invariant at one `n` (2 ≤ n ≤ 12).
    pub fn report(&self, n: usize) -> Result<BFunctionReport> {
        require_n_at_least_2(n)?;
        if n > MAX_JUMP_N {
            return Err(Error::OutOfRange(format!("reports are limited to n <= {MAX_JUMP_N}")));
        }
        let conjectured = self.b_xi(n);
        let blowup = self.blowup_b(n)?;
        let upper_bound = self.upper_bound_b(n)?;
        let min_jump = min_jumping_coefficient(n)?;
        let c = binom2(n);
        let n_i = n as i64;
        let upper_root = -rat(n_i - 1, c);
        let lower_root = -rat((n_i - 1) * (n_i - 1), c);
        let (max_root, min_root) = conjectured.root_extrema().expect("n >= 2 has roots");

        let mut checks = BTreeMap::new();
        checks.insert("symmetry".to_string(), conjectured.is_symmetric_about(&int(-1)));
        checks.insert(
            "nd_root".to_string(),
            conjectured.has_root(&upper_root) && max_root == upper_root,
        );
        checks.insert(
            "partition_divisibility".to_string(),
            integer_partitions(n)
                .iter()
                .all(|l| self.b_partition(l).divides(&conjectured)),
        );
        let a_type = CoxeterDatum::new(CoxeterType::A(n as u32 - 1))?;
        checks.insert("budur".to_string(), budur_check(&opdam_bg(&a_type), &conjectured));
        checks.insert(
            "interval".to_string(),
            min_root >= lower_root && max_root <= upper_root && min_root > int(-2) && max_root < int(0),
        );
        checks.insert(
            "upper_bound_divisibility".to_string(),
            conjectured.divides(&upper_bound),
        );
        checks.insert("jump_consistency".to_string(), min_jump == -max_root.clone());
        let kashiwara = self.kashiwara_cover(n, 5, 200)?;
        checks.insert("kashiwara_cover".to_string(), kashiwara.is_some());

        Ok(BFunctionReport {
            n,
            conjectured,
            blowup,
            upper_bound,
            min_jump: RationalJson(min_jump),
            kashiwara,
            checks,
        })
    }

    /// Reports for every `n` in `2..=n_max`, in order.
    pub fn run_invariant_suite(&self, n_max: usize) -> Result<Vec<BFunctionReport>> {
        require_n_at_least_2(n_max)?;
        (2..=n_max).map(|n| self.report(n)).collect()
    }
}

static SHARED: LazyLock<BFunEngine> = LazyLock::new(BFunEngine::new);

/// Process-wide engine behind the free functions below.
pub fn shared_engine() -> &'static BFunEngine {
    &SHARED
}

pub fn b_xi(n: usize) -> FactoredBPoly {
    SHARED.b_xi(n)
}

pub fn b_partition(lambda: &IntegerPartition) -> FactoredBPoly {
    SHARED.b_partition(lambda)
}

pub fn local_b(q: &[Rational]) -> FactoredBPoly {
    SHARED.local_b(q)
}

pub fn blowup_b(n: usize) -> Result<FactoredBPoly> {
    SHARED.blowup_b(n)
}

pub fn upper_bound_b(n: usize) -> Result<FactoredBPoly> {
    SHARED.upper_bound_b(n)
}

pub fn kashiwara_cover(n: usize, max_n: u32, max_m: u32) -> Result<Option<(u32, u32)>> {
    SHARED.kashiwara_cover(n, max_n, max_m)
}

pub fn run_invariant_suite(n_max: usize) -> Result<Vec<BFunctionReport>> {
    SHARED.run_invariant_suite(n_max)
}

/// Minimal jumping coefficient of the braid arrangement in `n` variables:
/// the minimum over flats, i.e. set partitions `P` with a non-singleton
/// block, of `(n - #blocks) / Σ_B binom(|B|, 2)`.
pub fn min_jumping_coefficient(n: usize) -> Result<Rational> {
    require_n_at_least_2(n)?;
    if n > MAX_JUMP_N {
        return Err(Error::OutOfRange(format!("flat enumeration limited to n <= {MAX_JUMP_N}")));
    }
    let mut best: Option<(u64, u64)> = None;
    let mut sizes = vec![0u64; n];
    for_each_set_partition(n, |rgs| {
        sizes.iter_mut().for_each(|s| *s = 0);
        let mut blocks = 0;
        for &b in rgs {
            sizes[b] += 1;
            blocks = blocks.max(b + 1);
        }
        let hyperplanes: u64 = sizes[..blocks].iter().map(|&s| s * (s - 1) / 2).sum();
        if hyperplanes == 0 {
            return;
        }
        let codim = (n - blocks) as u64;
        match best {
            Some((num, den)) if codim * den >= num * hyperplanes => {}
            _ => best = Some((codim, hyperplanes)),
        }
    });
    let (num, den) = best.expect("n >= 2 has a nontrivial flat");
    Ok(rat(num as i64, den as i64))
}

/// Rational serialized as `{"num": .., "den": ..}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalJson(pub Rational);

impl Serialize for RationalJson {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        use serde::ser::{Error as _, SerializeStruct};
        let num = self.0.numer().to_i64().ok_or_else(|| S::Error::custom("numerator overflows i64"))?;
        let den = self.0.denom().to_i64().ok_or_else(|| S::Error::custom("denominator overflows i64"))?;
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &num)?;
        st.serialize_field("den", &den)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            num: i64,
            den: i64,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.den <= 0 {
            return Err(D::Error::custom("denominator must be positive"));
        }
        Ok(RationalJson(rat(raw.num, raw.den)))
    }
}

/// Formulas and check outcomes for one `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BFunctionReport {
    pub n: usize,
    pub conjectured: FactoredBPoly,
    pub blowup: FactoredBPoly,
    pub upper_bound: FactoredBPoly,
    pub min_jump: RationalJson,
    pub kashiwara: Option<(u32, u32)>,
    pub checks: BTreeMap<String, bool>,
}

impl BFunctionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(roots: &[(i64, i64, u32)]) -> FactoredBPoly {
        FactoredBPoly::from_roots(roots.iter().map(|&(p, q, m)| (rat(p, q), m)))
    }

    fn b3() -> FactoredBPoly {
        fp(&[(-1, 1, 2), (-2, 3, 1), (-4, 3, 1)])
    }

    #[test]
    fn knapsack_lcm_matches_enumeration() {
        let engine = BFunEngine::new();
        for n in 2..=14 {
            assert_eq!(engine.proper_lcm(n), engine.proper_lcm_by_enumeration(n), "n = {n}");
        }
    }

    #[test]
    fn base_and_small_cases() {
        let e = BFunEngine::new();
        assert!(e.b_xi(0).is_one());
        assert!(e.b_xi(1).is_one());
        assert_eq!(e.b_xi(2), fp(&[(-1, 1, 1)]));
        assert_eq!(e.b_xi(3), b3());
    }

    #[test]
    fn b_xi_4_by_hand() {
        // lcm over (3,1),(2,2),(2,1,1),(1^4) = (s+1)^2 (s+2/3)(s+4/3);
        // linear block i = 3..9 over 6
        let expected = fp(&[
            (-1, 1, 3),
            (-2, 3, 2),
            (-4, 3, 2),
            (-1, 2, 1),
            (-5, 6, 1),
            (-7, 6, 1),
            (-3, 2, 1),
        ]);
        assert_eq!(b_xi(4), expected);
    }

    #[test]
    fn partition_products() {
        let p = |v: Vec<usize>| IntegerPartition::new(v).unwrap();
        assert_eq!(b_partition(&p(vec![2, 1])), fp(&[(-1, 1, 1)]));
        assert_eq!(b_partition(&p(vec![2, 2])), fp(&[(-1, 1, 2)]));
        assert!(b_partition(&p(vec![1, 1, 1])).is_one());
        let lcm = FactoredBPoly::lcm([&b_partition(&p(vec![2, 1])), &b_partition(&p(vec![1, 1, 1]))]);
        assert_eq!(lcm, fp(&[(-1, 1, 1)]));
        assert!(fp(&[(-1, 1, 2)]).divides(&b_xi(4)));
    }

    #[test]
    fn local_examples() {
        assert_eq!(local_b(&[int(5), int(5), int(7)]), fp(&[(-1, 1, 1)]));
        assert_eq!(local_b(&[int(0), int(0), int(0)]), b3());
        assert!(local_b(&[int(1), int(2), int(3)]).is_one());
    }

    #[test]
    fn blowup_examples() {
        assert_eq!(blowup_b(2).unwrap(), fp(&[(-1, 1, 1)]));
        assert_eq!(blowup_b(3).unwrap(), fp(&[(-1, 1, 2), (-1, 3, 1), (-2, 3, 1)]));
        let expected4 = b3().product(&linear_block(4, 1, 6));
        assert_eq!(blowup_b(4).unwrap(), expected4);
        assert!(blowup_b(1).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound_b(2).unwrap(), fp(&[(-1, 1, 1)]));
        assert_eq!(
            upper_bound_b(3).unwrap(),
            fp(&[(-1, 1, 2), (-2, 1, 1), (-2, 3, 1), (-4, 3, 1)])
        );
        assert!(b_xi(3).divides(&upper_bound_b(3).unwrap()));
    }

    #[test]
    fn kashiwara_examples() {
        assert_eq!(kashiwara_cover(2, 5, 200).unwrap(), Some((0, 1)));
        assert_eq!(kashiwara_cover(3, 5, 200).unwrap(), Some((0, 4)));
        assert_eq!(kashiwara_cover(3, 5, 2).unwrap(), None);
    }

    #[test]
    fn jumping_coefficients() {
        assert_eq!(min_jumping_coefficient(2).unwrap(), int(1));
        assert_eq!(min_jumping_coefficient(3).unwrap(), rat(2, 3));
        assert_eq!(min_jumping_coefficient(4).unwrap(), rat(1, 2));
        assert!(min_jumping_coefficient(1).is_err());
        assert!(min_jumping_coefficient(13).is_err());
    }

    #[test]
    fn suite_small() {
        let reports = BFunEngine::new().run_invariant_suite(5).unwrap();
        assert_eq!(reports.len(), 4);
        for r in &reports {
            assert!(r.all_passed(), "n={} failed {:?}", r.n, r.failed_checks());
            for name in CHECK_NAMES {
                assert!(r.checks.contains_key(name));
            }
        }
    }

    #[test]
    fn seeded_cache_is_used() {
        let mut seed = BTreeMap::new();
        seed.insert(3, fp(&[(-7, 1, 1)]));
        let e = BFunEngine::with_entries(seed);
        assert_eq!(e.b_xi(3), fp(&[(-7, 1, 1)]));
        assert!(e.entries().contains_key(&3));
    }

    #[test]
    fn report_json_round_trip() {
        let r = BFunEngine::new().report(3).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: BFunctionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
