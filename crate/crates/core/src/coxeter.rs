//! Finite irreducible Coxeter types, their fundamental invariant degrees,
//! and Opdam's b-function of the discriminant in basic-invariant coordinates.

use std::fmt;
use std::str::FromStr;

use crate::{int, rat, Error, FactoredBPoly, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(u32),
    B(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
    H3,
    H4,
    /// Dihedral group of order `2m`.
    I2(u32),
}

impl CoxeterType {
    /// Weyl groups of root systems. `I2(m)` counts only for `m ∈ {3, 4, 6}`.
    pub fn is_crystallographic(self) -> bool {
        match self {
            CoxeterType::H3 | CoxeterType::H4 => false,
            CoxeterType::I2(m) => matches!(m, 3 | 4 | 6),
            _ => true,
        }
    }

    fn validate(self) -> Result<Self> {
        let ok = match self {
            CoxeterType::A(n) => n >= 1,
            CoxeterType::B(n) => n >= 2,
            CoxeterType::D(n) => n >= 4,
            CoxeterType::I2(m) => m >= 3,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::UnknownCoxeterType(self.to_string()))
        }
    }

    /// Every exceptional type plus the infinite families up to `max_rank`
    /// and dihedral groups up to `I2(max_rank + 2)`.
    pub fn catalog(max_rank: u32) -> Vec<CoxeterType> {
        use CoxeterType::*;
        let mut out = vec![E6, E7, E8, F4, G2, H3, H4];
        out.extend((1..=max_rank).map(A));
        out.extend((2..=max_rank).map(B));
        out.extend((4..=max_rank).map(D));
        out.extend((3..=max_rank + 2).map(I2));
        out
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::E6 => f.write_str("E6"),
            CoxeterType::E7 => f.write_str("E7"),
            CoxeterType::E8 => f.write_str("E8"),
            CoxeterType::F4 => f.write_str("F4"),
            CoxeterType::G2 => f.write_str("G2"),
            CoxeterType::H3 => f.write_str("H3"),
            CoxeterType::H4 => f.write_str("H4"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    /// Accepts `A3`, `A_3`, `E6`, `G2`, `I2(7)` (case-insensitive).
    fn from_str(label: &str) -> Result<Self> {
        let unknown = || Error::UnknownCoxeterType(label.to_string());
        let norm: String = label.trim().to_ascii_uppercase().replace('_', "");
        if let Some(inner) = norm.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = inner.parse().map_err(|_| unknown())?;
            return CoxeterType::I2(m).validate().map_err(|_| unknown());
        }
        let ty = match norm.as_str() {
            "E6" => CoxeterType::E6,
            "E7" => CoxeterType::E7,
            "E8" => CoxeterType::E8,
            "F4" => CoxeterType::F4,
            "G2" => CoxeterType::G2,
            "H3" => CoxeterType::H3,
            "H4" => CoxeterType::H4,
            _ => {
                let (family, rank) = norm.split_at(norm.len().min(1));
                let n: u32 = rank.parse().map_err(|_| unknown())?;
                match family {
                    "A" => CoxeterType::A(n),
                    "B" => CoxeterType::B(n),
                    "D" => CoxeterType::D(n),
                    _ => return Err(unknown()),
                }
            }
        };
        ty.validate().map_err(|_| unknown())
    }
}

/// Type label with its rank, degrees `d_1 ≤ … ≤ d_rank`, and number of
/// positive roots (the degree of the arrangement polynomial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDatum {
    pub label: CoxeterType,
    pub rank: u32,
    pub degrees: Vec<u32>,
    pub positive_root_count: u32,
}

impl CoxeterDatum {
    pub fn new(label: CoxeterType) -> Result<Self> {
        let label = label.validate()?;
        let mut degrees: Vec<u32> = match label {
            CoxeterType::A(n) => (2..=n + 1).collect(),
            CoxeterType::B(n) => (1..=n).map(|i| 2 * i).collect(),
            CoxeterType::D(n) => (1..n).map(|i| 2 * i).chain([n]).collect(),
            CoxeterType::E6 => vec![2, 5, 6, 8, 9, 12],
            CoxeterType::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            CoxeterType::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            CoxeterType::F4 => vec![2, 6, 8, 12],
            CoxeterType::G2 => vec![2, 6],
            CoxeterType::H3 => vec![2, 6, 10],
            CoxeterType::H4 => vec![2, 12, 20, 30],
            CoxeterType::I2(m) => vec![2, m],
        };
        degrees.sort_unstable();
        let rank = degrees.len() as u32;
        let positive_root_count = degrees.iter().map(|d| d - 1).sum();
        let datum = CoxeterDatum { label, rank, degrees, positive_root_count };
        assert!(
            datum.coxeter_number() * datum.rank == 2 * datum.positive_root_count,
            "degree table for {label} violates h * rank = 2 * #positive roots"
        );
        Ok(datum)
    }

    /// Largest degree.
    pub fn coxeter_number(&self) -> u32 {
        *self.degrees.last().expect("rank >= 1")
    }

    /// `-rank / #positive roots`, the root predicted by the n/d conjecture.
    pub fn nd_value(&self) -> Rational {
        -rat(self.rank.into(), self.positive_root_count.into())
    }

    /// `-(1/2 + 1/h)`: the Opdam factor that witnesses the n/d root.
    pub fn witness_root(&self) -> Rational {
        -(rat(1, 2) + rat(1, self.coxeter_number().into()))
    }
}

/// Look up the degree table for a label string such as `"A3"` or `"I2(7)"`.
pub fn degrees(label: &str) -> Result<CoxeterDatum> {
    CoxeterDatum::new(label.parse()?)
}

/// `∏_i ∏_{j=1}^{d_i - 1} (s + 1/2 + j/d_i)`.
pub fn opdam_bg(datum: &CoxeterDatum) -> FactoredBPoly {
    let half = rat(1, 2);
    FactoredBPoly::from_roots(datum.degrees.iter().flat_map(|&d| {
        let half = half.clone();
        (1..d).map(move |j| (-(&half + rat(j.into(), d.into())), 1))
    }))
}

/// Whether `-rank / #positive roots` is a root of `b`.
pub fn nd_root_check(b: &FactoredBPoly, datum: &CoxeterDatum) -> bool {
    b.has_root(&datum.nd_value())
}

/// `bg(s) | bxi(2s + 1)`.
pub fn budur_check(bg: &FactoredBPoly, bxi: &FactoredBPoly) -> bool {
    let sub = bxi
        .affine_substitute(&int(2), &int(1))
        .expect("nonzero scale");
    bg.divides(&sub)
}
