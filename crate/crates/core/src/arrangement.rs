//! Affine arrangements over the rationals and their sign vectors.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::rational::{dot, parse_rat, Rat};

/// Position relative to a hyperplane. The variant order (`Plus < Minus < Zero`)
/// is the canonical chamber order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        if r.is_positive() {
            Sign::Plus
        } else if r.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn of_f64(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Plus
        } else if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_full_support(&self) -> bool {
        self.0.iter().all(|&s| s != Sign::Zero)
    }

    /// `self <= other` in the conformal order: `other` agrees wherever `self`
    /// is nonzero.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| a == Sign::Zero || a == b)
    }

    /// Covector composition `self ∘ other`.
    pub fn compose(&self, other: &SignVector) -> SignVector {
        SignVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| if a == Sign::Zero { b } else { a })
                .collect(),
        )
    }

    pub fn restrict(&self, indices: &[usize]) -> SignVector {
        SignVector(indices.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                '0' => Ok(Sign::Zero),
                _ => Err(Error::MalformedInput(format!("bad sign character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

/// `f(q) = normal · q + offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl AffineForm {
    pub fn eval(&self, q: &[Rat]) -> Rat {
        dot(&self.normal, q) + &self.offset
    }

    pub fn eval_linear(&self, v: &[Rat]) -> Rat {
        dot(&self.normal, v)
    }

    pub fn eval_f64(&self, q: &[f64]) -> f64 {
        self.normal_f64()
            .iter()
            .zip(q)
            .map(|(a, x)| a * x)
            .sum::<f64>()
            + crate::rational::to_f64(&self.offset)
    }

    pub fn linear_f64(&self, v: &[f64]) -> f64 {
        self.normal_f64().iter().zip(v).map(|(a, x)| a * x).sum()
    }

    pub fn normal_f64(&self) -> Vec<f64> {
        self.normal.iter().map(crate::rational::to_f64).collect()
    }
}

/// A validated arrangement: `n >= 1` nonconstant forms whose normals span
/// rational `d`-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<AffineForm>,
}

impl Arrangement {
    pub fn new(dim: usize, forms: Vec<AffineForm>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::MalformedInput("dimension must be positive".into()));
        }
        if forms.is_empty() {
            return Err(Error::MalformedInput(
                "at least one form is required".into(),
            ));
        }
        for (j, f) in forms.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: f.normal.len(),
                });
            }
            if f.normal.iter().all(Zero::is_zero) {
                return Err(Error::ZeroNormal(j));
            }
        }
        let normals: RatMatrix = forms.iter().map(|f| f.normal.clone()).collect();
        let rank = linalg::rank(&normals);
        if rank != dim {
            return Err(Error::RankDeficient { rank, dim });
        }
        Ok(Arrangement { dim, forms })
    }

    /// Builds an arrangement from integer rows `[a_1, ..., a_d, c]`.
    pub fn from_int_rows(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        let forms = rows
            .iter()
            .map(|r| AffineForm {
                normal: r[..r.len() - 1]
                    .iter()
                    .map(|&x| crate::rational::rat(x))
                    .collect(),
                offset: crate::rational::rat(r[r.len() - 1]),
            })
            .collect();
        Arrangement::new(dim, forms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    /// The `n × d` matrix of normals (the linearization of `f`).
    pub fn normal_matrix(&self) -> RatMatrix {
        self.forms.iter().map(|f| f.normal.clone()).collect()
    }

    pub fn offsets(&self) -> Vec<Rat> {
        self.forms.iter().map(|f| f.offset.clone()).collect()
    }

    pub fn check_point(&self, q: &[Rat]) -> Result<()> {
        if q.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: q.len(),
            });
        }
        Ok(())
    }

    /// `f(q)` as a vector in `Q^n`.
    pub fn eval(&self, q: &[Rat]) -> Result<Vec<Rat>> {
        self.check_point(q)?;
        Ok(self.forms.iter().map(|f| f.eval(q)).collect())
    }

    pub fn sign_vector(&self, q: &[Rat]) -> Result<SignVector> {
        Ok(SignVector(self.eval(q)?.iter().map(Sign::of).collect()))
    }

    /// The subarrangement on `indices`; its normals need not span.
    pub fn sub_forms(&self, indices: &[usize]) -> Vec<AffineForm> {
        indices.iter().map(|&i| self.forms[i].clone()).collect()
    }
}

/// Parses the plain-text arrangement format: a `d n` header followed by `n`
/// rows of `d + 1` exact rationals. Lines starting with `#` are comments.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedInput("missing header line".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(Error::MalformedInput(format!(
            "header must be `d n`, got {header:?}"
        )));
    }
    let parse_usize = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::MalformedInput(format!("bad header value {s:?}")))
    };
    let dim = parse_usize(head[0])?;
    let n = parse_usize(head[1])?;
    let mut forms = Vec::with_capacity(n);
    for (j, line) in lines.by_ref().take(n).enumerate() {
        let vals = line
            .split_whitespace()
            .map(parse_rat)
            .collect::<Result<Vec<_>>>()?;
        if vals.len() != dim + 1 {
            return Err(Error::MalformedInput(format!(
                "row {} has {} entries, expected {}",
                j + 1,
                vals.len(),
                dim + 1
            )));
        }
        let offset = vals[dim].clone();
        forms.push(AffineForm {
            normal: vals[..dim].to_vec(),
            offset,
        });
    }
    if forms.len() != n {
        return Err(Error::MalformedInput(format!(
            "expected {n} rows, found {}",
            forms.len()
        )));
    }
    if let Some(extra) = lines.next() {
        return Err(Error::MalformedInput(format!(
            "trailing content: {extra:?}"
        )));
    }
    Arrangement::new(dim, forms)
}
