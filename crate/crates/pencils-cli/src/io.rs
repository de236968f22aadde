//! JSON schemas for pencil and invariant files, and the conversions between
//! them and the library types.
//!
//! A pencil file is `{"field":{"kind":"prime","p":2}|{"kind":"rational"},
//! "rows":R,"cols":C,"A0":[[..]],"A1":[[..]]}` with integer entries (reduced
//! mod p for prime fields) or `"num/den"` strings over the rationals. An
//! invariants file carries the same field descriptor plus
//! `{"rank":n,"hif":[{"t_exp":k,"finite":[..]}],"col_min":[..],"row_min":[..]}`
//! with finite-part coefficients listed in ascending order. Writing a parsed
//! canonical file reproduces it exactly.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use pencils::{FieldSpec, HomPoly, KroneckerInvariants, Partition, Pencil, Scalar, UniPoly};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Algebra(#[from] pencils::Error),
    #[error("{0}")]
    Input(String),
}

pub fn input_error(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldJson {
    Prime { p: u64 },
    Rational,
}

impl FieldJson {
    pub fn to_field(self) -> Result<FieldSpec, CliError> {
        match self {
            FieldJson::Prime { p } => Ok(FieldSpec::prime(p)?),
            FieldJson::Rational => Ok(FieldSpec::Rational),
        }
    }

    pub fn of(field: FieldSpec) -> FieldJson {
        match field.order() {
            Some(p) => FieldJson::Prime { p },
            None => FieldJson::Rational,
        }
    }
}

/// A matrix entry: an integer, or a `"num/den"` fraction over the rationals.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Int(i64),
    Frac(String),
}

impl EntryJson {
    fn to_scalar(&self, field: FieldSpec) -> Result<Scalar, CliError> {
        match self {
            EntryJson::Int(v) => Ok(Scalar::from_i64(field, *v)),
            EntryJson::Frac(s) => {
                if field != FieldSpec::Rational {
                    return Err(input_error(format!(
                        "fraction entry {s:?} is only valid over the rationals"
                    )));
                }
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s.as_str(), "1"),
                };
                let parse = |t: &str| {
                    BigInt::from_str(t.trim())
                        .map_err(|_| input_error(format!("bad fraction entry {s:?}")))
                };
                Ok(Scalar::from_fraction(parse(num)?, parse(den)?)?)
            }
        }
    }

    fn of(scalar: &Scalar) -> EntryJson {
        if let Some(r) = scalar.residue() {
            return EntryJson::Int(r as i64);
        }
        let r = scalar.as_rational().expect("scalar is prime or rational");
        if r.denom().is_one() {
            if let Ok(v) = i64::try_from(r.numer().clone()) {
                return EntryJson::Int(v);
            }
        }
        EntryJson::Frac(format!("{}/{}", r.numer(), r.denom()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PencilJson {
    pub field: FieldJson,
    pub rows: usize,
    pub cols: usize,
    #[serde(rename = "A0")]
    pub a0: Vec<Vec<EntryJson>>,
    #[serde(rename = "A1")]
    pub a1: Vec<Vec<EntryJson>>,
}

impl PencilJson {
    pub fn to_pencil(&self) -> Result<Pencil, CliError> {
        let field = self.field.to_field()?;
        let flatten = |grid: &[Vec<EntryJson>], name: &str| -> Result<Vec<Scalar>, CliError> {
            if grid.len() != self.rows || grid.iter().any(|row| row.len() != self.cols) {
                return Err(input_error(format!(
                    "{name} must be a {}x{} array",
                    self.rows, self.cols
                )));
            }
            grid.iter()
                .flatten()
                .map(|e| e.to_scalar(field))
                .collect()
        };
        let a0 = flatten(&self.a0, "A0")?;
        let a1 = flatten(&self.a1, "A1")?;
        Ok(Pencil::new(field, self.rows, self.cols, a0, a1)?)
    }

    pub fn of(p: &Pencil) -> PencilJson {
        let grid = |at: &dyn Fn(usize, usize) -> Scalar| {
            (0..p.rows())
                .map(|i| (0..p.cols()).map(|j| EntryJson::of(&at(i, j))).collect())
                .collect()
        };
        PencilJson {
            field: FieldJson::of(p.field()),
            rows: p.rows(),
            cols: p.cols(),
            a0: grid(&|i, j| p.a0(i, j).clone()),
            a1: grid(&|i, j| p.a1(i, j).clone()),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HifJson {
    pub t_exp: usize,
    pub finite: Vec<EntryJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub field: FieldJson,
    pub rank: usize,
    pub hif: Vec<HifJson>,
    pub col_min: Vec<u64>,
    pub row_min: Vec<u64>,
}

impl InvariantsJson {
    pub fn to_invariants(&self) -> Result<KroneckerInvariants, CliError> {
        let field = self.field.to_field()?;
        let mut hif = Vec::with_capacity(self.hif.len());
        for h in &self.hif {
            let coeffs: Result<Vec<Scalar>, CliError> =
                h.finite.iter().map(|e| e.to_scalar(field)).collect();
            let finite = UniPoly::from_coeffs(field, coeffs?);
            hif.push(HomPoly::from_parts(h.t_exp, finite));
        }
        let col_min = Partition::new(self.col_min.clone())?;
        let row_min = Partition::new(self.row_min.clone())?;
        Ok(KroneckerInvariants::new(
            field, self.rank, hif, col_min, row_min,
        )?)
    }

    pub fn of(inv: &KroneckerInvariants) -> InvariantsJson {
        let hif = inv
            .hif()
            .iter()
            .map(|g| HifJson {
                t_exp: g.t_exp().expect("chain entries are nonzero"),
                finite: g
                    .finite_part()
                    .expect("chain entries are nonzero")
                    .coeffs()
                    .iter()
                    .map(EntryJson::of)
                    .collect(),
            })
            .collect();
        InvariantsJson {
            field: FieldJson::of(inv.field()),
            rank: inv.rank(),
            hif,
            col_min: inv.col_min().parts().to_vec(),
            row_min: inv.row_min().parts().to_vec(),
        }
    }
}

pub fn read_pencil(path: &std::path::Path) -> Result<Pencil, CliError> {
    let text = std::fs::read_to_string(path)?;
    let parsed: PencilJson = serde_json::from_str(&text)?;
    parsed.to_pencil()
}

pub fn read_invariants(path: &std::path::Path) -> Result<KroneckerInvariants, CliError> {
    let text = std::fs::read_to_string(path)?;
    let parsed: InvariantsJson = serde_json::from_str(&text)?;
    parsed.to_invariants()
}
