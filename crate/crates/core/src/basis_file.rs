//! JSON serialization of solved spaces.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "algebra": "NS",
//!   "generators": [{ "name": "L", "parity": "even" }, { "name": "G", "parity": "odd" }],
//!   "predicate": "cder",
//!   "parity": "even",
//!   "degree_bound": 2,
//!   "maps": [[{ "source": "L", "target": "L", "d_exp": 1, "x_exp": 0, "coeff": "1/1" }]]
//! }
//! ```
//!
//! Each map is the list of its nonzero ansatz coefficients in ansatz order.
//! Pair spaces (`"predicate": "gctder"`) tag every record with `"part"`,
//! either `"phi"` or `"tau"`. Coefficients are written as `num/den` in
//! lowest terms; output is deterministic.

use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::derivations::{AnsatzKey, MapSpace, PairSpace, SolvedSpace};
use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, parse_rational, Rational};
use crate::lcsa::{Parity, Signature};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub source: String,
    pub target: String,
    pub d_exp: u16,
    pub x_exp: u16,
    pub coeff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFile {
    pub schema_version: u32,
    pub algebra: String,
    pub generators: Vec<GeneratorRecord>,
    pub predicate: String,
    pub parity: Parity,
    pub degree_bound: u16,
    pub maps: Vec<Vec<CoeffRecord>>,
}

const PAIR_PREDICATE: &str = "gctder";

fn records(sig: &Signature, keys: &[AnsatzKey], v: &[Rational], part: Option<&str>) -> Vec<CoeffRecord> {
    keys.iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| CoeffRecord {
            source: sig.name(k.source).to_string(),
            target: sig.name(k.target).to_string(),
            d_exp: k.d_exp,
            x_exp: k.x_exp,
            coeff: format_rational(c),
            part: part.map(str::to_string),
        })
        .collect()
}

fn generators(sig: &Signature) -> Vec<GeneratorRecord> {
    sig.generators()
        .iter()
        .map(|(name, parity)| GeneratorRecord {
            name: name.clone(),
            parity: *parity,
        })
        .collect()
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BasisFile(msg.into())
}

impl BasisFile {
    pub fn from_space(space: &MapSpace) -> BasisFile {
        let keys = space.ansatz().keys();
        BasisFile {
            schema_version: SCHEMA_VERSION,
            algebra: space.algebra().to_string(),
            generators: generators(space.sig()),
            predicate: space.tag().to_string(),
            parity: space.parity(),
            degree_bound: space.bound(),
            maps: space.vectors().iter().map(|v| records(space.sig(), keys, v, None)).collect(),
        }
    }

    pub fn from_pairs(space: &PairSpace) -> BasisFile {
        let ansatz = space.ansatz();
        let (keys, n) = (ansatz.keys(), ansatz.len());
        BasisFile {
            schema_version: SCHEMA_VERSION,
            algebra: space.algebra().to_string(),
            generators: generators(ansatz.sig()),
            predicate: PAIR_PREDICATE.to_string(),
            parity: space.parity(),
            degree_bound: space.bound(),
            maps: space
                .vectors()
                .iter()
                .map(|v| {
                    let mut r = records(ansatz.sig(), keys, &v[..n], Some("phi"));
                    r.extend(records(ansatz.sig(), keys, &v[n..], Some("tau")));
                    r
                })
                .collect(),
        }
    }

    pub fn from_solved(space: &SolvedSpace) -> BasisFile {
        match space {
            SolvedSpace::Maps(s) => Self::from_space(s),
            SolvedSpace::Pairs(p) => Self::from_pairs(p),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("basis files serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<BasisFile> {
        let file: BasisFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(bad(format!("unsupported schema version {}", file.schema_version)));
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<BasisFile> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| bad(format!("{}: {e}", path.display())))
    }

    pub fn signature(&self) -> Result<Signature> {
        Signature::new(self.generators.iter().map(|g| (g.name.clone(), g.parity)))
    }

    pub fn is_pair_file(&self) -> bool {
        self.predicate == PAIR_PREDICATE
    }

    fn vector(&self, sig: &Signature, map: &[CoeffRecord]) -> Result<Vec<Rational>> {
        let ansatz = crate::derivations::Ansatz::new(sig, self.parity, self.degree_bound);
        let n = ansatz.len();
        let width = if self.is_pair_file() { 2 * n } else { n };
        let mut v = vec![Rational::zero(); width];
        for r in map {
            let index = |name: &str| sig.index_of(name).ok_or_else(|| bad(format!("unknown generator `{name}`")));
            let key = AnsatzKey {
                source: index(&r.source)?,
                target: index(&r.target)?,
                d_exp: r.d_exp,
                x_exp: r.x_exp,
            };
            let k = ansatz
                .position(&key)
                .ok_or_else(|| bad(format!("record {}→{} ∂^{} x^{} is outside the ansatz", r.source, r.target, r.d_exp, r.x_exp)))?;
            let offset = match (self.is_pair_file(), r.part.as_deref()) {
                (false, None) => 0,
                (true, Some("phi")) => 0,
                (true, Some("tau")) => n,
                (_, part) => return Err(bad(format!("unexpected part {part:?}"))),
            };
            let c = parse_rational(&r.coeff)?;
            if format_rational(&c) != r.coeff.trim() && c.to_string() != r.coeff.trim() {
                return Err(bad(format!("coefficient `{}` is not in lowest terms", r.coeff)));
            }
            if !v[offset + k].is_zero() {
                return Err(bad(format!("duplicate record {}→{} ∂^{} x^{}", r.source, r.target, r.d_exp, r.x_exp)));
            }
            v[offset + k] = c;
        }
        Ok(v)
    }

    pub fn to_solved(&self) -> Result<SolvedSpace> {
        let sig = self.signature()?;
        let vectors = self.maps.iter().map(|m| self.vector(&sig, m)).collect::<Result<Vec<_>>>()?;
        Ok(if self.is_pair_file() {
            SolvedSpace::Pairs(PairSpace::from_vectors(
                self.algebra.clone(),
                &sig,
                self.parity,
                self.degree_bound,
                vectors,
            )?)
        } else {
            SolvedSpace::Maps(MapSpace::from_vectors(
                self.algebra.clone(),
                &sig,
                self.parity,
                self.degree_bound,
                self.predicate.clone(),
                vectors,
            )?)
        })
    }

    /// The space, rejecting pair files.
    pub fn to_space(&self) -> Result<MapSpace> {
        self.to_solved()?
            .into_maps()
            .ok_or_else(|| bad("expected a space of single maps, found gctder pairs"))
    }
}
