use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::arith::BigRat;
use crate::error::{Error, Result};
use crate::group::GroupExpr;

pub const CERT_VERSION: &str = "avgord-cert/1";

/// Conventional extension for certificate files.
pub const CERT_EXTENSION: &str = ".ogcert.json";

/// Which side of the target a certificate approaches from, and which ratio it
/// reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `o(G)/o(H)` with `claimed <= target <= claimed (1 + eps)`.
    Ge1,
    /// `o(H)/o(G)` for abelian `G`, with `target <= claimed <= target (1 + eps)`.
    Le1Abelian,
    /// `o(G)/o(H)` for nilpotent nonabelian `G` built on a base pair, with the
    /// same convention as [`Mode::Ge1`].
    SubUnitNilpotent,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Ge1 => "ge1",
            Mode::Le1Abelian => "le1_abelian",
            Mode::SubUnitNilpotent => "sub_unit_nilpotent",
        }
    }

    /// Whether the reported ratio is `o(H)/o(G)` rather than `o(G)/o(H)`.
    pub fn is_inverse(&self) -> bool {
        matches!(self, Mode::Le1Abelian)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ge1" => Ok(Mode::Ge1),
            "le1_abelian" => Ok(Mode::Le1Abelian),
            "sub_unit_nilpotent" => Ok(Mode::SubUnitNilpotent),
            other => Err(Error::parse("mode", format!("unknown mode `{other}`"))),
        }
    }
}

/// How the construction was found. The verifier only cross-checks this; it
/// never uses it to compute the ratio.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trace {
    pub m: u32,
    /// Excluded prime indices `J`, increasing.
    pub excluded: Vec<u64>,
    /// Included prime indices `I`, increasing.
    pub indices: Vec<u64>,
    /// Base pair key for sub-unit constructions.
    pub base: Option<String>,
}

/// A subgroup claim: `h` is (isomorphic to) a subgroup of the factor `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessEntry {
    pub g: GroupExpr,
    pub h: GroupExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub mode: Mode,
    pub target: BigRat,
    pub eps: BigRat,
    pub g: GroupExpr,
    pub h: GroupExpr,
    pub claimed_ratio: BigRat,
    pub trace: Trace,
    pub witness: Vec<WitnessEntry>,
    pub version: String,
}

impl Certificate {
    pub fn to_value(&self) -> Value {
        json!({
            "claimed_ratio": self.claimed_ratio.to_string(),
            "eps": self.eps.to_string(),
            "g": self.g.to_string(),
            "h": self.h.to_string(),
            "mode": self.mode.as_str(),
            "target": self.target.to_string(),
            "trace": {
                "base": self.trace.base,
                "excluded": self.trace.excluded,
                "indices": self.trace.indices,
                "m": self.trace.m,
            },
            "version": self.version,
            "witness": self.witness.iter().map(|w| json!({
                "g": w.g.to_string(),
                "h": w.h.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Canonical text: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value())
            .expect("certificate values are always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| {
            Error::parse(
                "document",
                format!("line {}, column {}: {e}", e.line(), e.column()),
            )
        })?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::parse("document", "expected a JSON object"))?;
        let known = [
            "claimed_ratio",
            "eps",
            "g",
            "h",
            "mode",
            "target",
            "trace",
            "version",
            "witness",
        ];
        if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::parse(k.clone(), "unknown field"));
        }
        let trace_obj = field(obj, "trace")?
            .as_object()
            .ok_or_else(|| Error::parse("trace", "expected an object"))?;
        let m = field(trace_obj, "m")
            .map_err(|_| Error::parse("trace.m", "missing field"))?
            .as_u64()
            .filter(|&m| m <= u32::MAX as u64)
            .ok_or_else(|| Error::parse("trace.m", "expected a small non-negative integer"))?
            as u32;
        let trace = Trace {
            m,
            excluded: index_list(trace_obj, "excluded")?,
            indices: index_list(trace_obj, "indices")?,
            base: match trace_obj.get("base") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(_) => return Err(Error::parse("trace.base", "expected a string or null")),
            },
        };
        let witness = field(obj, "witness")?
            .as_array()
            .ok_or_else(|| Error::parse("witness", "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let name = format!("witness[{i}]");
                let w = w
                    .as_object()
                    .ok_or_else(|| Error::parse(name.clone(), "expected an object"))?;
                Ok(WitnessEntry {
                    g: group_field(w, "g", &format!("{name}.g"))?,
                    h: group_field(w, "h", &format!("{name}.h"))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            mode: string_field(obj, "mode")?.parse()?,
            target: rat_field(obj, "target")?,
            eps: rat_field(obj, "eps")?,
            g: group_field(obj, "g", "g")?,
            h: group_field(obj, "h", "h")?,
            claimed_ratio: rat_field(obj, "claimed_ratio")?,
            trace,
            witness,
            version: string_field(obj, "version")?.to_string(),
        })
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }
}

type Object = serde_json::Map<String, Value>;

fn field<'a>(obj: &'a Object, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::parse(name, "missing field"))
}

fn string_field<'a>(obj: &'a Object, name: &str) -> Result<&'a str> {
    field(obj, name)?
        .as_str()
        .ok_or_else(|| Error::parse(name, "expected a string"))
}

fn rat_field(obj: &Object, name: &str) -> Result<BigRat> {
    BigRat::parse_field(name, string_field(obj, name)?)
}

fn group_field(obj: &Object, name: &str, label: &str) -> Result<GroupExpr> {
    let text = obj
        .get(name)
        .ok_or_else(|| Error::parse(label, "missing field"))?
        .as_str()
        .ok_or_else(|| Error::parse(label, "expected a string"))?;
    GroupExpr::parse(text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(label, message),
        other => Error::parse(label, other.to_string()),
    })
}

fn index_list(obj: &Object, name: &str) -> Result<Vec<u64>> {
    let label = format!("trace.{name}");
    obj.get(name)
        .ok_or_else(|| Error::parse(label.clone(), "missing field"))?
        .as_array()
        .ok_or_else(|| Error::parse(label.clone(), "expected an array"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .ok_or_else(|| Error::parse(label.clone(), "expected non-negative integers"))
        })
        .collect()
}
