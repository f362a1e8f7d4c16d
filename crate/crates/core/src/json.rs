//! JSON wire formats. Output is compact with keys and entries in a fixed
//! order, so parsing and re-serializing canonical input is the identity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, ParamPoly, Rational};
use crate::charnum::{Basis, CharVector};
use crate::error::{Error, Result};
use crate::lsolver::LGenusResult;
use crate::partitions::Partition;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharVectorWire {
    dim4: u32,
    basis: String,
    entries: Vec<EntryWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryWire {
    partition: Vec<u32>,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LGenusWire {
    i: u32,
    terms: Vec<TermWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermWire {
    partition: Vec<u32>,
    coefficient: String,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("json: {e}"))
}

fn partition_from_wire(parts: Vec<u32>) -> Result<Partition> {
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Parse(format!(
            "partition {parts:?} is not in descending order"
        )));
    }
    Partition::new(parts)
}

/// Keys must arrive in canonical order and without repeats.
fn check_order<'a>(keys: impl Iterator<Item = &'a Partition>) -> Result<()> {
    let keys: Vec<&Partition> = keys.collect();
    if keys.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(Error::Parse("entries are not in canonical partition order".into()))
    }
}

pub fn char_vector_to_json(v: &CharVector) -> String {
    let wire = CharVectorWire {
        dim4: v.dim4,
        basis: v.basis.to_string(),
        entries: v
            .values
            .iter()
            .map(|(k, val)| EntryWire {
                partition: k.parts().to_vec(),
                value: val.to_string(),
            })
            .collect(),
    };
    serde_json::to_string(&wire).expect("serializable")
}

pub fn char_vector_from_json(src: &str) -> Result<CharVector> {
    let wire: CharVectorWire = serde_json::from_str(src).map_err(json_err)?;
    let basis: Basis = wire.basis.parse()?;
    let mut keys = Vec::with_capacity(wire.entries.len());
    let mut values = BTreeMap::new();
    for e in wire.entries {
        let k = partition_from_wire(e.partition)?;
        let v: ParamPoly = e.value.parse()?;
        keys.push(k.clone());
        values.insert(k, v);
    }
    check_order(keys.iter())?;
    CharVector::new(wire.dim4, basis, values)
}

/// `source` is `Some("oracle")` for the series route and `None` otherwise.
pub fn lgenus_to_json(l: &LGenusResult, source: Option<&str>) -> String {
    let wire = LGenusWire {
        i: l.i,
        terms: l
            .coeffs
            .iter()
            .map(|(k, r)| TermWire {
                partition: k.parts().to_vec(),
                coefficient: r.to_string(),
            })
            .collect(),
        source: source.map(str::to_owned),
    };
    serde_json::to_string(&wire).expect("serializable")
}

pub fn lgenus_from_json(src: &str) -> Result<(LGenusResult, Option<String>)> {
    let wire: LGenusWire = serde_json::from_str(src).map_err(json_err)?;
    let mut keys = Vec::with_capacity(wire.terms.len());
    let mut coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
    for t in wire.terms {
        let k = partition_from_wire(t.partition)?;
        if k.weight() != wire.i {
            return Err(Error::WeightMismatch {
                partition: k.to_string(),
                weight: k.weight(),
                expected: wire.i,
            });
        }
        keys.push(k.clone());
        coeffs.insert(k, parse_rational(&t.coefficient)?);
    }
    check_order(keys.iter())?;
    if coeffs.len() != crate::partitions::enumerate(wire.i).len() {
        return Err(Error::Shape(format!(
            "L_{} needs one term per partition",
            wire.i
        )));
    }
    Ok((LGenusResult { i: wire.i, coeffs }, wire.source))
}
