//! Characteristic numbers.
//!
//! Two indexings of the same data: Pontryagin numbers `p_J = <∏ p_{j_t}, [M]>`
//! (the p-basis) and monomial-symmetric numbers `s_J = <m_J(y_1^2, ...), [M]>`
//! (the s-basis). The s-basis is used to transport products, since
//! `s_J(M × N) = Σ_{J1 ⊎ J2 = J} s_{J1}(M) s_{J2}(N)`, which avoids building
//! tensor models.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{ParamPoly, Rational};
use crate::error::{Error, Result};
use crate::manifolds::{ManifoldModel, ManifoldSpec};
use crate::partitions::{enumerate, ordered_splittings, Partition};
use crate::symfun::{elementary_to_monomial, monomial_to_elementary, power_sum_in_elementary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Pontryagin-number monomials `p_J`.
    P,
    /// Monomial-symmetric numbers `s_J`.
    S,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::P => "p",
            Basis::S => "s",
        })
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Basis::P),
            "s" => Ok(Basis::S),
            other => Err(Error::Parse(format!("unknown basis `{other}`"))),
        }
    }
}

/// All characteristic numbers of a 4m-dimensional manifold in one basis,
/// keyed by every partition of m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharVector {
    pub dim4: u32,
    pub basis: Basis,
    pub values: BTreeMap<Partition, ParamPoly>,
}

impl CharVector {
    /// The vector of a point: `{(): 1}`.
    pub fn point(basis: Basis) -> Self {
        let mut values = BTreeMap::new();
        values.insert(Partition::empty(), ParamPoly::one());
        CharVector {
            dim4: 0,
            basis,
            values,
        }
    }

    /// Builds a vector from entries, checking that the keys are exactly the
    /// partitions of `dim4`.
    pub fn new(dim4: u32, basis: Basis, values: BTreeMap<Partition, ParamPoly>) -> Result<Self> {
        let expected = enumerate(dim4);
        if values.len() != expected.len() || expected.iter().any(|p| !values.contains_key(p)) {
            return Err(Error::Shape(format!(
                "characteristic vector must have one entry per partition of {dim4}"
            )));
        }
        Ok(CharVector {
            dim4,
            basis,
            values,
        })
    }

    pub fn get(&self, j: &Partition) -> Result<&ParamPoly> {
        self.values.get(j).ok_or_else(|| Error::WeightMismatch {
            partition: j.to_string(),
            weight: j.weight(),
            expected: self.dim4,
        })
    }

    /// Converts to the s-basis: `s_λ = Σ_μ r_{λμ} p_μ` with `m_λ = Σ r_{λμ} e_μ`.
    pub fn to_s(&self) -> CharVector {
        match self.basis {
            Basis::S => self.clone(),
            Basis::P => self.transform(Basis::S, |lambda| {
                monomial_to_elementary(lambda).terms.into_iter().collect()
            }),
        }
    }

    /// Converts to the p-basis: `p_μ = Σ_λ K_{μλ} s_λ` with `e_μ = Σ K_{μλ} m_λ`.
    pub fn to_p(&self) -> CharVector {
        match self.basis {
            Basis::P => self.clone(),
            Basis::S => self.transform(Basis::P, |mu| elementary_to_monomial(mu).into_iter().collect()),
        }
    }

    pub fn in_basis(&self, basis: Basis) -> CharVector {
        match basis {
            Basis::P => self.to_p(),
            Basis::S => self.to_s(),
        }
    }

    fn transform(
        &self,
        target: Basis,
        row: impl Fn(&Partition) -> Vec<(Partition, Rational)>,
    ) -> CharVector {
        let values = self
            .values
            .keys()
            .map(|key| {
                let mut acc = ParamPoly::zero();
                for (other, r) in row(key) {
                    acc += &self.values[&other].scale(&r);
                }
                (key.clone(), acc)
            })
            .collect();
        CharVector {
            dim4: self.dim4,
            basis: target,
            values,
        }
    }

    /// Substitutes parameter values, leaving unassigned parameters formal.
    pub fn substitute(&self, assignment: &BTreeMap<String, Rational>) -> CharVector {
        CharVector {
            dim4: self.dim4,
            basis: self.basis,
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), v.substitute(assignment)))
                .collect(),
        }
    }
}

fn check_weight(m: &ManifoldModel, j: &Partition) -> Result<()> {
    if j.weight() != m.dim4 {
        return Err(Error::WeightMismatch {
            partition: j.to_string(),
            weight: j.weight(),
            expected: m.dim4,
        });
    }
    Ok(())
}

/// `<∏_t p_{j_t}(M), [M]>`.
pub fn pontryagin_number(m: &ManifoldModel, j: &Partition) -> Result<ParamPoly> {
    check_weight(m, j)?;
    let ring = &m.ring;
    let mut acc = ring.one();
    for &part in j.parts() {
        acc = ring.mul(&acc, &m.pontryagin_class(part));
    }
    Ok(ring.top_evaluate(&acc))
}

/// Thom's s-number `s_n(M) = Σ_i <y_i^{2n}, [M]>` for `n = dim4(M)`.
pub fn s_number(m: &ManifoldModel, n: u32) -> Result<ParamPoly> {
    if n != m.dim4 || n == 0 {
        return Err(Error::WeightMismatch {
            partition: Partition::single(n).to_string(),
            weight: n,
            expected: m.dim4,
        });
    }
    let mut acc = ParamPoly::zero();
    for (mu, r) in &power_sum_in_elementary(n).terms {
        acc += &pontryagin_number(m, mu)?.scale(r);
    }
    Ok(acc)
}

/// Every characteristic number of `m` in the requested basis. Entries are
/// computed in parallel.
pub fn char_vector(m: &ManifoldModel, basis: Basis) -> CharVector {
    let parts = enumerate(m.dim4);
    let values: BTreeMap<Partition, ParamPoly> = parts
        .par_iter()
        .map(|j| {
            let v = pontryagin_number(m, j).expect("partition of the right weight");
            (j.clone(), v)
        })
        .collect();
    let p = CharVector {
        dim4: m.dim4,
        basis: Basis::P,
        values,
    };
    p.in_basis(basis)
}

/// s-basis vector of `M × N` from the s-vectors of the factors.
pub fn product_char_vector(vm: &CharVector, vn: &CharVector) -> CharVector {
    let (vm, vn) = (vm.to_s(), vn.to_s());
    let dim4 = vm.dim4 + vn.dim4;
    let values = enumerate(dim4)
        .into_par_iter()
        .map(|j| {
            let mut acc = ParamPoly::zero();
            for (j1, j2) in ordered_splittings(&j) {
                if j1.weight() != vm.dim4 || j2.weight() != vn.dim4 {
                    continue;
                }
                acc += &(&vm.values[&j1] * &vn.values[&j2]);
            }
            (j, acc)
        })
        .collect();
    CharVector {
        dim4,
        basis: Basis::S,
        values,
    }
}

/// Characteristic vector of a product from its factor specification, using
/// the convolution path (each factor is modelled on its own).
pub fn spec_char_vector(spec: &ManifoldSpec, basis: Basis) -> Result<CharVector> {
    let mut acc = CharVector::point(Basis::S);
    for factor in &spec.0 {
        let v = char_vector(&factor.build()?, Basis::S);
        acc = product_char_vector(&acc, &v);
    }
    Ok(acc.in_basis(basis))
}

/// True iff the specialized s-number of `m` is nonzero, i.e. `[M]` can serve
/// as a polynomial generator of the rational cobordism ring in its dimension.
pub fn generator_certificate(
    m: &ManifoldModel,
    assignment: &BTreeMap<String, Rational>,
) -> Result<bool> {
    let s = s_number(m, m.dim4)?;
    Ok(!s.specialize(assignment)?.is_zero())
}

/// Same as [`generator_certificate`], on an s-basis vector.
pub fn certificate_from_vector(
    v: &CharVector,
    assignment: &BTreeMap<String, Rational>,
) -> Result<bool> {
    if v.dim4 == 0 {
        return Ok(false);
    }
    let s = v.to_s();
    Ok(!s.get(&Partition::single(v.dim4))?.specialize(assignment)?.is_zero())
}
