//! Derivation of the L-genus from explicit cobordism generators.
//!
//! In dimension 4i the products `α_I = α_{i_1} ⋯ α_{i_l}` over partitions
//! `I` of `i` form a basis of `Ω_{4i} ⊗ Q`, with `α_1 = CP^2` and
//! `α_j = X_{c_j}` the CP^{2j-2}-bundle over S^4 (any `c_j ≠ 0`). Every
//! basis element except `(CP^2)^i` contains an X_c factor and so has
//! signature 0, while `(CP^2)^i` has signature 1. The coefficients of `L_i`
//! are therefore the unique solution of
//!
//! ```text
//! Σ_J λ_J p_J(α_I) = σ(α_I)   for every partition I of i.
//! ```
//!
//! This module never consults the power series `x / tanh(x)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::expr::{parse_sum, Atom};
use crate::algebra::rational::common_denominator;
use crate::algebra::{parse_rational, ParamPoly, RatMatrix, Rational};
use crate::charnum::{char_vector, product_char_vector, Basis, CharVector};
use crate::cohomology::DEFAULT_BASIS_GUARD;
use crate::error::{Error, Result};
use crate::manifolds::{complex_projective_even, product, projective_bundle, ManifoldModel};
use crate::partitions::{enumerate, Partition};

/// Constants `c_j` for the generators `α_j = X_{c_j}` with `j >= 2`.
/// Dimensions without an explicit entry use `c_j = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorAssignment {
    constants: BTreeMap<u32, Rational>,
    default: Option<Rational>,
}

impl GeneratorAssignment {
    /// The same constant in every dimension.
    pub fn uniform(c: Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroConstant(0));
        }
        Ok(GeneratorAssignment {
            constants: BTreeMap::new(),
            default: Some(c),
        })
    }

    pub fn set(&mut self, j: u32, c: Rational) -> Result<()> {
        if j < 2 {
            return Err(Error::InvalidArgument(format!(
                "dimension index {j} has no bundle generator (dimension 1 is CP^2)"
            )));
        }
        if c.is_zero() {
            return Err(Error::ZeroConstant(j));
        }
        self.constants.insert(j, c);
        Ok(())
    }

    pub fn get(&self, j: u32) -> Rational {
        self.constants
            .get(&j)
            .or(self.default.as_ref())
            .cloned()
            .unwrap_or_else(Rational::one)
    }

    /// Parses `"2:1,3:-3/2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = GeneratorAssignment::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (j, c) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `j:c`, got `{item}`")))?;
            let j: u32 = j
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid dimension index `{j}`")))?;
            out.set(j, parse_rational(c)?)?;
        }
        Ok(out)
    }
}

/// `L_i = Σ_J λ_J p_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LGenusResult {
    pub i: u32,
    pub coeffs: BTreeMap<Partition, Rational>,
}

fn render_monomial(j: &Partition) -> String {
    // Descending parts with repeated factors collapsed to powers.
    let mut out: Vec<String> = Vec::new();
    for (part, mult) in j.multiplicities().into_iter().rev() {
        if mult == 1 {
            out.push(format!("p[{part}]"));
        } else {
            out.push(format!("p[{part}]^{mult}"));
        }
    }
    out.join("*")
}

/// Renders `Σ_J coeffs[J] p_J` over a common denominator, for example
/// `(62*p[3] - 13*p[2]*p[1] + 2*p[1]^3)/945`.
pub fn render_combination(coeffs: &BTreeMap<Partition, Rational>) -> String {
    let den = common_denominator(coeffs.values());
    let mut body = String::new();
    let mut count = 0;
    for (j, r) in coeffs {
        let n = (r * Rational::from_integer(den.clone())).to_integer();
        if n.is_zero() {
            continue;
        }
        let mono = render_monomial(j);
        let mag = n.abs();
        let term = if mag.is_one() {
            mono
        } else {
            format!("{mag}*{mono}")
        };
        match (count, n.is_negative()) {
            (0, true) => body.push('-'),
            (0, false) => {}
            (_, true) => body.push_str(" - "),
            (_, false) => body.push_str(" + "),
        }
        body.push_str(&term);
        count += 1;
    }
    if count == 0 {
        return "0".into();
    }
    if den == BigInt::one() {
        body
    } else if count == 1 {
        format!("{body}/{den}")
    } else {
        format!("({body})/{den}")
    }
}

impl LGenusResult {
    /// Evaluates `Σ_J λ_J p_J` on a characteristic vector of dimension `i`.
    pub fn evaluate(&self, v: &CharVector) -> Result<ParamPoly> {
        if v.dim4 != self.i {
            return Err(Error::Shape(format!(
                "L_{} evaluated on a manifold of dimension 4*{}",
                self.i, v.dim4
            )));
        }
        let p = v.to_p();
        let mut acc = ParamPoly::zero();
        for (j, r) in &self.coeffs {
            acc += &p.values[j].scale(r);
        }
        Ok(acc)
    }

    /// `L_3 = (62*p[3] - 13*p[2]*p[1] + 2*p[1]^3)/945`
    pub fn pretty(&self) -> String {
        format!("L_{} = {}", self.i, render_combination(&self.coeffs))
    }
}

impl fmt::Display for LGenusResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// A rational linear combination of the Pontryagin numbers of dimension 4i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combo {
    pub i: u32,
    pub coeffs: BTreeMap<Partition, Rational>,
}

impl Combo {
    /// Parses `"62*p[3] - 13*p[2]*p[1] + 2*p[1]^3"`; every monomial must have
    /// weight `i`.
    pub fn parse(src: &str, i: u32) -> Result<Self> {
        let mut coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
        for s in parse_sum(src)? {
            let mut parts = Vec::new();
            for (atom, e) in s.factors {
                match atom {
                    Atom::Indexed(name, j) if name == "p" && j >= 1 => {
                        parts.extend(std::iter::repeat(j).take(e as usize));
                    }
                    other => {
                        return Err(Error::Parse(format!(
                            "expected Pontryagin class p[j], got {other:?}"
                        )))
                    }
                }
            }
            let j = Partition::new(parts)?;
            if j.weight() != i {
                return Err(Error::WeightMismatch {
                    partition: j.to_string(),
                    weight: j.weight(),
                    expected: i,
                });
            }
            *coeffs.entry(j).or_insert_with(Rational::zero) += s.coeff;
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(Combo { i, coeffs })
    }

    /// As [`Combo::parse`], taking the weight from the first monomial.
    pub fn parse_inferred(src: &str) -> Result<Self> {
        let first = parse_sum(src)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Parse("empty combination".into()))?;
        let i = first
            .factors
            .iter()
            .map(|(atom, e)| match atom {
                Atom::Indexed(_, j) => j * e,
                Atom::Name(_) => 0,
            })
            .sum();
        Self::parse(src, i)
    }

    pub fn from_lgenus(l: &LGenusResult) -> Self {
        Combo {
            i: l.i,
            coeffs: l.coeffs.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Zero::is_zero)
    }

    pub fn evaluate(&self, v: &CharVector) -> Result<ParamPoly> {
        LGenusResult {
            i: self.i,
            coeffs: self.coeffs.clone(),
        }
        .evaluate(v)
    }
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_combination(&self.coeffs))
    }
}

/// Outcome of [`classify_combo`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `f = ratio · L_i`.
    MultipleOfSignature { ratio: Rational },
    /// `f(α_I)` is a nonzero polynomial in the bundle constants, of degree
    /// equal to the number of bundle factors, hence unbounded.
    Witness { partition: Partition, value: ParamPoly },
}

fn generator_vector(j: u32, c: &ParamPoly) -> Result<CharVector> {
    let m = if j == 1 {
        complex_projective_even(1)?
    } else {
        projective_bundle(j - 1, c)?
    };
    Ok(char_vector(&m, Basis::S))
}

/// s-basis vector of `α_I` via the convolution product, with the constant of
/// each bundle factor supplied by `constant(position, j)`.
fn basis_vector_with(
    i_part: &Partition,
    mut constant: impl FnMut(usize, u32) -> ParamPoly,
) -> Result<CharVector> {
    let mut acc = CharVector::point(Basis::S);
    let mut cache: HashMap<(u32, ParamPoly), CharVector> = HashMap::new();
    for (pos, &j) in i_part.parts().iter().enumerate() {
        let c = if j == 1 { ParamPoly::zero() } else { constant(pos, j) };
        let key = (j, c.clone());
        let v = match cache.get(&key) {
            Some(v) => v.clone(),
            None => {
                let v = generator_vector(j, &c)?;
                cache.insert(key, v.clone());
                v
            }
        };
        acc = product_char_vector(&acc, &v);
    }
    Ok(acc)
}

/// Characteristic vector (s-basis) of `α_I` for a concrete assignment.
pub fn basis_char_vector(i_part: &Partition, assignment: &GeneratorAssignment) -> Result<CharVector> {
    for &j in i_part.parts() {
        if j >= 2 && assignment.get(j).is_zero() {
            return Err(Error::ZeroConstant(j));
        }
    }
    basis_vector_with(i_part, |_, j| ParamPoly::constant(assignment.get(j)))
}

/// Names of the formal constants used for the bundle factors of `α_I` in
/// symbolic evaluation: `c` when there is a single bundle factor, otherwise
/// `c1, c2, ...` by position among the bundle factors.
pub fn symbolic_names(i_part: &Partition) -> Vec<String> {
    let n = i_part.count_parts_at_least(2);
    if n == 1 {
        vec!["c".into()]
    } else {
        (1..=n).map(|t| format!("c{t}")).collect()
    }
}

/// Characteristic vector (s-basis) of `α_I` with an independent formal
/// constant per bundle factor (see [`symbolic_names`]).
pub fn symbolic_basis_char_vector(i_part: &Partition) -> Result<CharVector> {
    let names = symbolic_names(i_part);
    // Bundle factors come first since parts are weakly decreasing.
    basis_vector_with(i_part, |pos, _| ParamPoly::var(&names[pos]))
}

/// Tensor-model realization of `α_I`. Only practical for small `I`; the
/// solver itself always uses the convolution path.
pub fn basis_model(
    i_part: &Partition,
    assignment: &GeneratorAssignment,
    guard: usize,
) -> Result<ManifoldModel> {
    let mut acc = ManifoldModel::point();
    for &j in i_part.parts() {
        let factor = if j == 1 {
            complex_projective_even(1)?
        } else {
            let c = assignment.get(j);
            if c.is_zero() {
                return Err(Error::ZeroConstant(j));
            }
            projective_bundle(j - 1, &ParamPoly::constant(c))?
        };
        acc = product(&acc, &factor, guard)?;
    }
    Ok(acc)
}

/// The linear system `A λ = b` with `A[I][J] = p_J(α_I)` and `b[I] = σ(α_I)`,
/// rows and columns in canonical partition order.
pub fn assemble(i: u32, assignment: &GeneratorAssignment) -> Result<(RatMatrix, Vec<Rational>)> {
    if i == 0 {
        return Err(Error::InvalidArgument("dimension index must be >= 1".into()));
    }
    let parts = enumerate(i);
    let rows: Vec<Vec<Rational>> = parts
        .par_iter()
        .map(|row| -> Result<Vec<Rational>> {
            let v = basis_char_vector(row, assignment)?.to_p();
            parts
                .iter()
                .map(|col| {
                    v.values[col].as_constant().ok_or_else(|| {
                        Error::InvalidArgument("assignment left a formal parameter".into())
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let ones = Partition::ones(i);
    let rhs = parts
        .iter()
        .map(|p| if *p == ones { Rational::one() } else { Rational::zero() })
        .collect();
    Ok((RatMatrix::from_rows(rows)?, rhs))
}

/// Solves for the coefficients of `L_i`.
pub fn solve_l(i: u32, assignment: &GeneratorAssignment) -> Result<LGenusResult> {
    let (a, b) = assemble(i, assignment)?;
    let x = a.solve(&b)?;
    Ok(LGenusResult {
        i,
        coeffs: enumerate(i).into_iter().zip(x).collect(),
    })
}

/// Decides whether `f` is a multiple of the signature. Evaluates `f` on every
/// basis manifold with a separate formal constant per bundle factor; if all
/// the signature-zero ones vanish, `f` is `f((CP^2)^i) · L_i`.
pub fn classify_combo(f: &Combo) -> Result<Classification> {
    if f.is_zero() {
        return Err(Error::ZeroCombo);
    }
    let ones = Partition::ones(f.i);
    for i_part in enumerate(f.i) {
        if i_part == ones {
            continue;
        }
        let value = f.evaluate(&symbolic_basis_char_vector(&i_part)?)?;
        if !value.is_zero() {
            return Ok(Classification::Witness {
                partition: i_part,
                value,
            });
        }
    }
    let ratio = f
        .evaluate(&symbolic_basis_char_vector(&ones)?)?
        .as_constant()
        .expect("(CP^2)^i has no parameters");
    Ok(Classification::MultipleOfSignature { ratio })
}

/// True iff `solve_l(i, ·)` gives the same answer for every assignment.
pub fn verify_independence(i: u32, assignments: &[GeneratorAssignment]) -> Result<bool> {
    if assignments.len() < 2 {
        return Err(Error::InvalidArgument(
            "independence check needs at least two assignments".into(),
        ));
    }
    let first = solve_l(i, &assignments[0])?;
    for a in &assignments[1..] {
        if solve_l(i, a)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tensor-path characteristic vector of `α_I`, used to cross-check the
/// convolution path.
pub fn basis_char_vector_direct(
    i_part: &Partition,
    assignment: &GeneratorAssignment,
) -> Result<CharVector> {
    let m = basis_model(i_part, assignment, DEFAULT_BASIS_GUARD)?;
    Ok(char_vector(&m, Basis::S))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn coeffs(pairs: &[(&[u32], Rational)]) -> BTreeMap<Partition, Rational> {
        pairs.iter().map(|(k, v)| (p(k), v.clone())).collect()
    }

    #[test]
    fn assemble_small() {
        let one = GeneratorAssignment::default();
        let (a, b) = assemble(1, &one).unwrap();
        assert_eq!(a, RatMatrix::from_rows(vec![vec![int(3)]]).unwrap());
        assert_eq!(b, vec![int(1)]);

        let (a, b) = assemble(2, &one).unwrap();
        let expect = RatMatrix::from_rows(vec![
            vec![int(-3), int(-21)],
            vec![int(9), int(18)],
        ])
        .unwrap();
        assert_eq!(a, expect);
        assert_eq!(b, vec![int(0), int(1)]);
    }

    #[test]
    fn last_row_is_cp2_power() {
        for i in 1..=5 {
            let (a, _) = assemble(i, &GeneratorAssignment::default()).unwrap();
            let direct = basis_char_vector_direct(&Partition::ones(i), &GeneratorAssignment::default())
                .unwrap()
                .to_p();
            let last: Vec<Rational> = direct.values.values().map(|v| v.as_constant().unwrap()).collect();
            assert_eq!(a.row(a.rows() - 1), last.as_slice());
        }
    }

    #[test]
    fn basis_manifold_examples() {
        let one = GeneratorAssignment::default();
        let sq = basis_model(&p(&[1, 1]), &one, DEFAULT_BASIS_GUARD).unwrap();
        assert_eq!(sq.signature, int(1));
        let x = basis_model(&p(&[2]), &one, DEFAULT_BASIS_GUARD).unwrap();
        assert_eq!(x.signature, int(0));
        let v = symbolic_basis_char_vector(&p(&[2, 1])).unwrap().to_p();
        let c = ParamPoly::var("c");
        assert_eq!(v.values[&p(&[3])], c.scale(&int(-9)));
        assert_eq!(v.values[&p(&[2, 1])], c.scale(&int(-72)));
        assert_eq!(v.values[&p(&[1, 1, 1])], c.scale(&int(-189)));

        let mut zero = GeneratorAssignment::default();
        assert_eq!(zero.set(2, int(0)), Err(Error::ZeroConstant(2)));
        assert!(zero.set(1, int(3)).is_err());
    }

    #[test]
    fn solves_low_dimensions() {
        let one = GeneratorAssignment::default();
        assert_eq!(solve_l(1, &one).unwrap().coeffs, coeffs(&[(&[1], rat(1, 3))]));
        assert_eq!(
            solve_l(2, &one).unwrap().coeffs,
            coeffs(&[(&[2], rat(7, 45)), (&[1, 1], rat(-1, 45))])
        );
        assert_eq!(
            solve_l(3, &one).unwrap().coeffs,
            coeffs(&[
                (&[3], rat(62, 945)),
                (&[2, 1], rat(-13, 945)),
                (&[1, 1, 1], rat(2, 945))
            ])
        );
    }

    #[test]
    fn pretty_forms() {
        let one = GeneratorAssignment::default();
        assert_eq!(solve_l(1, &one).unwrap().pretty(), "L_1 = p[1]/3");
        assert_eq!(solve_l(2, &one).unwrap().pretty(), "L_2 = (7*p[2] - p[1]^2)/45");
        assert_eq!(
            solve_l(3, &one).unwrap().pretty(),
            "L_3 = (62*p[3] - 13*p[2]*p[1] + 2*p[1]^3)/945"
        );
    }

    #[test]
    fn classify_examples() {
        let f = Combo::parse("7*p[2]-p[1]^2", 2).unwrap();
        assert_eq!(
            classify_combo(&f).unwrap(),
            Classification::MultipleOfSignature { ratio: int(45) }
        );
        let g = Combo::parse("p[2]", 2).unwrap();
        assert_eq!(
            classify_combo(&g).unwrap(),
            Classification::Witness {
                partition: p(&[2]),
                value: ParamPoly::var("c").scale(&int(-3))
            }
        );
        let h = Combo::parse("p[1]", 1).unwrap();
        assert_eq!(
            classify_combo(&h).unwrap(),
            Classification::MultipleOfSignature { ratio: int(3) }
        );
        let l3 = Combo::parse("62*p[3]-13*p[2]*p[1]+2*p[1]^3", 3).unwrap();
        assert_eq!(
            classify_combo(&l3).unwrap(),
            Classification::MultipleOfSignature { ratio: int(945) }
        );
        let z = Combo::parse("p[2] - p[2]", 2).unwrap();
        assert_eq!(classify_combo(&z), Err(Error::ZeroCombo));
        assert!(Combo::parse("p[2]", 3).is_err());
        assert!(Combo::parse("q[2]", 2).is_err());
        assert!(Combo::parse("c*p[2]", 2).is_err());
        assert_eq!(Combo::parse_inferred("7*p[2]-p[1]^2").unwrap(), f);
        assert!(Combo::parse_inferred("").is_err());
    }

    #[test]
    fn independence_examples() {
        let a = |c: i64| GeneratorAssignment::uniform(int(c)).unwrap();
        assert!(verify_independence(3, &[a(1), a(2), a(-3)]).unwrap());
        assert!(verify_independence(2, &[a(1), a(1)]).unwrap());
        assert!(verify_independence(4, &[a(1), a(5)]).unwrap());
        assert!(verify_independence(2, &[a(1)]).is_err());
        assert!(GeneratorAssignment::uniform(int(0)).is_err());
    }

    #[test]
    fn assignment_parsing() {
        let a = GeneratorAssignment::parse("2:1, 3:-3/2").unwrap();
        assert_eq!(a.get(2), int(1));
        assert_eq!(a.get(3), rat(-3, 2));
        assert_eq!(a.get(7), int(1));
        assert!(GeneratorAssignment::parse("2:0").is_err());
        assert!(GeneratorAssignment::parse("2=1").is_err());
        assert!(GeneratorAssignment::parse("x:1").is_err());
    }

    #[test]
    fn symbolic_rows_are_homogeneous_in_constants() {
        for i in 2..=6 {
            for row in enumerate(i) {
                let n = row.count_parts_at_least(2) as u32;
                let v = symbolic_basis_char_vector(&row).unwrap().to_p();
                for (col, value) in &v.values {
                    if value.is_zero() {
                        continue;
                    }
                    let degrees: Vec<u32> = value.degrees().into_iter().collect();
                    assert_eq!(degrees, vec![n], "A[{row}][{col}] = {value}");
                }
            }
        }
    }

    #[test]
    fn nonsingular_up_to_eight() {
        for i in 1..=8 {
            let (a, b) = assemble(i, &GeneratorAssignment::default()).unwrap();
            assert!(a.solve(&b).is_ok(), "i = {i}");
        }
    }
}
