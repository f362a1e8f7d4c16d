//! Manifold models: CP^{2m}, the CP^{2k}-bundles X_c over S^4, and products.
//!
//! Each model bundles a cohomology ring with its total Pontryagin class and a
//! signature. Signatures are assigned, not computed: 1 for CP^{2m}, 0 for
//! every X_c (its middle cohomology contains an isotropic line), and
//! multiplicative on products.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{parse_rational, ParamPoly, Rational};
use crate::cohomology::{ClassElement, Generator, RewriteRule, RingModel, DEFAULT_BASIS_GUARD};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ManifoldModel {
    pub name: String,
    /// Real dimension divided by four.
    pub dim4: u32,
    pub ring: Arc<RingModel>,
    /// Inhomogeneous, with constant term 1; its degree-4j part is `p_j`.
    pub total_p: ClassElement,
    pub signature: Rational,
    pub params: BTreeSet<String>,
}

impl ManifoldModel {
    /// The Pontryagin class `p_j` (zero above the dimension).
    pub fn pontryagin_class(&self, j: u32) -> ClassElement {
        self.ring.component(&self.total_p, 4 * j)
    }

    /// A point: the unit for products.
    pub fn point() -> Self {
        let ring = RingModel::point();
        ManifoldModel {
            name: "pt".into(),
            dim4: 0,
            total_p: ring.one(),
            ring: Arc::new(ring),
            signature: Rational::one(),
            params: BTreeSet::new(),
        }
    }
}

fn binomial_power(ring: &RingModel, base: &ClassElement, e: u32) -> ClassElement {
    ring.pow(&ring.one().add(base), e)
}

/// CP^{2m}: `Z[a]/(a^{2m+1})`, `p = (1 + a^2)^{2m+1}`, `<a^{2m}> = 1`,
/// signature 1.
pub fn complex_projective_even(m: u32) -> Result<ManifoldModel> {
    if m < 1 {
        return Err(Error::InvalidArgument("CP^{2m} needs m >= 1".into()));
    }
    let n = 2 * m;
    let ring = RingModel::new(
        vec![Generator::new("a", 2)],
        vec![RewriteRule {
            lhs: vec![n + 1],
            rhs: ClassElement::zero(),
        }],
        2 * n,
        vec![(vec![n], ParamPoly::one())],
        DEFAULT_BASIS_GUARD,
    )?;
    let a2 = ring.monomial(&[("a", 2)]);
    let total_p = binomial_power(&ring, &a2, n + 1);
    Ok(ManifoldModel {
        name: format!("CP{n}"),
        dim4: m,
        ring: Arc::new(ring),
        total_p,
        signature: Rational::one(),
        params: BTreeSet::new(),
    })
}

/// Cohomology of X_c with relation `y^{2k+1} + r·x·y^{2k-1} = 0`; the true
/// ring has `r = c`. Generators are listed `y` first so that `y^{2k+1}` is
/// the leading monomial of its relation.
fn bundle_ring(k: u32, relation: &ParamPoly) -> Result<RingModel> {
    let rules = vec![
        RewriteRule {
            lhs: vec![0, 2],
            rhs: ClassElement::zero(),
        },
        RewriteRule {
            lhs: vec![2 * k + 1, 0],
            rhs: ClassElement::from_terms([(vec![2 * k - 1, 1], -relation)]),
        },
    ];
    RingModel::new(
        vec![Generator::new("y", 2), Generator::new("x", 4)],
        rules,
        4 * (k + 1),
        vec![(vec![2 * k, 1], ParamPoly::one())],
        DEFAULT_BASIS_GUARD,
    )
}

/// The CP^{2k}-bundle X_c over S^4 with second Chern number `c` (formal or
/// concrete).
///
/// The total Pontryagin class is `(1+y^2)^{2k-1}(1+y_1^2)(1+y_2^2)` where the
/// virtual roots only enter through `y_1^2 + y_2^2 = 2y^2 - 2cx` and
/// `y_1^2 y_2^2 = (y^2 + cx)^2 = y^4 + 2cxy^2`.
pub fn projective_bundle(k: u32, c: &ParamPoly) -> Result<ManifoldModel> {
    projective_bundle_with_relation(k, c, c)
}

/// As [`projective_bundle`], but with an arbitrary coefficient in the ring
/// relation. Only useful as a negative control: any `relation != c` gives an
/// inconsistent model.
pub fn projective_bundle_with_relation(
    k: u32,
    c: &ParamPoly,
    relation: &ParamPoly,
) -> Result<ManifoldModel> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "projective bundle needs k >= 1".into(),
        ));
    }
    let ring = bundle_ring(k, relation)?;
    let y2 = ring.monomial(&[("y", 2)]);
    let (e1, e2) = virtual_root_squares(&ring, c);
    let roots = ring.one().add(&e1).add(&e2);
    let total_p = ring.mul(&binomial_power(&ring, &y2, 2 * k - 1), &roots);
    Ok(ManifoldModel {
        name: format!("X[k={k},c={c}]"),
        dim4: k + 1,
        ring: Arc::new(ring),
        total_p,
        signature: Rational::zero(),
        params: c.params().into_iter().chain(relation.params()).collect(),
    })
}

/// `(y_1^2 + y_2^2, y_1^2 y_2^2) = (2y^2 - 2cx, y^4 + 2cxy^2)` in any ring
/// with generators named `y` and `x`.
pub fn virtual_root_squares(ring: &RingModel, c: &ParamPoly) -> (ClassElement, ClassElement) {
    let y2 = ring.monomial(&[("y", 2)]);
    let cx = ring.gen("x").scale(c);
    let two = ParamPoly::from(2);
    let e1 = y2.scale(&two).sub(&cx.scale(&two));
    let y4 = ring.monomial(&[("y", 4)]);
    let e2 = y4.add(&ring.mul(&cx, &y2).scale(&two));
    (e1, e2)
}

/// `y_1^{2m} + y_2^{2m}` from [`virtual_root_squares`] by Newton's identities.
pub fn virtual_root_power_sum(ring: &RingModel, c: &ParamPoly, m: u32) -> ClassElement {
    let (e1, e2) = virtual_root_squares(ring, c);
    let mut prev = ring.constant(ParamPoly::from(2));
    let mut cur = e1.clone();
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = ring.mul(&e1, &cur).sub(&ring.mul(&e2, &prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// `Q[c][y, x]/(x^2)` truncated above degree `top`; the bundle ring without
/// its second relation.
pub fn root_ring(top: u32) -> Result<RingModel> {
    RingModel::new(
        vec![Generator::new("y", 2), Generator::new("x", 4)],
        vec![RewriteRule {
            lhs: vec![0, 2],
            rhs: ClassElement::zero(),
        }],
        top,
        Vec::new(),
        DEFAULT_BASIS_GUARD,
    )
}

/// Checks `y_1^{2n+2} + y_2^{2n+2} = 2y^{2n+2} - 2c(n+1)(2n+1)xy^{2n}` in
/// `ring`.
pub fn root_power_identity(ring: &RingModel, c: &ParamPoly, n: u32) -> bool {
    let lhs = virtual_root_power_sum(ring, c, n + 1);
    let coef = c.scale(&Rational::from_integer((-2 * i64::from((n + 1) * (2 * n + 1))).into()));
    let rhs = ring
        .monomial(&[("y", 2 * n + 2)])
        .scale(&ParamPoly::from(2))
        .add(&ring.monomial(&[("x", 1), ("y", 2 * n)]).scale(&coef));
    lhs == rhs
}

/// Total Chern class of the vertical tangent bundle of X_c,
/// `(1+y)^{2k+1} + cx(1+y)^{2k-1}`, in the ring of `bundle`.
pub fn vertical_chern_class(bundle: &ManifoldModel, k: u32, c: &ParamPoly) -> ClassElement {
    let ring = &bundle.ring;
    let y = ring.gen("y");
    let cx = ring.gen("x").scale(c);
    binomial_power(ring, &y, 2 * k + 1).add(&ring.mul(&cx, &binomial_power(ring, &y, 2 * k - 1)))
}

/// Total Pontryagin class of the realification of a complex bundle with the
/// given total Chern class: `p_j = (-1)^j [c(E) c(Ē)]_{4j}`, where
/// `c_i(Ē) = (-1)^i c_i(E)`.
pub fn chern_to_pontryagin(chern: &ClassElement, ring: &RingModel) -> Result<ClassElement> {
    let unit = ring.component(chern, 0);
    if unit != ring.one() {
        return Err(Error::InvalidArgument(
            "total Chern class must have constant term 1".into(),
        ));
    }
    let mut conj = ClassElement::zero();
    for (m, c) in chern.terms() {
        let i = ring.degree(m) / 2;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        conj = conj.add(&ClassElement::from_terms([(m.clone(), c.scale(&Rational::from_integer(sign.into())))]));
    }
    let prod = ring.mul(chern, &conj);
    let mut out = ClassElement::zero();
    for (m, c) in prod.terms() {
        let d = ring.degree(m);
        if d % 4 != 0 {
            debug_assert!(false, "odd Pontryagin component in degree {d}");
            continue;
        }
        let sign = if (d / 4) % 2 == 0 { 1 } else { -1 };
        out = out.add(&ClassElement::from_terms([(m.clone(), c.scale(&Rational::from_integer(sign.into())))]));
    }
    Ok(out)
}

/// Cartesian product via the tensor model. Parameters with the same name in
/// both factors are the same parameter.
pub fn product(m: &ManifoldModel, n: &ManifoldModel, guard: usize) -> Result<ManifoldModel> {
    let ring = m.ring.tensor(&n.ring, guard)?;
    let offset = m.ring.generators().len();
    let pm = ring.embed_left(&m.total_p);
    let pn = ring.embed_at(&n.total_p, offset);
    let total_p = ring.mul(&pm, &pn);
    Ok(ManifoldModel {
        name: format!("{} x {}", m.name, n.name),
        dim4: m.dim4 + n.dim4,
        ring: Arc::new(ring),
        total_p,
        signature: &m.signature * &n.signature,
        params: m.params.union(&n.params).cloned().collect(),
    })
}

/// One factor of a manifold specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSpec {
    /// CP^{2m}.
    Cp { m: u32 },
    /// X_c with k >= 1; `c` is a rational or a formal parameter.
    Xc { k: u32, c: ParamPoly },
}

impl FactorSpec {
    pub fn dim4(&self) -> u32 {
        match self {
            FactorSpec::Cp { m } => *m,
            FactorSpec::Xc { k, .. } => k + 1,
        }
    }

    pub fn build(&self) -> Result<ManifoldModel> {
        match self {
            FactorSpec::Cp { m } => complex_projective_even(*m),
            FactorSpec::Xc { k, c } => projective_bundle(*k, c),
        }
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Cp { m } => write!(f, "cp:m={m}"),
            FactorSpec::Xc { k, c } => match c.as_constant() {
                Some(r) => write!(f, "xc:k={k},c={r}"),
                None => write!(f, "xc:k={k},c=@{c}"),
            },
        }
    }
}

/// A product of factors, written `cp:m=1*xc:k=1,c=@c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldSpec(pub Vec<FactorSpec>);

impl ManifoldSpec {
    pub fn dim4(&self) -> u32 {
        self.0.iter().map(FactorSpec::dim4).sum()
    }

    /// Builds the tensor model of the whole product.
    pub fn build(&self, guard: usize) -> Result<ManifoldModel> {
        let mut iter = self.0.iter();
        let mut acc = match iter.next() {
            Some(f) => f.build()?,
            None => return Ok(ManifoldModel::point()),
        };
        for f in iter {
            acc = product(&acc, &f.build()?, guard)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("*"))
    }
}

fn parse_factor(s: &str) -> Result<FactorSpec> {
    let bad = |why: &str| Error::Parse(format!("manifold factor `{s}`: {why}"));
    let (kind, args) = s.trim().split_once(':').ok_or_else(|| bad("expected `kind:args`"))?;
    let mut m = None;
    let mut k = None;
    let mut c = None;
    for kv in args.split(',') {
        let (key, value) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        let value = value.trim();
        match key.trim() {
            "m" => m = Some(value.parse::<u32>().map_err(|_| bad("m must be a positive integer"))?),
            "k" => k = Some(value.parse::<u32>().map_err(|_| bad("k must be a positive integer"))?),
            "c" => {
                c = Some(match value.strip_prefix('@') {
                    Some(name)
                        if !name.is_empty()
                            && name.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
                            && !name.starts_with(|ch: char| ch.is_ascii_digit()) =>
                    {
                        ParamPoly::var(name)
                    }
                    Some(_) => return Err(bad("invalid parameter name")),
                    None => ParamPoly::constant(parse_rational(value)?),
                })
            }
            other => return Err(bad(&format!("unknown key `{other}`"))),
        }
    }
    match kind.trim() {
        "cp" => match (m, k, c) {
            (Some(m), None, None) if m >= 1 => Ok(FactorSpec::Cp { m }),
            _ => Err(bad("cp takes exactly m >= 1")),
        },
        "xc" => match (m, k, c) {
            (None, Some(k), Some(c)) if k >= 1 => Ok(FactorSpec::Xc { k, c }),
            _ => Err(bad("xc takes k >= 1 and c")),
        },
        other => Err(bad(&format!("unknown kind `{other}`"))),
    }
}

impl FromStr for ManifoldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::Parse("empty manifold specification".into()));
        }
        s.split('*').map(parse_factor).collect::<Result<Vec<_>>>().map(ManifoldSpec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn c() -> ParamPoly {
        ParamPoly::var("c")
    }

    fn binom(n: u32, k: u32) -> i64 {
        (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
    }

    #[test]
    fn cp_classes() {
        let cp2 = complex_projective_even(1).unwrap();
        let r = &cp2.ring;
        assert_eq!(r.format_element(&cp2.pontryagin_class(1)), "3*a^2");
        assert!(cp2.pontryagin_class(2).is_zero());
        assert_eq!(r.top_evaluate(&cp2.pontryagin_class(1)), ParamPoly::from(3));

        let cp4 = complex_projective_even(2).unwrap();
        let r = &cp4.ring;
        let p1 = cp4.pontryagin_class(1);
        let p2 = cp4.pontryagin_class(2);
        assert_eq!(r.format_element(&p1), "5*a^2");
        assert_eq!(r.format_element(&p2), "10*a^4");
        assert_eq!(r.top_evaluate(&p2), ParamPoly::from(10));
        assert_eq!(r.top_evaluate(&r.mul(&p1, &p1)), ParamPoly::from(25));

        for m in 1..=4 {
            let cp = complex_projective_even(m).unwrap();
            assert_eq!(cp.ring.component(&cp.total_p, 0), cp.ring.one());
            assert_eq!(cp.signature, int(1));
        }
        assert!(complex_projective_even(0).is_err());
    }

    #[test]
    fn bundle_pontryagin_classes() {
        for k in 1..=8u32 {
            let x = projective_bundle(k, &c()).unwrap();
            let r = &x.ring;
            let kk = k as i64;
            let expect_p1 = r
                .monomial(&[("y", 2)])
                .scale(&ParamPoly::from(2 * kk + 1))
                .sub(&r.gen("x").scale(&c().scale(&int(2))));
            assert_eq!(x.pontryagin_class(1), expect_p1, "p1, k = {k}");

            let expect_p2 = r
                .monomial(&[("y", 4)])
                .scale(&ParamPoly::from(kk * (2 * kk + 1)))
                .sub(&r.monomial(&[("x", 1), ("y", 2)]).scale(&c().scale(&int(4 * (kk - 1)))));
            assert_eq!(x.pontryagin_class(2), expect_p2, "p2, k = {k}");

            let expect_top = r
                .monomial(&[("y", 2 * k + 2)])
                .scale(&ParamPoly::from(binom(2 * k + 1, k + 1)));
            assert_eq!(x.pontryagin_class(k + 1), expect_top, "p_(k+1), k = {k}");

            for j in k + 2..=k + 4 {
                assert!(x.pontryagin_class(j).is_zero());
            }
            assert_eq!(x.signature, int(0));
            assert_eq!(r.component(&x.total_p, 0), r.one());
        }
        assert!(projective_bundle(0, &c()).is_err());
    }

    #[test]
    fn chern_route_matches_splitting_route() {
        for k in 1..=8 {
            let x = projective_bundle(k, &c()).unwrap();
            let chern = vertical_chern_class(&x, k, &c());
            let p = chern_to_pontryagin(&chern, &x.ring).unwrap();
            assert_eq!(p, x.total_p, "k = {k}");
        }
    }

    #[test]
    fn chern_to_pontryagin_trivial_cases() {
        let cp4 = complex_projective_even(2).unwrap();
        let r = &cp4.ring;
        assert_eq!(chern_to_pontryagin(&r.one(), r).unwrap(), r.one());
        let line = r.one().add(&r.gen("a"));
        assert_eq!(
            chern_to_pontryagin(&line, r).unwrap(),
            r.one().add(&r.monomial(&[("a", 2)]))
        );
        assert!(chern_to_pontryagin(&r.gen("a"), r).is_err());
    }

    #[test]
    fn middle_class_is_isotropic() {
        for k in 1..=8 {
            let x = projective_bundle(k, &c()).unwrap();
            let mid = x.ring.monomial(&[("x", 1), ("y", k - 1)]);
            assert!(x.ring.mul(&mid, &mid).is_zero());
        }
    }

    #[test]
    fn products() {
        let cp2 = complex_projective_even(1).unwrap();
        let sq = product(&cp2, &cp2, DEFAULT_BASIS_GUARD).unwrap();
        assert_eq!(sq.signature, int(1));
        assert_eq!(sq.dim4, 2);
        assert_eq!(sq.ring.format_element(&sq.pontryagin_class(1)), "3*a^2 + 3*a'^2");

        let mixed = product(&cp2, &projective_bundle(1, &c()).unwrap(), DEFAULT_BASIS_GUARD).unwrap();
        assert_eq!(mixed.signature, int(0));
        assert_eq!(mixed.dim4, 3);

        let same = product(&cp2, &ManifoldModel::point(), DEFAULT_BASIS_GUARD).unwrap();
        assert_eq!(same.total_p, cp2.total_p);
        assert_eq!(same.ring.basis(), cp2.ring.basis());
        assert_eq!(same.signature, cp2.signature);
    }

    #[test]
    fn spec_language() {
        let s: ManifoldSpec = "cp:m=1*xc:k=1,c=@c".parse().unwrap();
        assert_eq!(s.0, vec![FactorSpec::Cp { m: 1 }, FactorSpec::Xc { k: 1, c: c() }]);
        assert_eq!(s.dim4(), 3);
        assert_eq!(s.to_string(), "cp:m=1*xc:k=1,c=@c");
        let t: ManifoldSpec = "xc:k=3,c=-3/2".parse().unwrap();
        assert_eq!(t.to_string(), "xc:k=3,c=-3/2");
        for bad in ["", "cp", "cp:m=0", "xc:k=2", "xc:c=1", "foo:m=1", "xc:k=1,c=@", "cp:m=1,k=2", "xc:k=1,c=@1a"] {
            assert!(bad.parse::<ManifoldSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn root_power_sums() {
        for n in 0..=10 {
            let free = root_ring(4 * n + 4).unwrap();
            assert!(root_power_identity(&free, &c(), n), "n = {n}");
            for k in 1..=8 {
                let ring = bundle_ring(k, &c()).unwrap();
                assert!(root_power_identity(&ring, &c(), n), "n = {n}, k = {k}");
            }
        }
        // m = 1, 2 by hand.
        let r = root_ring(8).unwrap();
        assert_eq!(r.format_element(&virtual_root_power_sum(&r, &c(), 1)), "2*y^2 - 2*c*x");
    }
}
