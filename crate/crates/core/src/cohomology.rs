//! Finite graded-commutative cohomology models.
//!
//! A model is presented by even-degree generators, oriented rewrite rules
//! `leading monomial -> lower combination`, and a top degree above which
//! every class vanishes. Elements are kept in normal form over the reduced
//! monomial basis with [`ParamPoly`] coefficients, so one model serves both a
//! formal bundle constant and a concrete one.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use crate::algebra::ParamPoly;
use crate::error::{Error, Result};

/// Default limit on the number of basis monomials of a model.
pub const DEFAULT_BASIS_GUARD: usize = 1_000_000;

/// Exponent vector indexed by generator position.
pub type ClassMonomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: &str, degree: u32) -> Self {
        Generator {
            name: name.to_string(),
            degree,
        }
    }
}

/// `lhs -> rhs`; `rhs` is a combination of monomials strictly below `lhs`
/// in the term order and of the same degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub lhs: ClassMonomial,
    pub rhs: ClassElement,
}

/// A run of generators belonging to one tensor factor, with that factor's
/// top degree. Monomials exceeding a block's top degree vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Block {
    gens: Range<usize>,
    top_degree: u32,
}

#[derive(Clone, Debug)]
pub struct RingModel {
    generators: Vec<Generator>,
    rules: Vec<RewriteRule>,
    blocks: Vec<Block>,
    top_degree: u32,
    basis: BTreeMap<u32, Vec<ClassMonomial>>,
    fundamental: BTreeMap<ClassMonomial, ParamPoly>,
}

/// A (possibly inhomogeneous) class: reduced monomial -> coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassElement {
    terms: BTreeMap<ClassMonomial, ParamPoly>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_mul(a: &[u32], b: &[u32]) -> ClassMonomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_div(a: &[u32], b: &[u32]) -> ClassMonomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_lcm(a: &[u32], b: &[u32]) -> ClassMonomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl ClassElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassMonomial, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> ParamPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: ClassMonomial, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Builds an element from raw terms without reduction. Intended for
    /// rule right-hand sides and callers that already hold normal forms.
    pub fn from_terms(terms: impl IntoIterator<Item = (ClassMonomial, ParamPoly)>) -> Self {
        let mut e = ClassElement::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add(&self, other: &ClassElement) -> ClassElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ClassElement) -> ClassElement {
        self.add(&other.scale(&ParamPoly::from(-1)))
    }

    pub fn scale(&self, c: &ParamPoly) -> ClassElement {
        let mut out = ClassElement::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Shifts every monomial into a wider generator set (tensor embedding).
    fn embed(&self, offset: usize, total: usize) -> ClassElement {
        let mut out = ClassElement::zero();
        for (m, c) in &self.terms {
            let mut wide = vec![0; total];
            wide[offset..offset + m.len()].copy_from_slice(m);
            out.add_term(wide, c.clone());
        }
        out
    }
}

impl RingModel {
    /// Builds and validates a model with a single block.
    ///
    /// Checks that generator degrees are even and positive, that each rule is
    /// homogeneous and oriented (right side strictly below the left side),
    /// that the rules are confluent on all critical pairs up to the top
    /// degree, and that the fundamental functional only reads top-degree
    /// basis monomials.
    pub fn new(
        generators: Vec<Generator>,
        rules: Vec<RewriteRule>,
        top_degree: u32,
        fundamental: Vec<(ClassMonomial, ParamPoly)>,
        guard: usize,
    ) -> Result<Self> {
        let n = generators.len();
        let blocks = vec![Block {
            gens: 0..n,
            top_degree,
        }];
        let mut model = RingModel {
            generators,
            rules,
            blocks,
            top_degree,
            basis: BTreeMap::new(),
            fundamental: BTreeMap::new(),
        };
        model.validate()?;
        model.basis = model.enumerate_basis(guard)?;
        model.check_confluence()?;
        model.set_fundamental(fundamental)?;
        Ok(model)
    }

    /// The model of a point: no generators, top degree 0, `<1> = 1`.
    pub fn point() -> Self {
        RingModel::new(
            Vec::new(),
            Vec::new(),
            0,
            vec![(Vec::new(), ParamPoly::one())],
            DEFAULT_BASIS_GUARD,
        )
        .expect("point model is valid")
    }

    fn validate(&self) -> Result<()> {
        let n = self.generators.len();
        let mut names = BTreeSet::new();
        for g in &self.generators {
            if g.degree == 0 || g.degree % 2 != 0 {
                return Err(Error::InvalidArgument(format!(
                    "generator `{}` has degree {}; degrees must be even and positive",
                    g.name, g.degree
                )));
            }
            if !names.insert(g.name.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate generator `{}`",
                    g.name
                )));
            }
        }
        for rule in &self.rules {
            if rule.lhs.len() != n || rule.lhs.iter().all(|&e| e == 0) {
                return Err(Error::InvalidArgument("malformed rule left side".into()));
            }
            let d = self.degree(&rule.lhs);
            for (m, _) in rule.rhs.terms() {
                if m.len() != n || self.degree(m) != d {
                    return Err(Error::InvalidArgument(format!(
                        "rule for {} is not homogeneous",
                        self.format_monomial(&rule.lhs)
                    )));
                }
                if self.term_cmp(m, &rule.lhs) != Ordering::Less {
                    return Err(Error::InvalidArgument(format!(
                        "rule for {} is not oriented: {} is not below it",
                        self.format_monomial(&rule.lhs),
                        self.format_monomial(m)
                    )));
                }
            }
        }
        Ok(())
    }

    fn set_fundamental(&mut self, fundamental: Vec<(ClassMonomial, ParamPoly)>) -> Result<()> {
        let top = self.basis.get(&self.top_degree).cloned().unwrap_or_default();
        for (m, v) in fundamental {
            if !top.contains(&m) {
                return Err(Error::InvalidArgument(format!(
                    "fundamental class evaluates {}, which is not a top-degree basis monomial",
                    self.format_monomial(&m)
                )));
            }
            if !v.is_zero() {
                self.fundamental.insert(m, v);
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    /// Reduced basis monomials by degree.
    pub fn basis(&self) -> &BTreeMap<u32, Vec<ClassMonomial>> {
        &self.basis
    }

    pub fn basis_size(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn fundamental(&self) -> &BTreeMap<ClassMonomial, ParamPoly> {
        &self.fundamental
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degree(&self, m: &[u32]) -> u32 {
        m.iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    /// Term order: degree, then lexicographic with generator 0 most
    /// significant.
    pub fn term_cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| a.cmp(b))
    }

    fn truncated(&self, m: &[u32]) -> bool {
        self.blocks.iter().any(|b| {
            let d: u32 = b
                .gens
                .clone()
                .map(|i| m[i] * self.generators[i].degree)
                .sum();
            d > b.top_degree
        })
    }

    fn first_rule_dividing(&self, m: &[u32]) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| divides(&r.lhs, m))
    }

    fn enumerate_basis(&self, guard: usize) -> Result<BTreeMap<u32, Vec<ClassMonomial>>> {
        let n = self.generators.len();
        let mut out: BTreeMap<u32, Vec<ClassMonomial>> = BTreeMap::new();
        let mut count = 0usize;
        let mut current = vec![0u32; n];

        fn rec(
            model: &RingModel,
            idx: usize,
            degree: u32,
            current: &mut ClassMonomial,
            out: &mut BTreeMap<u32, Vec<ClassMonomial>>,
            count: &mut usize,
            guard: usize,
        ) -> Result<()> {
            if idx == current.len() {
                if !model.truncated(current) && model.first_rule_dividing(current).is_none() {
                    *count += 1;
                    if *count > guard {
                        return Err(Error::BasisGuard {
                            size: *count,
                            guard,
                        });
                    }
                    out.entry(degree).or_default().push(current.clone());
                }
                return Ok(());
            }
            let g = model.generators[idx].degree;
            let mut e = 0;
            while degree + e * g <= model.top_degree {
                current[idx] = e;
                // Once a rule divides the prefix, larger exponents stay reducible.
                let mut probe = current.clone();
                for v in probe.iter_mut().skip(idx + 1) {
                    *v = 0;
                }
                if model.first_rule_dividing(&probe).is_some() {
                    break;
                }
                rec(model, idx + 1, degree + e * g, current, out, count, guard)?;
                e += 1;
            }
            current[idx] = 0;
            Ok(())
        }

        rec(self, 0, 0, &mut current, &mut out, &mut count, guard)?;
        for v in out.values_mut() {
            v.sort();
        }
        Ok(out)
    }

    /// Critical pairs: for each pair of rules with overlapping leading
    /// monomials, both one-step reductions of the lcm must reach the same
    /// normal form. Coprime leading monomials never need checking.
    fn check_confluence(&self) -> Result<()> {
        for (i, a) in self.rules.iter().enumerate() {
            for b in &self.rules[i + 1..] {
                if a.lhs.iter().zip(&b.lhs).all(|(x, y)| *x == 0 || *y == 0) {
                    continue;
                }
                let l = mono_lcm(&a.lhs, &b.lhs);
                if self.degree(&l) > self.top_degree {
                    continue;
                }
                let via = |r: &RewriteRule| {
                    let q = mono_div(&l, &r.lhs);
                    self.reduce_raw(r.rhs.terms().map(|(m, c)| (mono_mul(m, &q), c.clone())))
                };
                let (left, right) = (via(a), via(b));
                if left != right {
                    return Err(Error::NotConfluent(format!(
                        "{} reduces to {} and to {}",
                        self.format_monomial(&l),
                        self.format_element(&left),
                        self.format_element(&right)
                    )));
                }
            }
        }
        Ok(())
    }

    fn reduce_counting(
        &self,
        terms: impl IntoIterator<Item = (ClassMonomial, ParamPoly)>,
    ) -> (ClassElement, usize) {
        let mut out = ClassElement::zero();
        let mut stack: Vec<(ClassMonomial, ParamPoly)> = terms.into_iter().collect();
        let mut steps = 0;
        while let Some((m, c)) = stack.pop() {
            if c.is_zero() || self.degree(&m) > self.top_degree || self.truncated(&m) {
                continue;
            }
            match self.first_rule_dividing(&m) {
                None => out.add_term(m, c),
                Some(rule) => {
                    steps += 1;
                    let q = mono_div(&m, &rule.lhs);
                    for (rm, rc) in rule.rhs.terms() {
                        stack.push((mono_mul(rm, &q), rc * &c));
                    }
                }
            }
        }
        (out, steps)
    }

    fn reduce_raw(&self, terms: impl IntoIterator<Item = (ClassMonomial, ParamPoly)>) -> ClassElement {
        self.reduce_counting(terms).0
    }

    /// Normal form of an arbitrary combination of monomials.
    pub fn reduce(&self, e: &ClassElement) -> ClassElement {
        self.reduce_raw(e.terms().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Normal form of one monomial and the number of rewrite steps taken.
    pub fn reduce_monomial(&self, m: &[u32]) -> (ClassElement, usize) {
        self.reduce_counting([(m.to_vec(), ParamPoly::one())])
    }

    pub fn one(&self) -> ClassElement {
        ClassElement::from_terms([(vec![0; self.generators.len()], ParamPoly::one())])
    }

    pub fn constant(&self, c: ParamPoly) -> ClassElement {
        ClassElement::from_terms([(vec![0; self.generators.len()], c)])
    }

    /// The class of a named generator. Panics on an unknown name.
    pub fn gen(&self, name: &str) -> ClassElement {
        let i = self
            .generator_index(name)
            .unwrap_or_else(|| panic!("no generator `{name}`"));
        let mut m = vec![0; self.generators.len()];
        m[i] = 1;
        self.reduce_raw([(m, ParamPoly::one())])
    }

    /// A reduced monomial from `(name, exponent)` pairs.
    pub fn monomial(&self, factors: &[(&str, u32)]) -> ClassElement {
        let mut m = vec![0; self.generators.len()];
        for (name, e) in factors {
            let i = self
                .generator_index(name)
                .unwrap_or_else(|| panic!("no generator `{name}`"));
            m[i] += e;
        }
        self.reduce_raw([(m, ParamPoly::one())])
    }

    pub fn mul(&self, a: &ClassElement, b: &ClassElement) -> ClassElement {
        let mut raw = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                raw.push((mono_mul(ma, mb), ca * cb));
            }
        }
        self.reduce_raw(raw)
    }

    pub fn pow(&self, a: &ClassElement, e: u32) -> ClassElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The homogeneous component of degree `d`.
    pub fn component(&self, a: &ClassElement, d: u32) -> ClassElement {
        ClassElement::from_terms(
            a.terms
                .iter()
                .filter(|(m, _)| self.degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Evaluation on the fundamental class: the top-degree component paired
    /// with the fundamental functional. Lower components are ignored.
    pub fn top_evaluate(&self, a: &ClassElement) -> ParamPoly {
        let mut total = ParamPoly::zero();
        for (m, c) in &a.terms {
            if self.degree(m) != self.top_degree {
                continue;
            }
            if let Some(f) = self.fundamental.get(m) {
                total += &(c * f);
            }
        }
        total
    }

    /// Tensor product: disjoint generators (names of the second factor get
    /// primes on collision), concatenated rules, added top degrees and the
    /// product fundamental functional.
    pub fn tensor(&self, other: &RingModel, guard: usize) -> Result<RingModel> {
        let size = self.basis_size().saturating_mul(other.basis_size());
        if size > guard {
            return Err(Error::BasisGuard { size, guard });
        }
        let na = self.generators.len();
        let total = na + other.generators.len();

        let mut generators = self.generators.clone();
        for g in &other.generators {
            let mut name = g.name.clone();
            while generators.iter().any(|h| h.name == name) {
                name.push('\'');
            }
            generators.push(Generator {
                name,
                degree: g.degree,
            });
        }
        let mut rules: Vec<RewriteRule> = self
            .rules
            .iter()
            .map(|r| RewriteRule {
                lhs: {
                    let mut l = r.lhs.clone();
                    l.resize(total, 0);
                    l
                },
                rhs: r.rhs.embed(0, total),
            })
            .collect();
        rules.extend(other.rules.iter().map(|r| RewriteRule {
            lhs: {
                let mut l = vec![0; na];
                l.extend_from_slice(&r.lhs);
                l
            },
            rhs: r.rhs.embed(na, total),
        }));
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| Block {
            gens: b.gens.start + na..b.gens.end + na,
            top_degree: b.top_degree,
        }));

        let mut basis: BTreeMap<u32, Vec<ClassMonomial>> = BTreeMap::new();
        for (da, ba) in &self.basis {
            for (db, bb) in &other.basis {
                let entry = basis.entry(da + db).or_default();
                for ma in ba {
                    for mb in bb {
                        let mut m = ma.clone();
                        m.extend_from_slice(mb);
                        entry.push(m);
                    }
                }
            }
        }
        for v in basis.values_mut() {
            v.sort();
        }

        let mut fundamental = BTreeMap::new();
        for (ma, fa) in &self.fundamental {
            for (mb, fb) in &other.fundamental {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                fundamental.insert(m, fa * fb);
            }
        }

        Ok(RingModel {
            generators,
            rules,
            blocks,
            top_degree: self.top_degree + other.top_degree,
            basis,
            fundamental,
        })
    }

    /// Embeds an element of the first tensor factor into `self`, which must
    /// have been produced by `tensor` with that factor first.
    pub fn embed_left(&self, a: &ClassElement) -> ClassElement {
        a.embed(0, self.generators.len())
    }

    /// Embeds an element of the second tensor factor whose generators start
    /// at `offset` in `self`.
    pub fn embed_at(&self, a: &ClassElement, offset: usize) -> ClassElement {
        a.embed(offset, self.generators.len())
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let mut factors: Vec<(&str, u32)> = m
            .iter()
            .zip(&self.generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| (g.name.as_str(), *e))
            .collect();
        factors.sort();
        if factors.is_empty() {
            return "1".into();
        }
        factors
            .iter()
            .map(|(n, e)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Renders an element as a sum of monomials, highest degree first.
    pub fn format_element(&self, a: &ClassElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&ClassMonomial, &ParamPoly)> = a.terms.iter().collect();
        terms.sort_by(|x, y| self.term_cmp(y.0, x.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let mono = self.format_monomial(m);
            let coeff = c.to_string();
            let (neg, body) = if c.len() == 1 {
                match coeff.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, coeff),
                }
            } else {
                (false, format!("({coeff})"))
            };
            let term = match (mono.as_str(), body.as_str()) {
                ("1", b) => b.to_string(),
                (mm, "1") => mm.to_string(),
                (mm, b) => format!("{b}*{mm}"),
            };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    /// H*(X_c) for a CP^{2k}-bundle over S^4: y in degree 2 (listed first so
    /// that y^{2k+1} leads), x in degree 4.
    fn xc(k: u32, c: ParamPoly) -> RingModel {
        let rules = vec![
            RewriteRule {
                lhs: vec![0, 2],
                rhs: ClassElement::zero(),
            },
            RewriteRule {
                lhs: vec![2 * k + 1, 0],
                rhs: ClassElement::from_terms([(vec![2 * k - 1, 1], -c)]),
            },
        ];
        RingModel::new(
            vec![Generator::new("y", 2), Generator::new("x", 4)],
            rules,
            4 * (k + 1),
            vec![(vec![2 * k, 1], ParamPoly::one())],
            DEFAULT_BASIS_GUARD,
        )
        .unwrap()
    }

    fn cp(n: u32) -> RingModel {
        RingModel::new(
            vec![Generator::new("a", 2)],
            vec![RewriteRule {
                lhs: vec![n + 1],
                rhs: ClassElement::zero(),
            }],
            2 * n,
            vec![(vec![n], ParamPoly::one())],
            DEFAULT_BASIS_GUARD,
        )
        .unwrap()
    }

    fn c() -> ParamPoly {
        ParamPoly::var("c")
    }

    #[test]
    fn xc_relations() {
        let m = xc(1, c());
        let y = m.gen("y");
        let x = m.gen("x");
        let y2 = m.mul(&y, &y);
        assert_eq!(m.format_element(&m.mul(&y, &y2)), "-c*x*y");
        assert!(m.mul(&x, &x).is_zero());
        for k in 1..=6 {
            let m = xc(k, c());
            let mid = m.monomial(&[("x", 1), ("y", k - 1)]);
            assert!(m.mul(&mid, &mid).is_zero(), "k = {k}");
        }
    }

    #[test]
    fn xc_basis_and_evaluation() {
        for k in 1..=5 {
            let m = xc(k, c());
            assert_eq!(m.basis_size() as u32, 2 * (2 * k + 1));
            assert_eq!(m.basis()[&m.top_degree()].len(), 1);
            let top = m.monomial(&[("x", 1), ("y", 2 * k)]);
            assert_eq!(m.top_evaluate(&top), ParamPoly::one());
            let y_top = m.monomial(&[("y", 2 * k + 2)]);
            assert_eq!(m.top_evaluate(&y_top), -c());
            assert!(m.top_evaluate(&m.one()).is_zero());
        }
    }

    #[test]
    fn rewrite_termination_bound() {
        for k in 1..=6 {
            let m = xc(k, c());
            for a in 0..=2 * k + 2 {
                for b in 0..=2 {
                    let mono = vec![a, b];
                    let d = m.degree(&mono);
                    if d > m.top_degree() {
                        continue;
                    }
                    let (_, steps) = m.reduce_monomial(&mono);
                    assert!(steps as u32 <= d, "y^{a} x^{b}: {steps} steps");
                }
            }
        }
        let p = cp(4);
        for a in 0..=4 {
            assert_eq!(p.reduce_monomial(&[a]).1, 0);
        }
    }

    #[test]
    fn tensor_structure() {
        let a = cp(2);
        let t = a.tensor(&cp(2), DEFAULT_BASIS_GUARD).unwrap();
        assert_eq!(t.basis_size(), 9);
        assert_eq!(t.top_degree(), 8);
        assert_eq!(t.fundamental().len(), 1);
        let top = t.monomial(&[("a", 2), ("a'", 2)]);
        assert_eq!(t.top_evaluate(&top), ParamPoly::one());
        // a^3 ⊗ 1 vanishes in the factor even though degree 6 <= 8.
        assert!(t.monomial(&[("a", 3)]).is_zero());

        let u = a.tensor(&RingModel::point(), DEFAULT_BASIS_GUARD).unwrap();
        assert_eq!(u.basis(), a.basis());
        assert_eq!(u.top_degree(), a.top_degree());
        assert_eq!(u.fundamental(), a.fundamental());

        let w = a.tensor(&xc(1, c()), DEFAULT_BASIS_GUARD).unwrap();
        assert_eq!(w.top_degree(), 12);
        let top = w.monomial(&[("a", 2), ("x", 1), ("y", 2)]);
        assert_eq!(w.top_evaluate(&top), ParamPoly::one());
        assert_eq!(w.fundamental().len(), 1);
    }

    #[test]
    fn tensor_guard() {
        let err = cp(2).tensor(&cp(2), 8).unwrap_err();
        assert_eq!(err, Error::BasisGuard { size: 9, guard: 8 });
    }

    #[test]
    fn ring_laws_on_random_elements() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let m = xc(2, c());
        let basis: Vec<ClassMonomial> = m.basis().values().flatten().cloned().collect();
        let random = |rng: &mut rand::rngs::StdRng| {
            ClassElement::from_terms((0..4).map(|_| {
                let mono = basis[rng.gen_range(0..basis.len())].clone();
                let coeff = &ParamPoly::from(rng.gen_range(-3..=3)) + &c().scale(&int(rng.gen_range(-2..=2)));
                (mono, coeff)
            }))
        };
        for _ in 0..30 {
            let (a, b, d) = (random(&mut rng), random(&mut rng), random(&mut rng));
            assert_eq!(m.mul(&m.mul(&a, &b), &d), m.mul(&a, &m.mul(&b, &d)));
            assert_eq!(m.mul(&a, &b), m.mul(&b, &a));
            assert_eq!(m.mul(&a, &b.add(&d)), m.mul(&a, &b).add(&m.mul(&a, &d)));
        }
    }

    #[test]
    fn rejects_bad_presentations() {
        let odd = RingModel::new(vec![Generator::new("z", 3)], vec![], 6, vec![], 100);
        assert!(odd.is_err());
        // Right side above the left side in the term order.
        let bad = RingModel::new(
            vec![Generator::new("y", 2), Generator::new("x", 4)],
            vec![RewriteRule {
                lhs: vec![1, 1],
                rhs: ClassElement::from_terms([(vec![3, 0], ParamPoly::one())]),
            }],
            8,
            vec![],
            100,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn detects_non_confluent_rules() {
        // y^2 -> x and y^2 -> -x overlap on y^2 itself but disagree.
        let rules = vec![
            RewriteRule {
                lhs: vec![2, 0],
                rhs: ClassElement::from_terms([(vec![0, 1], ParamPoly::one())]),
            },
            RewriteRule {
                lhs: vec![2, 0],
                rhs: ClassElement::from_terms([(vec![0, 1], ParamPoly::from(-1))]),
            },
        ];
        let r = RingModel::new(
            vec![Generator::new("y", 2), Generator::new("x", 4)],
            rules,
            8,
            vec![],
            100,
        );
        assert!(matches!(r, Err(Error::NotConfluent(_))));
    }
}
