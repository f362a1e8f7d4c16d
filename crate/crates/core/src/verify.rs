//! Self-check report: closed-form bundle numbers, the root power identity,
//! solver against series, independence of the constants, product paths, and
//! the genus of CP^{2n}.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{ParamPoly, Rational};
use crate::charnum::{pontryagin_number, s_number, spec_char_vector, Basis};
use crate::error::Result;
use crate::lsolver::{
    basis_char_vector, basis_char_vector_direct, classify_combo, solve_l, verify_independence,
    Classification, Combo, GeneratorAssignment,
};
use crate::manifolds::{
    complex_projective_even, projective_bundle_with_relation, root_power_identity, root_ring,
    FactorSpec, ManifoldSpec,
};
use crate::oracle::oracle_l;
use crate::partitions::{enumerate, Partition};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_i: u32,
    pub max_k: u32,
    pub assignment: GeneratorAssignment,
    /// Builds every bundle with the wrong relation `y^{2k+1} = -2c·x·y^{2k-1}`.
    pub corrupt_relation: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_i: 6,
            max_k: 8,
            assignment: GeneratorAssignment::default(),
            corrupt_relation: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: String, f: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check {
            name,
            passed,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn times_c(n: BigInt) -> ParamPoly {
    ParamPoly::var("c").scale(&Rational::from_integer(n))
}

fn parts(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).expect("positive parts")
}

/// Expected numbers of X_c for a given k.
pub fn bundle_values(k: u32) -> Vec<(String, ParamPoly)> {
    let b = |n: u32| BigInt::from(n);
    let base = b(2 * k + 1);
    let mut out = vec![
        (
            format!("p{}", Partition::ones(k + 1)),
            times_c(-(b(4 * k + 3) * base.pow(k))),
        ),
        (format!("p{}", Partition::single(k + 1)), times_c(-binom(2 * k + 1, k + 1))),
    ];
    if k >= 2 {
        let mut two = vec![2];
        two.extend(std::iter::repeat_n(1, (k - 1) as usize));
        out.push((
            format!("p{}", parts(&two)),
            times_c(-(base.pow(k - 1) * (b(4 * k * k + 3 * k) - b(4)))),
        ));
    }
    out.push((format!("s_{}", k + 1), times_c(-(b(2 * k + 1) * b(2 * k + 3)))));
    out
}

fn bundle_check(k: u32, corrupt: bool) -> Result<(bool, String)> {
    let c = ParamPoly::var("c");
    let relation = if corrupt { c.scale(&Rational::from_integer(2.into())) } else { c.clone() };
    let x = projective_bundle_with_relation(k, &c, &relation)?;
    let mut bad = Vec::new();
    for (label, want) in bundle_values(k) {
        let got = if let Some(rest) = label.strip_prefix("p") {
            pontryagin_number(&x, &rest.parse()?)?
        } else {
            s_number(&x, k + 1)?
        };
        if got != want {
            bad.push(format!("{label}: {got} != {want}"));
        }
    }
    Ok(if bad.is_empty() {
        (true, format!("{} values", bundle_values(k).len()))
    } else {
        (false, bad.join("; "))
    })
}

fn product_example() -> Result<(bool, String)> {
    let spec: ManifoldSpec = "cp:m=1*xc:k=1,c=@c".parse()?;
    let v = spec_char_vector(&spec, Basis::P)?;
    let want = [
        (parts(&[3]), times_c((-9).into())),
        (parts(&[2, 1]), times_c((-72).into())),
        (parts(&[1, 1, 1]), times_c((-189).into())),
    ];
    let ok = want.iter().all(|(j, w)| v.values.get(j) == Some(w));
    Ok((ok, format!("{}", v.values.values().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))))
}

/// Runs every check; individual failures are recorded, not returned.
pub fn run(opts: &VerifyOptions) -> Report {
    let mut report = Report::default();
    let c = ParamPoly::var("c");

    for k in 1..=opts.max_k {
        report.push(format!("bundle numbers k={k}"), || bundle_check(k, opts.corrupt_relation));
    }
    report.push("CP2 x X_c(k=1) numbers".into(), product_example);

    report.push(format!("root power identity n<=10, k<={}", opts.max_k), || {
        for n in 0..=10 {
            if !root_power_identity(&root_ring(4 * n + 4)?, &c, n) {
                return Ok((false, format!("fails in the free ring at n={n}")));
            }
            for k in 1..=opts.max_k {
                let x = projective_bundle_with_relation(k, &c, &c)?;
                if !root_power_identity(&x.ring, &c, n) {
                    return Ok((false, format!("fails at n={n}, k={k}")));
                }
            }
        }
        Ok((true, String::new()))
    });

    for i in 1..=opts.max_i {
        report.push(format!("solver = series, i={i}"), || {
            let s = solve_l(i, &opts.assignment)?;
            let o = oracle_l(i)?;
            Ok((s == o, s.pretty()))
        });
    }

    let small = opts.max_i.min(5);
    let assignments = [1, 2, -3].map(|v| {
        GeneratorAssignment::uniform(Rational::from_integer(v.into())).expect("nonzero")
    });
    for i in 2..=small {
        report.push(format!("independent of constants, i={i}"), || {
            Ok((verify_independence(i, &assignments)?, "c = 1, 2, -3".into()))
        });
    }

    for i in 1..=small {
        report.push(format!("convolution = tensor, i={i}"), || {
            for part in enumerate(i) {
                let conv = basis_char_vector(&part, &opts.assignment)?;
                let direct = basis_char_vector_direct(&part, &opts.assignment)?;
                if conv != direct {
                    return Ok((false, format!("differs at {part}")));
                }
            }
            Ok((true, format!("{} products", enumerate(i).len())))
        });
    }

    for n in 1..=opts.max_i {
        report.push(format!("L_{n}(CP{}) = 1", 2 * n), || {
            let l = solve_l(n, &opts.assignment)?;
            let cp = complex_projective_even(n)?;
            let v = crate::charnum::char_vector(&cp, Basis::P);
            let value = l.evaluate(&v)?;
            Ok((value == ParamPoly::one(), value.to_string()))
        });
    }

    for i in 1..=small {
        report.push(format!("L_{i} classifies as the signature"), || {
            let l = solve_l(i, &opts.assignment)?;
            Ok(match classify_combo(&Combo::from_lgenus(&l))? {
                Classification::MultipleOfSignature { ratio } => (ratio.is_one(), format!("ratio {ratio}")),
                Classification::Witness { partition, value } => {
                    (false, format!("witness {partition}: {value}"))
                }
            })
        });
    }

    report
}

/// The factor list of `α_I`, for display.
pub fn basis_spec(i_part: &Partition, assignment: &GeneratorAssignment) -> ManifoldSpec {
    ManifoldSpec(
        i_part
            .parts()
            .iter()
            .map(|&j| {
                if j == 1 {
                    FactorSpec::Cp { m: 1 }
                } else {
                    FactorSpec::Xc {
                        k: j - 1,
                        c: ParamPoly::constant(assignment.get(j)),
                    }
                }
            })
            .collect(),
    )
}
