"""Smoke test for the pypontryagin extension module.

Build and install first:
    maturin build --release -m crates/py/Cargo.toml -o dist && pip install dist/*.whl
"""

from fractions import Fraction
from math import comb

import pypontryagin as pp


def check_lgenus():
    l2 = pp.solve_l(2)
    assert l2.coefficients() == {(2,): "7/45", (1, 1): "-1/45"}
    assert l2.pretty() == "L_2 = (7*p[2] - p[1]^2)/45"
    l3 = pp.solve_l(3, "2:-3,3:1/2")
    assert l3.pretty() == "L_3 = (62*p[3] - 13*p[2]*p[1] + 2*p[1]^3)/945"
    for i in range(1, 6):
        assert pp.solve_l(i) == pp.oracle_l(i), i
    text = pp.oracle_l(4).to_json()
    assert pp.LGenus.from_json(text).to_json() == text
    assert pp.LGenus.from_json(text).source == "oracle"


def check_manifolds():
    x = pp.Manifold("xc:k=1,c=@c")
    assert x.dim4 == 2 and x.params == ["c"] and x.signature == "0"
    assert x.pontryagin_number([1, 1]) == "-21*c"
    assert x.char_vector("s") == {(2,): "-15*c", (1, 1): "-3*c"}
    prod = pp.Manifold("cp:m=1*xc:k=1,c=@c")
    assert prod.char_vector() == {(3,): "-9*c", (2, 1): "-72*c", (1, 1, 1): "-189*c"}
    # p_J(CP^{2n}) = prod binom(2n+1, j), and L_n(CP^{2n}) = 1
    for n in range(1, 5):
        cp = pp.Manifold(f"cp:m={n}")
        for parts, value in cp.char_vector().items():
            want = 1
            for j in parts:
                want *= comb(2 * n + 1, j)
            assert Fraction(value) == want
        assert pp.solve_l(n).evaluate(cp) == "1"
    assert pp.certify(pp.Manifold("xc:k=2,c=@c"))
    assert not pp.certify(pp.Manifold("xc:k=2,c=@c"), {"c": "0"})
    assert not pp.certify(pp.Manifold("cp:m=1*cp:m=1"))


def check_classify():
    assert pp.classify("7*p[2]-p[1]^2") == {"i": 2, "kind": "multiple", "ratio": "45"}
    w = pp.classify("p[2]", 2)
    assert w["kind"] == "witness" and w["partition"] == (2,) and w["value"] == "-3*c"


def check_errors():
    for bad in [lambda: pp.Manifold("nope"), lambda: pp.solve_l(2, "2:0"), lambda: pp.classify("p[2]-p[2]")]:
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        pp.Manifold("cp:m=1*cp:m=1*cp:m=1", max_basis=10)
    except ArithmeticError:
        pass
    else:
        raise AssertionError("expected ArithmeticError")


def check_verify():
    report = pp.verify(max_i=4, max_k=4)
    failed = [r for r in report if not r[1]]
    assert not failed, failed


if __name__ == "__main__":
    for f in [check_lgenus, check_manifolds, check_classify, check_errors, check_verify]:
        f()
        print(f"ok {f.__name__}")
    print("smoke test passed")
