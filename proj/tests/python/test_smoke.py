"""End-to-end checks of the Python bindings at the dict level."""

from fractions import Fraction

import pytest

import umtk


def tri_345():
    return {"n": 3, "d": [[0, 3, 4], [3, 0, 5], [4, 5, 0]]}


def zero_pair():
    return {"n": 3, "d": [[0, 0, 1], [0, 0, 1], [1, 1, 0]]}


def fab_13():
    return {
        "kind": "piecewise_affine",
        "pieces": [
            {"from": 0, "to": 0, "to_closed": True, "slope": 0, "intercept": 0},
            {"from": 0, "to": 1, "from_closed": False, "to_closed": True,
             "slope": 0, "intercept": "1/2"},
            {"from": 1, "from_closed": False, "slope": 0, "intercept": 3},
        ],
    }


def test_classify_space_metric_but_not_ultrametric():
    r = umtk.classify_space(tri_345())
    assert r["classes"]["metric"] is True
    assert r["classes"]["ultrametric"] is False
    w = r["axioms"]["strong_triangle"]["witness"]
    assert (w["i"], w["j"], w["k"]) == (1, 2, 0)


def test_classify_space_zero_pair():
    r = umtk.classify_space(zero_pair())
    assert r["classes"]["pseudoultrametric"] is True
    assert r["classes"]["ultrametric"] is False
    assert r["axioms"]["identity"]["witness"] == {"i": 0, "j": 1}


def test_classify_function_fab():
    r = umtk.classify_function(fab_13())
    assert r["classes"]["ultrametric_preserving"] is True
    assert r["classes"]["ultrametric_metric_preserving"] is True


def test_classify_function_power():
    r = umtk.classify_function({"kind": "power", "alpha": "1/2"})
    assert r["classes"]["ultrametric_preserving"] is True


def test_evaluate_exact_and_enclosure():
    v = umtk.evaluate(fab_13(), "2")
    assert v["exact"] is True
    assert v["lo"] == "3"

    s = umtk.evaluate({"kind": "power", "alpha": "1/2"}, "2")
    assert s["exact"] is False
    lo, hi = Fraction(s["lo"]), Fraction(s["hi"])
    assert lo * lo < 2 < hi * hi
    assert hi - lo < Fraction(1, 2**60)


def test_transform_applies_entrywise():
    # Squaring (3,4,5) gives the degenerate triangle 25 = 9 + 16: still a metric.
    out = umtk.transform(tri_345(), {"kind": "power", "alpha": 2})
    d = out["transformed"]["d"]
    assert Fraction(d[1][2]) == 25
    assert out["classification"]["classes"]["metric"] is True

    # Cubing pushes past the critical exponent: 125 > 27 + 64.
    out = umtk.transform(tri_345(), {"kind": "power", "alpha": 3})
    assert Fraction(out["transformed"]["d"][1][2]) == 125
    assert out["classification"]["classes"]["metric"] is False


def test_transform_rejects_fractional_power():
    with pytest.raises(umtk.PreconditionError):
        umtk.transform(tri_345(), {"kind": "power", "alpha": "1/2"})


def test_dual_witness_and_replay():
    pkg = umtk.dual_witness(tri_345())
    assert pkg is not None
    after = [Fraction(x) for x in pkg["after"]]
    assert max(after) > sum(after) - max(after)
    assert umtk.dual_witness({"n": 2, "d": [[0, 1], [1, 0]]}) is None


def test_probe_fab():
    r = umtk.probe_fab(tri_345())
    assert r["ultrametric"] is False
    assert [Fraction(x) for x in r["failing_pair"]] == [4, 5]


def test_probe_snowflake():
    ok = umtk.probe_snowflake(tri_345(), "2")
    assert ok["verdict"] == "metric"
    bad = umtk.probe_snowflake(tri_345(), "3")
    assert bad["verdict"] == "not_metric"
    assert bad["witness"] == {"i": 1, "j": 2, "k": 0}


def test_min_falsifying_exponent():
    ce = umtk.min_falsifying_exponent(tri_345())
    assert ce is not None
    assert ce["exact"] is True
    assert Fraction(ce["alpha_star"]) == 2

    ultra = {"n": 3, "d": [[0, 1, 2], [1, 0, 2], [2, 2, 0]]}
    assert umtk.min_falsifying_exponent(ultra) is None


def test_decompose_round_trip():
    r = umtk.decompose(zero_pair())
    assert Fraction(r["r_star"]) == 1
    assert r["composition_verified"] is True
    u = r["ultrametric"]["d"]
    assert Fraction(u[0][1]) == Fraction(1, 2)

    with pytest.raises(umtk.PreconditionError):
        umtk.decompose({"n": 2, "d": [[0, 1], [1, 0]]})


def test_zero_gap_radius():
    d = {"n": 3, "d": [[0, "1/4", 2], ["1/4", 0, 2], [2, 2, 0]]}
    thr = {
        "kind": "piecewise_affine",
        "pieces": [
            {"from": 0, "to": "1/2", "to_closed": True, "slope": 0, "intercept": 0},
            {"from": "1/2", "from_closed": False, "slope": 1, "intercept": 0},
        ],
    }
    gap = umtk.zero_gap_radius(d, thr)
    assert gap is not None
    assert Fraction(gap["r0"]) == Fraction(1, 4)

    identity = {"kind": "piecewise_affine",
                "pieces": [{"from": 0, "slope": 1, "intercept": 0}]}
    assert umtk.zero_gap_radius(d, identity) is None


def test_family_operations():
    powers = [{"kind": "power", "alpha": a} for a in (2, 4, 8, 16)]
    identity = [{"kind": "piecewise_affine",
                 "pieces": [{"from": 0, "slope": 1, "intercept": 0}]}]

    assert umtk.find_separator(powers, "1", "3/2") == 0
    assert umtk.find_separator(identity, "1", "3/2") is None

    assert Fraction(umtk.power_separator_exponent("1", "2")) == 2
    assert Fraction(umtk.power_separator_exponent("1", "10")) == 1

    chk = umtk.is_k_separating_on(identity, "2", [("1", "3/2")])
    assert chk["outcome"] == "failed"
    ok = umtk.is_k_separating_on(powers, "2", [("1", "3/2"), ("1", "2")])
    assert ok["outcome"] == "separated"

    ce = umtk.counterexample_space(identity, "1", "3/2")
    sides = ce["space"]["d"]
    assert Fraction(sides[0][1]) == Fraction(3, 2)
    assert Fraction(sides[0][2]) == Fraction(5, 4)
    assert ce["certificate"]["space_metric"] is True
    assert ce["certificate"]["space_ultrametric"] is False

    with pytest.raises(umtk.PreconditionError):
        umtk.counterexample_space(powers, "1", "3/2")

    dec = umtk.ultrametric_by_family(powers, tri_345())
    assert dec["verdict"] == "not_ultrametric"

    inc = umtk.ultrametric_by_family(
        identity, {"n": 3, "d": [[0, "3/2", "5/4"], ["3/2", 0, "5/4"],
                                 ["5/4", "5/4", 0]]})
    assert inc["verdict"] == "inconclusive"


def test_generators_are_deterministic():
    a = umtk.gen_ultrametric(7, 8)
    b = umtk.gen_ultrametric(7, 8)
    assert a == b
    assert umtk.classify_space(a)["classes"]["ultrametric"] is True

    m = umtk.gen_metric(7, 6)
    assert umtk.classify_space(m["space"])["classes"]["metric"] is True

    rho = umtk.gen_pseudoultrametric(7, 6, zero_fraction="1/2")
    r = umtk.classify_space(rho)
    assert r["classes"]["pseudoultrametric"] is True
    assert r["classes"]["ultrametric"] is False

    f = umtk.gen_function(7, "increasing_amenable")
    c = umtk.classify_function(f)
    assert c["classes"]["ultrametric_preserving"] is True


def test_input_errors_surface_as_value_error():
    with pytest.raises(umtk.InputError):
        umtk.classify_space({"n": 2, "d": [[0, 1], [2, 0]]})
    assert issubclass(umtk.InputError, ValueError)
