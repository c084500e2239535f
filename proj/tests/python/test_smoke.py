import json
from fractions import Fraction

import mpmath
import pytest

import brouwer


def test_pi_digits_match_mpmath():
    mpmath.mp.dps = 1100
    ref = mpmath.nstr(mpmath.pi, 1050, strip_zeros=False)[2:1002]
    assert brouwer.pi_digits(1000) == ref[:1000]


def test_six_nines_position_matches_a_scan():
    found, summary = brouwer.critical_number("run:9x6", 1000)
    assert found == brouwer.pi_digits(1000).find("999999") + 1
    assert summary == str(found)
    assert brouwer.critical_number("empty", 50) == (None, "none-below:50")


def test_digit_limit_is_an_exception():
    with pytest.raises(brouwer.ResourceLimit):
        brouwer.pi_digits(10**9)


def test_lambda_interval():
    for n in range(1, 8):
        for a in range(-10, 11):
            lo, hi = brouwer.lambda_interval(n, a)
            assert lo == Fraction(a, 2**n)
            assert hi - lo == Fraction(2, 2**n)


def test_prefixes_are_admissible_big_ints():
    p = brouwer.prefix("one", 80)
    assert p[-1] == 2**80 - 2
    for a, b in zip(p, p[1:]):
        assert 2 * a <= b <= 2 * a + 2
    assert brouwer.prefix("berlin-s", 6, "true:3") == [-1, -1, 0, 1, 3, 7]


def test_compare_berlin_s_with_zero():
    never = brouwer.compare("berlin-s", "zero", 100, lhs_trace="never")
    assert never["lhs_less"]["value"] == "UnknownAtHorizon"
    assert never["rhs_less"]["value"] == "UnknownAtHorizon"
    resolved = brouwer.compare("berlin-s", "zero", 40, lhs_trace="false:2")
    assert resolved["apart"]["value"] == "Holds"
    assert resolved["lhs_less"]["value"] == "Holds"


def test_checking_sequence():
    terms, limit = brouwer.checking_sequence("rational-right", "direct", "true:3", 5)
    assert terms == ["c", "c", "c_3", "c_3", "c_3"]
    assert limit == "c_3"
    terms, limit = brouwer.checking_sequence("rational-right", "cond", "false:2", 4)
    assert limit == "kernel"


def test_logic():
    assert brouwer.normalize_formula("((p) & q) -> r") == "p & q -> r"
    model = json.dumps(
        {
            "nodes": [
                {"id": "r", "parent": None, "atoms": []},
                {"id": "a", "parent": "r", "atoms": ["p"]},
                {"id": "b", "parent": "r", "atoms": []},
            ]
        }
    )
    assert brouwer.forces(model, "a", "p")
    assert not brouwer.forces(model, "r", "[1]p | ~[1]p")
    assert brouwer.sweep("ic1", 3, 1)["valid"]
    assert brouwer.sweep("cs4", 3, 1)["countermodel"] == "cs4/3n/-,0,0/p:1/n=1;phi=p"
    with pytest.raises(brouwer.ResourceRefusal):
        brouwer.sweep("ic1", 40, 2)


def test_scripts():
    names = brouwer.bundled_scripts()
    assert set(names) == {"vienna_dense", "drift_direct", "conditional_ks", "cambridge_reduced"}
    for name in names:
        assert brouwer.check_script(brouwer.bundled_script(name))["verified"]
    r = brouwer.check_script("assert alpha\nconclude <*>alpha -> alpha\n1: <*>alpha -> alpha ; CS5\n")
    assert not r["verified"]
    assert r["rejected_step"] == 1


def test_cli_in_process():
    code, out, _ = brouwer.run_cli(["pi", "digits", "5", "--json"])
    assert code == 0
    assert json.loads(out)["digits"] == "14159"
    assert brouwer.run_cli([])[0] == 2
