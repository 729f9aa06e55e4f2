"""Expression parser and the command line front end."""

import json
import random
import subprocess
import sys

import pytest

from z3calc import presets
from z3calc.calculus import random_element
from z3calc.freealg import NCPolynomial, fa_str
from z3calc.parser import ParseError, parse, parse_scalar
from z3calc.scalars import J, J2, ONE, Q, rational


@pytest.fixture(scope="module")
def P():
    return presets.build("qjh_calculus")


def test_parse_product_and_sum(P):
    p = parse("x*th - th*x - h*x^2", P)
    want = (NCPolynomial.word(("x", "th")) - NCPolynomial.word(("th", "x"))
            - NCPolynomial.word(("h", "x", "x")))
    assert p == want


def test_parse_scalar_prefix(P):
    p = parse("q*j^2*dth*x", P)
    assert p == NCPolynomial.word(("dth", "x"), Q * J2)


def test_parse_precedence(P):
    assert parse("2*x^2", P) == NCPolynomial.word(("x", "x"), rational(2))
    assert parse("-x^2", P) == NCPolynomial.word(("x", "x"), -ONE)
    x, th = NCPolynomial.gen("x"), NCPolynomial.gen("th")
    assert parse("(x + th)^2", P) == (x + th) * (x + th)


def test_parse_grouping(P):
    p = parse("x*(th + h)", P)
    assert p == NCPolynomial.word(("x", "th")) + NCPolynomial.word(("x", "h"))


def test_parse_division_and_negative_power(P):
    p = parse("x/2", P)
    assert p == NCPolynomial.gen("x").scale(rational(1) * rational(2).inv())
    s = parse("q^-1*j", P)
    assert s == NCPolynomial.unit(Q.inv() * J)


def test_parse_unicode_names(P):
    assert parse("θ*x", P) == NCPolynomial.word(("th", "x"))


def test_parse_errors(P):
    with pytest.raises(ParseError):
        parse("x*(", P)
    with pytest.raises(ParseError):
        parse("x*unknown", P)
    with pytest.raises(ParseError):
        parse("x x", P)  # missing operator shows up as trailing input
    with pytest.raises(ParseError):
        parse("x/th", P)  # divisor must be scalar
    err = None
    try:
        parse("x*(", P)
    except ParseError as e:
        err = e
    assert err.offset == 3


def test_parse_scalar_rejects_generators():
    with pytest.raises(ParseError):
        parse_scalar("x + 1")
    assert parse_scalar("2 - j") == rational(2) - J


def test_print_parse_round_trip(P):
    rng = random.Random(3)
    for _ in range(15):
        nf = P.normal_form(random_element(P, rng, max_len=4))
        text = fa_str(nf, P.order.key)
        assert P.normal_form(parse(text, P)) == nf, text


# ---------------------------------------------------------------------------
# CLI, exercised through a subprocess like a user would

def run_cli(*args, env=None):
    import os
    full = dict(os.environ)
    if env:
        full.update(env)
    return subprocess.run([sys.executable, "-m", "z3calc", *args],
                          capture_output=True, text=True, env=full)


def test_cli_reduce_pinned_h_plane():
    r = run_cli("reduce", "--preset", "h_plane", "x*th")
    assert r.returncode == 0
    assert r.stdout == "th*x + h*x*x\n"


def test_cli_reduce_pinned_qjh_at_one():
    r = run_cli("reduce", "--preset", "qjh_calculus", "--q", "1", "th*dx")
    assert r.returncode == 0
    assert r.stdout == "j*dx*th - j^2*h*dx*x\n"


def test_cli_reduce_deterministic():
    a = run_cli("reduce", "--preset", "qjh_calculus", "th*th*dx*x")
    b = run_cli("reduce", "--preset", "qjh_calculus", "th*th*dx*x")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_cli_reduce_json_schema():
    r = run_cli("reduce", "--preset", "h_plane", "--format", "json", "x*th")
    doc = json.loads(r.stdout)
    assert doc["preset"] == "h_plane"
    assert doc["normal_form"] == "th*x + h*x*x"
    assert doc["terms"][0] == {"coeff": "1", "word": ["th", "x"]}


def test_cli_reduce_unicode():
    r = run_cli("reduce", "--preset", "h_plane", "--unicode", "x*th")
    assert r.stdout == "θ*x + h*x*x\n"


def test_cli_verify_all_passes():
    r = run_cli("verify", "--suite", "all")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["ok"] is True


def test_cli_pairs_census():
    r = run_cli("pairs", "--preset", "qjh_calculus")
    doc = json.loads(r.stdout)
    assert doc["pairs"] == doc["joinable"] > 50
    assert doc["unjoinable"] == []


def test_cli_presets_list():
    r = run_cli("presets", "list")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    names = [ln.split("\t")[0] for ln in lines]
    assert names == list(presets.PRESETS)
    assert all("rules" in ln for ln in lines)


def test_cli_presets_export_import(tmp_path):
    r = run_cli("presets", "export", "qjh_calculus")
    assert r.returncode == 0
    path = tmp_path / "qjh.json"
    path.write_text(r.stdout)
    r2 = run_cli("presets", "import", str(path))
    assert r2.returncode == 0
    doc = json.loads(r2.stdout)
    assert doc["homogeneous"] and doc["oriented"]
    assert doc["rules"] == 36


def test_cli_supergroup_checks():
    for check in ("comodule", "inverse", "sdet"):
        r = run_cli("supergroup", "--check", check)
        assert r.returncode == 0, check
        assert json.loads(r.stdout)["ok"] is True


def test_cli_sdet_pinned():
    r = run_cli("sdet")
    assert r.stdout == "g*b*dTinv*dTinv + dTinv*a + 2*j*h*b*dTinv\n"


def test_cli_exit_code_bad_input():
    assert run_cli("reduce", "--preset", "nope", "x").returncode == 2
    assert run_cli("verify", "--suite", "nope").returncode == 2
    assert run_cli("reduce", "--preset", "h_plane", "x*(").returncode == 2
    r = run_cli("reduce", "--preset", "qjh_calculus", "--q", "0", "th*dx")
    assert r.returncode == 2  # q = 0 hits the 1/q coefficients


def test_cli_exit_code_budget():
    r = run_cli("reduce", "--preset", "qjh_calculus", "th*th*dx*dx*x",
                env={"Z3CALC_STEP_BUDGET": "2"})
    assert r.returncode == 3
