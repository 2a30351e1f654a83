import math
from fractions import Fraction

import numpy as np
import pytest

from maxmod.approx import SeriesSpec, certify_analytic, truncate_series
from maxmod.calculus import boundary_max, eval_point
from maxmod.certifier import chain_tolerance, random_disc_points
from maxmod.errors import EpsUnreachableError, FormatError

BUILTINS = {
    "exp": SeriesSpec.exponential(),
    "geometric-half": SeriesSpec.geometric(1, 0.5),
    "geometric-rotated": SeriesSpec.geometric(0.3 - 0.4j, 0.9),
}


def exp_tail(n, terms):
    """Exact rational sum of 1/k! for k = n+1 .. n+terms."""
    return sum(Fraction(1, math.factorial(k)) for k in range(n + 1, n + 1 + terms))


def test_exp_oracle_frozen_values():
    assert float(exp_tail(9, 30)) == pytest.approx(3.028858529955014e-07, rel=1e-15)
    assert float(exp_tail(8, 30)) == pytest.approx(3.0586177753940906e-06, rel=1e-15)


def test_exp_truncation_degree_nine():
    t = truncate_series(SeriesSpec.exponential(), 1e-6)
    assert t.poly.degree() == 9
    assert t.tail_bound == pytest.approx(3.031305114638448e-07, rel=1e-15)
    # certified bound sits above the true tail and the previous degree fails
    assert t.tail_bound >= float(exp_tail(9, 30))
    assert SeriesSpec.exponential().tail_bound(8) > 1e-6
    assert t.poly.coeffs[3] == pytest.approx(1 / 6)


def test_geometric_half_degree_seven():
    t = truncate_series(SeriesSpec.geometric(1, 0.5), 0.01)
    assert t.poly.degree() == 7
    assert t.tail_bound == 2.0**-7


def test_finite_list_with_zero_eps():
    spec = SeriesSpec.from_list([1, 2j, 0, 3])
    t = truncate_series(spec, 0.0)
    assert t.poly.coeffs == (1, 2j, 0, 3)
    assert t.tail_bound == 0.0


def test_finite_list_tail_is_exact_suffix_sum():
    spec = SeriesSpec.from_list([1, 0.5, 0.25, 0.125])
    assert [spec.tail_bound(n) for n in range(5)] == [0.875, 0.375, 0.125, 0.0, 0.0]
    assert truncate_series(spec, 0.2).poly.degree() == 2


def test_eps_unreachable():
    with pytest.raises(EpsUnreachableError) as info:
        truncate_series(SeriesSpec.geometric(1, 0.99), 1e-12, n_cap=100)
    assert info.value.tail_at_cap == pytest.approx(0.99**101 / 0.01)


def test_invalid_geometric_ratio():
    with pytest.raises(ValueError):
        SeriesSpec.geometric(1, 1.0)


def test_non_monotone_tail_rejected():
    with pytest.raises(ValueError):
        SeriesSpec("bad", lambda k: 1.0, lambda n: float(n % 2))


@pytest.mark.parametrize("name", ["geometric-half", "geometric-rotated"])
def test_geometric_tail_matches_closed_form(name):
    spec = BUILTINS[name]
    for n in range(0, 60):
        partial = sum(abs(spec.coefficient(k)) for k in range(n + 1, n + 2000))
        assert spec.tail_bound(n) == pytest.approx(partial, rel=1e-12)
    c, rho = 0.5, 0.25
    g = SeriesSpec.geometric(c, rho)
    assert g.tail_bound(5) == pytest.approx(c * rho**6 / (1 - rho), rel=1e-15)


def test_exp_tail_overestimates_long_partial_sum():
    spec = SeriesSpec.exponential()
    for n in range(0, 40):
        assert spec.tail_bound(n) >= float(exp_tail(n, 200))


@pytest.mark.parametrize("name", list(BUILTINS))
def test_truncation_monotone_in_eps(name):
    spec = BUILTINS[name]
    degrees = [truncate_series(spec, eps).poly.degree() for eps in (1e-2, 1e-4, 1e-6, 1e-9, 1e-12)]
    assert degrees == sorted(degrees)


@pytest.mark.parametrize("name", list(BUILTINS))
@pytest.mark.parametrize("eps", [1e-3, 1e-6, 1e-9])
def test_eps_chain_soundness(name, eps, rng):
    t = truncate_series(BUILTINS[name], eps)
    upper = boundary_max(t.poly).certified_upper
    for z in random_disc_points(rng, 50):
        assert abs(eval_point(t.poly, z)) <= upper + 2 * eps + chain_tolerance(t.poly)


def test_certify_analytic_exp_at_origin():
    cert = certify_analytic(SeriesSpec.exponential(), 0, 1e-6)
    r = cert.report
    assert r.value_at_z == pytest.approx(1.0, abs=1e-15)
    assert r.boundary.contains(math.e)
    assert cert.verdict == "pass"
    assert cert.analytic_margin >= 0


def test_certify_analytic_constant():
    cert = certify_analytic(SeriesSpec.from_list([1]), 0.4 + 0.4j, 1e-3)
    assert cert.report.value_at_z == cert.report.dilation_norm == 1.0
    assert cert.verdict == "pass"


def test_certify_analytic_geometric_half_at_one():
    cert = certify_analytic(SeriesSpec.geometric(1, 0.5), 1, 1e-4)
    r = cert.report
    assert abs(r.value_at_z - 2) <= 1e-4
    assert r.boundary.argmax_angle == 0.0
    assert r.boundary.contains(2.0, slack=1e-4)
    assert cert.verdict == "pass"


def test_series_text_formats(tmp_path):
    assert SeriesSpec.from_text("rule:exp").name == "exp"
    g = SeriesSpec.from_text("# comment\nrule:geometric 1 0 0.5\n")
    assert g.tail_bound(3) == 2.0**-3
    lst = SeriesSpec.from_text("list:\n1 0\n# skip\n0 2\n")
    assert lst.coefficient(1) == 2j and lst.coefficient(5) == 0
    path = tmp_path / "s.txt"
    path.write_text("list: 3 0\n4 0\n")
    assert truncate_series(SeriesSpec.read(path), 0).poly.coeffs == (3, 4)


@pytest.mark.parametrize(
    "text, line",
    [
        ("rule:geometric 1 0 1.5", 1),
        ("rule:geometric 1 0", 1),
        ("\nrule:sin", 2),
        ("list:\n1 0\nbad\n", 3),
        ("rule:exp\nextra", 2),
    ],
)
def test_series_text_errors(text, line):
    with pytest.raises(FormatError) as info:
        SeriesSpec.from_text(text, "spec")
    assert info.value.line == line
