"""Acceptance gate: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed even when output capture is on.
"""
import json
import math
import time

import numpy as np
import pytest

from maxmod.approx import SeriesSpec, certify_analytic, truncate_series
from maxmod.calculus import Poly, boundary_max
from maxmod.certifier import (
    certify_point,
    chain_tolerance,
    max_modulus_check,
    random_disc_points,
    random_poly,
    sweep_disc,
    sweep_to_csv,
)
from maxmod.dilation import build_dilation, compression_moment, moment_residual
from maxmod.linalg import matmul, operator_norm, unitarity_residual, unitary_spectrum

SEED = 0
FORCED_Z = [0j, 1 + 0j, -1 + 0j, 1j, -1j]
FORCED_N = [1, 2, 8, 32]


@pytest.fixture
def announce(capsys):
    def emit(label, ok, detail, seconds, budget):
        within = seconds <= budget
        status = "PASS" if ok and within else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] {label}: {detail} ({seconds:.2f}s, budget {budget:g}s)")
        assert ok, detail
        assert within, f"runtime {seconds:.2f}s exceeds {budget}s"

    return emit


def dilation_cases(seed=SEED):
    rng = np.random.default_rng(seed)
    cases = [(z, n) for z in FORCED_Z for n in FORCED_N]
    while len(cases) < 500 + len(FORCED_Z) * len(FORCED_N):
        z = complex(*rng.uniform(-1, 1, 2))
        if abs(z) <= 1:
            cases.append((z, int(rng.integers(1, 33))))
    return cases


def criterion_1(seed=SEED):
    rows = []
    for z, n in dilation_cases(seed):
        d = build_dilation(z, n)
        rows.append({
            "z": [d.z.real, d.z.imag],
            "n": n,
            "unitarity": unitarity_residual(d.matrix),
            "moment": moment_residual(d),
        })
    return rows


def criterion_5(seed=SEED):
    rng = np.random.default_rng(seed)
    reports = []
    for z in random_disc_points(rng, 1000):
        p = random_poly(rng, 20)
        reports.append((p, certify_point(p, z)))
    return reports


def criterion_6(seed=SEED):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(50):
        p = random_poly(rng, 12)
        records = sweep_disc(p, 16, 128)
        out.append((p, records, max_modulus_check(records, chain_tolerance(p))))
    return out


@pytest.fixture(scope="module")
def spectra():
    return [(n, unitary_spectrum(build_dilation(z, n).matrix)) for z, n in dilation_cases()]


def test_criterion_1_dilation_validity(announce):
    t = time.perf_counter()
    rows = criterion_1()
    bad = [r for r in rows
           if r["unitarity"] > 1e-12 * (r["n"] + 1) or r["moment"] > 1e-12 * r["n"]]
    worst_u = max(r["unitarity"] / (r["n"] + 1) for r in rows)
    worst_m = max(r["moment"] / r["n"] for r in rows)
    announce(
        "1 dilation validity",
        not bad and len(rows) == 520,
        f"{len(rows)} dilations, worst unitarity/(n+1)={worst_u:.2e}, moment/n={worst_m:.2e}",
        time.perf_counter() - t, 5,
    )


def test_criterion_2_moment_boundary_of_validity(announce):
    t = time.perf_counter()
    d = build_dilation(0, 1)
    compressed = compression_moment(d, 2)
    ok = compressed == 1 and 0.0**2 == 0.0 and abs(compressed - 0.0**2) == 1
    announce("2 moment identity fails past degree", ok,
             f"z=0, n=1, k=2: compression {compressed} vs z^2 = 0",
             time.perf_counter() - t, 1)


def test_criterion_3_basic_fact_1(announce, spectra):
    t = time.perf_counter()
    # recompute inside the timer so the budget covers the eigensolves
    fresh = [(n, unitary_spectrum(build_dilation(z, n).matrix)) for z, n in dilation_cases()]
    elapsed = time.perf_counter() - t
    worst_mod = max(np.max(np.abs(np.abs(sp.eigenvalues) - 1)) for _, sp in fresh)
    worst_rec = max(sp.reconstruction_residual / (n + 1) for n, sp in fresh)
    ok = worst_mod <= 1e-10 and worst_rec <= 1e-10 and len(fresh) == len(spectra)
    announce("3 unitary spectra on the circle", ok,
             f"{len(fresh)} decompositions, worst ||w|-1|={worst_mod:.2e}, residual/(n+1)={worst_rec:.2e}",
             elapsed, 20)


def test_criterion_4_operator_norm_properties(announce, spectra):
    t = time.perf_counter()
    rng = np.random.default_rng(SEED + 4)

    def box(shape):
        return rng.uniform(-1, 1, shape) + 1j * rng.uniform(-1, 1, shape)

    worst_a = -math.inf
    for _ in range(200):
        i, j, k = rng.integers(1, 9, 3)
        a, b = box((i, j)), box((j, k))
        worst_a = max(worst_a, operator_norm(matmul(a, b)) - operator_norm(a) * operator_norm(b))

    worst_b = 0.0
    for _ in range(200):
        d = box(int(rng.integers(1, 9)))
        worst_b = max(worst_b, abs(operator_norm(np.diag(d)) - np.abs(d).max()))

    worst_c = 0.0
    for n, sp in spectra:
        v = sp.frame
        a = box((n + 1, n + 1))
        worst_c = max(worst_c, abs(operator_norm(v @ a @ v.conj().T) - operator_norm(a)))

    ok = worst_a <= 1e-9 and worst_b <= 1e-10 and worst_c <= 1e-8
    announce("4 operator norm (a)(b)(c)", ok,
             f"(a) max excess {worst_a:.2e}, (b) {worst_b:.2e}, (c) {worst_c:.2e}",
             time.perf_counter() - t, 10)


def test_criterion_5_inequality_chain(announce):
    t = time.perf_counter()
    reports = criterion_5()
    elapsed = time.perf_counter() - t
    failures = 0
    worst = [math.inf, 0.0, math.inf]
    for p, r in reports:
        scale = 1 + p.coefficient_mass()
        s0, s1, s2 = (s / scale for s in r.chain_slacks)
        worst = [min(worst[0], s0), max(worst[1], abs(s1)), min(worst[2], s2)]
        if not (r.passed and s0 >= -1e-9 and s2 >= -1e-9 and abs(s1) <= 1e-9):
            failures += 1
    announce("5 inequality chain", failures == 0 and len(reports) == 1000,
             f"{len(reports)} certificates, {failures} failing; scaled slack0 min {worst[0]:.2e}, "
             f"|norm-spectral| max {worst[1]:.2e}, slack2 min {worst[2]:.2e}",
             elapsed, 60)


def test_criterion_6_max_modulus_on_grid(announce):
    t = time.perf_counter()
    sweeps = criterion_6()
    failing = [c for _, _, c in sweeps if not c.passed]

    one_x = Poly([1, 1])
    records = sweep_disc(one_x, 16, 128)
    check = max_modulus_check(records, chain_tolerance(one_x))
    b = boundary_max(one_x)
    closed_ok = check.passed and check.boundary_max == 2.0 and b.contains(2.0)
    announce("6 max modulus on 16x128 grids", not failing and closed_ok,
             f"{len(sweeps)} sweeps, {len(failing)} failing; 1+X boundary max {check.boundary_max} "
             f"in [{b.sampled_max}, {b.certified_upper:.6f}]",
             time.perf_counter() - t, 15)


def test_criterion_7_eps_reduction(announce):
    t = time.perf_counter()
    exp = SeriesSpec.exponential()
    trunc = truncate_series(exp, 1e-6)
    # oracle: partial sums of factorial reciprocals
    true_tail = lambda n: math.fsum(1 / math.factorial(k) for k in range(n + 1, n + 31))
    degree_ok = trunc.poly.degree() == 9 and true_tail(9) <= 1e-6 < true_tail(8)

    cert = certify_analytic(exp, 0, 1e-6)
    theta = np.linspace(-np.pi, np.pi, 1_000_000, endpoint=False)
    oracle = float(np.exp(np.cos(theta)).max())
    bnd = cert.report.boundary
    analytic_ok = (
        cert.verdict == "pass"
        and bnd.contains(oracle)
        and abs(bnd.sampled_max - oracle) <= 1e-6
    )
    geo = truncate_series(SeriesSpec.geometric(1, 0.5), 0.01)
    ok = degree_ok and analytic_ok and geo.poly.degree() == 7
    announce("7 eps-reduction", ok,
             f"exp degree {trunc.poly.degree()}, enclosure [{bnd.sampled_max!r}, {bnd.certified_upper:.6f}] "
             f"vs oracle {oracle!r}, geometric-half degree {geo.poly.degree()}",
             time.perf_counter() - t, 5)


def _snapshot_1():
    return json.dumps(criterion_1())


def _snapshot_5():
    return json.dumps([r.to_dict() for _, r in criterion_5()])


def _snapshot_6():
    return json.dumps([
        {"poly": [[c.real, c.imag] for c in p.coeffs], "csv": sweep_to_csv(recs), "check": c.summary()}
        for p, recs, c in criterion_6()
    ])


def test_criterion_8_determinism(announce):
    t = time.perf_counter()
    same = {name: fn() == fn() for name, fn in
            (("1", _snapshot_1), ("5", _snapshot_5), ("6", _snapshot_6))}
    announce("8 determinism", all(same.values()),
             "byte-identical reruns: " + ", ".join(f"criterion {k}: {v}" for k, v in same.items()),
             time.perf_counter() - t, 180)
