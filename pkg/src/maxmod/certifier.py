"""End-to-end certificates for the chain

    |p(z)|  <=  ||p(U)||  =  max_i |p(w_i)|  <=  max over the circle of |p|

and polar-grid sweeps comparing interior and boundary moduli.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .calculus import BoundaryMax, Poly, boundary_max, eval_matrix, eval_point
from .dilation import DISC_SLACK, build_dilation, project_to_disc, tol_moment
from .errors import FormatError, MaxModError, NoBoundaryError, PipelineError

CHAIN_TOL = 1e-9  # multiplied by 1 + sum |c_k|

SWEEP_COLUMNS = ("re", "im", "r", "theta", "modulus", "is_boundary")


def chain_tolerance(p: Poly, rel: float = CHAIN_TOL) -> float:
    return rel * (1.0 + p.coefficient_mass())


@dataclass(frozen=True)
class CertificationReport:
    z: complex
    degree: int
    value_at_z: float
    dilation_norm: float
    spectral_max: float
    boundary: BoundaryMax
    chain_slacks: tuple[float, float, float]
    verdict: str
    tolerances_used: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        b = self.boundary
        return {
            "z": {"re": self.z.real, "im": self.z.imag},
            "degree": self.degree,
            "value_at_z": self.value_at_z,
            "dilation_norm": self.dilation_norm,
            "spectral_max": self.spectral_max,
            "boundary": {
                "sampled_max": b.sampled_max,
                "certified_upper": b.certified_upper,
                "samples": b.sample_count,
                "argmax_angle": b.argmax_angle,
            },
            "slacks": list(self.chain_slacks),
            "verdict": self.verdict,
            "tolerances": dict(self.tolerances_used),
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PipelineError:
        raise
    except MaxModError as exc:
        raise PipelineError(name, exc) from exc


def certify_point(
    p: Poly,
    z,
    sample_count: int | None = None,
    chain_rel: float = CHAIN_TOL,
    seed: int = 0,
) -> CertificationReport:
    """Run every link of the chain for ``p`` at ``z`` and report the slacks.

    ``dilation_norm`` comes from power iteration on the explicit matrix
    ``p(U)``; ``spectral_max`` comes independently from the eigenvalues of
    ``U``.  Their agreement is part of the verdict.  Constants skip the
    dilation altogether.
    """
    z = _stage("input", project_to_disc, z)
    n = p.degree()
    value = abs(eval_point(p, z))
    tol_chain = chain_tolerance(p, chain_rel)
    tolerances = {"chain": tol_chain, "chain_rel": chain_rel, "disc_slack": DISC_SLACK}

    if n == 0:
        norm = spectral = abs(p.coeffs[0])
    else:
        d = _stage("dilation", build_dilation, z, n)
        f_u = eval_matrix(p, d.matrix)
        norm = _stage("operator-norm", linalg.operator_norm, f_u, seed=seed)
        spectrum = _stage("spectrum", linalg.unitary_spectrum, d.matrix)
        spectral = max(abs(eval_point(p, w)) for w in spectrum.eigenvalues)
        tolerances.update(
            unit=linalg.TOL_UNIT * (n + 1),
            spec=linalg.TOL_SPEC,
            eig=linalg.TOL_EIG,
            moment=tol_moment(n),
            power=linalg.POWER_TOL,
        )
    boundary = boundary_max(p, sample_count)

    slacks = (norm - value, spectral - norm, boundary.certified_upper - spectral)
    ok = (
        value <= norm + tol_chain
        and abs(norm - spectral) <= tol_chain
        and spectral <= boundary.certified_upper + tol_chain
    )
    return CertificationReport(
        z=z,
        degree=n,
        value_at_z=value,
        dilation_norm=norm,
        spectral_max=spectral,
        boundary=boundary,
        chain_slacks=slacks,
        verdict="pass" if ok else "fail",
        tolerances_used=tolerances,
    )


@dataclass(frozen=True)
class SweepRecord:
    grid_point: complex
    modulus: float
    is_boundary: bool
    r: float = math.nan
    theta: float = math.nan


def sweep_disc(p: Poly, radial_steps: int, angular_steps: int) -> list[SweepRecord]:
    """Moduli of ``p`` on a polar grid, radius-major then angle ascending."""
    if radial_steps < 2:
        raise ValueError(f"radial_steps must be at least 2, got {radial_steps}")
    if angular_steps < 8:
        raise ValueError(f"angular_steps must be at least 8, got {angular_steps}")
    records = []
    for i in range(radial_steps):
        r = i / (radial_steps - 1)
        for j in range(angular_steps):
            theta = 2.0 * math.pi * j / angular_steps
            z = complex(r * math.cos(theta), r * math.sin(theta))
            records.append(SweepRecord(z, abs(eval_point(p, z)), i == radial_steps - 1, r, theta))
    return records


@dataclass(frozen=True)
class MaxModulusCheck:
    passed: bool
    interior_max: float
    boundary_max: float
    witness: SweepRecord | None = None

    def summary(self) -> str:
        line = (
            f"max_modulus_check: {'pass' if self.passed else 'fail'}"
            f" interior_max={self.interior_max!r} boundary_max={self.boundary_max!r}"
        )
        if self.witness is not None:
            w = self.witness.grid_point
            line += f" witness=({w.real!r},{w.imag!r}) modulus={self.witness.modulus!r}"
        return line


def max_modulus_check(records, tol: float) -> MaxModulusCheck:
    """Pass iff no interior record beats the best boundary record by more than ``tol``."""
    records = list(records)
    boundary = [rec for rec in records if rec.is_boundary]
    if not boundary:
        raise NoBoundaryError("sweep has no boundary records")
    interior = [rec for rec in records if not rec.is_boundary]
    b_max = max(rec.modulus for rec in boundary)
    if not interior:
        return MaxModulusCheck(True, -math.inf, b_max)
    top = max(interior, key=lambda rec: rec.modulus)
    ok = top.modulus <= b_max + tol
    return MaxModulusCheck(ok, top.modulus, b_max, None if ok else top)


def sweep_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for rec in records:
        z = rec.grid_point
        w.writerow(
            [repr(z.real), repr(z.imag), repr(rec.r), repr(rec.theta), repr(rec.modulus),
             "1" if rec.is_boundary else "0"]
        )
    return buf.getvalue()


def sweep_from_csv(text: str, source: str = "<string>") -> list[SweepRecord]:
    """Parse sweep CSV, e.g. hand-built records fed back for checking."""
    rows = csv.reader(io.StringIO(text))
    header = next(rows, None)
    if header is None or tuple(h.strip() for h in header) != SWEEP_COLUMNS:
        raise FormatError(f"header must be {','.join(SWEEP_COLUMNS)}", source, 1)
    records = []
    for lineno, row in enumerate(rows, start=2):
        if not row or row[0].lstrip().startswith("#"):
            continue
        if len(row) != len(SWEEP_COLUMNS):
            raise FormatError(f"expected {len(SWEEP_COLUMNS)} fields, got {len(row)}", source, lineno)
        try:
            re, im, r, theta, modulus = (float(x) for x in row[:5])
        except ValueError:
            raise FormatError("non-numeric field", source, lineno) from None
        flag = row[5].strip().lower()
        if flag not in ("0", "1", "true", "false"):
            raise FormatError(f"is_boundary must be 0/1, got {row[5]!r}", source, lineno)
        z = complex(re, im)
        if not all(map(math.isfinite, (re, im, modulus))) or abs(z) > 1.0 + DISC_SLACK:
            raise FormatError("grid point outside the closed disc or non-finite", source, lineno)
        records.append(SweepRecord(z, modulus, flag in ("1", "true"), r, theta))
    if not records:
        raise FormatError("no records", source)
    return records


def random_disc_points(rng: np.random.Generator, count: int) -> list[complex]:
    """Forced edge cases followed by rejection samples from the unit box.

    The forced set is 0, +-1, +-i and eight boundary points at odd multiples
    of pi/8.
    """
    forced = [0j, 1 + 0j, -1 + 0j, 1j, -1j]
    forced += [complex(math.cos(t), math.sin(t)) for t in (math.pi / 8 * (2 * j + 1) for j in range(8))]
    points = forced[:count]
    while len(points) < count:
        z = complex(*rng.uniform(-1.0, 1.0, 2))
        if abs(z) <= 1.0:
            points.append(z)
    return points


def random_poly(rng: np.random.Generator, max_degree: int) -> Poly:
    """Coefficients uniform in the unit box of C, degree uniform in 0..max_degree."""
    n = int(rng.integers(0, max_degree + 1))
    re = rng.uniform(-1.0, 1.0, n + 1)
    im = rng.uniform(-1.0, 1.0, n + 1)
    return Poly(re + 1j * im)
