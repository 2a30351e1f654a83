"""Power series truncated to polynomials with certified uniform error.

A :class:`SeriesSpec` pairs a coefficient rule with a tail bound
``T(n) >= sum_{k>n} |a_k|``.  On the closed disc ``|z^k| <= 1``, so ``T(n)``
bounds ``sup |f - p_n|`` there.

Series text format::

    list:            # followed by polynomial coefficient lines
    1 0
    0.5 0
    rule:exp
    rule:geometric <re(c)> <im(c)> <rho>     # 0 < rho < 1
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .calculus import Poly, parse_coefficients
from .certifier import CertificationReport, certify_point
from .errors import EpsUnreachableError, FormatError

N_CAP = 512
MONOTONE_PROBE = 64


class SeriesSpec:
    """Coefficient rule plus certified, nonincreasing tail bound."""

    def __init__(self, name: str, coefficient: Callable[[int], complex],
                 tail_bound: Callable[[int], float]):
        self.name = name
        self._coefficient = coefficient
        self._tail_bound = tail_bound
        probe = [tail_bound(n) for n in range(MONOTONE_PROBE + 1)]
        if any(b > a for a, b in zip(probe, probe[1:])) or min(probe) < 0:
            raise ValueError(f"tail bound for {name} is not nonincreasing and nonnegative")

    def coefficient(self, k: int) -> complex:
        return self._coefficient(k)

    def tail_bound(self, n: int) -> float:
        return self._tail_bound(n)

    def __repr__(self):
        return f"SeriesSpec({self.name})"

    @classmethod
    def from_list(cls, coeffs) -> "SeriesSpec":
        cs = tuple(complex(c) for c in coeffs)
        # exact suffix sums of |a_k|; zero past the end
        tails = [0.0] * len(cs)
        for n in range(len(cs) - 2, -1, -1):
            tails[n] = tails[n + 1] + abs(cs[n + 1])
        return cls(
            f"list[{len(cs)}]",
            lambda k: cs[k] if k < len(cs) else 0j,
            lambda n: tails[n] if n < len(cs) else 0.0,
        )

    @classmethod
    def exponential(cls) -> "SeriesSpec":
        """``a_k = 1/k!`` with tail ``(n+2) / ((n+1) (n+1)!)``."""
        return cls(
            "exp",
            lambda k: complex(1 / math.factorial(k)),
            lambda n: (n + 2) / ((n + 1) * math.factorial(n + 1)),
        )

    @classmethod
    def geometric(cls, c, rho: float) -> "SeriesSpec":
        """``a_k = c rho^k``, ``0 < |rho| < 1``, exact tail ``|c| |rho|^(n+1) / (1 - |rho|)``."""
        c = complex(c)
        if not 0.0 < abs(rho) < 1.0:
            raise ValueError(f"geometric ratio must satisfy 0 < |rho| < 1, got {rho!r}")
        r = abs(rho)
        return cls(
            f"geometric({c!r}, {rho!r})",
            lambda k: c * rho**k,
            lambda n: abs(c) * r ** (n + 1) / (1.0 - r),
        )

    @classmethod
    def from_text(cls, text: str, source: str = "<string>") -> "SeriesSpec":
        lines = text.splitlines()
        first = None
        for i, raw in enumerate(lines):
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                first = i
                break
        if first is None:
            raise FormatError("empty series spec", source)
        head = lines[first].strip()
        lineno = first + 1
        if head.startswith("list:"):
            rest = [head[len("list:"):]] + lines[first + 1 :]
            return cls.from_list(parse_coefficients(rest, source, first_line=lineno))
        if any(line.strip() and not line.strip().startswith("#") for line in lines[first + 1 :]):
            raise FormatError("unexpected content after rule line", source, lineno + 1)
        parts = head.split()
        if parts == ["rule:exp"]:
            return cls.exponential()
        if parts and parts[0] == "rule:geometric":
            if len(parts) != 4:
                raise FormatError("usage: rule:geometric <re(c)> <im(c)> <rho>", source, lineno)
            try:
                re, im, rho = (float(x) for x in parts[1:])
            except ValueError:
                raise FormatError("non-numeric geometric parameter", source, lineno) from None
            if not 0.0 < rho < 1.0:
                raise FormatError(f"rho must lie in (0, 1), got {rho!r}", source, lineno)
            return cls.geometric(complex(re, im), rho)
        raise FormatError(f"unknown series spec {head!r}", source, lineno)

    @classmethod
    def read(cls, path) -> "SeriesSpec":
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise FormatError(f"cannot read: {exc.strerror}", str(path)) from exc
        return cls.from_text(text, str(path))


@dataclass(frozen=True)
class SeriesTruncation:
    poly: Poly
    tail_bound: float
    requested_eps: float


def truncate_series(spec: SeriesSpec, eps: float, n_cap: int = N_CAP) -> SeriesTruncation:
    """Lowest degree ``n <= n_cap`` whose tail bound is at most ``eps``."""
    if eps < 0 or math.isnan(eps):
        raise ValueError(f"eps must be nonnegative, got {eps!r}")
    for n in range(n_cap + 1):
        t = spec.tail_bound(n)
        if t <= eps:
            return SeriesTruncation(Poly(spec.coefficient(k) for k in range(n + 1)), t, eps)
    raise EpsUnreachableError(
        f"tail bound {spec.tail_bound(n_cap)!r} at n_cap={n_cap} still exceeds eps={eps!r}",
        tail_at_cap=spec.tail_bound(n_cap),
    )


@dataclass(frozen=True)
class AnalyticCertificate:
    """Certificate for ``f`` through its truncation ``p`` with ``sup |f - p| <= eps``.

    ``analytic_margin = certified_upper + 2 eps - (|p(z)| - eps)`` must be
    nonnegative, on top of the polynomial chain passing.
    """

    report: CertificationReport
    truncation: SeriesTruncation
    analytic_margin: float

    @property
    def verdict(self) -> str:
        return "pass" if self.report.passed and self.analytic_margin >= 0 else "fail"

    def to_dict(self) -> dict:
        t = self.truncation
        return {
            "report": self.report.to_dict(),
            "truncation": {
                "degree": t.poly.degree(),
                "tail_bound": t.tail_bound,
                "requested_eps": t.requested_eps,
            },
            "analytic_margin": self.analytic_margin,
            "verdict": self.verdict,
        }


def certify_analytic(spec: SeriesSpec, z, eps: float, n_cap: int = N_CAP,
                     sample_count: int | None = None) -> AnalyticCertificate:
    trunc = truncate_series(spec, eps, n_cap)
    report = certify_point(trunc.poly, z, sample_count=sample_count)
    eps = trunc.requested_eps
    margin = report.boundary.certified_upper + 2 * eps - (report.value_at_z - eps)
    return AnalyticCertificate(report, trunc, margin)
