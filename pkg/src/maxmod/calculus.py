"""Polynomials, their scalar and matrix evaluation, and boundary maxima.

Polynomial text format: one coefficient per line as ``<re> <im>`` in
ascending degree; blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dilation import DilationMatrix
from .errors import DegreeExceedsDilationError, FormatError, NonFiniteError
from .linalg import as_square

MIN_SAMPLES = 8


@dataclass(frozen=True)
class Poly:
    """Complex polynomial ``c0 + c1 X + ... + cn X^n``.

    Trailing zero coefficients are stripped; the zero polynomial is ``(0,)``
    and has degree 0.
    """

    coeffs: tuple

    def __init__(self, coeffs):
        cs = [complex(c) for c in coeffs]
        for c in cs:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise NonFiniteError(f"coefficient {c!r} is not finite")
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs) if cs else (0j,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return eval_point(self, z)

    def coefficient_mass(self) -> float:
        """``sum |c_k|``; sets the scale of every tolerance on ``p``."""
        return math.fsum(abs(c) for c in self.coeffs)

    def derivative_mass(self) -> float:
        """``sum k |c_k|``, a bound for ``|p'|`` on the closed disc."""
        return math.fsum(k * abs(c) for k, c in enumerate(self.coeffs))

    @classmethod
    def monomial(cls, k: int, c=1.0) -> "Poly":
        return cls([0.0] * k + [c])

    @classmethod
    def from_text(cls, text: str, source: str = "<string>") -> "Poly":
        return cls(parse_coefficients(text.splitlines(), source))

    @classmethod
    def read(cls, path) -> "Poly":
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise FormatError(f"cannot read: {exc.strerror}", str(path)) from exc
        return cls.from_text(text, str(path))

    def to_text(self) -> str:
        return "".join(f"{c.real!r} {c.imag!r}\n" for c in self.coeffs)


def parse_coefficients(lines, source="<string>", first_line=1) -> list[complex]:
    coeffs = []
    for lineno, raw in enumerate(lines, start=first_line):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected '<re> <im>', got {line!r}", source, lineno)
        try:
            re, im = float(parts[0]), float(parts[1])
        except ValueError:
            raise FormatError(f"not a number pair: {line!r}", source, lineno) from None
        if not (math.isfinite(re) and math.isfinite(im)):
            raise FormatError(f"non-finite coefficient: {line!r}", source, lineno)
        coeffs.append(complex(re, im))
    if not coeffs:
        raise FormatError("no coefficients found", source)
    return coeffs


def eval_point(p: Poly, z) -> complex:
    """Horner evaluation, highest coefficient first."""
    z = complex(z)
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def eval_many(p: Poly, zs: np.ndarray) -> np.ndarray:
    """Vectorized Horner over an array of points."""
    zs = np.asarray(zs, dtype=np.complex128)
    acc = np.zeros_like(zs)
    for c in reversed(p.coeffs):
        acc = acc * zs + c
    return acc


def eval_matrix(p: Poly, m) -> np.ndarray:
    """``c0 I + c1 m + ... + cn m^n`` by matrix Horner."""
    a = as_square(m)
    eye = np.eye(a.shape[0], dtype=np.complex128)
    acc = np.zeros_like(a)
    for c in reversed(p.coeffs):
        acc = acc @ a + c * eye
    return acc


def compression_value(p: Poly, d: DilationMatrix) -> complex:
    """Top-left entry of ``p(U)``; equals ``p(z)`` when ``deg p <= n``."""
    if p.degree() > d.n:
        raise DegreeExceedsDilationError(
            f"degree {p.degree()} exceeds dilation degree {d.n}"
        )
    return complex(eval_matrix(p, d.matrix)[0, 0])


@dataclass(frozen=True)
class BoundaryMax:
    """Enclosure ``[sampled_max, certified_upper]`` of ``max |p|`` on the circle."""

    sampled_max: float
    certified_upper: float
    sample_count: int
    argmax_angle: float

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.sampled_max - slack <= value <= self.certified_upper + slack


def default_sample_count(p: Poly) -> int:
    return max(1024, 64 * p.degree())


def roots_of_unity(count: int) -> tuple[np.ndarray, np.ndarray]:
    """Angles (in (-pi, pi]) and points of the ``count``-th roots of unity."""
    j = np.arange(count)
    theta = 2.0 * np.pi * j / count
    theta = np.where(theta > np.pi, theta - 2.0 * np.pi, theta)
    return theta, np.exp(1j * theta)


def boundary_max(p: Poly, sample_count: int | None = None) -> BoundaryMax:
    """Certified enclosure of ``max |p|`` over the unit circle.

    Samples ``|p|`` at the roots of unity.  Every point of the circle lies
    within arc length ``pi / sample_count`` of a sample and ``|p'| <= sum k |c_k|``
    there, so adding that product to the sampled maximum gives an upper bound.
    """
    if sample_count is None:
        sample_count = default_sample_count(p)
    if sample_count < MIN_SAMPLES:
        raise ValueError(f"sample_count must be at least {MIN_SAMPLES}, got {sample_count}")
    theta, w = roots_of_unity(sample_count)
    mod = np.abs(eval_many(p, w))
    i = int(np.argmax(mod))
    sampled = float(mod[i])
    gap = math.pi / sample_count * p.derivative_mass()
    return BoundaryMax(sampled, sampled + gap, sample_count, float(theta[i]))
