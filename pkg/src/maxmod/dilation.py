"""Unitary dilation of a point of the closed unit disc.

For ``|z| <= 1`` and degree ``n >= 1`` the ``(n+1) x (n+1)`` matrix

    [ z  0 ... 0   s     ]
    [ s  0 ... 0  -z̄     ]
    [ 0  1         0     ]
    [      ...           ]
    [ 0  ...   1   0     ]

with ``s = sqrt(1 - |z|^2)`` is unitary, and its powers compress to powers of
``z``: the top-left entry of ``U^k`` equals ``z^k`` for ``k = 1..n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegreeError, NonFiniteError, OutsideDiscError, TooLargeError
from .linalg import MAX_DIM

DISC_SLACK = 1e-12
TOL_MOMENT = 1e-12  # per unit of degree


def project_to_disc(z) -> complex:
    """Validate ``z`` and snap points just outside the circle onto it."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"z = {z!r} is not finite")
    r = abs(z)
    if r > 1.0 + DISC_SLACK:
        raise OutsideDiscError(f"|z| = {r!r} exceeds 1")
    if r > 1.0:
        z = z / r
    return z


@dataclass(frozen=True, eq=False)
class DilationMatrix:
    z: complex
    s: float
    n: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.n + 1

    def powers(self, kmax: int):
        """Yield ``U^0, U^1, ..., U^kmax`` by iterated multiplication."""
        p = np.eye(self.dim, dtype=np.complex128)
        yield p
        for _ in range(kmax):
            p = p @ self.matrix
            yield p


def build_dilation(z, n: int) -> DilationMatrix:
    z = project_to_disc(z)
    if n < 1:
        raise DegreeError(f"dilation needs degree n >= 1, got {n}")
    if n + 1 > MAX_DIM:
        raise TooLargeError(f"dilation of degree {n} exceeds dimension limit {MAX_DIM}")
    if abs(z) == 1.0:
        s = 0.0
    else:
        s = math.sqrt(max(0.0, 1.0 - abs(z) ** 2))
    m = np.zeros((n + 1, n + 1), dtype=np.complex128)
    m[0, 0] = z
    m[0, n] = s
    m[1, 0] = s
    m[1, n] = -z.conjugate()
    for k in range(2, n + 1):
        m[k, k - 1] = 1.0
    m.flags.writeable = False
    return DilationMatrix(z, s, n, m)


def compression_moment(d: DilationMatrix, k: int) -> complex:
    """Top-left entry of ``U^k``.

    Equal to ``z^k`` only for ``k <= d.n``; beyond that the raw compression
    is returned as is.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    *_, p = d.powers(k)
    return complex(p[0, 0])


def moment_residual(d: DilationMatrix) -> float:
    worst = 0.0
    zk = 1.0 + 0.0j
    for k, p in enumerate(d.powers(d.n)):
        if k:
            zk *= d.z
            worst = max(worst, abs(complex(p[0, 0]) - zk))
    return worst


def moment_table(d: DilationMatrix):
    """Rows ``(k, compression, z**k, |difference|)`` for ``k = 0..n``."""
    rows = []
    zk = 1.0 + 0.0j
    for k, p in enumerate(d.powers(d.n)):
        if k:
            zk *= d.z
        c = complex(p[0, 0])
        rows.append((k, c, zk, abs(c - zk)))
    return rows


def tol_moment(n: int) -> float:
    return TOL_MOMENT * max(n, 1)

