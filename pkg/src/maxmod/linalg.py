"""Dense complex linear algebra: products, operator norm, unitary spectra.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every public
function validates its inputs through :func:`as_cmatrix` and returns fresh
arrays, so callers never observe aliasing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NoConvergeError,
    NonFiniteError,
    NotUnitaryError,
    ShapeError,
    TooLargeError,
)

MAX_DIM = 4096

# Tolerances shared with the rest of the package.
TOL_UNIT = 1e-12  # per unit of dimension
TOL_SPEC = 1e-10
TOL_EIG = 1e-10

POWER_TOL = 1e-15
POWER_MAX_ITER = 20_000
POWER_RESTARTS = 3
POWER_STRIDE_LOG2 = 16

DEFLATE_TOL = 1e-14
QR_ITER_PER_EIGENVALUE = 60


def as_cmatrix(m, name="matrix") -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex128 array (copying)."""
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise ShapeError(f"{name} must be a nonempty 2-D array, got shape {a.shape}")
    if max(a.shape) > MAX_DIM:
        raise TooLargeError(f"{name} has shape {a.shape}; limit is {MAX_DIM}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteError(f"{name} has non-finite entries")
    return a


def as_square(m, name="matrix") -> np.ndarray:
    a = as_cmatrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")
    return a


def matmul(a, b) -> np.ndarray:
    a = as_cmatrix(a, "a")
    b = as_cmatrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose; for real input this is the plain transpose."""
    return as_cmatrix(a).conj().T.copy()


def unitarity_residual(m) -> float:
    """``max(||m m* - I||_F, ||m* m - I||_F)``."""
    a = as_square(m)
    eye = np.eye(a.shape[0])
    ah = a.conj().T
    return float(max(np.linalg.norm(a @ ah - eye), np.linalg.norm(ah @ a - eye)))


def norm_bracket(m) -> tuple[float, float]:
    """Cheap enclosure of the operator norm.

    The lower end is the largest row or column 2-norm, the upper end the
    Frobenius norm.
    """
    a = as_cmatrix(m)
    mag2 = np.abs(a) ** 2
    lower = math.sqrt(max(mag2.sum(axis=0).max(), mag2.sum(axis=1).max()))
    return lower, float(np.linalg.norm(a))


def _strided_gram(a: np.ndarray, stride_log2: int) -> np.ndarray:
    """``(a* a)^(2^stride_log2)``, rescaled to unit Frobenius norm at each squaring."""
    g = a.conj().T @ a
    g /= np.linalg.norm(g)
    for _ in range(stride_log2):
        g = g @ g
        g = 0.5 * (g + g.conj().T)
        g /= np.linalg.norm(g)
    return g


def operator_norm(
    m,
    tol: float = POWER_TOL,
    max_iter: int = POWER_MAX_ITER,
    restarts: int = POWER_RESTARTS,
    seed: int = 0,
    stride_log2: int = POWER_STRIDE_LOG2,
) -> float:
    """Largest singular value of ``m`` by power iteration on ``m* m``.

    The iteration starts from the normalized all-ones vector and stops once
    two consecutive Rayleigh quotients ``||m x||^2`` agree to relative
    ``tol``.  Each step advances ``2**stride_log2`` plain power steps at once
    through a repeatedly squared Gram matrix, so nearly tied top singular
    values still separate within ``max_iter`` steps.  If the cap is hit, the
    iteration restarts from up to ``restarts`` seeded pseudorandom vectors
    before raising :class:`NoConvergeError` with the best bracket found.

    The result is clamped into :func:`norm_bracket`, which always holds.
    """
    a = as_cmatrix(m)
    lower, upper = norm_bracket(a)
    if upper == 0.0:
        return 0.0
    g = _strided_gram(a, stride_log2)
    cols = a.shape[1]

    rng = np.random.default_rng(seed)
    starts = [np.full(cols, 1.0 / math.sqrt(cols), dtype=np.complex128)]
    for _ in range(restarts):
        starts.append(rng.standard_normal(cols) + 1j * rng.standard_normal(cols))

    best = 0.0
    for x in starts:
        x = x / np.linalg.norm(x)
        previous = None
        for _ in range(max_iter):
            y = a @ x
            rq = float(np.vdot(y, y).real)
            best = max(best, math.sqrt(rq))
            if previous is not None and abs(rq - previous) <= tol * rq:
                return min(max(math.sqrt(rq), lower), upper)
            previous = rq
            x = g @ x
            nx = np.linalg.norm(x)
            if nx == 0.0:
                # landed in the kernel; try the next start
                break
            x = x / nx
    raise NoConvergeError(
        f"power iteration did not settle in {max_iter} steps x {len(starts)} starts",
        bracket=(max(lower, best), upper),
    )


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """``u = frame @ diag(eigenvalues) @ frame*`` with a unitary ``frame``."""

    eigenvalues: np.ndarray
    frame: np.ndarray
    reconstruction_residual: float

    def reconstruct(self) -> np.ndarray:
        return (self.frame * self.eigenvalues) @ self.frame.conj().T


def principal_arg(w: complex) -> float:
    """Argument in (-pi, pi]."""
    t = math.atan2(w.imag, w.real)
    return math.pi if t == -math.pi else t


def _hessenberg(h: np.ndarray, v: np.ndarray) -> None:
    """In-place Householder reduction to upper Hessenberg form.

    Columns whose below-subdiagonal part is already zero are skipped, so an
    input that is already Hessenberg passes through untouched.
    """
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        if not np.any(x[1:]):
            continue
        xnorm = np.linalg.norm(x)
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        w = x.copy()
        w[0] += phase * xnorm
        w /= np.linalg.norm(w)
        h[k + 1 :, :] -= 2.0 * np.outer(w, w.conj() @ h[k + 1 :, :])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ w, w.conj())
        v[:, k + 1 :] -= 2.0 * np.outer(v[:, k + 1 :] @ w, w.conj())
        h[k + 2 :, k] = 0.0


def _givens(a: complex, b: complex) -> np.ndarray:
    """Unitary 2x2 ``g`` with ``g @ [a, b] = [r, 0]``, ``r >= 0``."""
    r = math.hypot(abs(a), abs(b))
    if r == 0.0:
        return np.eye(2, dtype=np.complex128)
    return np.array(
        [[a.conjugate() / r, b.conjugate() / r], [-b / r, a / r]], dtype=np.complex128
    )


def _wilkinson_shift(h: np.ndarray, hi: int) -> complex:
    a, b = h[hi - 1, hi - 1], h[hi - 1, hi]
    c, d = h[hi, hi - 1], h[hi, hi]
    half = 0.5 * (a - d)
    root = np.sqrt(half * half + b * c)
    mu1 = d - b * c / (half + root) if half + root != 0 else d
    mu2 = d - b * c / (half - root) if half - root != 0 else d
    return complex(mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2)


def _qr_step(h: np.ndarray, v: np.ndarray, lo: int, hi: int, mu: complex) -> None:
    """One explicitly shifted QR sweep on the active window ``[lo, hi]``."""
    n = h.shape[0]
    idx = np.arange(lo, hi + 1)
    h[idx, idx] -= mu
    rotations = []
    for k in range(lo, hi):
        g = _givens(complex(h[k, k]), complex(h[k + 1, k]))
        h[k : k + 2, k:n] = g @ h[k : k + 2, k:n]
        h[k + 1, k] = 0.0
        rotations.append(g)
    for k, g in zip(range(lo, hi), rotations):
        gh = g.conj().T
        h[: k + 2, k : k + 2] = h[: k + 2, k : k + 2] @ gh
        v[:, k : k + 2] = v[:, k : k + 2] @ gh
    h[idx, idx] += mu


def _schur(h: np.ndarray, v: np.ndarray) -> None:
    """Drive Hessenberg ``h`` to triangular form, accumulating into ``v``."""
    n = h.shape[0]
    fallback = float(np.abs(h).sum(axis=0).max()) or 1.0
    hi = n - 1
    its = 0
    total = 0
    cap = QR_ITER_PER_EIGENVALUE * n
    while hi > 0:
        lo = hi
        while lo > 0:
            scale = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if scale == 0.0:
                scale = fallback
            if abs(h[lo, lo - 1]) <= DEFLATE_TOL * scale:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            its = 0
            continue
        if its and its % 5 == 0:
            # exceptional shift breaks symmetric stalls (e.g. cyclic shifts)
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1]) * complex(0.6, 0.8)
        else:
            mu = _wilkinson_shift(h, hi)
        _qr_step(h, v, lo, hi, mu)
        its += 1
        total += 1
        if its > QR_ITER_PER_EIGENVALUE or total > cap:
            raise NoConvergeError(f"QR iteration stalled at row {hi} after {total} sweeps")


def unitary_spectrum(u, tol: float = TOL_SPEC) -> SpectralDecomposition:
    """Eigenvalues and a unitary eigenframe of a unitary matrix.

    Hessenberg reduction followed by Wilkinson-shifted QR with all rotations
    accumulated into the frame.  Eigenvalues are ordered by principal
    argument, ties by imaginary part.
    """
    a = as_square(u, "u")
    n = a.shape[0]
    res = unitarity_residual(a)
    if res > TOL_UNIT * n:
        raise NotUnitaryError(f"unitarity residual {res:.3e} exceeds {TOL_UNIT * n:.3e}")

    h = a.copy()
    v = np.eye(n, dtype=np.complex128)
    _hessenberg(h, v)
    _schur(h, v)

    w = np.diag(h).copy()
    order = sorted(range(n), key=lambda i: (principal_arg(w[i]), w[i].imag))
    w = w[order]
    v = v[:, order]
    residual = float(np.linalg.norm(a - (v * w) @ v.conj().T))
    if residual > tol * n:
        raise NoConvergeError(f"reconstruction residual {residual:.3e} exceeds {tol * n:.3e}")
    return SpectralDecomposition(w, v, residual)
