"""Self-contained numerics: seeded RNG, Hermitian eigensolver, evaluators.

This module deliberately avoids LAPACK-backed factorizations and numpy's
Generator objects.  Randomness is a counter-based SplitMix64 stream (so
trials are reproducible from an integer seed across platforms) and the
eigensolver is the cyclic Jacobi kernel from :mod:`hurwitz_sos.kernels`.
The brute-force word-sum evaluator here is the independent oracle that
exact certificates are cross-checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from . import kernels
from .certificate import Certificate, GramMatrix
from .words import check_word


class ConvergenceError(RuntimeError):
    """Eigensolver failed to reach its off-diagonal residual target."""


class NotPsdError(ValueError):
    """A matrix required to be positive semidefinite has a clearly negative eigenvalue."""


# ------------------------------------------------------------------
# SplitMix64 stream and Gaussian sampling
# ------------------------------------------------------------------

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Stable child seed for substream ``index`` of ``seed``."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    return mix64(mix64(seed) ^ (index + 1))


def splitmix64_stream(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of SplitMix64 seeded with ``seed``, as uint64."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    base = np.uint64(seed & _MASK64)
    counters = base + np.uint64(_GOLDEN) * np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = counters
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    return z


def uniform_stream(seed: int, count: int) -> np.ndarray:
    """IID uniforms in [0, 1) with 53-bit resolution."""
    bits = splitmix64_stream(seed, count)
    return (bits >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)


def gaussian_stream(seed: int, count: int) -> np.ndarray:
    """IID standard normals via the Box-Muller transform."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    pairs = (count + 1) // 2
    u = uniform_stream(seed, 2 * pairs)
    u1 = u[:pairs]
    u2 = u[pairs:]
    # log1p(-u1) keeps the argument strictly negative even when u1 == 0
    rad = np.sqrt(-2.0 * np.log1p(-u1))
    ang = 2.0 * np.pi * u2
    out = np.empty(2 * pairs, dtype=np.float64)
    out[0::2] = rad * np.cos(ang)
    out[1::2] = rad * np.sin(ang)
    return out[:count]


def random_hermitian(n: int, seed: int) -> np.ndarray:
    """Random Hermitian matrix with independent complex Gaussian entries."""
    if n < 1:
        raise ValueError("n must be positive")
    g = gaussian_stream(seed, 2 * n * n)
    X = (g[: n * n] + 1j * g[n * n :]).reshape(n, n) / math.sqrt(2.0)
    return (X + X.conj().T) / 2.0


def random_psd(n: int, seed: int) -> np.ndarray:
    """Random positive semidefinite matrix R* R with complex Gaussian R."""
    if n < 1:
        raise ValueError("n must be positive")
    g = gaussian_stream(seed, 2 * n * n)
    R = (g[: n * n] + 1j * g[n * n :]).reshape(n, n) / math.sqrt(2.0)
    M = R.conj().T @ R
    return (M + M.conj().T) / 2.0


# ------------------------------------------------------------------
# Hermitian eigensolver and PSD square root
# ------------------------------------------------------------------

@dataclass(frozen=True)
class EigResult:
    """Eigenvalues ascending, eigenvector columns aligned with them."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    off_norm: float
    sweeps: int


def _checked_hermitian(H, name: str = "matrix") -> np.ndarray:
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"{name} must be square, got shape {H.shape}")
    H = H.astype(np.complex128, copy=False)
    if not np.isfinite(H).all():
        raise ValueError(f"{name} contains non-finite entries")
    return H


def hermitian_eig(H, tol: float = 1e-12, max_sweeps: int = 30) -> EigResult:
    """Full eigensystem of a Hermitian matrix via cyclic Jacobi sweeps.

    The input is symmetrized as (H + H*)/2 before iterating; an input
    that is far from Hermitian is rejected.  Raises ConvergenceError if
    the off-diagonal norm has not dropped below tol * ||H||_F within
    ``max_sweeps`` sweeps.
    """
    H = _checked_hermitian(H)
    fro = float(np.linalg.norm(H))
    if float(np.linalg.norm(H - H.conj().T)) > 1e-8 * (1.0 + fro):
        raise ValueError("matrix is not Hermitian")
    Hs = (H + H.conj().T) / 2.0
    w, V, off, thresh, sweeps = kernels.jacobi_eigh(Hs, tol, max_sweeps)
    if off > thresh:
        raise ConvergenceError(
            f"Jacobi iteration stalled: off-diagonal {off:.3e} > {thresh:.3e} "
            f"after {sweeps} sweeps"
        )
    order = np.argsort(w, kind="stable")
    return EigResult(w[order], np.ascontiguousarray(V[:, order]), off, sweeps)


def psd_sqrt(A, tol: float = 1e-12, neg_tol: float = 1e-9) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues below zero by more than ``neg_tol * (1 + ||A||_F)`` are
    an error; smaller dips are treated as roundoff and clamped to zero.
    """
    eig = hermitian_eig(A, tol=tol)
    scale = 1.0 + float(np.linalg.norm(np.asarray(A)))
    if eig.eigenvalues[0] < -neg_tol * scale:
        raise NotPsdError(
            f"matrix has negative eigenvalue {eig.eigenvalues[0]:.6e}"
        )
    w = np.sqrt(np.clip(eig.eigenvalues, 0.0, None))
    S = (eig.vectors * w) @ eig.vectors.conj().T
    return (S + S.conj().T) / 2.0


# ------------------------------------------------------------------
# brute-force evaluators
# ------------------------------------------------------------------

def word_matrix(A, B, word: str) -> np.ndarray:
    """Product of the matrices spelled by ``word`` (A and B full letters)."""
    check_word(word)
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A and B must be square matrices of equal shape")
    M = A if word[0] == "A" else B
    for ch in word[1:]:
        M = M @ (A if ch == "A" else B)
    return M


def trace_word_product(A, B, word: str) -> complex:
    """Trace of the product spelled by ``word``."""
    return complex(np.trace(word_matrix(A, B, word)))


def trace_hurwitz_numeric(A, B, p: int, r: int) -> float:
    """Sum of Tr(W) over all length-p words with r B's, by brute force.

    For Hermitian inputs the result is real; a significant imaginary
    part indicates bad input and raises ArithmeticError.
    """
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"p must be a positive int, got {p!r}")
    if not isinstance(r, int) or not 0 <= r <= p:
        raise ValueError(f"r must lie in [0, {p}], got {r!r}")
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A and B must be square matrices of equal shape")
    total = kernels.hurwitz_trace(A, B, p, r)
    if abs(total.imag) > 1e-9 * (1.0 + abs(total.real)):
        raise ArithmeticError(
            f"word-sum trace has imaginary part {total.imag:.3e}; "
            "inputs are probably not Hermitian"
        )
    return float(total.real)


def bmv_coefficients(A, B, p: int) -> np.ndarray:
    """All word-sum traces for degrees r = 0..p, as a float vector."""
    return np.array(
        [trace_hurwitz_numeric(A, B, p, r) for r in range(p + 1)], dtype=np.float64
    )


def gram_to_complex(gram: GramMatrix) -> np.ndarray:
    """Gram matrix as a complex128 array."""
    n = gram.dimension
    out = np.empty((n, n), dtype=np.complex128)
    for j in range(n):
        for k in range(n):
            out[j, k] = complex(gram.at(j, k))
    return out


def eval_certificate_numeric(cert: Certificate, A, B) -> float:
    """Evaluate a certificate as an explicit sum of squared Frobenius norms.

    Each block's Gram matrix is factored through its (floating point)
    eigensystem into vectors c_l, every c_l is contracted against the
    sandwich matrices built from psd_sqrt(A) and psd_sqrt(B), and the
    squared norms ||C_l||_F^2 are summed.  This follows the
    sum-of-squares reading of the certificate, not the exact expansion,
    which is what makes it a meaningful cross-check.
    """
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A and B must be square matrices of equal shape")
    half: Dict[str, np.ndarray] = {"a": psd_sqrt(A), "b": psd_sqrt(B)}
    total = 0.0
    for block_index, (block, gram) in enumerate(cert.blocks):
        G = gram_to_complex(gram)
        eig = hermitian_eig(G)
        scale = 1.0 + float(np.linalg.norm(G))
        if eig.eigenvalues[0] < -1e-9 * scale:
            raise NotPsdError(
                f"block {block_index}: Gram matrix is numerically indefinite "
                f"(min eigenvalue {eig.eigenvalues[0]:.3e}); verify exactly first"
            )
        sandwiches = []
        for word in block.basis:
            M = word_matrix(A, B, word)
            if block.prefix is not None:
                M = half[block.prefix] @ M
            if block.suffix is not None:
                M = M @ half[block.suffix]
            sandwiches.append(M)
        for l in range(gram.dimension):
            lam = eig.eigenvalues[l]
            if lam <= 0.0:
                continue
            C = np.zeros_like(A)
            for j in range(gram.dimension):
                C = C + eig.vectors[j, l] * sandwiches[j]
            total += lam * float(np.vdot(C, C).real)
    return float(total)
