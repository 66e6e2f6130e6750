"""Seeded, reproducible sample generation.

Everything downstream assumes a fixed generator algorithm so that a given
(seed, shape) request yields the same samples on every run; the algorithm
identifier is recorded in verification reports.  Determinism is promised
within this implementation only, not across numpy versions or machines.
"""

from __future__ import annotations

import numpy as np

from . import cayley as ca

GENERATOR_NAME = "pcg64"


def generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def unit_vectors(gen: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """n uniform points on S^{dim-1} via normalized gaussians."""
    x = gen.standard_normal((n, dim))
    nrm = np.linalg.norm(x, axis=-1, keepdims=True)
    # a zero draw has probability ~0 but would poison a whole batch
    nrm[nrm == 0.0] = 1.0
    return x / nrm


def cayley_sphere(gen, n: int, k: int, dim: int) -> np.ndarray:
    """Unit points of the sphere in A^k, shape (n, k, dim)."""
    return unit_vectors(gen, n, k * dim).reshape(n, k, dim)


def equator(gen, n: int, k: int, dim: int) -> np.ndarray:
    """Unit points with Re(z_k) = 0: sample, zero the coordinate, renormalize."""
    z = gen.standard_normal((n, k, dim))
    z[:, k - 1, 0] = 0.0
    nrm = np.linalg.norm(z.reshape(n, -1), axis=-1)
    nrm[nrm == 0.0] = 1.0
    return z / nrm[:, None, None]


def equator_slice_z1_zero(gen, n: int, k: int, dim: int) -> np.ndarray:
    """Equator points with the first entry pinned to zero (witness slice)."""
    z = gen.standard_normal((n, k, dim))
    z[:, 0, :] = 0.0
    z[:, k - 1, 0] = 0.0
    nrm = np.linalg.norm(z.reshape(n, -1), axis=-1)
    nrm[nrm == 0.0] = 1.0
    return z / nrm[:, None, None]


def imaginary_unit(gen, n: int, dim: int) -> np.ndarray:
    """Unit purely imaginary elements, shape (n, dim)."""
    out = np.zeros((n, dim))
    out[:, 1:] = unit_vectors(gen, n, dim - 1)
    return out


def sp_unitary(gen, k: int) -> np.ndarray:
    """A quaternionic unitary (k, k, 4) matrix: random rows, Gram-Schmidt.

    Rows are orthonormalized against the hermitian product sum_t a_t conj(b_t)
    (row-vector convention, matrices act on the right).
    """
    A = gen.standard_normal((k, k, 4))
    for i in range(k):
        for j in range(i):
            coeff = ca.mul(A[i], ca.conj(A[j])).sum(axis=0)
            A[i] -= ca.mul(coeff, A[j])
        nrm = np.sqrt(ca.norm_sq(A[i]).sum())
        if nrm < 1e-12:
            raise RuntimeError("degenerate draw during Gram-Schmidt")
        A[i] /= nrm
    return A


def sp_unitary_defect(A: np.ndarray) -> float:
    """max | A conj(A)^t - Id | entrywise over quaternion coordinates."""
    k = A.shape[0]
    G = ca.mul(A[:, None, :, :], ca.conj(A[None, :, :, :])).sum(axis=2)
    target = np.zeros_like(G)
    target[np.arange(k), np.arange(k), 0] = 1.0
    return float(np.abs(G - target).max())
