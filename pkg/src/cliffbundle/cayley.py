"""Arithmetic in the normed algebras R, C, H, O (Cayley-Dickson construction).

Elements are coordinate vectors over the basis ``{1, e_1, ..., e_{d-1}}``
with ``d`` in {1, 2, 4, 8}.  The doubling product is

    (a, b) (c, d) = (ac - conj(d) b,  da + b conj(c))

applied recursively, which fixes the embedding e_4 = (0, 1), e_5 = (0, i),
e_6 = (0, j), e_7 = (0, k) of H + H into O.  With this basis the product of
basis elements is ``e_i e_j = S[i, j] e_{i XOR j}`` for a sign matrix S,
so a full product is a signed table contraction.  That contraction is the
hot kernel of the whole package; it runs either as a numba loop or as a
numpy einsum depending on :mod:`cliffbundle.backend`.

All batched functions take arrays whose *last* axis is the coordinate axis
and broadcast over the leading axes.  Exact (integer / rational) arithmetic
for identity certification is provided separately by ``exact_mul`` and
friends, which work on plain Python sequences of ints or Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import backend
from .backend import njit

DIMS = (1, 2, 4, 8)


def _pair_mul(x, y):
    # recursive doubling product on python lists, used only to build tables
    n = len(x)
    if n == 1:
        return [x[0] * y[0]]
    h = n // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    dbar = [d[0]] + [-t for t in d[1:]]
    cbar = [c[0]] + [-t for t in c[1:]]
    left = [p - q for p, q in zip(_pair_mul(a, c), _pair_mul(dbar, b))]
    right = [p + q for p, q in zip(_pair_mul(d, a), _pair_mul(b, cbar))]
    return left + right


@lru_cache(maxsize=None)
def sign_table(dim: int) -> np.ndarray:
    """(dim, dim) int8 matrix S with ``e_i e_j = S[i, j] e_{i ^ j}``."""
    if dim not in DIMS:
        raise ValueError(f"dim must be one of {DIMS}, got {dim}")
    S = np.zeros((dim, dim), dtype=np.int8)
    for i in range(dim):
        ei = [0] * dim
        ei[i] = 1
        for j in range(dim):
            ej = [0] * dim
            ej[j] = 1
            out = _pair_mul(ei, ej)
            S[i, j] = out[i ^ j]
    S.setflags(write=False)
    return S


@lru_cache(maxsize=None)
def _mult_tensor(dim: int, as_float: bool) -> np.ndarray:
    # dense (dim, dim, dim) tensor T[i, j, t] with e_i e_j = sum_t T[i,j,t] e_t
    S = sign_table(dim)
    T = np.zeros((dim, dim, dim), dtype=np.float64 if as_float else np.int64)
    for i in range(dim):
        for j in range(dim):
            T[i, j, i ^ j] = S[i, j]
    T.setflags(write=False)
    return T


@njit(cache=True)
def _mul_kernel(a, b, sign, out):  # pragma: no cover - exercised via mul()
    n, d = a.shape
    for r in range(n):
        for i in range(d):
            ai = a[r, i]
            if ai == 0.0:
                continue
            for j in range(d):
                out[r, i ^ j] += sign[i, j] * ai * b[r, j]


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cayley-Dickson product, broadcasting over leading axes.

    Associative for dim <= 4, alternative (but not associative) for dim 8.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    d = a.shape[-1]
    if b.shape[-1] != d:
        raise ValueError(f"dimension mismatch: {d} vs {b.shape[-1]}")
    if d not in DIMS:
        raise ValueError(f"unsupported algebra dimension {d}")
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    dtype = np.result_type(a, b)
    if backend.USE_NUMBA and dtype == np.float64:
        af = np.ascontiguousarray(
            np.broadcast_to(a, shape + (d,)), dtype=np.float64
        ).reshape(-1, d)
        bf = np.ascontiguousarray(
            np.broadcast_to(b, shape + (d,)), dtype=np.float64
        ).reshape(-1, d)
        out = np.zeros_like(af)
        _mul_kernel(af, bf, sign_table(d), out)
        return out.reshape(shape + (d,))
    T = _mult_tensor(d, as_float=dtype == np.float64)
    return np.einsum("...i,...j,ijt->...t", a, b, T)


def conj(a: np.ndarray) -> np.ndarray:
    """Conjugation: negate every imaginary coordinate."""
    a = np.asarray(a)
    out = -a.copy() if a.dtype != bool else -a.astype(np.int64)
    out[..., 0] = a[..., 0]
    return out


def re(a: np.ndarray) -> np.ndarray:
    return np.asarray(a)[..., 0]


def norm_sq(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    return np.sum(a * a, axis=-1)


def norm(a: np.ndarray) -> np.ndarray:
    return np.sqrt(norm_sq(a))


def inverse(a: np.ndarray) -> np.ndarray:
    """Multiplicative inverse conj(a) / |a|^2; raises on (near-)zero input."""
    ns = norm_sq(np.asarray(a, dtype=np.float64))
    if np.any(ns == 0.0):
        raise ZeroDivisionError("inverse of zero element")
    return conj(np.asarray(a, dtype=np.float64)) / ns[..., None]


def scalar(dim: int, value=1.0, dtype=np.float64) -> np.ndarray:
    out = np.zeros(dim, dtype=dtype)
    out[0] = value
    return out


def basis_element(dim: int, index: int, dtype=np.float64) -> np.ndarray:
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dim {dim}")
    out = np.zeros(dim, dtype=dtype)
    out[index] = 1
    return out


def imag_part(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.float64, copy=True)
    out[..., 0] = 0.0
    return out


def imag_norm(a: np.ndarray) -> np.ndarray:
    """Euclidean norm of the imaginary component."""
    a = np.asarray(a)
    return np.sqrt(np.sum(a[..., 1:] ** 2, axis=-1))


def seven_fold_left_mult(z: np.ndarray) -> np.ndarray:
    """e_1 (e_2 ( ... (e_7 z) ... )) for octonions; always equals -z."""
    z = np.asarray(z)
    if z.shape[-1] != 8:
        raise ValueError("seven_fold_left_mult requires octonions")
    out = z
    for alpha in range(7, 0, -1):
        out = mul(basis_element(8, alpha, dtype=out.dtype), out)
    return out


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------

IDENTITY_IDS = (
    "re-commute",
    "re-associate",
    "norm-cancel",
    "adjoint-shift",
    "artin-left-alternative",
    "associator",
)


def check_identity(name: str, a, b, c=None) -> np.ndarray:
    """Residual |LHS - RHS| of a named algebra identity, batched.

    re-commute              Re(ab) = Re(ba)
    re-associate            Re(a(bc)) = Re((ab)c)
    norm-cancel             (ab) conj(b) = a |b|^2
    adjoint-shift           <ab, c> = <a, c conj(b)>
    artin-left-alternative  a(ab) = (aa)b
    associator              (ab)c = a(bc)   (nonzero witness in O)
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if name == "re-commute":
        return np.abs(re(mul(a, b)) - re(mul(b, a)))
    if name == "re-associate":
        return np.abs(re(mul(a, mul(b, c))) - re(mul(mul(a, b), c)))
    if name == "norm-cancel":
        return norm(mul(mul(a, b), conj(b)) - a * norm_sq(b)[..., None])
    if name == "adjoint-shift":
        c = np.asarray(c, dtype=np.float64)
        lhs = np.sum(mul(a, b) * c, axis=-1)
        rhs = np.sum(a * mul(c, conj(b)), axis=-1)
        return np.abs(lhs - rhs)
    if name == "artin-left-alternative":
        return norm(mul(a, mul(a, b)) - mul(mul(a, a), b))
    if name == "associator":
        return norm(mul(mul(a, b), c) - mul(a, mul(b, c)))
    raise ValueError(f"unknown identity id {name!r}")


# ---------------------------------------------------------------------------
# exact backend (ints / Fractions), used for identity certification
# ---------------------------------------------------------------------------

def exact_mul(a, b):
    """Exact product of coordinate sequences (ints or Fractions)."""
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    d = len(a)
    if d not in DIMS:
        raise ValueError(f"unsupported algebra dimension {d}")
    S = sign_table(d)
    out = [0] * d
    for i in range(d):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(d):
            out[i ^ j] += int(S[i, j]) * ai * b[j]
    return tuple(out)


def exact_conj(a):
    return (a[0],) + tuple(-t for t in a[1:])


def exact_norm_sq(a):
    return sum(t * t for t in a)


def exact_basis(dim, index):
    return tuple(1 if t == index else 0 for t in range(dim))


def exact_from_rationals(values):
    return tuple(Fraction(v) for v in values)


class CayleyElement:
    """Thin wrapper over a coordinate vector with operator syntax.

    Mostly a convenience for tests and interactive work; the batched module
    functions are the workhorses.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = np.asarray(coords, dtype=np.float64)
        if self.coords.ndim != 1 or self.coords.shape[0] not in DIMS:
            raise ValueError("coords must be a vector of length 1, 2, 4 or 8")

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    @classmethod
    def basis(cls, dim, index):
        return cls(basis_element(dim, index))

    @classmethod
    def one(cls, dim):
        return cls(scalar(dim))

    def __mul__(self, other):
        if isinstance(other, CayleyElement):
            return CayleyElement(mul(self.coords, other.coords))
        return CayleyElement(self.coords * float(other))

    def __rmul__(self, other):
        return CayleyElement(self.coords * float(other))

    def __add__(self, other):
        return CayleyElement(self.coords + other.coords)

    def __sub__(self, other):
        return CayleyElement(self.coords - other.coords)

    def __neg__(self):
        return CayleyElement(-self.coords)

    def conj(self):
        return CayleyElement(conj(self.coords))

    def inverse(self):
        return CayleyElement(inverse(self.coords))

    def re(self) -> float:
        return float(self.coords[0])

    def norm(self) -> float:
        return float(norm(self.coords))

    def __eq__(self, other):
        return isinstance(other, CayleyElement) and np.array_equal(
            self.coords, other.coords
        )

    def __repr__(self):
        return f"CayleyElement({self.coords.tolist()})"
