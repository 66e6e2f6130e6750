"""Focal-submanifold embeddings, characteristic maps, and sphere maps.

The canonical bundle over S^{l-1} attached to a Clifford system has a
characteristic map chi built from two trivializing embeddings psi1 / psi2
of sphere x sphere charts into the focal submanifold

    N_+ = {(z, w) : |z| = |w| = 1, <z, w>_p = 0}

(the unit-scale model of M_+; the FKM-scale model carries radius 1/sqrt(2)
per factor).  For m in {2, 4, 8} with algebra dimension d and a point
z = (W, z_k) off the poles:

    psi1(z, X) = (z, (X - (h a) *_p W,  -h b)),   h = <X, W>_p,
        a = (1 + conj(z_k))^{-1},  b = (1 + z_k)(1 + conj(z_k))^{-1},
    psi2 mirrors psi1 with 1 - z_k and a flipped sign on the last entry,

and on the equator Re(z_k) = 0 the characteristic map is

    chi(z)(X) = X - 2 (h (1 + z_k)^{-2}) *_p W.

m = 1 uses the real stereographic-chart embeddings and chi(x) = Id - 2 x^t x.
m = 2 is the p = k-1 complex specialization of the same formulas.

Vectors are batched arrays (..., n, d); points of R^{2l} are flattened
(z, w) pairs as in :mod:`cliffbundle.clifford`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import cayley as ca
from . import twisted as tw
from . import sampling
from .clifford import (
    ALGEBRA_DIM,
    build_clifford_system,
    flatten_pair,
    split_pair,
    validate_params,
)

POLE_GUARD = 1e-8   # |1 +- z_k| below this is treated as the singular chart point
Z1_GUARD = 1e-8     # |z_1| below this selects the displayed z_1 = 0 branch

CHAR_MAP_MS = (1, 2, 4, 8)


@lru_cache(maxsize=None)
def get_system(m: int, k: int, p: int):
    return build_clifford_system(m, k, p)


def _effective_p(m: int, k: int, p: int | None) -> int:
    # the twist only exists for m in {4, 8}; other m use the plain product
    p = validate_params(m, k, p)
    return p if m in (4, 8) else k - 1


# ---------------------------------------------------------------------------
# membership in M_+
# ---------------------------------------------------------------------------

def m_plus_membership(
    m: int, k: int, p: int | None, x: np.ndarray, scale: str = "fkm", tol: float = 1e-10
):
    """Check both characterizations of the focal submanifold M_+.

    (a) the quadratic-pair form: |z| = |w| = s and the twisted product
        vanishes (m = 3: the hermitian product is real);
    (b) the Clifford frame form: |x| = s sqrt(2) and <P_i x, x> = 0 for all i.

    ``scale`` is "fkm" (s = 1/sqrt(2), points on the unit sphere) or "unit"
    (s = 1, the N_+ convention).  Returns (is_member, residuals) where the
    residuals dictionary carries both characterizations and their agreement
    is asserted.
    """
    if scale not in ("fkm", "unit"):
        raise ValueError(f"unknown scale convention {scale!r}")
    p = _effective_p(m, k, p)
    system = get_system(m, k, p)
    d = system.dim
    x = np.asarray(x, dtype=np.float64)
    z, w = split_pair(x, k, d)
    s = 1.0 if scale == "unit" else 1.0 / np.sqrt(2.0)

    norm_res = np.maximum(
        np.abs(np.sqrt(ca.norm_sq(z).sum(-1)) - s),
        np.abs(np.sqrt(ca.norm_sq(w).sum(-1)) - s),
    )
    if m in (4, 8):
        twist_res = ca.norm(tw.twisted_inner(z, w, p))
    elif m == 3:
        twist_res = ca.imag_norm(tw.hermitian_inner(z, w))
    else:
        twist_res = ca.norm(tw.hermitian_inner(z, w))
    res_a = np.maximum(norm_res, twist_res / (s * s))

    xs = x if scale == "fkm" else x / np.sqrt(2.0)
    frame = system.clifford_frame(xs)
    frame_res = np.abs(frame).max(axis=-1)
    sphere_res = np.abs(np.sum(xs * xs, axis=-1) - 1.0)
    res_b = np.maximum(frame_res, sphere_res)

    member_a = res_a <= tol
    member_b = res_b <= tol
    agree = bool(np.all(member_a == member_b))
    residuals = {
        "pair_norms": norm_res,
        "twisted_product": twist_res,
        "clifford_frame": frame_res,
        "sphere": sphere_res,
        "agreement": agree,
    }
    return member_a & member_b, residuals


# ---------------------------------------------------------------------------
# the trivializing embeddings
# ---------------------------------------------------------------------------

def _psi_generic(z, X, p, chart_sign):
    d = z.shape[-1]
    k = z.shape[-2]
    W = z[..., : k - 1, :]
    zk = z[..., k - 1, :]
    one = ca.scalar(d)
    denom = one + chart_sign * ca.conj(zk)
    if np.any(ca.norm(denom) < POLE_GUARD):
        raise ZeroDivisionError("chart evaluated at its singular pole")
    alpha = ca.inverse(denom)
    b = ca.mul(one + chart_sign * zk, alpha)
    h = tw.frame_inner(X, W, p)
    first = X - tw.star_p(ca.mul(h, alpha), W, p)
    last = -chart_sign * ca.mul(h, b)
    return np.concatenate([first, last[..., None, :]], axis=-2)


def _psi_real(z, X, chart_sign):
    # m = 1: Y' = T - <z', T> z' / (1 - s z_k),  Y_k = s <z', T>
    k = z.shape[-2]
    zp = z[..., : k - 1, 0]
    zk = z[..., k - 1, 0]
    T = X[..., 0]
    denom = 1.0 - chart_sign * zk
    if np.any(np.abs(denom) < POLE_GUARD):
        raise ZeroDivisionError("chart evaluated at its singular pole")
    c = np.sum(zp * T, axis=-1)
    first = T - (c / denom)[..., None] * zp
    last = chart_sign * c
    return np.concatenate([first, last[..., None]], axis=-1)[..., None]


def psi1(z: np.ndarray, X: np.ndarray, m: int, k: int, p: int | None = None):
    """First trivializing embedding; returns (z, Y) with Y a (..., k, d) block.

    |Y| = 1 and <Y, z>_p = 0 for unit inputs.  Singular at -N for
    m in {2, 4, 8} and at N for m = 1.
    """
    p = _effective_p(m, k, p)
    if m == 1:
        return z, _psi_real(z, X, +1.0)
    return z, _psi_generic(z, X, p, +1.0)


def psi2(z: np.ndarray, X: np.ndarray, m: int, k: int, p: int | None = None):
    """Second embedding (the opposite chart)."""
    p = _effective_p(m, k, p)
    if m == 1:
        return z, _psi_real(z, X, -1.0)
    return z, _psi_generic(z, X, p, -1.0)


def psi1_inverse(z: np.ndarray, Y: np.ndarray, m: int, k: int, p: int | None = None):
    """Recover X from psi1(z, X) = (z, Y) on the common chart domain.

    Uses the closed form h = -y_k conj(b), X = Y' + (h a) *_p W; the test
    suite certifies it as a round-trip inverse.
    """
    p = _effective_p(m, k, p)
    if m == 1:
        zp = z[..., : k - 1, 0]
        zk = z[..., k - 1, 0]
        denom = 1.0 - zk
        if np.any(np.abs(denom) < POLE_GUARD):
            raise ZeroDivisionError("chart evaluated at its singular pole")
        T = Y[..., : k - 1, 0] + (Y[..., k - 1, 0] / denom)[..., None] * zp
        return T[..., None]
    d = z.shape[-1]
    W = z[..., : k - 1, :]
    zk = z[..., k - 1, :]
    one = ca.scalar(d)
    denom = one + ca.conj(zk)
    if np.any(ca.norm(denom) < POLE_GUARD):
        raise ZeroDivisionError("chart evaluated at its singular pole")
    alpha = ca.inverse(denom)
    b = ca.mul(one + zk, alpha)
    h = ca.mul(-Y[..., k - 1, :], ca.conj(b))
    return Y[..., : k - 1, :] + tw.star_p(ca.mul(h, alpha), W, p)


# ---------------------------------------------------------------------------
# the characteristic map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharMap:
    """Characteristic map spec (m, k, p); evaluates to n x n orthogonal matrices.

    n = d (k - 1).  The image lies in SO(n) for m in {2, 4, 8}; for m = 1
    every value is a reflection (determinant -1, O(n) only), recorded in
    ``det_sign``.
    """

    m: int
    k: int
    p: int

    def __post_init__(self):
        if self.m not in CHAR_MAP_MS:
            raise ValueError(f"characteristic map requires m in {CHAR_MAP_MS}")
        validate_params(self.m, self.k, self.p)
        if self.k < 2:
            raise ValueError("characteristic map requires k >= 2")

    @property
    def dim(self) -> int:
        return ALGEBRA_DIM[self.m]

    @property
    def n(self) -> int:
        return self.dim * (self.k - 1)

    @property
    def det_sign(self) -> int:
        return -1 if self.m == 1 else 1

    def apply(self, z: np.ndarray, X: np.ndarray) -> np.ndarray:
        """chi(z)(X) for equator z (..., k, d) and X (..., k-1, d)."""
        p = _effective_p(self.m, self.k, self.p)
        k, d = self.k, self.dim
        if self.m == 1:
            x = z[..., : k - 1, 0]
            T = X[..., 0]
            out = T - 2.0 * np.sum(x * T, axis=-1)[..., None] * x
            return out[..., None]
        W = z[..., : k - 1, :]
        zk = z[..., k - 1, :]
        one = ca.scalar(d)
        u = one + zk
        if np.any(ca.norm(u) < POLE_GUARD):
            raise ZeroDivisionError("characteristic map evaluated at a singular z")
        c = ca.inverse(ca.mul(u, u))
        h = tw.frame_inner(X, W, p)
        return X - 2.0 * tw.star_p(ca.mul(h, c), W, p)

    def matrix(self, z: np.ndarray) -> np.ndarray:
        """The n x n matrix of chi(z): rows are images of the basis vectors.

        With the row-vector convention X -> X M the projection to the first
        row is chi(z) applied to (1, 0, ..., 0).
        """
        n, k, d = self.n, self.k, self.dim
        basis = np.eye(n).reshape(n, k - 1, d)
        out = self.apply(z[..., None, :, :], basis)
        return out.reshape(z.shape[:-2] + (n, n))


def char_map_eval(cmap: CharMap, z: np.ndarray) -> np.ndarray:
    return cmap.matrix(z)


def char_consistency_residual(cmap: CharMap, z, X) -> np.ndarray:
    """| chi(z) X - psi1^{-1}(psi2(z, X)) | over the equator."""
    m, k, p = cmap.m, cmap.k, cmap.p
    _, Y = psi2(z, X, m, k, p)
    back = psi1_inverse(z, Y, m, k, p)
    diff = cmap.apply(z, X) - back
    return np.sqrt(np.sum(diff * diff, axis=(-2, -1)))


# ---------------------------------------------------------------------------
# projected sphere maps (first row of chi)
# ---------------------------------------------------------------------------

def projected_map(m: int, k: int, p: int | None, z: np.ndarray) -> np.ndarray:
    """First row of chi(z): the composite of chi with projection to S^{n-1}."""
    p = validate_params(m, k, p)
    cmap = CharMap(m, k, p)
    X = np.zeros((k - 1, cmap.dim))
    X[0, 0] = 1.0
    return cmap.apply(z, X)


def projected_closed_form(m: int, k: int, p: int | None, z: np.ndarray) -> np.ndarray:
    """The displayed closed form of the projected map, with its p = 0 branch.

    For p >= 1 (c+ = (1+z_k)^{-2}, c- = (1-z_k)^{-2}):

        (1 - 2 (conj(z_1) c+) z_1,
         -2 (conj(z_1) c+) z_i          for 2 <= i <= p,
         -2 (c- z_1) z_j                for p+1 <= j <= k-1)

    and for p = 0:

        (1 - 2 c- |z_1|^2,  -2 (c- conj(z_1)) z_j).
    """
    p = _effective_p(m, k, p)
    d = ALGEBRA_DIM[m]
    z = np.asarray(z, dtype=np.float64)
    if m == 1:
        x = z[..., : k - 1, 0]
        out = -2.0 * x[..., 0][..., None] * x
        out[..., 0] += 1.0
        return out[..., None]
    z1 = z[..., 0, :]
    zk = z[..., k - 1, :]
    one = ca.scalar(d)
    cplus = ca.inverse(ca.mul(one + zk, one + zk))
    cminus = ca.inverse(ca.mul(one - zk, one - zk))
    out = np.zeros(z.shape[:-2] + (k - 1, d))
    if p >= 1:
        lead = ca.mul(ca.conj(z1), cplus)
        out[..., 0, :] = -2.0 * ca.mul(lead, z1)
        out[..., 0, 0] += 1.0
        for i in range(1, p):
            out[..., i, :] = -2.0 * ca.mul(lead, z[..., i, :])
        tail = ca.mul(cminus, z1)
        for j in range(p, k - 1):
            out[..., j, :] = -2.0 * ca.mul(tail, z[..., j, :])
    else:
        out[..., 0, :] = -2.0 * ca.norm_sq(z1)[..., None] * cminus
        out[..., 0, 0] += 1.0
        tail = ca.mul(cminus, ca.conj(z1))
        for j in range(1, k - 1):
            out[..., j, :] = -2.0 * ca.mul(tail, z[..., j, :])
    return out


def nullhomotopy_eval(case: str, z: np.ndarray, t) -> np.ndarray:
    """The homotopy -(1 + t z_2)^2 (1 - t z_2)^{-2} contracting the k = 2,
    p = 0 projected map to the constant -1.

    ``case`` picks the algebra: "m4_k2_p0" (quaternions) or "m8_k2_p0"
    (octonions).  Unit norm for every t; t = 1 recovers projected_map.
    """
    dims = {"m4_k2_p0": 4, "m8_k2_p0": 8}
    if case not in dims:
        raise ValueError(f"unknown nullhomotopy case {case!r}")
    d = dims[case]
    z = np.asarray(z, dtype=np.float64)
    if z.shape[-1] != d or z.shape[-2] != 2:
        raise ValueError(f"expected (..., 2, {d}) points")
    z2 = z[..., 1, :]
    t = np.asarray(t, dtype=np.float64)[..., None]
    one = ca.scalar(d)
    u = one + t * z2
    v = one - t * z2
    return -ca.mul(ca.mul(u, u), ca.inverse(ca.mul(v, v)))


# ---------------------------------------------------------------------------
# Hopf constructions
# ---------------------------------------------------------------------------

def _f_cycle(x, y):
    # (y_k, -conj(x) y_2, ..., -conj(x) y_{k-1}); last input slot is imaginary
    rest = -ca.mul(ca.conj(x)[..., None, :], y[..., :-1, :])
    return np.concatenate([y[..., -1:, :], rest], axis=-2)


def _f_conj_sandwich(x, y):
    return ca.mul(ca.mul(x, y), ca.conj(x))[..., None, :]


def _f_split(x, y, j=0):
    return np.concatenate(
        [
            ca.mul(x[..., None, :], y[..., :j, :]),
            ca.mul(ca.conj(x)[..., None, :], y[..., j:, :]),
        ],
        axis=-2,
    )


def _f_omega(x, y):
    head = ca.mul(ca.mul(ca.conj(x), y[..., -1, :]), x)
    rest = -ca.mul(ca.conj(x)[..., None, :], y[..., :-1, :])
    return np.concatenate([head[..., None, :], rest], axis=-2)


def _f_omega0(x, y):
    head = ca.mul(ca.mul(ca.conj(x), y[..., -1, :]), x)
    return np.concatenate([head[..., None, :], y[..., :-1, :]], axis=-2)


def _f_omega_i(x, y, i=1):
    out = np.array(y, dtype=np.float64, copy=True)
    out[..., i - 1, :] = -ca.mul(ca.conj(x), y[..., i - 1, :])
    return out


HOPF_MAPS = {
    # id: (x dim, evaluator f(x, y, **params) -> (..., slots, d), merge_lead)
    # merge_lead marks maps whose first output slot is purely imaginary, so
    # the -cos 2t coordinate of H(f) occupies that slot's real part.
    "quat-cycle": (4, _f_cycle, True),
    "oct-cycle": (8, _f_cycle, True),
    "conj-sandwich": (8, _f_conj_sandwich, True),
    "split-mult": (8, _f_split, False),
    "quat-omega": (4, _f_omega, True),
    "quat-omega-0": (4, _f_omega0, True),
    "quat-omega-i": (4, _f_omega_i, False),
    "oct-omega": (8, _f_omega, True),
    "oct-omega-0": (8, _f_omega0, True),
    "oct-omega-i": (8, _f_omega_i, False),
}


def hopf_construction(map_id: str, x, y, t, **params) -> np.ndarray:
    """H(f)(cos t x, sin t y) = (-cos^2 t + sin^2 t, 2 sin t cos t f(x, y)).

    x, y are unit points of the registered domain; t in [0, pi/2].  The
    result is a flat unit vector: lead coordinate then the flattened f
    value, folded into the first slot's real part when that slot is
    imaginary.  Endpoints are (-1, 0, ...) at t = 0 and (1, 0, ...) at
    t = pi/2.
    """
    if map_id not in HOPF_MAPS:
        raise ValueError(f"unknown Hopf map id {map_id!r}")
    _, f, merge_lead = HOPF_MAPS[map_id]
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    val = f(x, y, **params)
    lead = np.sin(t) ** 2 - np.cos(t) ** 2
    scaled = (2.0 * np.sin(t) * np.cos(t))[..., None, None] * val
    if merge_lead:
        out = scaled.reshape(scaled.shape[:-2] + (-1,))
        out = np.array(out)
        out[..., 0] += lead
        return out
    flat = scaled.reshape(scaled.shape[:-2] + (-1,))
    return np.concatenate([lead[..., None], flat], axis=-1)


# ---------------------------------------------------------------------------
# sphere maps entering the non-vanishing witnesses
# ---------------------------------------------------------------------------

def hopf_cycle_z(z: np.ndarray) -> np.ndarray:
    """The Hopf construction of the cycle map in z-coordinates:

        (1 - 2 |z_1|^2 + 2 |z_1| z_k,  -2 conj(z_1) z_2, ..., -2 conj(z_1) z_{k-1}).
    """
    k = z.shape[-2]
    z1 = z[..., 0, :]
    zk = z[..., k - 1, :]
    r = ca.norm(z1)
    head = 2.0 * r[..., None] * zk
    head[..., 0] += 1.0 - 2.0 * r**2
    rest = -2.0 * ca.mul(ca.conj(z1)[..., None, :], z[..., 1 : k - 1, :])
    return np.concatenate([head[..., None, :], rest], axis=-2)


def theta_map(z: np.ndarray, p: int) -> np.ndarray:
    """Interpolating map with flat denominators 1 + |z_k|^2 off the lead slot."""
    if p < 1:
        raise ValueError("this interpolating map is defined for p >= 1")
    k = z.shape[-2]
    d = z.shape[-1]
    z1 = z[..., 0, :]
    zk = z[..., k - 1, :]
    one = ca.scalar(d)
    cplus = ca.inverse(ca.mul(one + zk, one + zk))
    denom = (1.0 + ca.norm_sq(zk))[..., None]
    out = np.zeros(z.shape[:-2] + (k - 1, d))
    out[..., 0, :] = -2.0 * ca.mul(ca.mul(ca.conj(z1), cplus), z1)
    out[..., 0, 0] += 1.0
    for i in range(1, p):
        out[..., i, :] = -2.0 * ca.mul(ca.conj(z1), z[..., i, :]) / denom
    for j in range(p, k - 1):
        out[..., j, :] = -2.0 * ca.mul(z1, z[..., j, :]) / denom
    return out


def radial_twist_map(z: np.ndarray, p: int) -> np.ndarray:
    """The piecewise map with lead slot 1 - 2|z_1|^2 + 2 conj(z_1) z_k z_1 / |z_1|
    (and the displayed z_1 = 0 branch), plain -2 z_1-multiples elsewhere.

    p = k-1 gives the untwisted variant used against the definite projected
    map; general p the twisted variant.
    """
    if p < 1:
        raise ValueError("this map is defined for p >= 1")
    k = z.shape[-2]
    z1 = z[..., 0, :]
    zk = z[..., k - 1, :]
    r = ca.norm(z1)
    safe = np.where(r < Z1_GUARD, 1.0, r)
    sandwich = ca.mul(ca.mul(ca.conj(z1), zk), z1) / safe[..., None]
    sandwich = np.where((r < Z1_GUARD)[..., None], 0.0, sandwich)
    out = np.zeros(z.shape[:-2] + (k - 1, z.shape[-1]))
    out[..., 0, :] = 2.0 * sandwich
    out[..., 0, 0] += 1.0 - 2.0 * r**2
    for i in range(1, p):
        out[..., i, :] = -2.0 * ca.mul(ca.conj(z1), z[..., i, :])
    for j in range(p, k - 1):
        out[..., j, :] = -2.0 * ca.mul(z1, z[..., j, :])
    return out


def tau_map(z: np.ndarray) -> np.ndarray:
    """k = 2 octonionic map 2|z_2|^2 - 1 + 2 conj(z_1) z_2 z_1 / |z_1|."""
    z1 = z[..., 0, :]
    z2 = z[..., 1, :]
    r = ca.norm(z1)
    safe = np.where(r < Z1_GUARD, 1.0, r)
    sandwich = ca.mul(ca.mul(ca.conj(z1), z2), z1) / safe[..., None]
    sandwich = np.where((r < Z1_GUARD)[..., None], 0.0, sandwich)
    out = 2.0 * sandwich
    out[..., 0] += 2.0 * ca.norm_sq(z2) - 1.0
    return out[..., None, :]


def b_map(z: np.ndarray) -> np.ndarray:
    """The generator map (z_1/|z_1|) e^{pi z_2} (conj(z_1)/|z_1|), -1 at z_1 = 0."""
    z1 = z[..., 0, :]
    z2 = z[..., 1, :]
    r2 = ca.norm(z2)
    # e^{pi z_2} = cos(pi |z_2|) + sin(pi |z_2|) z_2 / |z_2|, smooth via sinc
    expo = np.pi * np.sinc(r2)[..., None] * z2
    expo[..., 0] += np.cos(np.pi * r2)
    r1 = ca.norm(z1)
    safe = np.where(r1 < Z1_GUARD, 1.0, r1)
    u = z1 / safe[..., None]
    val = ca.mul(ca.mul(u, expo), ca.conj(u))
    minus_one = -ca.scalar(z.shape[-1])
    val = np.where((r1 < Z1_GUARD)[..., None], minus_one, val)
    return val[..., None, :]


def b_prime_map(z: np.ndarray) -> np.ndarray:
    """b'(z_1, z_2) = -b(conj(z_1), -z_2)."""
    flipped = np.stack([ca.conj(z[..., 0, :]), -z[..., 1, :]], axis=-2)
    return -b_map(flipped)


def _proj(m):
    def run(z, k, p):
        return projected_closed_form(m, k, p, z)

    return run


WITNESS_PAIRS = {
    # id: (algebra dim, map A, map B, parameter rule)
    # The p = 0 pairs need k >= 3: with no middle entries the paired maps
    # share an exact zero locus at |z_1|^3 + 2|z_1|^2 = 2 (the k = 2, p = 0
    # bundle is handled by the explicit nullhomotopy instead).
    "sigma-hopf": (4, lambda z, k, p: projected_closed_form(4, k, 0, z),
                   lambda z, k, p: hopf_cycle_z(z), "p = 0"),
    "sigma-theta": (4, _proj(4), lambda z, k, p: theta_map(z, p), "1 <= p <= k-2"),
    "phi-theta": (4, lambda z, k, p: radial_twist_map(z, p),
                  lambda z, k, p: theta_map(z, p), "1 <= p <= k-2"),
    "g-hopf": (8, lambda z, k, p: projected_closed_form(8, k, 0, z),
               lambda z, k, p: hopf_cycle_z(z), "p = 0"),
    "g-upsilon": (8, _proj(8), lambda z, k, p: theta_map(z, p), "1 <= p <= k-2"),
    "upsilon-psi": (8, lambda z, k, p: theta_map(z, p),
                    lambda z, k, p: radial_twist_map(z, p), "1 <= p <= k-2"),
    "phi-g": (8, lambda z, k, p: radial_twist_map(z, k - 1),
              lambda z, k, p: projected_closed_form(8, k, k - 1, z), "p = k-1"),
    "g2-tau": (8, lambda z, k, p: projected_closed_form(8, 2, 1, z),
               lambda z, k, p: tau_map(z), "k = 2, p = 1"),
    "tau-bprime": (8, lambda z, k, p: tau_map(z),
                   lambda z, k, p: b_prime_map(z), "k = 2"),
}


def witness_default_p(pair_id: str, k: int) -> int:
    rule = WITNESS_PAIRS[pair_id][3]
    if rule == "p = 0":
        if k < 3:
            raise ValueError(f"witness pair {pair_id!r} requires k >= 3")
        return 0
    if rule.startswith("1 <="):
        if k < 3:
            raise ValueError(f"witness pair {pair_id!r} requires k >= 3")
        return 1
    return k - 1


def witness_min_norm(
    pair_id: str,
    k: int,
    p: int | None = None,
    n_samples: int = 100_000,
    seed: int = 0,
    slice_samples: int | None = None,
) -> dict:
    """min over seeded equator samples of |A(z) + B(z)| for a registered pair.

    Also evaluates a targeted grid on the z_1 = 0 slice (the locus the
    vanishing argument pivots on).  Strict positivity is sampling evidence
    for A ~ B, not a proof; raw minima are reported.
    """
    if pair_id not in WITNESS_PAIRS:
        raise ValueError(f"unknown witness pair {pair_id!r}")
    d, fa, fb, rule = WITNESS_PAIRS[pair_id]
    if pair_id in ("g2-tau", "tau-bprime") and k != 2:
        raise ValueError(f"witness pair {pair_id!r} is a k = 2 pair")
    if p is None:
        p = witness_default_p(pair_id, k)
    if rule.startswith("1 <=") and not 1 <= p <= k - 2:
        raise ValueError(f"witness pair {pair_id!r} requires 1 <= p <= k-2")
    gen = sampling.generator(seed)
    z = sampling.equator(gen, n_samples, k, d)
    total = fa(z, k, p) + fb(z, k, p)
    norms = np.sqrt(np.sum(total * total, axis=(-2, -1)))
    if slice_samples is None:
        slice_samples = max(n_samples // 10, 100)
    zs = sampling.equator_slice_z1_zero(gen, slice_samples, k, d)
    ts = fa(zs, k, p) + fb(zs, k, p)
    slice_norms = np.sqrt(np.sum(ts * ts, axis=(-2, -1)))
    return {
        "pair": pair_id,
        "k": k,
        "p": p,
        "n": int(n_samples),
        "min": float(norms.min()),
        "slice_n": int(slice_samples),
        "slice_min": float(slice_norms.min()),
    }


# ---------------------------------------------------------------------------
# the m = 3 cohomogeneity-one picture
# ---------------------------------------------------------------------------

def phi_cohomogeneity(A: np.ndarray, z: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """(A, z) -> (A_1, z A) / sqrt(2), a point of the m = 3 focal submanifold.

    A is a quaternionic unitary (k, k, 4) matrix acting on row vectors from
    the right; z is a unit row vector in R + H^{k-1} (real first entry).
    """
    defect = sampling.sp_unitary_defect(A)
    if defect > tol:
        raise ValueError(f"matrix is not quaternionic-unitary (defect {defect:.2e})")
    z = np.asarray(z, dtype=np.float64)
    if np.abs(z[..., 0, 1:]).max() > tol:
        raise ValueError("first entry of z must be real")
    zA = ca.mul(z[..., :, None, :], A).sum(axis=-3)
    s = 1.0 / np.sqrt(2.0)
    return flatten_pair(s * np.broadcast_to(A[0], zA.shape), s * zA)


def isoparametric_f(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """f(x, y) = 2 <x, y>, the cohomogeneity-one isoparametric function on M_+.

    Takes the two (..., k, 4) blocks of an FKM-scale point; range [-1, 1],
    invariant under the diagonal right Sp(k) action.
    """
    return 2.0 * np.sum(np.asarray(x) * np.asarray(y), axis=(-2, -1))


def isoparametric_f_point(point: np.ndarray, k: int) -> np.ndarray:
    x, y = split_pair(np.asarray(point, dtype=np.float64), k, 4)
    return isoparametric_f(x, y)


# ---------------------------------------------------------------------------
# harmonic representative seed maps
# ---------------------------------------------------------------------------

def harmonic_seed_map(case: str, *args, **kwargs) -> np.ndarray:
    """Eigenmap seeds whose Hopf constructions carry the harmonic classes.

    "xy_conj":  f(x, y) = x y conj(x), unit x in O, unit imaginary y.
    "split_j":  f(x_1, rest) = (x_1 r_1, ..., x_1 r_j, conj(x_1) r_{j+1}, ...)
                for unit x_1 in O and unit rest in O^{k-1}, 0 <= j <= k-1.
    """
    if case == "xy_conj":
        x, y = args
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if np.abs(y[..., 0]).max() > 1e-12:
            raise ValueError("y must be purely imaginary")
        return ca.mul(ca.mul(x, y), ca.conj(x))
    if case == "split_j":
        x1, rest = args
        j = kwargs.get("j", 0)
        rest = np.asarray(rest, dtype=np.float64)
        if not 0 <= j <= rest.shape[-2]:
            raise ValueError("j out of range")
        return _f_split(np.asarray(x1, dtype=np.float64), rest, j=j)
    raise ValueError(f"unknown harmonic seed case {case!r}")


def measure_bi_eigenvalues(n_samples: int = 64, seed: int = 0, h: float = 1e-4) -> dict:
    """Finite-difference Rayleigh quotients of the spherical Laplacian of
    f(x, y) = x y conj(x) in each factor.

    Reported, not asserted: the eigenvalue normalization behind the usual
    bi-eigenvalue bookkeeping is convention-dependent, so the artifact
    measures.  Returns per-factor mean and spread of -<Lap f, f>.
    """
    gen = sampling.generator(seed)
    x = sampling.unit_vectors(gen, n_samples, 8)
    y = sampling.imaginary_unit(gen, n_samples, 8)

    def f(xx, yy):
        return ca.mul(ca.mul(xx, yy), ca.conj(xx))

    def sphere_lap_x(xx, yy):
        acc = np.zeros_like(f(xx, yy))
        base = f(xx, yy)
        for dcoord in range(8):
            e = np.zeros(8)
            e[dcoord] = h
            up = (xx + e) / np.linalg.norm(xx + e, axis=-1, keepdims=True)
            dn = (xx - e) / np.linalg.norm(xx - e, axis=-1, keepdims=True)
            acc += f(up, yy) - 2.0 * base + f(dn, yy)
        return acc / (h * h)

    def sphere_lap_y(xx, yy):
        acc = np.zeros_like(f(xx, yy))
        base = f(xx, yy)
        for dcoord in range(1, 8):
            e = np.zeros(8)
            e[dcoord] = h
            up = (yy + e) / np.linalg.norm(yy + e, axis=-1, keepdims=True)
            dn = (yy - e) / np.linalg.norm(yy - e, axis=-1, keepdims=True)
            acc += f(xx, up) - 2.0 * base + f(xx, dn)
        return acc / (h * h)

    base = f(x, y)
    lam_x = -np.sum(sphere_lap_x(x, y) * base, axis=-1)
    lam_y = -np.sum(sphere_lap_y(x, y) * base, axis=-1)
    return {
        "first_factor": {"mean": float(lam_x.mean()), "std": float(lam_x.std())},
        "second_factor": {"mean": float(lam_y.mean()), "std": float(lam_y.std())},
        "n": int(n_samples),
        "h": h,
    }
