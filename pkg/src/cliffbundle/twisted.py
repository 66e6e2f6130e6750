"""Twisted inner products <.,.>_p and the *_p operation on H^k and O^k.

For k-vectors z, w with entries in a normed algebra and a twist index
0 <= p <= k-1,

    <z, w>_p = sum_{i<=p} z_i conj(w_i) + sum_{p<j<=k-1} w_j conj(z_j)
               + z_k conj(w_k)

(1-based slot numbering as above; the last slot is always "plain").  The
frame variant on (k-1)-vectors X, W drops the last slot; it equals the full
form after zero-padding a k-th entry, which is how it is computed here.

    eps *_p W = (eps w_1, ..., eps w_p, conj(eps) w_{p+1}, ..., conj(eps) w_{k-1})

All functions are batched: vectors are arrays of shape (..., n, d) with d
the algebra dimension, broadcasting over leading axes.
"""

from __future__ import annotations

import numpy as np

from . import cayley as ca


def _check_twist(n_entries: int, k: int, p: int):
    if n_entries != k:
        raise ValueError(f"expected {k} entries, got {n_entries}")
    if not 0 <= p <= k - 1:
        raise ValueError(f"twist index p={p} out of range for k={k}")


def hermitian_inner(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Untwisted product sum_i z_i conj(w_i), shape (..., d)."""
    return ca.mul(z, ca.conj(w)).sum(axis=-2)


def twisted_inner(z: np.ndarray, w: np.ndarray, p: int) -> np.ndarray:
    """<z, w>_p on k-vectors.  At p = k-1 this is hermitian_inner."""
    k = z.shape[-2]
    _check_twist(w.shape[-2], k, p)
    plain = ca.mul(z[..., : k - 1, :], ca.conj(w[..., : k - 1, :]))
    flipped = ca.mul(w[..., : k - 1, :], ca.conj(z[..., : k - 1, :]))
    last = ca.mul(z[..., k - 1, :], ca.conj(w[..., k - 1, :]))
    out = (
        plain[..., :p, :].sum(axis=-2)
        + flipped[..., p:, :].sum(axis=-2)
        + last
    )
    return out


def pad_frame(X: np.ndarray) -> np.ndarray:
    """Append a zero k-th entry to a (k-1)-vector."""
    pad = np.zeros(X.shape[:-2] + (1, X.shape[-1]), dtype=X.dtype)
    return np.concatenate([X, pad], axis=-2)


def frame_inner(X: np.ndarray, W: np.ndarray, p: int) -> np.ndarray:
    """<X, W>_p on (k-1)-vectors (the zero-padded full form)."""
    return twisted_inner(pad_frame(X), pad_frame(W), p)


def star_p(eps: np.ndarray, W: np.ndarray, p: int) -> np.ndarray:
    """eps *_p W: left-multiply the first p entries by eps, the rest by conj(eps)."""
    n = W.shape[-2]
    if not 0 <= p <= n:
        raise ValueError(f"twist index p={p} out of range for {n} entries")
    eps = np.asarray(eps)
    out_plain = ca.mul(eps[..., None, :], W[..., :p, :])
    out_conj = ca.mul(ca.conj(eps)[..., None, :], W[..., p:, :])
    return np.concatenate([out_plain, out_conj], axis=-2)


def star_inner_residual(eps: np.ndarray, W: np.ndarray, p: int) -> np.ndarray:
    """| <eps *_p W, W>_p - eps |W|^2 |, which is identically zero."""
    lhs = frame_inner(star_p(eps, W, p), W, p)
    rhs = np.asarray(eps) * ca.norm_sq(W).sum(axis=-1)[..., None]
    return ca.norm(lhs - rhs)


def real_part_residual(
    X: np.ndarray, W: np.ndarray, z_k: np.ndarray, p: int
) -> np.ndarray:
    """| <X, eps *_p W> - Re(alpha) |<X, W>_p|^2 | with eps = <X, W>_p alpha.

    alpha = (1 + conj(z_k))^{-1}; raises when 1 + z_k is (near) singular.
    """
    d = X.shape[-1]
    one = ca.scalar(d)
    denom = one + ca.conj(np.asarray(z_k, dtype=np.float64))
    if np.any(ca.norm(denom) < 1e-12):
        raise ZeroDivisionError("alpha = (1 + conj(z_k))^{-1} is singular")
    alpha = ca.inverse(denom)
    h = frame_inner(X, W, p)
    eps = ca.mul(h, alpha)
    lhs = np.sum(X * star_p(eps, W, p), axis=(-2, -1))
    rhs = ca.re(alpha) * ca.norm_sq(h)
    return np.abs(lhs - rhs)


def orthogonality_split(z: np.ndarray, w: np.ndarray, p: int):
    """Split <z, w>_p = 0 into its two real conditions.

    Returns (re_part, imag_defect) where re_part is the euclidean inner
    product Re <z, w> and imag_defect is the norm of the imaginary part of
    the signed sum

        sum_{i<=p} z_i conj(w_i) - sum_{p<j<=k-1} z_j conj(w_j)
        + z_k conj(w_k).

    <z, w>_p vanishes iff both outputs vanish.
    """
    k = z.shape[-2]
    _check_twist(w.shape[-2], k, p)
    prods = ca.mul(z, ca.conj(w))
    re_part = ca.re(prods).sum(axis=-1)
    signed = (
        prods[..., :p, :].sum(axis=-2)
        - prods[..., p : k - 1, :].sum(axis=-2)
        + prods[..., k - 1, :]
    )
    return re_part, ca.imag_norm(signed)
