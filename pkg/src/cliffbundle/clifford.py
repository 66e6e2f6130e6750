"""Symmetric Clifford systems and the FKM Cartan-Munzner polynomial.

A symmetric Clifford system is a family {P_0, ..., P_m} of symmetric
orthogonal operators on R^{2l} with P_i P_j + P_j P_i = 2 delta_ij Id,
where l = k * delta(m) and delta is the dimension of the irreducible
module of the Clifford algebra C_{m-1}:

    delta(1) = 1, delta(2) = 2, delta(3) = delta(4) = 4, delta(8) = 8.

Systems are stored structurally (per-entry sign patterns plus a basis
left-multiplier, with O(l) application) and can be materialized as exact
integer matrices with entries in {-1, 0, 1} for certification.  A point of
R^{2l} is the flattened pair (z, w) of two (k, d) coordinate blocks.

Supported families, all with P_0(z, w) = (z, -w):

    m = 1:   P_1(z, w) = (w, z) on R^{2k}
    m = 2:   P_1 = swap, P_2 = (E_1 w, -E_1 z), E_1 = mult by i on C^k
    m = 3:   P_alpha(z, w) = (E_alpha w, -E_alpha z), E_alpha = mult by
             i, j, k on H^k (no swap operator; the cohomogeneity-one family)
    m = 4:   swap plus E_alpha = twisted mult by i, j, k on H^k
    m = 8:   swap plus E_alpha = twisted mult by e_1..e_7 on O^k

The twist index p puts the sign +1 on entries 1..p, -1 on entries
p+1..k-1 and +1 on entry k of each E_alpha; p = k-1 is the definite
(untwisted) family.  For m = 4, 8 and k = 2p + 2 the system extends by one
extra anticommuting operator built from an entry permutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import cayley as ca

DELTA = {1: 1, 2: 2, 3: 4, 4: 4, 8: 8}
ALGEBRA_DIM = {1: 1, 2: 2, 3: 4, 4: 4, 8: 8}
SUPPORTED_M = (1, 2, 3, 4, 8)

DENSE_SIZE_CAP = 4096  # matrices above this l are never materialized


def validate_params(m: int, k: int, p: int | None = None) -> int:
    """Check (m, k, p); returns the effective twist index."""
    if m not in SUPPORTED_M:
        raise ValueError(f"unsupported m={m}; must be one of {SUPPORTED_M}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if p is None:
        p = k - 1
    if not 0 <= p <= k - 1:
        raise ValueError(f"twist index p={p} out of range 0..{k - 1}")
    return p


def left_mult_matrix(dim: int, alpha: int) -> np.ndarray:
    """(dim, dim) int64 matrix of y -> e_alpha y."""
    S = ca.sign_table(dim)
    M = np.zeros((dim, dim), dtype=np.int64)
    for c in range(dim):
        M[alpha ^ c, c] = S[alpha, c]
    return M


# ---------------------------------------------------------------------------
# structured skew operators on R^l = (k, d)
# ---------------------------------------------------------------------------

class SkewOperator:
    """Orthogonal skew-symmetric operator with E^2 = -Id on R^l."""

    l: int

    def apply(self, x: np.ndarray) -> np.ndarray:  # x: (..., k, d)
        raise NotImplementedError

    def matrix(self) -> np.ndarray:
        raise NotImplementedError

    def certify(self) -> dict:
        """Exact integer checks: skew-symmetry, orthogonality, square = -Id."""
        M = self.matrix()
        eye = np.eye(self.l, dtype=np.int64)
        return {
            "skew": int(np.abs(M + M.T).max()),
            "orthogonal": int(np.abs(M.T @ M - eye).max()),
            "square": int(np.abs(M @ M + eye).max()),
        }


@dataclass(frozen=True)
class EntryLeftMult(SkewOperator):
    """z_i -> signs[i] * e_alpha * z_i entrywise."""

    k: int
    dim: int
    alpha: int
    signs: tuple

    def __post_init__(self):
        if not 1 <= self.alpha < self.dim:
            raise ValueError("left multiplier must be an imaginary basis element")
        if len(self.signs) != self.k:
            raise ValueError("need one sign per entry")

    @property
    def l(self):
        return self.k * self.dim

    def apply(self, x):
        e = ca.basis_element(self.dim, self.alpha, dtype=x.dtype)
        s = np.asarray(self.signs, dtype=x.dtype)[:, None]
        return s * ca.mul(e, x)

    def matrix(self):
        L = left_mult_matrix(self.dim, self.alpha)
        M = np.zeros((self.l, self.l), dtype=np.int64)
        for i, s in enumerate(self.signs):
            a = i * self.dim
            M[a : a + self.dim, a : a + self.dim] = s * L
        return M


@dataclass(frozen=True)
class EntryPermSign(SkewOperator):
    """z_i -> signs[i] * z_{perm[i]} entrywise (the extension operator shape)."""

    k: int
    dim: int
    perm: tuple
    signs: tuple

    @property
    def l(self):
        return self.k * self.dim

    def apply(self, x):
        out = x[..., list(self.perm), :].copy()
        out *= np.asarray(self.signs, dtype=x.dtype)[:, None]
        return out

    def matrix(self):
        M = np.zeros((self.l, self.l), dtype=np.int64)
        eye = np.eye(self.dim, dtype=np.int64)
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            M[i * self.dim : (i + 1) * self.dim, j * self.dim : (j + 1) * self.dim] = (
                s * eye
            )
        return M


def twist_signs(k: int, p: int) -> tuple:
    """+1 on entries 1..p, -1 on p+1..k-1, +1 on entry k (1-based)."""
    return tuple([1] * p + [-1] * (k - 1 - p) + [1])


def build_E_family(m: int, k: int, p: int | None = None) -> list:
    """The anticommuting skew family {E_alpha} behind a Clifford system.

    Empty for m = 1; one operator for m = 2; three untwisted left
    multiplications for m = 3; m - 1 twisted left multiplications for
    m = 4, 8 (p = k-1 gives the definite family).
    """
    p = validate_params(m, k, p)
    d = ALGEBRA_DIM[m]
    if m == 1:
        return []
    if m == 2:
        return [EntryLeftMult(k, d, 1, (1,) * k)]
    if m == 3:
        return [EntryLeftMult(k, d, a, (1,) * k) for a in (1, 2, 3)]
    signs = twist_signs(k, p)
    return [EntryLeftMult(k, d, a, signs) for a in range(1, m)]


# ---------------------------------------------------------------------------
# the symmetric operators P_i on R^{2l}
# ---------------------------------------------------------------------------

class SymmetricOperator:
    """One member P_i of a Clifford system, acting on pairs (z, w)."""

    def __init__(self, form: str, l: int, skew: SkewOperator | None = None):
        if form not in ("diag", "swap", "skew"):
            raise ValueError(form)
        self.form = form
        self.l = l
        self.skew = skew

    def apply_pair(self, z, w):
        if self.form == "diag":
            return z, -w
        if self.form == "swap":
            return w, z
        return self.skew.apply(w), -self.skew.apply(z)

    def apply(self, x, k, d):
        """x: (..., 2l) flattened pairs."""
        z, w = split_pair(x, k, d)
        az, aw = self.apply_pair(z, w)
        return flatten_pair(az, aw)

    def matrix(self):
        n = 2 * self.l
        M = np.zeros((n, n), dtype=np.int64)
        eye = np.eye(self.l, dtype=np.int64)
        if self.form == "diag":
            M[: self.l, : self.l] = eye
            M[self.l :, self.l :] = -eye
        elif self.form == "swap":
            M[: self.l, self.l :] = eye
            M[self.l :, : self.l] = eye
        else:
            E = self.skew.matrix()
            M[: self.l, self.l :] = E
            M[self.l :, : self.l] = -E
        return M


def split_pair(x: np.ndarray, k: int, d: int):
    """(..., 2l) -> two (..., k, d) blocks."""
    l = k * d
    z = x[..., :l].reshape(x.shape[:-1] + (k, d))
    w = x[..., l:].reshape(x.shape[:-1] + (k, d))
    return z, w


def flatten_pair(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    lead = z.shape[:-2]
    return np.concatenate(
        [z.reshape(lead + (-1,)), w.reshape(lead + (-1,))], axis=-1
    )


@dataclass
class CliffordSystem:
    """A symmetric Clifford system {P_0, ..., P_m} on R^{2l}."""

    m: int
    k: int
    p: int
    operators: list = field(repr=False)
    e_family: list = field(repr=False)

    @property
    def dim(self) -> int:
        return ALGEBRA_DIM[self.m]

    @property
    def l(self) -> int:
        return self.k * DELTA[self.m]

    @property
    def ambient(self) -> int:
        return 2 * self.l

    @property
    def multiplicities(self) -> tuple:
        return self.m, self.l - self.m - 1

    @cached_property
    def matrix_form(self) -> list:
        if self.l > DENSE_SIZE_CAP:
            raise ValueError(
                f"l={self.l} exceeds the dense materialization cap {DENSE_SIZE_CAP}"
            )
        return [P.matrix() for P in self.operators]

    def apply(self, i: int, x: np.ndarray) -> np.ndarray:
        return self.operators[i].apply(x, self.k, self.dim)

    def clifford_frame(self, x: np.ndarray) -> np.ndarray:
        """All inner products <P_i x, x>, shape (..., m+1)."""
        return np.stack(
            [np.sum(self.apply(i, x) * x, axis=-1) for i in range(self.m + 1)],
            axis=-1,
        )


def build_clifford_system(m: int, k: int, p: int | None = None) -> CliffordSystem:
    p = validate_params(m, k, p)
    fam = build_E_family(m, k, p)
    l = k * DELTA[m]
    ops = [SymmetricOperator("diag", l)]
    if m != 3:
        ops.append(SymmetricOperator("swap", l))
    ops += [SymmetricOperator("skew", l, E) for E in fam]
    assert len(ops) == m + 1
    return CliffordSystem(m=m, k=k, p=p, operators=ops, e_family=fam)


def verify_clifford(system: CliffordSystem, matrices: list | None = None) -> dict:
    """Exact integer residuals of the defining relations.

    Returns max absolute deviations of P_i P_j + P_j P_i - 2 delta_ij Id,
    of symmetry P_i - P_i^t, and of orthogonality P_i^t P_i - Id.  All are
    exactly zero for a valid system.
    """
    mats = system.matrix_form if matrices is None else matrices
    n = mats[0].shape[0]
    eye = np.eye(n, dtype=np.int64)
    anticom = 0
    for i, Mi in enumerate(mats):
        for j in range(i, len(mats)):
            Mj = mats[j]
            target = 2 * eye if i == j else 0
            anticom = max(anticom, int(np.abs(Mi @ Mj + Mj @ Mi - target).max()))
    symmetry = max(int(np.abs(M - M.T).max()) for M in mats)
    orthogonality = max(int(np.abs(M.T @ M - eye).max()) for M in mats)
    return {
        "anticommutation": anticom,
        "symmetry": symmetry,
        "orthogonality": orthogonality,
    }


def product_trace(system: CliffordSystem) -> int:
    """Exact trace of P_0 P_1 ... P_m (defined for m = 4 and m = 8 only).

    Equals -2 delta(m) (2p - k + 2) for the families built here.
    """
    if system.m not in (4, 8):
        raise ValueError("product trace classifies only m = 4 and m = 8 systems")
    mats = system.matrix_form
    prod = mats[0]
    for M in mats[1:]:
        prod = prod @ M
    return int(np.trace(prod))


def classify_definiteness(system: CliffordSystem) -> str:
    """'definite_plus' / 'definite_minus' / 'indefinite' for m = 0 mod 4."""
    if system.m % 4 != 0:
        return "not_applicable"
    mats = system.matrix_form
    prod = mats[0]
    for M in mats[1:]:
        prod = prod @ M
    eye = np.eye(prod.shape[0], dtype=np.int64)
    if np.array_equal(prod, eye):
        return "definite_plus"
    if np.array_equal(prod, -eye):
        return "definite_minus"
    return "indefinite"


def extend_clifford(m: int, k: int, p: int | None = None):
    """The extra skew operator extending {P_0..P_m}, when one exists.

    The indefinite families extend by one operator exactly when k = 2p + 2;
    the operator permutes entries in signed pairs,

        E(z) = (z_{p+1}, ..., z_{2p}, -z_1, ..., -z_p, z_{2p+2}, -z_{2p+1}),

    and is certified here by exact anticommutation against every E_alpha.
    Returns (operator, reason); operator is None when no extension exists.
    """
    p = validate_params(m, k, p)
    if m not in (4, 8):
        raise ValueError("extension is defined for m = 4 and m = 8 systems")
    if k != 2 * p + 2:
        return None, f"k != 2p+2 (k={k}, p={p}); no extension exists"
    d = ALGEBRA_DIM[m]
    perm = (
        list(range(p, 2 * p)) + list(range(0, p)) + [2 * p + 1, 2 * p]
    )
    signs = [1] * p + [-1] * p + [1, -1]
    E = EntryPermSign(k, d, tuple(perm), tuple(signs))
    cert = E.certify()
    if any(cert.values()):
        raise AssertionError(f"extension operator failed self-certification: {cert}")
    EM = E.matrix()
    for F in build_E_family(m, k, p):
        if np.abs(EM @ F.matrix() + F.matrix() @ EM).max() != 0:
            raise AssertionError("extension operator does not anticommute exactly")
    return E, "extension exists (k = 2p+2), certified exactly"


# ---------------------------------------------------------------------------
# FKM polynomial and the Cartan-Munzner identities
# ---------------------------------------------------------------------------

def fkm_polynomial(system: CliffordSystem, x: np.ndarray) -> np.ndarray:
    """F(x) = |x|^4 - 2 sum_i <P_i x, x>^2, batched over (..., 2l)."""
    x = np.asarray(x, dtype=np.float64)
    r2 = np.sum(x * x, axis=-1)
    frame = system.clifford_frame(x)
    return r2 * r2 - 2.0 * np.sum(frame * frame, axis=-1)


def fkm_gradient(system: CliffordSystem, x: np.ndarray) -> np.ndarray:
    """grad F = 4 |x|^2 x - 8 sum_i <P_i x, x> P_i x."""
    x = np.asarray(x, dtype=np.float64)
    r2 = np.sum(x * x, axis=-1)
    out = 4.0 * r2[..., None] * x
    for i in range(system.m + 1):
        px = system.apply(i, x)
        out -= 8.0 * np.sum(px * x, axis=-1)[..., None] * px
    return out


def laplacian_constant(system: CliffordSystem) -> float:
    """The c in Delta F = c |x|^2.

    Frozen from a finite-difference oracle over the built families (see the
    test suite); equals 8 (l - 2m - 1) = 8 (m2 - m1).
    """
    return 8.0 * (system.l - 2 * system.m - 1)


def fd_laplacian(system: CliffordSystem, x: np.ndarray, h: float = 0.05) -> np.ndarray:
    """Numerical Laplacian of F via Richardson-extrapolated second differences.

    The second central difference of a quartic carries a single h^2 error
    term, so (4 D(h) - D(2h)) / 3 is exact up to rounding.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[-1]

    def second_diff(step):
        acc = np.zeros(x.shape[:-1])
        f0 = fkm_polynomial(system, x)
        for d in range(n):
            e = np.zeros(n)
            e[d] = step
            acc += fkm_polynomial(system, x + e) - 2.0 * f0 + fkm_polynomial(
                system, x - e
            )
        return acc / (step * step)

    return (4.0 * second_diff(h) - second_diff(2.0 * h)) / 3.0


def verify_cartan_munzner(system: CliffordSystem, x: np.ndarray) -> tuple:
    """(grad_residual, laplace_residual) of the two Cartan-Munzner identities.

    grad_residual  = max | |grad F|^2 - 16 |x|^6 |
    laplace_residual = max | Delta F - c |x|^2 |  (Delta F by finite differences)
    """
    x = np.asarray(x, dtype=np.float64)
    r2 = np.sum(x * x, axis=-1)
    g = fkm_gradient(system, x)
    grad_res = np.abs(np.sum(g * g, axis=-1) - 16.0 * r2**3).max()
    lap = fd_laplacian(system, x)
    lap_res = np.abs(lap - laplacian_constant(system) * r2).max()
    return float(grad_res), float(lap_res)
