"""Z / P / M / inverse-M classification and seeded generators of these classes.

The M test for Z-matrices uses the classical leading-principal-minor
characterization; the exhaustive all-minors P test is retained as an
oracle for small orders.  Generators are deterministic functions of a
seed so property tests are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GenerationError, InputError
from .linalg import (
    as_matrix,
    determinant,
    dual_index_set,
    enumerate_subsets,
    principal_minors_all,
)

P_TEST_MAX_N = 12
DUAL_CHECK_MAX_N = 10
# relative shifts probed when deciding membership in the singular-M closure
SINGULAR_PROBE_SHIFTS = (1e-8, 1e-6, 1e-4)
GENERATOR_KINDS = ("M", "inverse-M", "singular-M", "similarity-conjugated-M")
POWER_ITERATION_TOL = 1e-10
POWER_ITERATION_MAX_STEPS = 100_000

M_NONSINGULAR = "M-nonsingular"
M_SINGULAR = "M-singular"
NOT_M = "not-M"

_MAX_WITNESSES_PER_SIZE = 4


@dataclass(frozen=True)
class MatrixClassReport:
    is_z: bool
    is_p: bool | None            # None: not evaluated (n too large for the oracle)
    m_class: str                 # M_NONSINGULAR | M_SINGULAR | NOT_M
    is_inverse_m: bool
    witnesses: list = field(default_factory=list)      # (alpha, minor) sign violations
    z_violations: list = field(default_factory=list)   # ((i, j), entry) positive off-diagonals


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic recipe for one random matrix: kind, order, seed, margin.

    ``margin`` is the relative diagonal-dominance surplus of the M kinds.
    """
    kind: str
    n: int
    seed: int
    margin: float = 0.1

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise InputError(
                f"unknown generator kind {self.kind!r}; expected one of {GENERATOR_KINDS}")
        if self.n < 1:
            raise InputError("generator order n must be >= 1")
        if not self.margin > 0:
            raise InputError("diagonal-dominance margin must be positive")


def _z_violations(a: np.ndarray, tol: float) -> list:
    viol = []
    n = a.shape[0]
    for i in range(n):
        for j in range(n):
            if i != j and a[i, j] > tol:
                viol.append(((i + 1, j + 1), float(a[i, j])))
    return viol


def _leading_minors(a: np.ndarray) -> list[float]:
    return [determinant(a[:k, :k]) for k in range(1, a.shape[0] + 1)]


def _m_nonsingular(a: np.ndarray, tol: float) -> tuple[bool, list]:
    """Z-test plus positive leading minors (valid M characterization for Z-matrices)."""
    if _z_violations(a, tol):
        return False, []
    bad = [(tuple(range(1, k + 2)), float(lm))
           for k, lm in enumerate(_leading_minors(a)) if lm <= tol]
    return not bad, bad


def _singular_probe(a: np.ndarray, tol: float) -> bool:
    """True when every shifted copy a + eps*I passes the nonsingular M test."""
    scale = float(np.max(np.abs(a))) or 1.0
    eye = np.eye(a.shape[0])
    return all(_m_nonsingular(a + eps * scale * eye, tol)[0]
               for eps in SINGULAR_PROBE_SHIFTS)


def _is_inverse_m(a: np.ndarray, tol: float) -> bool:
    if abs(determinant(a)) <= tol:
        return False
    try:
        inv = np.linalg.inv(a)
    except np.linalg.LinAlgError:
        return False
    return _m_nonsingular(inv, tol)[0]


def classify(a, tol: float = 1e-9) -> MatrixClassReport:
    """Classify a square real matrix by sign structure and minor positivity.

    ``is_p`` is decided by the exhaustive all-minors oracle for
    n <= P_TEST_MAX_N.  For larger Z-matrices it is inferred from the
    leading minors when possible, and reported as None (not evaluated)
    otherwise.  ``m_class`` distinguishes nonsingular M-matrices from
    members of the singular closure, probed by the eps-shift test.
    """
    mat = as_matrix(a)
    n = mat.shape[0]
    zv = _z_violations(mat, tol)
    is_z = not zv
    witnesses: list = []
    nonsing = False
    if is_z:
        nonsing, lead_bad = _m_nonsingular(mat, tol)
        witnesses.extend(lead_bad)

    if n <= P_TEST_MAX_N:
        is_p: bool | None = True
        for m in range(1, n + 1):
            minors = principal_minors_all(mat, m)
            bad_idx = np.nonzero(minors <= tol)[0]
            if bad_idx.size:
                is_p = False
                subs = enumerate_subsets(n, m)
                for idx in bad_idx[:_MAX_WITNESSES_PER_SIZE]:
                    witnesses.append((subs[int(idx)], float(minors[int(idx)])))
    else:
        is_p = True if (is_z and nonsing) else None

    if is_z and nonsing:
        m_class = M_NONSINGULAR
    elif is_z and _singular_probe(mat, tol):
        m_class = M_SINGULAR
    else:
        m_class = NOT_M

    return MatrixClassReport(is_z, is_p, m_class, _is_inverse_m(mat, tol),
                             witnesses, zv)


def perron_value(b, tol: float = POWER_ITERATION_TOL,
                 max_steps: int = POWER_ITERATION_MAX_STEPS) -> float:
    """Dominant eigenvalue of a nonnegative matrix by power iteration."""
    mat = as_matrix(b)
    n = mat.shape[0]
    v = np.ones(n) / math.sqrt(n)
    lam = 0.0
    for _ in range(max_steps):
        w = mat @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0
        v = w / norm
        new = float(v @ (mat @ v))
        if abs(new - lam) <= tol * max(1.0, abs(new)):
            return new
        lam = new
    raise GenerationError(
        f"power iteration did not converge within {max_steps} steps")


def well_conditioned_transform(n: int, rng: np.random.Generator,
                               max_condition: float = 100.0) -> np.ndarray:
    """Random invertible matrix with condition number at most ``max_condition``.

    Built from an SVD of a Gaussian draw with the small singular values
    clamped, so the bound holds by construction.
    """
    g = rng.standard_normal((n, n))
    u, s, vt = np.linalg.svd(g)
    s = np.maximum(s, s[0] / max_condition)
    return (u * s) @ vt


def _random_m(rng: np.random.Generator, n: int, margin: float) -> np.ndarray:
    b = rng.uniform(0.0, 1.0, (n, n))
    s = (1.0 + margin) * float(np.max(b.sum(axis=1)))
    return s * np.eye(n) - b


def generate(spec: GeneratorSpec) -> np.ndarray:
    """Draw the matrix described by ``spec``; identical specs give identical output."""
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    if spec.kind == "M":
        return _random_m(rng, n, spec.margin)
    if spec.kind == "inverse-M":
        return np.linalg.inv(_random_m(rng, n, spec.margin))
    if spec.kind == "singular-M":
        b = rng.uniform(0.0, 1.0, (n, n))
        return perron_value(b) * np.eye(n) - b
    m = _random_m(rng, n, spec.margin)
    t = well_conditioned_transform(n, rng)
    return t @ m @ np.linalg.inv(t)


def dual_minor_identity_check(a, tol: float = 1e-8) -> bool:
    """Verify inv(A)[alpha] == A[complement(alpha)] / det A over all alpha.

    Holds for every nonsingular matrix; checked exhaustively, so the order
    is capped at ``DUAL_CHECK_MAX_N``.  Returns True iff the worst relative
    deviation is within ``tol``.
    """
    mat = as_matrix(a)
    n = mat.shape[0]
    if n > DUAL_CHECK_MAX_N:
        raise InputError(f"dual minor check capped at n <= {DUAL_CHECK_MAX_N}")
    det = determinant(mat)
    if abs(det) <= tol:
        raise InputError("matrix is singular within tolerance")
    inv = np.linalg.inv(mat)
    worst = 0.0
    for m in range(n + 1):
        lhs = principal_minors_all(inv, m)
        rhs_all = principal_minors_all(mat, n - m)
        rank = {s: i for i, s in enumerate(enumerate_subsets(n, n - m))}
        for i, alpha in enumerate(enumerate_subsets(n, m)):
            rhs = rhs_all[rank[dual_index_set(alpha, n)]] / det
            dev = abs(lhs[i] - rhs) / max(1.0, abs(lhs[i]), abs(rhs))
            worst = max(worst, dev)
    return worst <= tol
