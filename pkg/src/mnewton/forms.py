"""Subset-overlap quadratic forms: construction, PSD checks, structure identities.

All four form matrices are indexed by the colex-ordered size-m subsets of
{1..n} and their entries depend only on the overlap ``j = |alpha & beta|``:

    phi        -> j                      (Gramian of subset incidence vectors)
    tilde_phi  -> m - j + 1
    tilde_psi  -> 1 / (m - j + 1)        (entrywise reciprocal of tilde_phi)
    psi        -> m(n-m) - (m+1)(n-m+1)(m-j)/(m-j+1)

The forms are real symmetric, so real-spectrum PSD checking decides
semidefiniteness of the associated Hermitian forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError
from .linalg import (
    as_matrix,
    enumerate_subsets,
    principal_minors_all,
    subset_masks,
    sym_eigenvalues,
)

FORM_KINDS = ("phi", "tilde_phi", "tilde_psi", "psi")
FORM_DIMENSION_CAP = 5000


@dataclass(frozen=True)
class FormMatrix:
    n: int
    m: int
    kind: str
    entries: np.ndarray   # C(n,m) x C(n,m), symmetric

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def overlap_matrix(n: int, m: int) -> np.ndarray:
    """Integer matrix of pairwise subset intersection sizes, colex order."""
    masks = subset_masks(n, m)
    return np.bitwise_count(masks[:, None] & masks[None, :]).astype(np.int64)


def _check_form_params(n: int, m: int, override_cap: bool) -> int:
    if not 1 <= m <= n - 1:
        raise InputError(f"need 1 <= m <= n-1, got m = {m} with n = {n}")
    dim = math.comb(n, m)
    if dim > FORM_DIMENSION_CAP and not override_cap:
        raise InputError(
            f"form dimension C({n},{m}) = {dim} exceeds cap {FORM_DIMENSION_CAP}; "
            "pass override_cap=True to force")
    return dim


def build_form(n: int, m: int, kind: str, override_cap: bool = False) -> FormMatrix:
    """Build the overlap-indexed form matrix of the given kind on size-m subsets."""
    if kind not in FORM_KINDS:
        raise InputError(f"unknown form kind {kind!r}; expected one of {FORM_KINDS}")
    _check_form_params(n, m, override_cap)
    j = overlap_matrix(n, m)
    if kind == "phi":
        entries = j.astype(float)
    elif kind == "tilde_phi":
        entries = (m - j + 1).astype(float)
    elif kind == "tilde_psi":
        entries = 1.0 / (m - j + 1)
    else:
        entries = m * (n - m) - (m + 1) * (n - m + 1) * (m - j) / (m - j + 1.0)
    return FormMatrix(n, m, kind, entries)


def psd_check(form, tol: float = 1e-8) -> tuple[bool, float]:
    """(is_psd, min_eigenvalue), with threshold ``-tol * maxabs(entries)``."""
    entries = form.entries if isinstance(form, FormMatrix) else as_matrix(form)
    min_eig = float(sym_eigenvalues(entries)[0])
    maxabs = float(np.max(np.abs(entries)))
    return min_eig >= -tol * maxabs, min_eig


def incidence_matrix(n: int, m: int) -> np.ndarray:
    """0/1 matrix with one row per colex size-m subset, one column per element."""
    subs = enumerate_subsets(n, m)
    v = np.zeros((len(subs), n), dtype=np.int64)
    for r, s in enumerate(subs):
        for i in s:
            v[r, i - 1] = 1
    return v


def minor_vector(a, m: int) -> np.ndarray:
    """Vector of all size-m principal minors of ``a`` in the colex basis order."""
    return principal_minors_all(a, m)


@dataclass(frozen=True)
class StructureReport:
    n: int
    m: int
    gramian_exact: bool        # phi == V V^T entrywise
    complement_exact: bool     # tilde_phi + phi == (m+1) * ones entrywise
    reciprocal_max_dev: float  # tilde_psi vs entrywise 1 / tilde_phi
    affine_max_dev: float      # psi vs (m+1)(n-m+1) tilde_psi - (n+1) * ones
    null_vector_max: float     # max |psi @ e|, normalized by maxabs(psi)
    ok: bool


def structure_checks(n: int, m: int, tol: float = 1e-10,
                     override_cap: bool = False) -> StructureReport:
    """Verify the structural relations tying the four forms together.

    Integer relations (Gramian factorization, complement to the rank-one
    multiple of ones) are required exactly; the floating relations must
    hold within ``tol`` and the all-ones vector must annihilate psi within
    ``tol * maxabs(psi)``.
    """
    _check_form_params(n, m, override_cap)
    j = overlap_matrix(n, m)
    v = incidence_matrix(n, m)
    gramian_exact = bool(np.array_equal(v @ v.T, j))

    phi = build_form(n, m, "phi", override_cap).entries
    tilde_phi = build_form(n, m, "tilde_phi", override_cap).entries
    tilde_psi = build_form(n, m, "tilde_psi", override_cap).entries
    psi = build_form(n, m, "psi", override_cap).entries

    complement_exact = bool(np.array_equal(tilde_phi + phi,
                                           float(m + 1) * np.ones_like(phi)))
    reciprocal_max_dev = float(np.max(np.abs(tilde_psi - 1.0 / tilde_phi)))
    affine = (m + 1) * (n - m + 1) * tilde_psi - (n + 1) * np.ones_like(psi)
    affine_max_dev = float(np.max(np.abs(psi - affine)))
    psi_scale = float(np.max(np.abs(psi))) or 1.0
    null_vector_max = float(np.max(np.abs(psi @ np.ones(psi.shape[0])))) / psi_scale

    ok = (gramian_exact and complement_exact
          and reciprocal_max_dev <= tol
          and affine_max_dev <= tol * psi_scale
          and null_vector_max <= tol)
    return StructureReport(n, m, gramian_exact, complement_exact,
                           reciprocal_max_dev, affine_max_dev,
                           null_vector_max, ok)


def binomial_identity_sum(n: int, m: int) -> Fraction:
    """Exact rational value of the overlap-weight identity sum.

    ``sum_j (m(n-m) - (m+1)(n-m+1)(m-j)/(m-j+1)) C(m,j) C(n-m,m-j)``
    evaluated in big-integer rational arithmetic; conformant output is
    exactly zero for every 1 <= m <= n-1.
    """
    if not 1 <= m <= n - 1:
        raise InputError(f"need 1 <= m <= n-1, got m = {m} with n = {n}")
    total = Fraction(0)
    for j in range(m + 1):
        weight = (Fraction(m * (n - m))
                  - Fraction((m + 1) * (n - m + 1) * (m - j), m - j + 1))
        total += weight * math.comb(m, j) * math.comb(n - m, m - j)
    return total


def quadratic_apply(form: FormMatrix, t) -> float:
    """Evaluate the quadratic form t^T F t in the colex basis.

    With ``t = minor_vector(A, m)`` and the psi kind this is the quantity
    whose nonnegativity forces the corresponding Newton margin.
    """
    vec = np.asarray(t, dtype=float).ravel()
    if vec.size != form.dim:
        raise InputError(
            f"vector length {vec.size} does not match form dimension {form.dim}")
    return float(vec @ form.entries @ vec)
