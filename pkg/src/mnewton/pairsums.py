"""Sums of principal-minor products over subset pairs with fixed sizes and overlap.

The central quantity is ``sum A[alpha] * A[beta]`` over *ordered* pairs of
index sets with ``|alpha| = m1``, ``|beta| = m2`` and ``|alpha & beta| = k``.
The ordered-pair convention is what makes the square-expansion identities
in :func:`expansion_identity_check` come out exactly; it is fixed globally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charcoeff import normalized_coeffs
from .errors import InputError
from .linalg import as_matrix, principal_minors_all, subset_masks

PAIR_SUM_ORDER_CAP = 20
# max elements per vectorized pair block, keeps peak memory modest
_BLOCK_ELEMS = 1 << 22


def feasible_pair_params(n: int, m1: int, m2: int, k: int) -> bool:
    """True iff subset pairs with sizes (m1, m2) and overlap k exist in {1..n}."""
    return (0 <= k <= min(m1, m2)
            and max(m1, m2) <= n
            and m1 + m2 - k <= n)


def identity_pair_count(n: int, m1: int, m2: int, k: int) -> int:
    """Number of ordered subset pairs with sizes (m1, m2) and overlap k.

    This equals the pair sum evaluated on the identity matrix.  Closed
    form ``C(n,k) C(n-k, m1-k) C(n-m1, m2-k)``: choose the overlap, then
    the rest of alpha, then the rest of beta outside alpha.  The general
    form is validated against brute-force enumeration in the test suite.
    Infeasible parameters give 0.
    """
    if not feasible_pair_params(n, m1, m2, k):
        return 0
    return (math.comb(n, k)
            * math.comb(n - k, m1 - k)
            * math.comb(n - m1, m2 - k))


class MinorPairSums:
    """Pair sums of one matrix with per-size minor caching.

    All size-m principal minors are computed once and reused across every
    (m1, m2, k) query.  Pair reductions run over fixed colex-by-colex
    blocks, so repeated runs produce bit-identical sums.
    """

    def __init__(self, a, override_cap: bool = False):
        self.matrix = as_matrix(a)
        self.n = self.matrix.shape[0]
        if self.n > PAIR_SUM_ORDER_CAP and not override_cap:
            raise InputError(
                f"pair sums capped at n <= {PAIR_SUM_ORDER_CAP} "
                "(cost grows like C(n,m1)*C(n,m2)); pass override_cap=True to force")
        self._minors: dict[int, np.ndarray] = {}
        self._masks: dict[int, np.ndarray] = {}
        self._profiles: dict[tuple[int, int], np.ndarray] = {}

    def minors(self, m: int) -> np.ndarray:
        if m not in self._minors:
            self._minors[m] = principal_minors_all(self.matrix, m)
        return self._minors[m]

    def masks(self, m: int) -> np.ndarray:
        if m not in self._masks:
            self._masks[m] = subset_masks(self.n, m)
        return self._masks[m]

    def profile(self, m1: int, m2: int) -> np.ndarray:
        """Vector of pair sums for every overlap k = 0..min(m1, m2)."""
        if not (0 <= m1 <= self.n and 0 <= m2 <= self.n):
            return np.zeros(max(min(m1, m2) + 1, 0))
        key = (m1, m2)
        if key not in self._profiles:
            va, vb = self.minors(m1), self.minors(m2)
            ma, mb = self.masks(m1), self.masks(m2)
            kmax = min(m1, m2)
            out = np.zeros(kmax + 1)
            step = max(1, _BLOCK_ELEMS // max(1, vb.size))
            for lo in range(0, va.size, step):
                hi = min(lo + step, va.size)
                inter = np.bitwise_count(ma[lo:hi, None] & mb[None, :]).astype(np.intp)
                w = va[lo:hi, None] * vb[None, :]
                out += np.bincount(inter.ravel(), weights=w.ravel(), minlength=kmax + 1)
            self._profiles[key] = out
        return self._profiles[key]

    def value(self, m1: int, m2: int, k: int) -> float:
        """Pair sum for one (m1, m2, k); infeasible parameters give 0 (empty sum)."""
        if not feasible_pair_params(self.n, m1, m2, k):
            return 0.0
        return float(self.profile(m1, m2)[k])


def minor_pair_sum(a, m1: int, m2: int, k: int, override_cap: bool = False) -> float:
    """Sum of A[alpha] A[beta] over ordered pairs of sizes (m1, m2) with overlap k."""
    return MinorPairSums(a, override_cap=override_cap).value(m1, m2, k)


@dataclass(frozen=True)
class RatioReport:
    m: int
    k: int
    lhs: float      # balanced pair sum, normalized by its identity count
    rhs: float      # unbalanced (m+1, m-1) pair sum, normalized likewise
    margin: float   # lhs - rhs
    scale: float    # max(1, |lhs|, |rhs|)
    holds: bool


def ratio_check(a, m: int, k: int, tol: float = 1e-9,
                sums: MinorPairSums | None = None) -> RatioReport:
    """Compare identity-normalized pair sums of the (m, m) and (m+1, m-1) splits.

    A nonnegative margin at every feasible (m, k) is the inequality that
    M- and inverse-M matrices satisfy; the checker runs on any input and
    reports the margin either way.
    """
    sums = sums if sums is not None else MinorPairSums(a)
    n = sums.n
    if not (0 <= k < m < n):
        raise InputError(f"need 0 <= k < m < n, got (m, k) = ({m}, {k}) with n = {n}")
    d1 = identity_pair_count(n, m, m, k)
    d2 = identity_pair_count(n, m + 1, m - 1, k)
    if d1 == 0 or d2 == 0:
        raise InputError(
            f"(m, k) = ({m}, {k}) is infeasible for n = {n}: identity pair count is zero")
    lhs = sums.value(m, m, k) / d1
    rhs = sums.value(m + 1, m - 1, k) / d2
    margin = lhs - rhs
    scale = max(1.0, abs(lhs), abs(rhs))
    return RatioReport(m, k, lhs, rhs, margin, scale, margin >= -tol * scale)


@dataclass(frozen=True)
class PointwiseReport:
    m: int
    j: int
    lhs: float      # (m-j)   * pair_sum(m, m, j)
    rhs: float      # (m-j+1) * pair_sum(m+1, m-1, j)
    margin: float
    scale: float
    holds: bool


def pointwise_check(a, m: int, j: int, tol: float = 1e-9,
                    sums: MinorPairSums | None = None) -> PointwiseReport:
    """Un-normalized counted form of the same split comparison at one overlap j:
    (m-j) * pair_sum(m, m, j) >= (m-j+1) * pair_sum(m+1, m-1, j)."""
    sums = sums if sums is not None else MinorPairSums(a)
    n = sums.n
    if not (0 <= j <= m <= n - 1):
        raise InputError(f"need 0 <= j <= m <= n-1, got (m, j) = ({m}, {j}) with n = {n}")
    lhs = (m - j) * sums.value(m, m, j)
    rhs = (m - j + 1) * sums.value(m + 1, m - 1, j)
    margin = lhs - rhs
    scale = max(1.0, abs(lhs), abs(rhs))
    return PointwiseReport(m, j, lhs, rhs, margin, scale, margin >= -tol * scale)


def expansion_identity_check(a, m: int, tol: float = 1e-9,
                             sums: MinorPairSums | None = None) -> bool:
    """Verify the two square-expansion identities at index m.

    ``c_m^2`` equals the total (m, m) pair sum over C(n,m)^2, and
    ``c_{m-1} c_{m+1}`` equals the total (m+1, m-1) pair sum over
    C(n,m+1) C(n,m-1).  Both are algebraic identities valid for every
    real matrix; the left sides travel through the trace recursion, so
    this doubles as a cross-route consistency check.
    """
    sums = sums if sums is not None else MinorPairSums(a)
    n = sums.n
    if not 1 <= m <= n - 1:
        raise InputError(f"need 1 <= m <= n-1, got m = {m} with n = {n}")
    c = normalized_coeffs(sums.matrix)
    lhs_sq = c[m] ** 2
    rhs_sq = float(sums.profile(m, m).sum()) / math.comb(n, m) ** 2
    lhs_cross = c[m - 1] * c[m + 1]
    rhs_cross = (float(sums.profile(m + 1, m - 1).sum())
                 / (math.comb(n, m + 1) * math.comb(n, m - 1)))
    ok_sq = abs(lhs_sq - rhs_sq) <= tol * max(1.0, abs(lhs_sq), abs(rhs_sq))
    ok_cross = abs(lhs_cross - rhs_cross) <= tol * max(1.0, abs(lhs_cross), abs(rhs_cross))
    return ok_sq and ok_cross


def feasible_ratio_params(n: int) -> list[tuple[int, int]]:
    """All (m, k) with 0 <= k < m < n whose identity pair counts are nonzero."""
    return [(m, k) for m in range(1, n) for k in range(m) if 2 * m - k <= n]
