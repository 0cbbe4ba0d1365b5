"""CI-matrix construction, closed-form determinant, and determinant oracles.

The CI-matrix (controllability intermixing matrix) of nodes (x1, ..., xn)
is the n x n matrix whose (h, k) entry is e_{n-h} of the nodes with node k
removed: row 1 carries the degree-(n-1) leave-one-out products, the bottom
row is all ones.  Its determinant equals the pairwise-difference product
prod_{i<j} (xj - xi), which ``det_closed_form`` evaluates in O(n^2)
without forming the matrix.

Three independent determinant oracles witness that identity:

* ``det_bareiss`` -- fraction-free elimination, exact over int/Fraction;
* ``det_lu`` -- partial-pivot LU over floats (``lu_logdet`` for sizes where
  the plain value would overflow);
* ``det_cofactor`` -- memoized Laplace expansion for polynomial entries,
  O(n * 2^n) ring multiplies, guarded by a size cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .multipoly import variables
from .scalars import (
    abs_value,
    exact_div,
    is_exact,
    one_like,
    zero_like,
)
from .symfunc import (
    elem_sym_all,
    elem_sym_leave_one_out,
    leave_one_out_table_float,
    leave_one_out_table_float_deflate,
    resolve_mode,
)


class SizeCapError(ValueError):
    """Raised when an exponential-cost operation exceeds its size cap."""


@dataclass(frozen=True)
class CIMatrix:
    """A CI-matrix together with the nodes it was built from.

    ``entries[h-1][k-1]`` is the (h, k) entry; rows are indexed 1..n top to
    bottom, columns 1..n, matching the node order.
    """

    n: int
    nodes: tuple
    entries: tuple

    def entry(self, h: int, k: int):
        return self.entries[h - 1][k - 1]

    def row(self, h: int) -> tuple:
        return self.entries[h - 1]

    def column(self, k: int) -> tuple:
        return tuple(row[k - 1] for row in self.entries)


def build_ci_matrix(nodes: Sequence, mode: str = "auto") -> CIMatrix:
    """Construct the CI-matrix of the given nodes.

    Exact scalars default to the deflation build (O(n^2) ring operations
    total); floats default to the stable per-column recurrence.
    """
    n = len(nodes)
    if n == 0:
        raise ValueError("node list must not be empty")
    if isinstance(nodes[0], float):
        concrete = resolve_mode(nodes, mode)
        if concrete == "stable":
            table = leave_one_out_table_float(nodes)
        else:
            table = leave_one_out_table_float_deflate(nodes)
        entries = tuple(
            tuple(float(table[n - h, k]) for k in range(n)) for h in range(1, n + 1)
        )
        return CIMatrix(n, tuple(float(x) for x in nodes), entries)
    concrete = resolve_mode(nodes, mode)
    full = elem_sym_all(nodes) if concrete == "deflate" else None
    columns = [
        elem_sym_leave_one_out(nodes, k, mode=concrete, full_table=full)
        for k in range(1, n + 1)
    ]
    entries = tuple(
        tuple(columns[k][n - h] for k in range(n)) for h in range(1, n + 1)
    )
    return CIMatrix(n, tuple(nodes), entries)


def symbolic_ci_matrix(n: int) -> CIMatrix:
    """CI-matrix over the symbolic nodes u1..un."""
    if n < 1:
        raise ValueError("need at least one node")
    return build_ci_matrix(variables(n))


def det_closed_form(nodes: Sequence):
    """Pairwise-difference product prod_{i<j} (nodes[j] - nodes[i]).

    This is the CI-determinant, evaluated in O(n^2) scalar operations
    straight from the nodes; the matrix is never formed.
    """
    n = len(nodes)
    if n == 0:
        raise ValueError("node list must not be empty")
    det = one_like(nodes[0])
    for i in range(n):
        for j in range(i + 1, n):
            det = det * (nodes[j] - nodes[i])
    return det


def _rows(matrix) -> list[list]:
    rows = matrix.entries if isinstance(matrix, CIMatrix) else matrix
    rows = [list(row) for row in rows]
    if not rows:
        raise ValueError("empty matrix")
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    return rows


def det_bareiss(matrix):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Entries must support exact division (int, Fraction); every interior
    division in the recurrence is exact over an integral domain, so the
    result is exact with no fraction blow-up beyond entry growth.
    """
    m = _rows(matrix)
    n = len(m)
    zero = zero_like(m[0][0])
    sign = 1
    prev = one_like(m[0][0])
    for k in range(n - 1):
        pivot_row = next((r for r in range(k, n) if m[r][k] != zero), None)
        if pivot_row is None:
            return zero
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * pivot - m[i][k] * m[k][j], prev)
            m[i][k] = zero
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def _float_matrix(matrix) -> np.ndarray:
    rows = matrix.entries if isinstance(matrix, CIMatrix) else matrix
    a = np.array(rows, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError("matrix is not square")
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite matrix entry")
    return a


def det_lu(matrix, pivot_min: float = 1e-300) -> float:
    """Float determinant by LU with partial pivoting.

    A pivot whose magnitude falls below ``pivot_min`` is treated as a
    numerically singular matrix and yields 0.0.
    """
    sign, diagonal = _lu_pivots(matrix, pivot_min)
    if sign == 0:
        return 0.0
    return sign * float(np.prod(diagonal))


def lu_logdet(matrix, pivot_min: float = 1e-300) -> tuple[int, float]:
    """(sign, log|det|) by the same elimination as :func:`det_lu`.

    The log-magnitude form stays finite for sizes where the plain product
    of pivots would overflow; a singular matrix gives (0, -inf).
    """
    sign, diagonal = _lu_pivots(matrix, pivot_min)
    if sign == 0:
        return 0, float("-inf")
    if int(np.count_nonzero(diagonal < 0.0)) % 2:
        sign = -sign
    return sign, float(np.sum(np.log(np.abs(diagonal))))


def _lu_pivots(matrix, pivot_min: float) -> tuple[int, np.ndarray]:
    a = _float_matrix(matrix)
    n = a.shape[0]
    sign = 1
    for k in range(n - 1):
        pivot_row = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[pivot_row, k]) < pivot_min:
            return 0, a.diagonal()
        if pivot_row != k:
            a[[k, pivot_row]] = a[[pivot_row, k]]
            sign = -sign
        factors = a[k + 1 :, k] / a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(factors, a[k, k + 1 :])
        a[k + 1 :, k] = 0.0
    if abs(a[n - 1, n - 1]) < pivot_min:
        return 0, a.diagonal()
    return sign, a.diagonal().copy()


@lru_cache(maxsize=8)
def _pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def closed_form_logdet(nodes: Sequence[float]) -> tuple[int, float]:
    """(sign, log|det|) of the pairwise-difference product, vectorized.

    O(n^2) work on the nodes alone; the counterpart of :func:`lu_logdet`
    for benchmark-scale sizes.
    """
    x = np.asarray(nodes, dtype=float)
    if x.ndim != 1 or x.shape[0] == 0:
        raise ValueError("node list must not be empty")
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite float node")
    n = x.shape[0]
    if n == 1:
        return 1, 0.0
    i, j = _pair_indices(n)
    diffs = x[j] - x[i]
    if np.any(diffs == 0.0):
        return 0, float("-inf")
    sign = -1 if int(np.count_nonzero(diffs < 0.0)) % 2 else 1
    return sign, float(np.sum(np.log(np.abs(diffs))))


def det_cofactor(matrix, size_cap: int = 7):
    """Determinant by Laplace expansion with column-subset memoization.

    Works over any ring (no division), so this is the oracle of choice for
    polynomial entries.  Cost is O(n * 2^n) ring multiplies, hence the cap.
    """
    m = _rows(matrix)
    n = len(m)
    if n > size_cap:
        raise SizeCapError(f"cofactor expansion capped at size {size_cap}, got {n}")
    zero = zero_like(m[0][0])
    minors = {0: one_like(m[0][0])}
    for size in range(1, n + 1):
        row = m[n - size]
        next_minors = {}
        for cols in combinations(range(n), size):
            mask = 0
            for c in cols:
                mask |= 1 << c
            det = zero
            negate = False
            for c in cols:
                entry = row[c]
                if not (entry == zero):
                    term = entry * minors[mask ^ (1 << c)]
                    det = det - term if negate else det + term
                negate = not negate
            next_minors[mask] = det
        minors = next_minors
    return minors[(1 << n) - 1]


@dataclass
class DetReport:
    """Closed form vs oracle, with the observed discrepancy."""

    closed_form: object
    oracle: object
    oracle_kind: str  # "bareiss" | "lu" | "cofactor"
    discrepancy: object
    exact: bool

    def agrees(self, rel_tol: float = 1e-8) -> bool:
        if self.exact:
            return self.discrepancy == 0
        scale = max(abs(self.closed_form), abs(self.oracle))
        return abs(self.discrepancy) <= rel_tol * scale if scale else True


def compare_determinants(nodes: Sequence, oracle_kind: str) -> DetReport:
    """Evaluate the closed form and the requested oracle on the same nodes."""
    if oracle_kind == "bareiss":
        closed = det_closed_form(nodes)
        oracle = det_bareiss(build_ci_matrix(nodes))
        return DetReport(closed, oracle, "bareiss", closed - oracle, exact=True)
    if oracle_kind == "lu":
        floats = [float(x) for x in nodes]
        closed = det_closed_form(floats)
        oracle = det_lu(build_ci_matrix(floats))
        return DetReport(closed, oracle, "lu", closed - oracle, exact=False)
    if oracle_kind == "cofactor":
        closed = det_closed_form(nodes)
        oracle = det_cofactor(build_ci_matrix(nodes))
        return DetReport(closed, oracle, "cofactor", closed - oracle,
                         exact=is_exact(nodes[0]))
    raise ValueError(f"unknown oracle {oracle_kind!r}")


@dataclass
class DualityResidual:
    """Worst-case residuals of the signed power-sum identity (below)."""

    max_offdiag: object
    max_diag_rel: object
    scale: object  # largest |term| seen; normalizes float off-diagonals


def vandermonde_duality_residual(nodes: Sequence, matrix: CIMatrix | None = None) -> DualityResidual:
    """Check that CI columns are alternating coefficient vectors.

    Column k of the CI-matrix holds, up to alternating signs, the
    coefficients of p_k(t) = prod_{i != k} (t - x_i).  Evaluating that sum
    at every node gives

        sum_{h=1}^{n} (-1)^{n-h} * x_j^{h-1} * M[h][k]
            = 0                          for j != k,
            = prod_{i != k} (x_k - x_i)  for j == k.

    Off-diagonal residuals are exactly zero over exact scalars; the
    diagonal is compared against the directly computed product.
    """
    n = len(nodes)
    if n == 0:
        raise ValueError("node list must not be empty")
    if matrix is None:
        matrix = build_ci_matrix(nodes)
    zero = zero_like(nodes[0])
    one = one_like(nodes[0])
    max_offdiag = abs_value(zero)
    max_diag_rel = abs_value(zero)
    scale = abs_value(one)
    for j in range(1, n + 1):
        powers = [one]
        for _ in range(n - 1):
            powers.append(powers[-1] * nodes[j - 1])
        for k in range(1, n + 1):
            total = zero
            for h in range(1, n + 1):
                term = powers[h - 1] * matrix.entry(h, k)
                total = total - term if (n - h) % 2 else total + term
                magnitude = abs_value(term)
                if magnitude > scale:
                    scale = magnitude
            if j == k:
                expected = one
                for i in range(1, n + 1):
                    if i != k:
                        expected = expected * (nodes[j - 1] - nodes[i - 1])
                diff = abs_value(total - expected)
                if expected == zero:
                    rel = diff
                elif diff == abs_value(zero):
                    rel = abs_value(zero)
                else:
                    rel = diff / abs_value(expected)
                if rel > max_diag_rel:
                    max_diag_rel = rel
            else:
                magnitude = abs_value(total)
                if magnitude > max_offdiag:
                    max_offdiag = magnitude
    return DualityResidual(max_offdiag, max_diag_rel, scale)


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a 0-based index sequence."""
    inversions = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inversions += 1
    return -1 if inversions % 2 else 1
