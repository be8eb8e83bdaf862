"""Evaluation-code machinery over GF(q): generator matrices, exact weight
distributions, minimum distance, and small dual distances.

A linear system of degree-at-most-2 polynomials in two variables is a list
of coefficient 6-tuples (a11, a12, a22, a13, a23, a33); evaluating it on
the ordered point set produces the generator matrix.  Weight distributions
are computed two independent ways, by full message enumeration (blocked,
XOR-based) and per projective message class through zero counting, and the
two are required to agree in the test suites.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence

import numpy as np

from .field import Field
from .geometry import Coeffs6, DeltaSet

ENUM_GUARD = 1 << 32          # hard bound on q^k for message enumeration
ENUM_DEFAULT_BUDGET = 1 << 24  # above this, demand an explicit big=True


class BudgetError(RuntimeError):
    """Enumeration would exceed the configured budget."""


@dataclass
class ConicSystem:
    """An ordered basis of degree-<=2 polynomials, as coefficient 6-tuples."""

    field: Field
    polys: list[Coeffs6]
    names: Optional[list[str]] = None

    def __post_init__(self) -> None:
        if not self.polys:
            raise ValueError("empty linear system")
        if coefficient_rank(self.field, self.polys) != len(self.polys):
            raise ValueError("basis polynomials are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.polys)


def coefficient_rank(F: Field, polys: Sequence[Coeffs6]) -> int:
    rows = [list(p) for p in polys]
    return gf_rank(F, rows)


def gf_rank(F: Field, rows: list[list[int]]) -> int:
    """Rank over GF(q) by Gaussian elimination on copies of the rows."""
    rows = [r[:] for r in rows]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = F.inv(rows[rank][col])
        rows[rank] = [F.mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a ^ F.mul(f, b) for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


@dataclass
class GeneratorMatrix:
    """k x n evaluation matrix; column j is the j-th point of the canonical
    point ordering.  `rank` is the achieved rank, reported as-is even when
    smaller than the number of basis polynomials."""

    field: Field
    entries: np.ndarray
    rank: int

    @property
    def k(self) -> int:
        return int(self.entries.shape[0])

    @property
    def n(self) -> int:
        return int(self.entries.shape[1])


def evaluate_system(system: ConicSystem, delta: DeltaSet) -> GeneratorMatrix:
    """Evaluate each basis polynomial on every point of the set."""
    F = system.field
    if delta.field != F:
        raise ValueError("system and point set live over different fields")
    monos = delta.conic_monomials()
    rows = []
    for poly in system.polys:
        row = [0] * len(monos)
        for j, m in enumerate(monos):
            acc = 0
            for c, v in zip(poly, m):
                if c and v:
                    acc ^= F.mul(c, v)
            row[j] = acc
        rows.append(row)
    entries = np.array(rows, dtype=F.np_dtype)
    return GeneratorMatrix(field=F, entries=entries, rank=gf_rank(F, [list(r) for r in rows]))


# ----------------------------------------------------------------------
# Weight distributions
# ----------------------------------------------------------------------

def _scaled_rows(F: Field, g: GeneratorMatrix) -> list[list[np.ndarray]]:
    """scaled[i][c] = c * row_i, for incremental codeword assembly."""
    out = []
    for i in range(g.k):
        row = g.entries[i]
        out.append([F.mul_col(row, c) for c in range(F.q)])
    return out


def _check_budget(q: int, k: int, big: bool) -> None:
    total = q ** k
    if total > ENUM_GUARD:
        raise BudgetError(f"q^k = {total} exceeds the hard enumeration bound 2^32")
    if total > ENUM_DEFAULT_BUDGET and not big:
        raise BudgetError(f"q^k = {total} needs big=True (default budget 2^24)")


def weight_distribution_enumerate(g: GeneratorMatrix, big: bool = False) -> Counter:
    """Exact weight distribution by enumerating all q^k messages.

    Messages are split into a prefix and a suffix; all suffix combinations
    are tabulated once and each prefix codeword is XORed against the whole
    table, so the dominant loop is vectorized.
    """
    F = g.field
    q, k, n = F.q, g.k, g.n
    _check_budget(q, k, big)
    scaled = _scaled_rows(F, g)
    k2 = min(k, max(1, int(np.ceil(k / 2))))
    k1 = k - k2
    suffix = np.zeros((1, n), dtype=F.np_dtype)
    for i in range(k1, k):
        blocks = [suffix ^ scaled[i][c] for c in range(q)]
        suffix = np.vstack(blocks)
    hist = np.zeros(n + 1, dtype=np.int64)
    if k1 == 0:
        weights = np.count_nonzero(suffix, axis=1)
        hist += np.bincount(weights, minlength=n + 1)
    else:
        for p in range(q ** k1):
            base = np.zeros(n, dtype=F.np_dtype)
            m = p
            for i in range(k1):
                c = m % q
                m //= q
                if c:
                    base ^= scaled[i][c]
            weights = np.count_nonzero(suffix ^ base, axis=1)
            hist += np.bincount(weights, minlength=n + 1)
    return Counter({w: int(c) for w, c in enumerate(hist) if c})


def weight_distribution_classes(g: GeneratorMatrix) -> Counter:
    """Exact weight distribution through projective message classes: each
    class contributes q - 1 codewords of weight n - (zeros of the class
    combination), plus the zero word."""
    F = g.field
    q, k, n = F.q, g.k, g.n
    if (q ** k - 1) // (q - 1) > 1 << 26:
        raise BudgetError("too many projective classes")
    scaled = _scaled_rows(F, g)
    counts: Counter = Counter({0: 1})
    for lead in range(k):
        reps = q ** (k - lead - 1)
        base = scaled[lead][1]
        for t in range(reps):
            word = base.copy()
            m = t
            for i in range(lead + 1, k):
                c = m % q
                m //= q
                if c:
                    word ^= scaled[i][c]
            w = n - int(np.count_nonzero(word == 0))
            counts[w] += q - 1
    return counts


def weight_distribution(g: GeneratorMatrix, method: str = "enumerate", big: bool = False) -> Counter:
    if method == "enumerate":
        return weight_distribution_enumerate(g, big=big)
    if method == "classes":
        return weight_distribution_classes(g)
    raise ValueError(f"unknown method {method!r}")


def min_distance(g: GeneratorMatrix, big: bool = False,
                 distribution: Optional[Counter] = None) -> int:
    dist = distribution if distribution is not None else weight_distribution_enumerate(g, big=big)
    nonzero = [w for w in dist if w > 0]
    if not nonzero:
        raise ValueError("the code has no nonzero codeword")
    return min(nonzero)


def weight_of_polynomial(F: Field, poly: Coeffs6, delta: DeltaSet) -> int:
    """n minus the number of zeros of the polynomial on the point set."""
    from .geometry import Conic, count_on_delta
    return len(delta) - count_on_delta(F, Conic(*poly), delta)


# ----------------------------------------------------------------------
# Dual distance via dependent column sets
# ----------------------------------------------------------------------

def dual_distance_upto(g: GeneratorMatrix, w_max: int = 4) -> Optional[int]:
    """Minimum size of a linearly dependent set of columns, when <= w_max
    (this equals the dual code's minimum distance); None if every set of
    w_max or fewer columns is independent."""
    if w_max > 4:
        raise ValueError("dual distance search is capped at weight 4")
    F = g.field
    cols = [tuple(int(v) for v in g.entries[:, j]) for j in range(g.n)]
    if any(all(v == 0 for v in col) for col in cols):
        return 1
    normalized = []
    for col in cols:
        lead = next(v for v in col if v)
        inv = F.inv(lead)
        normalized.append(tuple(F.mul(inv, v) for v in col))
    seen: dict[tuple, int] = {}
    for j, col in enumerate(normalized):
        if col in seen:
            return 2
        seen[col] = j
    for w in range(3, w_max + 1):
        if w > g.rank:
            return w  # more columns than the rank are always dependent
        if comb(g.n, w) > 2_000_000:
            raise BudgetError(f"C({g.n}, {w}) column subsets exceed the search budget")
        for subset in combinations(range(g.n), w):
            rows = [[cols[j][i] for j in subset] for i in range(g.k)]
            if gf_rank(F, rows) < w:
                return w
    return None


def singleton_ok(n: int, k: int, d: int) -> bool:
    return k + d <= n + 1
