"""The affine plane over GF(q), the evaluation set, lines and conics.

The evaluation set Delta is the union of the parabolas Y = a*X^2 over the
trace-zero elements a, minus the origin; DeltaBar includes the origin.  It
equals the image of the points with distinct coordinates under the
symmetric-function map (x1, x2) -> (x1 + x2, x1 * x2).

Intersection counts of lines and conics with Delta are provided both by
closed-form case analysis and by direct evaluation over the point set; the
closed forms are never trusted without the brute-force oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from typing import Iterator, Optional

import numpy as np

from .field import ExtField, Field

Coeffs6 = tuple[int, int, int, int, int, int]  # (a11, a12, a22, a13, a23, a33)

# exceptional-family identifiers for intersection sizes outside the generic window
EXC_PARABOLA = "parabola-orbit"       # a12=a22=0, a23!=0, a13^2 = a23*a33
EXC_VERTICAL_PAIR = "vertical-pair"   # a12=a22=a23=0, a11*a13*a33 != 0


# ----------------------------------------------------------------------
# Lines
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    """a*X + b*Y + c = 0 with (a, b) != (0, 0), scaled so the first nonzero
    coefficient of (a, b, c) is 1."""

    a: int
    b: int
    c: int

    @property
    def is_vertical(self) -> bool:
        return self.b == 0

    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def make_line(F: Field, a: int, b: int, c: int) -> Line:
    if a == 0 and b == 0:
        raise ValueError("a line needs (a, b) != (0, 0)")
    s = F.inv(a if a else b)
    return Line(F.mul(s, a), F.mul(s, b), F.mul(s, c))


def eval_line(F: Field, line: Line, x: int, y: int) -> int:
    return F.mul(line.a, x) ^ F.mul(line.b, y) ^ line.c


def all_lines(F: Field) -> Iterator[Line]:
    """All q^2 + q affine lines, in canonical order."""
    for b in range(F.q):  # a = 1
        for c in range(F.q):
            yield Line(1, b, c)
    for c in range(F.q):  # a = 0, b = 1
        yield Line(0, 1, c)


# ----------------------------------------------------------------------
# Conics
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Conic:
    """a11*X^2 + a12*XY + a22*Y^2 + a13*X + a23*Y + a33 = 0, not all zero."""

    a11: int
    a12: int
    a22: int
    a13: int
    a23: int
    a33: int

    def coeffs(self) -> Coeffs6:
        return (self.a11, self.a12, self.a22, self.a13, self.a23, self.a33)

    def __iter__(self):
        return iter(self.coeffs())


def make_conic(F: Field, coeffs: Coeffs6) -> Conic:
    """Canonical class representative: first nonzero coefficient scaled to 1."""
    lead = next((c for c in coeffs if c), 0)
    if lead == 0:
        raise ValueError("a conic needs a nonzero coefficient")
    s = F.inv(lead)
    return Conic(*(F.mul(s, c) for c in coeffs))


def eval_conic(F: Field, conic: Conic, x: int, y: int) -> int:
    a11, a12, a22, a13, a23, a33 = conic.coeffs()
    return (
        F.mul(a11, F.mul(x, x))
        ^ F.mul(a12, F.mul(x, y))
        ^ F.mul(a22, F.mul(y, y))
        ^ F.mul(a13, x)
        ^ F.mul(a23, y)
        ^ a33
    )


def degeneracy_criterion(F: Field, conic: Conic) -> int:
    """a11*a23^2 + a12*a23*a13 + a22*a13^2 + a33*a12^2 (zero iff degenerate)."""
    a11, a12, a22, a13, a23, a33 = conic.coeffs()
    return (
        F.mul(a11, F.mul(a23, a23))
        ^ F.mul(a12, F.mul(a23, a13))
        ^ F.mul(a22, F.mul(a13, a13))
        ^ F.mul(a33, F.mul(a12, a12))
    )


def is_degenerate(F: Field, conic: Conic) -> bool:
    """True when the conic splits into lines (possibly coincident or over
    GF(q^2)) or degenerates to a point.

    The coefficient patterns with vanishing quadratic part (a11=a12=a22=0:
    a line; a12=a13=a23=0: a double line) are zeros of the same criterion,
    so no special-casing is needed; the singular-point search over
    PG(2, GF(q^2)) is kept as an independent oracle.
    """
    return degeneracy_criterion(F, conic) == 0


def projective_points(E: ExtField) -> Iterator[tuple]:
    """Canonical representatives of PG(2, K): (1:y:z), (0:1:z), (0:0:1)."""
    elems = list(E.elements())
    one, zero = E.one, E.zero
    for y in elems:
        for z in elems:
            yield (one, y, z)
    for z in elems:
        yield (zero, one, z)
    yield (zero, zero, one)


def degenerate_by_singular_point(F: Field, conic: Conic, ext2: Optional[ExtField] = None) -> bool:
    """Independent degeneracy oracle: search PG(2, GF(q^2)) for a point of the
    projective conic where all three partial derivatives vanish.

    Exhaustive (O(q^4) points), intended for q <= 8 cross-checks only.
    """
    E = ext2 if ext2 is not None else ExtField(F, 2)
    a11, a12, a22, a13, a23, a33 = (E.embed(c) for c in conic.coeffs())
    for X, Y, Z in projective_points(E):
        value = E.add(
            E.add(E.mul(a11, E.mul(X, X)), E.mul(a12, E.mul(X, Y))),
            E.add(
                E.add(E.mul(a22, E.mul(Y, Y)), E.mul(a13, E.mul(X, Z))),
                E.add(E.mul(a23, E.mul(Y, Z)), E.mul(a33, E.mul(Z, Z))),
            ),
        )
        if value != E.zero:
            continue
        dx = E.add(E.mul(a12, Y), E.mul(a13, Z))
        dy = E.add(E.mul(a12, X), E.mul(a23, Z))
        dz = E.add(E.mul(a13, X), E.mul(a23, Y))
        if dx == E.zero and dy == E.zero and dz == E.zero:
            return True
    return False


# ----------------------------------------------------------------------
# The evaluation set
# ----------------------------------------------------------------------

@dataclass
class DeltaSet:
    """Ordered evaluation set: {(x, a*x^2) : x != 0, trace(a) = 0}, plus the
    origin when include_origin is set.

    Points are ordered by (encoding of x, encoding of a), origin first, so
    generator matrices and weight tables reproduce across runs.
    """

    field: Field
    include_origin: bool
    points: list[tuple[int, int]]
    _xs: Optional[np.ndarray] = dataclass_field(default=None, repr=False)
    _ys: Optional[np.ndarray] = dataclass_field(default=None, repr=False)
    _monomials: Optional[list[tuple[int, ...]]] = dataclass_field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def xs(self) -> np.ndarray:
        if self._xs is None:
            self._xs = np.array([p[0] for p in self.points], dtype=self.field.np_dtype)
        return self._xs

    @property
    def ys(self) -> np.ndarray:
        if self._ys is None:
            self._ys = np.array([p[1] for p in self.points], dtype=self.field.np_dtype)
        return self._ys

    def conic_monomials(self) -> list[tuple[int, ...]]:
        """Per point: (x^2, xy, y^2, x, y, 1) for conic evaluation sweeps."""
        if self._monomials is None:
            F = self.field
            self._monomials = [
                (F.mul(x, x), F.mul(x, y), F.mul(y, y), x, y, 1) for x, y in self.points
            ]
        return self._monomials


def build_delta(F: Field, include_origin: bool = False) -> DeltaSet:
    points: list[tuple[int, int]] = [(0, 0)] if include_origin else []
    t0 = F.trace_zero_elements()
    for x in F.nonzero_elements():
        x2 = F.mul(x, x)
        points.extend((x, F.mul(a, x2)) for a in t0)
    expected = F.q * (F.q - 1) // 2 + (1 if include_origin else 0)
    assert len(points) == expected
    return DeltaSet(field=F, include_origin=include_origin, points=points)


def delta_csv(delta: DeltaSet) -> str:
    """The point set as CSV rows x,y in canonical order."""
    lines = ["x,y"]
    lines += [f"{x},{y}" for x, y in delta.points]
    return "\n".join(lines) + "\n"


def conic_hex(conic: Conic) -> list[str]:
    """Six hex-encoded coefficients in the fixed order (a11, a12, a22, a13,
    a23, a33)."""
    return [format(c, "#x") for c in conic.coeffs()]


def pi_map(F: Field, x1: int, x2: int) -> tuple[int, int]:
    """The symmetric-function map (x1, x2) -> (x1 + x2, x1 * x2)."""
    return (x1 ^ x2, F.mul(x1, x2))


def distinguished_points(F: Field) -> Iterator[tuple[int, int]]:
    """All q(q-1) points of the plane with distinct coordinates."""
    for x1 in F.elements():
        for x2 in F.elements():
            if x1 != x2:
                yield (x1, x2)


def count_on_delta(F: Field, zeroset: Conic | Line, delta: DeltaSet) -> int:
    """Exact |delta ∩ Z(f)| by evaluating f at every point of the set."""
    if isinstance(zeroset, Line):
        return sum(1 for x, y in delta.points if eval_line(F, zeroset, x, y) == 0)
    return sum(1 for x, y in delta.points if eval_conic(F, zeroset, x, y) == 0)


# ----------------------------------------------------------------------
# Closed-form line counts
# ----------------------------------------------------------------------

def line_delta_count_closed_form(F: Field, line: Line) -> int:
    """The literal case-analysis value for a line's intersection with the
    origin-included set:

      * Y = 0           -> q
      * Y = m*X + b, (m, b) != (0, 0)  -> (q - 2) / 2
      * X = c, c != 0   -> q / 2
      * X = 0           -> 1

    This case list is reproduced as stated so that it can be checked; it
    is not everywhere correct.  For slanted lines through the origin
    (b = 0, m != 0) the stated chain is internally inconsistent, and for
    the family Y = m*X + m^2 with m != 0 the true count is q - 1.  See
    line_counts for the verified values of both set variants.
    """
    q = F.q
    if not line.is_vertical:
        m = F.div(line.a, line.b)
        b = F.div(line.c, line.b)
        if m == 0 and b == 0:
            return q
        return (q - 2) // 2
    x0 = F.div(line.c, line.a)
    return q // 2 if x0 != 0 else 1


def line_counts(F: Field, line: Line) -> tuple[int, int]:
    """Verified closed-form pair (|line ∩ Delta|, |line ∩ DeltaBar|).

    One non-vertical family behaves unlike the generic slanted line: when
    the intercept is the square of the slope, Y = m*X + m^2 is the image of
    the coordinate-line pair {X1 = m} ∪ {X2 = m} under (x1, x2) ->
    (x1 + x2, x1*x2), so it meets the set in q - 1 points instead of
    (q - 2)/2.  The m = 0 member is the line Y = 0.  The generic preimage
    is a hyperbola with q - 1 points exactly one of which is diagonal,
    giving (q - 2)/2; a vertical line X = c != 0 lifts to a full line
    parallel to the diagonal, giving q/2.
    """
    q = F.q
    if not line.is_vertical:
        m = F.div(line.a, line.b)
        b = F.div(line.c, line.b)
        if b == F.mul(m, m):
            if m == 0:
                return q - 1, q  # the line Y = 0 passes through the origin
            return q - 1, q - 1
        if b != 0:
            return (q - 2) // 2, (q - 2) // 2
        return (q - 2) // 2, q // 2  # through the origin: the origin joins
    x0 = F.div(line.c, line.a)
    if x0 != 0:
        return q // 2, q // 2
    return 0, 1


# ----------------------------------------------------------------------
# Closed-form parabola-family counts (a12 = a22 = 0)
# ----------------------------------------------------------------------

def parabola_count_closed_form(F: Field, conic: Conic, include_origin: bool) -> int:
    """Predicted intersection size for every conic with a12 = a22 = 0.

    Dispatches over the eight-case list for a23 != 0 (non-degenerate
    parabolas), the trace dichotomy for vertical line pairs (a23 = 0), the
    remaining vertical-line shapes, and the pure line cases a11 = 0.
    """
    a11, a12, a22, a13, a23, a33 = conic.coeffs()
    if a12 or a22:
        raise ValueError("closed form requires a12 = a22 = 0")
    q = F.q
    origin_on = 1 if (a33 == 0 and include_origin) else 0

    if a23 != 0:
        if a11 == 0:
            # the line a13*X + a23*Y + a33 = 0
            nd, nb = line_counts(F, make_line(F, a13, a23, a33))
            return nb if include_origin else nd
        tr = F.trace(F.div(a11, a23))
        on_orbit = F.mul(a13, a13) == F.mul(a33, a23)  # a33 = a13^2 after a23 = 1
        if on_orbit:
            base = (q - 1) if tr == 0 else 0
            return base + origin_on
        base = (q // 2 - 1) if tr == 0 else q // 2
        return base + origin_on

    # a23 = 0: zero set defined by a11*X^2 + a13*X + a33 alone
    if a11 == 0 and a13 == 0:
        return 0  # nonzero constant: empty zero set
    if a11 == 0:
        # vertical line X = a33/a13
        nd, nb = line_counts(F, make_line(F, a13, 0, a33))
        return nb if include_origin else nd
    if a13 == 0:
        # double vertical line X = sqrt(a33/a11)
        x0 = F.sqrt(F.div(a33, a11))
        return (q // 2 if x0 != 0 else 0) + origin_on
    if a33 == 0:
        # lines X = 0 and X = a13/a11
        return q // 2 + origin_on
    # distinct vertical pair, rational over GF(q) iff trace is zero
    tr = F.trace(F.div(F.mul(a11, a33), F.mul(a13, a13)))
    return q if tr == 0 else 0


# ----------------------------------------------------------------------
# Generic window and exceptional families
# ----------------------------------------------------------------------

def in_window_half_open(count: int, q: int) -> bool:
    """(q - 2*sqrt(q) - 2)/2 <= count <= (q + 2*sqrt(q) - 1)/2, exactly.

    Comparisons against 2*sqrt(q) are done on squared integers so that odd
    powers of two need no floating point.
    """
    c2 = 2 * count
    lo_rhs = q - 2 - c2  # need 2*sqrt(q) >= lo_rhs
    if lo_rhs > 0 and lo_rhs * lo_rhs > 4 * q:
        return False
    hi_lhs = c2 - q + 1  # need hi_lhs <= 2*sqrt(q)
    if hi_lhs > 0 and hi_lhs * hi_lhs > 4 * q:
        return False
    return True


def window_bounds(q: int) -> tuple[float, float]:
    """The generic window endpoints as floats, for display only."""
    r = math.sqrt(q)
    return (q - 2 * r - 2) / 2, (q + 2 * r - 1) / 2


def classify_exceptional(F: Field, conic: Conic) -> Optional[str]:
    """Identify the enumerated coefficient families whose intersection sizes
    escape the generic window; None for a generic conic."""
    a11, a12, a22, a13, a23, a33 = conic.coeffs()
    if a12 or a22:
        return None
    if a23 != 0:
        if F.mul(a13, a13) == F.mul(a33, a23):
            return EXC_PARABOLA
        return None
    if a11 and a13 and a33:
        return EXC_VERTICAL_PAIR
    return None


def check_corollary_bounds(
    F: Field, conic: Conic, delta: Optional[DeltaSet] = None
) -> tuple[str, Optional[str], int]:
    """Classify a non-degenerate conic against the intersection-size window.

    Returns (classification, family, count) where classification is
    'in-window' or 'exceptional'.  Exceptional families are recognized by
    coefficient pattern and their count is still reported.
    """
    if is_degenerate(F, conic):
        raise ValueError("corollary bounds apply to non-degenerate conics")
    if delta is None:
        delta = build_delta(F, include_origin=False)
    count = count_on_delta(F, conic, delta)
    family = classify_exceptional(F, conic)
    if family is not None:
        return "exceptional", family, count
    if not in_window_half_open(count, F.q):
        return "out-of-window", None, count
    return "in-window", None, count
