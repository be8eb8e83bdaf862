"""Exhaustive verification suites over all conic classes.

Every suite checks stated closed forms and identities against brute-force
ground truth.  The sweeps are vectorized over projective coefficient
classes (numpy table lookups), and each vectorized path is cross-checked
against the scalar implementations on a deterministic sample of classes,
so a bug in the fast path cannot silently pass.

A failing check is reported with counterexample data; nothing is patched
to make a stated claim come out true.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Optional, Sequence

import numpy as np

from .field import ExtField, Field
from .geometry import (
    Conic,
    DeltaSet,
    all_lines,
    build_delta,
    count_on_delta,
    degenerate_by_singular_point,
    distinguished_points,
    in_window_half_open,
    line_counts,
    line_delta_count_closed_form,
    make_conic,
    parabola_count_closed_form,
    pi_map,
)
from . import curves

SAMPLE_CHECKS = 40  # scalar cross-checks per vectorized sweep


@dataclass
class Check:
    name: str
    ok: bool
    expected: object = None
    actual: object = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "note": self.note,
        }


@dataclass
class SuiteReport:
    suite: str
    q: int
    modulus: int
    checks: list[Check] = dataclass_field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, expected=None, actual=None, note: str = "") -> None:
        self.checks.append(Check(name, bool(ok), expected, actual, note))

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "q": self.q,
            "modulus": format(self.modulus, "#x"),
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "checks": [c.to_dict() for c in self.checks],
        }


def _jsonable(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


# ----------------------------------------------------------------------
# Vectorized class enumeration and zero counting
# ----------------------------------------------------------------------

def projective_class_columns(q: int, width: int, dtype=np.uint8) -> list[np.ndarray]:
    """Coefficient columns of all (q^width - 1)/(q - 1) projective classes,
    ordered with the leading 1 moving right and the tail in product order
    (last coordinate fastest)."""
    cols = [[] for _ in range(width)]
    for lead in range(width):
        tail_len = width - lead - 1
        reps = q ** tail_len
        idx = np.arange(reps, dtype=np.int64)
        for j in range(lead):
            cols[j].append(np.zeros(reps, dtype=dtype))
        cols[lead].append(np.ones(reps, dtype=dtype))
        for j in range(tail_len):
            power = q ** (tail_len - 1 - j)
            cols[lead + 1 + j].append(((idx // power) % q).astype(dtype))
    return [np.concatenate(parts) for parts in cols]


def conic_class_columns(F: Field) -> list[np.ndarray]:
    return projective_class_columns(F.q, 6, F.np_dtype)


def zero_counts(F: Field, coeff_arrays: Sequence[np.ndarray],
                point_monomials: Sequence[Sequence[int]]) -> np.ndarray:
    """For each class, the number of points whose monomial combination
    evaluates to zero.  coeff_arrays[i] pairs with point_monomials[*][i]."""
    n = len(coeff_arrays[0])
    counts = np.zeros(n, dtype=np.int64)
    for monos in point_monomials:
        acc: Optional[np.ndarray] = None
        for arr, m in zip(coeff_arrays, monos):
            if m == 0:
                continue
            term = F.mul_col(arr, int(m))
            acc = term if acc is None else acc ^ term
        if acc is None:
            counts += 1
        else:
            counts += (acc == 0)
    return counts


def conic_monomials_at(F: Field, pts: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    return [(F.mul(x, x), F.mul(x, y), F.mul(y, y), x, y, 1) for x, y in pts]


def grid_points(F: Field) -> list[tuple[int, int]]:
    return [(x, y) for x in F.elements() for y in F.elements()]


def quartic_f_monomials(F: Field, pts, s: int) -> list[tuple[int, ...]]:
    """Monomial values of the pullback quartic divided by X^s, per point
    (x, t), aligned with coefficient order (a11, a12, a22, a13, a23, a33);
    entries for coefficients absent at this s are zero."""
    out = []
    for x, t in pts:
        tt = F.mul(t, t) ^ t            # t^2 + t
        t4 = F.mul(tt, tt)              # t^4 + t^2
        xp = [1, x, F.mul(x, x)]
        xp.append(F.mul(xp[2], x))
        xp.append(F.mul(xp[3], x))
        def xpow(i):
            return xp[i - s]
        m11 = xpow(2)
        m12 = F.mul(tt, xpow(3))
        m22 = F.mul(t4, xpow(4))
        m13 = xpow(1) if s <= 1 else 0
        m23 = F.mul(tt, xpow(2))
        m33 = xpow(0) if s == 0 else 0
        out.append((m11, m12, m22, m13, m23, m33))
    return out


def sheared_g_monomials(F: Field, pts, s: int) -> list[tuple[int, ...]]:
    """Monomial values of the sheared curve per point (x, v), coefficient
    order (a11, a12, a22, a13, a23, a33); a13/a33 entries zeroed per s."""
    out = []
    for x, v in pts:
        x2 = F.mul(x, x)
        v2 = F.mul(v, v)
        m11 = x2
        m12 = F.mul(x, v2) ^ F.mul(x2, v)
        m22 = F.mul(v2, v2) ^ F.mul(v2, x2)
        m13 = x if s <= 1 else 0
        m23 = v2 ^ F.mul(v, x)
        m33 = 1 if s == 0 else 0
        out.append((m11, m12, m22, m13, m23, m33))
    return out


def degeneracy_oracle_sweep(F: Field, cols: list[np.ndarray]) -> np.ndarray:
    """Independent degeneracy test, vectorized over classes: scan every
    point of PG(2, GF(q^2)) and record the classes for which the conic
    vanishes there together with all three partial derivatives.

    The conic value and the partials are GF(q)-linear in the coefficients,
    so each scanned point costs a few table gathers per coefficient
    component over the whole class list.
    """
    E2 = ExtField(F, 2)
    a11, a12, a22, a13, a23, a33 = cols
    n = len(a11)
    found = np.zeros(n, dtype=bool)

    def gather(pairs) -> np.ndarray:
        """zero-mask of sum of coeff*scalar with scalars in GF(q^2):
        both components must vanish."""
        comp = [None, None]
        for arr, scalar in pairs:
            for t in range(2):
                if scalar[t] == 0:
                    continue
                term = F.mul_col(arr, int(scalar[t]))
                comp[t] = term if comp[t] is None else comp[t] ^ term
        out = np.ones(n, dtype=bool)
        for t in range(2):
            if comp[t] is not None:
                out &= comp[t] == 0
        return out

    for X, Y, Z in projective_points_ext(E2):
        X2, Y2, Z2 = E2.mul(X, X), E2.mul(Y, Y), E2.mul(Z, Z)
        XY, XZ, YZ = E2.mul(X, Y), E2.mul(X, Z), E2.mul(Y, Z)
        on = gather([(a11, X2), (a12, XY), (a22, Y2), (a13, XZ), (a23, YZ), (a33, Z2)])
        if not on.any():
            continue
        sing = (
            gather([(a12, Y), (a13, Z)])
            & gather([(a12, X), (a23, Z)])
            & gather([(a13, X), (a23, Y)])
        )
        found |= on & sing
    return found


def projective_points_ext(E: ExtField):
    one, zero = E.one, E.zero
    for y in E.elements():
        for z in E.elements():
            yield (one, y, z)
    for z in E.elements():
        yield (zero, one, z)
    yield (zero, zero, one)


def _triples_ok_mask(cols: list[np.ndarray]) -> np.ndarray:
    a11, a12, a22, a13, a23, a33 = cols
    nz = [c != 0 for c in cols]
    return (
        (nz[0] | nz[1] | nz[2])
        & (nz[0] | nz[3] | nz[5])
        & (nz[0] | nz[2] | nz[4])
        & (nz[1] | nz[3] | nz[4])
        & (nz[2] | nz[4] | nz[5])
    )


def degeneracy_vector(F: Field, cols: list[np.ndarray]) -> np.ndarray:
    a11, a12, a22, a13, a23, a33 = cols
    return (
        F.vmul(a11, F.vmul(a23, a23))
        ^ F.vmul(a12, F.vmul(a23, a13))
        ^ F.vmul(a22, F.vmul(a13, a13))
        ^ F.vmul(a33, F.vmul(a12, a12))
    )


def _class_tuple(cols: list[np.ndarray], i: int) -> tuple[int, ...]:
    return tuple(int(c[i]) for c in cols)


def _sample_indices(rng: random.Random, mask: np.ndarray, k: int) -> list[int]:
    idx = np.flatnonzero(mask)
    if len(idx) == 0:
        return []
    return [int(idx[rng.randrange(len(idx))]) for _ in range(min(k, len(idx)))]


# ----------------------------------------------------------------------
# Field suite
# ----------------------------------------------------------------------

def verify_field(F: Field) -> SuiteReport:
    t0 = time.perf_counter()
    rep = SuiteReport("field", F.q, F.modulus)
    q = F.q
    exhaustive = q <= 16
    elems = list(F.elements())
    rng = random.Random(q)
    pick = (lambda: elems) if exhaustive else (lambda: rng.sample(elems, 16))

    ok = all(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
             for a in pick() for b in pick() for c in pick())
    rep.add("multiplication associative" + ("" if exhaustive else " (sampled)"), ok)
    ok = all(F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
             for a in pick() for b in pick() for c in pick())
    rep.add("multiplication distributes over addition", ok)
    ok = all(F.mul(a, b) == F.mul(b, a) for a in elems for b in elems)
    rep.add("multiplication commutative", ok)
    rep.add("x * inv(x) = 1", all(F.mul(a, F.inv(a)) == 1 for a in range(1, q)))
    rep.add("x + x = 0", all(a ^ a == 0 for a in elems))
    rep.add("sqrt(x)^2 = x", all(F.mul(F.sqrt(a), F.sqrt(a)) == a for a in elems))

    rep.add("trace is GF(2)-linear",
            all(F.trace(a ^ b) == (F.trace(a) ^ F.trace(b)) for a in elems for b in elems))
    n0 = sum(1 for a in elems if F.trace(a) == 0)
    rep.add("exactly half the elements have trace zero", n0 == q // 2, q // 2, n0)

    as_ok = True
    for v in elems:
        roots = F.solve_artin_schreier(v)
        if F.trace(v) == 0:
            as_ok &= roots is not None and roots[0] ^ roots[1] == 1
            as_ok &= all(F.mul(t, t) ^ t == v for t in roots)
            as_ok &= int(F.artin_schreier_table[v]) == roots[0]
        else:
            as_ok &= roots is None and int(F.artin_schreier_table[v]) == -1
    rep.add("X^2+X+v solvable iff trace(v)=0; closed form matches table", as_ok)
    rep.add("x = t^2 + t has a solution iff trace(x) = 0",
            all((F.artin_schreier_table[x] >= 0) == (F.trace(x) == 0) for x in elems))

    for r in (2, 3):
        E = ExtField(F, r)
        emb_ok = all(
            E.mul(E.embed(a), E.embed(b)) == E.embed(F.mul(a, b))
            and E.add(E.embed(a), E.embed(b)) == E.embed(a ^ b)
            for a in pick() for b in pick()
        )
        rep.add(f"degree-{r} embedding respects operations", emb_ok)
        if q ** r <= 4096:
            frob_fix = all(
                (E.frobenius(x) == x) == E.in_base(x) for x in E.elements()
            )
            rep.add(f"degree-{r} Frobenius fixes exactly the base field", frob_fix)
            ident = all(_frob_iter(E, x, r) == x for x in E.elements())
            rep.add(f"degree-{r} Frobenius has order dividing {r}", ident)
        else:
            xs = [tuple(rng.randrange(q) for _ in range(r)) for _ in range(64)]
            rep.add(f"degree-{r} Frobenius fixes exactly the base field (sampled)",
                    all((E.frobenius(x) == x) == E.in_base(x) for x in xs))
            rep.add(f"degree-{r} Frobenius has order dividing {r} (sampled)",
                    all(_frob_iter(E, x, r) == x for x in xs))
    rep.elapsed = time.perf_counter() - t0
    return rep


def _frob_iter(E: ExtField, x, times: int):
    for _ in range(times):
        x = E.frobenius(x)
    return x


# ----------------------------------------------------------------------
# Geometry suite
# ----------------------------------------------------------------------

def verify_geometry(F: Field, oracle: Optional[bool] = None) -> SuiteReport:
    t0 = time.perf_counter()
    q = F.q
    rep = SuiteReport("geometry", q, F.modulus)
    delta = build_delta(F, include_origin=False)
    dbar = build_delta(F, include_origin=True)

    rep.add("point-set size q(q-1)/2", len(delta) == q * (q - 1) // 2,
            q * (q - 1) // 2, len(delta))
    rep.add("origin-included size q(q-1)/2 + 1", len(dbar) == len(delta) + 1)
    rep.add("(1, 0) is in the set", (1, 0) in set(delta.points))
    rep.add("trace(y/x^2) = 0 at every point",
            all(F.trace(F.div(y, F.mul(x, x))) == 0 for x, y in delta.points))

    if q <= 16:
        image: dict[tuple[int, int], int] = {}
        for x1, x2 in distinguished_points(F):
            image[pi_map(F, x1, x2)] = image.get(pi_map(F, x1, x2), 0) + 1
        rep.add("symmetric map image of distinguished points equals the set",
                set(image) == set(delta.points))
        rep.add("symmetric map is exactly 2-to-1 on distinguished points",
                all(v == 2 for v in image.values()))

    # line closed forms: the stated case list against brute force
    generic_ok = True
    known_gap_origin = []   # slanted through origin (stated chain inconsistent)
    known_gap_square = []   # intercept = slope^2 (family missing from the case list)
    unexplained = []
    for line in all_lines(F):
        stated = line_delta_count_closed_form(F, line)
        nd = count_on_delta(F, line, delta)
        nb = count_on_delta(F, line, dbar)
        td, tb = line_counts(F, line)
        if (td, tb) != (nd, nb):
            unexplained.append((line.coeffs(), td, tb, nd, nb))
            continue
        if not line.is_vertical:
            m = F.div(line.a, line.b)
            b = F.div(line.c, line.b)
            if b == F.mul(m, m) and m != 0:
                known_gap_square.append((line.coeffs(), stated, nd, nb))
                continue
            if b == 0 and m != 0:
                known_gap_origin.append((line.coeffs(), stated, nd, nb))
                continue
        generic_ok &= stated == nb
    rep.add("verified line closed form matches brute force on every line",
            not unexplained, 0, len(unexplained),
            note=f"first: {unexplained[:3]}" if unexplained else "")
    rep.add("stated line case list matches brute force outside the two flagged families",
            generic_ok)
    rep.add(
        "flagged family 1: slanted lines through the origin",
        all(nb == q // 2 and nd == (q - 2) // 2 and stated == (q - 2) // 2
            for (_, stated, nd, nb) in known_gap_origin),
        note=(
            f"{len(known_gap_origin)} lines: stated chain gives both (q-2)/2+1 and q/2-2 "
            f"for the origin-included count; brute force gives q/2 = {q // 2} "
            f"(origin-excluded {(q - 2) // 2})"
        ),
    )
    rep.add(
        "flagged family 2: squared-intercept lines meet the set in q-1 points",
        bool(known_gap_square)
        and all(nd == q - 1 and nb == q - 1 for (_, _, nd, nb) in known_gap_square),
        q - 1,
        sorted({nd for (_, _, nd, _) in known_gap_square}),
        note=(
            f"{len(known_gap_square)} lines Y = m*X + m^2 (m != 0): these are images of the "
            f"coordinate-line pairs {{X1 = m}} ∪ {{X2 = m}}"
        ),
    )
    rep.add(
        "stated case list covers the squared-intercept family",
        not known_gap_square,
        (q - 2) // 2,
        q - 1,
        note=(
            "stated value (q-2)/2 disagrees with brute force q-1 on "
            f"{len(known_gap_square)} lines; reported, not patched"
        ) if known_gap_square else "",
    )

    # parabola-family closed forms (a12 = a22 = 0), every class, both sets
    mismatches = []
    a11c, a13c, a23c, a33c = projective_class_columns(q, 4, np.int64)
    for i in range(len(a11c)):
        c = Conic(int(a11c[i]), 0, 0, int(a13c[i]), int(a23c[i]), int(a33c[i]))
        for io, ds in ((False, delta), (True, dbar)):
            pred = parabola_count_closed_form(F, c, io)
            act = count_on_delta(F, c, ds)
            if pred != act:
                mismatches.append((c.coeffs(), io, pred, act))
    rep.add("parabola-family closed forms match brute force on every class",
            not mismatches, 0, len(mismatches),
            note=f"first: {mismatches[:3]}" if mismatches else "")

    # degeneracy criterion against the singular-point oracle
    if oracle is None:
        oracle = q <= 8
    if oracle:
        cols = conic_class_columns(F)
        found = degeneracy_oracle_sweep(F, cols)
        stated = degeneracy_vector(F, cols) == 0
        agree = found == stated
        bad = [
            _class_tuple(cols, int(i)) for i in np.flatnonzero(~agree)[:3]
        ]
        rep.add("degeneracy criterion agrees with the singular-point oracle",
                bool(agree.all()), 0, int((~agree).sum()),
                note=f"first: {bad}" if bad else "")
        # scalar spot-check of the vectorized oracle
        E2 = ExtField(F, 2)
        rng_o = random.Random(q + 13)
        idx = [rng_o.randrange(len(cols[0])) for _ in range(12)]
        spot = all(
            degenerate_by_singular_point(F, Conic(*_class_tuple(cols, i)), E2)
            == bool(found[i])
            for i in idx
        )
        rep.add("vectorized oracle agrees with the per-conic oracle (sampled)", spot)

    # normalization properties
    rng = random.Random(q)
    norm_ok = True
    for _ in range(200):
        coeffs = tuple(rng.randrange(q) for _ in range(6))
        if not any(coeffs):
            continue
        c = make_conic(F, coeffs)
        norm_ok &= make_conic(F, c.coeffs()) == c
        s = rng.randrange(1, q)
        norm_ok &= make_conic(F, tuple(F.mul(s, v) for v in coeffs)) == c
    rep.add("conic normalization is idempotent and scale-invariant", norm_ok)

    rep.elapsed = time.perf_counter() - t0
    return rep


# ----------------------------------------------------------------------
# Lemma suite: |DeltaBar ∩ C| from N(F^(s))
# ----------------------------------------------------------------------

def _split_masks(F: Field, cols: list[np.ndarray]) -> dict[int, np.ndarray]:
    a11, a12, a22, a13, a23, a33 = cols
    hyp = _triples_ok_mask(cols)
    return {
        0: hyp & (a33 != 0),
        1: hyp & (a33 == 0) & (a13 != 0),
        2: hyp & (a33 == 0) & (a13 == 0) & (a11 != 0),
    }


def verify_lemma(F: Field) -> SuiteReport:
    t0 = time.perf_counter()
    q = F.q
    rep = SuiteReport("lemma", q, F.modulus)
    cols = conic_class_columns(F)
    a11, a12, a22, a13, a23, a33 = cols
    dbar = build_delta(F, include_origin=True)
    lhs = zero_counts(F, cols, conic_monomials_at(F, dbar.points))
    masks = _split_masks(F, cols)
    grid = grid_points(F)
    tr = F.trace_table
    total_checked = 0
    bad_examples = []
    parity_bad = []
    for s, mask in masks.items():
        if not mask.any():
            continue
        nf = zero_counts(F, cols, quartic_f_monomials(F, grid, s))
        if s in (1, 2):
            rhs = 1 + nf // 2
            if s == 2:
                # trace(a11/a23) = 0 and a23 != 0 drops the +1
                ratio = F.vdiv(a11, a23)
                open_case = (a23 != 0) & (tr[ratio] == 0)
                rhs = np.where(open_case, nf // 2, rhs)
        else:
            rhs = nf // 2
        sel = mask
        ok = lhs[sel] == rhs[sel]
        par = nf[sel] % 2 == 0
        total_checked += int(sel.sum())
        if not ok.all() or not par.all():
            idx = np.flatnonzero(sel)[~(ok & par)]
            bad_examples += [(_class_tuple(cols, int(i)), int(lhs[i])) for i in idx[:5]]
        if not par.all():
            parity_bad.append(s)
    rep.add("intersection count equals its curve-count expression on every class",
            not bad_examples, 0, len(bad_examples),
            note=f"checked {total_checked} classes"
                 + (f"; first: {bad_examples[:3]}" if bad_examples else ""))
    rep.add("curve point counts are even where halved", not parity_bad)

    # scalar cross-check of the vectorized pipeline
    rng = random.Random(q * 7 + 1)
    hyp = _triples_ok_mask(cols)
    sample_ok = True
    for i in _sample_indices(rng, hyp, SAMPLE_CHECKS):
        c = Conic(*_class_tuple(cols, i))
        r = curves.verify_lemma_delta(F, c, delta_bar=dbar)
        sample_ok &= r["ok"] and r["lhs"] == int(lhs[i])
    rep.add("vectorized sweep agrees with the per-conic implementation (sampled)",
            sample_ok)
    rep.elapsed = time.perf_counter() - t0
    return rep


# ----------------------------------------------------------------------
# Relations suite: N(F^(s)) versus N(G^(s))
# ----------------------------------------------------------------------

def verify_relations(F: Field) -> SuiteReport:
    t0 = time.perf_counter()
    q = F.q
    rep = SuiteReport("relations", q, F.modulus)
    cols = conic_class_columns(F)
    a11, a12, a22, a13, a23, a33 = cols
    masks = _split_masks(F, cols)
    grid = grid_points(F)
    axis = [(0, t) for t in F.elements()]
    tr = F.trace_table
    bad = []
    axis_bad = []
    total = 0
    for s, mask in masks.items():
        if not mask.any():
            continue
        nf = zero_counts(F, cols, quartic_f_monomials(F, grid, s))
        ng = zero_counts(F, cols, sheared_g_monomials(F, grid, s))
        f_axis = zero_counts(F, cols, quartic_f_monomials(F, axis, s))
        g_axis = zero_counts(F, cols, sheared_g_monomials(F, axis, s))
        if s == 0:
            b = F.vdiv(F.vmul(a22, a33), F.vmul(a23, a23))
            both = (a22 != 0) & (a23 != 0)
            predicted = np.where(
                both, np.where(tr[b] == 1, 0, -2),
                np.where((a22 == 0) & (a23 == 0), 0, -1),
            )
        elif s == 1:
            predicted = np.where((a23 == 0) | (a22 == 0), -1, -2)
        else:
            ratio = F.vdiv(a11, a23)
            tz = tr[ratio] == 0
            predicted = np.where(
                a23 == 0, -1,
                np.where(a22 == 0, np.where(tz, 1, -1), np.where(tz, 0, -2)),
            )
        sel = mask
        total += int(sel.sum())
        diff = nf.astype(np.int64) - ng.astype(np.int64)
        ok = diff[sel] == predicted[sel]
        if not ok.all():
            idx = np.flatnonzero(sel)[~ok]
            bad += [(_class_tuple(cols, int(i)), int(diff[i]), int(predicted[i]))
                    for i in idx[:5]]
        ax_ok = (f_axis[sel].astype(np.int64) - g_axis[sel]) == diff[sel]
        if not ax_ok.all():
            axis_bad.append(s)
    rep.add("tabulated count differences hold on every class", not bad, 0, len(bad),
            note=f"checked {total} classes" + (f"; first: {bad[:3]}" if bad else ""))
    rep.add("count differences are explained by points on the axis X = 0",
            not axis_bad)

    rng = random.Random(q * 7 + 2)
    hyp = _triples_ok_mask(cols)
    sample_ok = True
    for i in _sample_indices(rng, hyp, SAMPLE_CHECKS):
        c = Conic(*_class_tuple(cols, i))
        r = curves.verify_count_relations(F, c)
        sample_ok &= r["ok"] and r["axis_ok"] and r["g_axis_closed_form_ok"]
    rep.add("vectorized sweep agrees with the per-conic implementation (sampled)",
            sample_ok)
    rep.elapsed = time.perf_counter() - t0
    return rep


# ----------------------------------------------------------------------
# Reducibility suite: degeneracy of C versus linear components of H
# ----------------------------------------------------------------------

def _ext_square(E2: ExtField, F: Field, v0, v1):
    m0, m1 = E2.modulus
    v1sq = F.vmul(v1, v1)
    return F.vmul(v0, v0) ^ F.mul_col(v1sq, m0), F.mul_col(v1sq, m1)


def _ext_mul_vec(E2: ExtField, F: Field, a0, a1, b0, b1):
    m0, m1 = E2.modulus
    cross = F.vmul(a1, b1)
    return (
        F.vmul(a0, b0) ^ F.mul_col(cross, m0),
        F.vmul(a0, b1) ^ F.vmul(a1, b0) ^ F.mul_col(cross, m1),
    )


def _ext_as_tables(F: Field, E2: ExtField) -> tuple[np.ndarray, np.ndarray]:
    """Per base element w with trace 1: the components of the minimal root
    of X^2 + X + w over GF(q^2)."""
    u0 = np.zeros(F.q, dtype=np.int64)
    u1 = np.zeros(F.q, dtype=np.int64)
    for w in F.elements():
        if F.trace(w) == 1:
            root = E2.solve_artin_schreier(E2.embed(w))
            assert root is not None
            u0[w], u1[w] = root[0]
    return u0, u1



def _vbar_component_sweep(F: Field, cols: list[np.ndarray], applicable: np.ndarray,
                          E2: ExtField) -> tuple[np.ndarray, np.ndarray]:
    """Per-class components of vbar in the (1, rho) basis of GF(q^2);
    classes with a rational vbar have a zero second component."""
    a11, a12, a22, a13, a23, a33 = [c.astype(np.int64) for c in cols]
    n = len(a11)
    tr = F.trace_table.astype(np.int64)
    v0 = np.zeros(n, dtype=np.int64)
    v1 = np.zeros(n, dtype=np.int64)
    both = (a12 != 0) & (a22 != 0)
    w = F.vdiv(F.vmul(a11, a22), F.vmul(a12, a12))
    scale = F.vdiv(a12, a22)
    m = applicable & (a22 == 0)
    v0[m] = F.vdiv(a11, a12)[m]
    m = applicable & (a12 == 0) & (a22 != 0)
    v0[m] = F.sqrt_table[F.vdiv(a11, a22)][m]
    m = applicable & both & (tr[w] == 0)
    u = F.artin_schreier_table[w].clip(min=0).astype(np.int64)
    v0[m] = F.vmul(scale, u)[m]
    m_quad = applicable & both & (tr[w] == 1)
    if m_quad.any():
        u0t, u1t = _ext_as_tables(F, E2)
        v0[m_quad] = F.vmul(scale, u0t[w])[m_quad]
        v1[m_quad] = F.vmul(scale, u1t[w])[m_quad]
    return v0, v1


def _honest_linear_sweep(F: Field, cols: list[np.ndarray], v0: np.ndarray,
                         v1: np.ndarray, E2: ExtField) -> tuple[np.ndarray, ...]:
    """Per-class divisibility of H by the unique candidate line of each of
    the three pencils through its infinite points."""
    a11, a12, a22, a13, a23, a33 = [c.astype(np.int64) for c in cols]
    n = len(a11)
    both = (a12 != 0) & (a22 != 0)
    v20, v21 = _ext_square(E2, F, v0, v1)
    v30, v31 = _ext_mul_vec(E2, F, v20, v21, v0, v1)
    s0 = F.vmul(v0, a23) ^ a13
    s1 = F.vmul(v1, a23)
    # pencil through V-infinity: X = (vbar*a23 + a13)/a12
    x0 = F.vdiv(s0, a12)
    x1 = F.vdiv(s1, a12)
    xs0, xs1 = _ext_square(E2, F, x0, x1)
    ev0 = F.vmul(a22, xs0) ^ F.vmul(a23, x0) ^ a33
    ev1 = F.vmul(a22, xs1) ^ F.vmul(a23, x1)
    cond_v = np.where(a12 != 0, (ev0 == 0) & (ev1 == 0), (s0 == 0) & (s1 == 0))
    cond_v = cond_v.astype(bool)
    # pencil through X-infinity: V = a12/a22; cleared forms R12 and R13
    a22sq = F.vmul(a22, a22)
    a12sq = F.vmul(a12, a12)
    a12cu = F.vmul(a12sq, a12)
    zero = np.zeros(n, dtype=np.int64)
    r12_0 = F.vmul(v20, F.vmul(a12, a22sq)) ^ F.vmul(v0, F.vmul(a22sq, a23)) \
        ^ a12cu ^ F.vmul(a12, F.vmul(a22, a23)) ^ F.vmul(a22sq, a13)
    r12_1 = F.vmul(v21, F.vmul(a12, a22sq)) ^ F.vmul(v1, F.vmul(a22sq, a23))
    r13_0 = F.vmul(v30, F.vmul(a22sq, a23)) ^ F.vmul(v20, F.vmul(a22sq, a13)) \
        ^ F.vmul(v0, F.vmul(a12sq, a23)) ^ F.vmul(a12, F.vmul(a22, a33)) \
        ^ F.vmul(a12sq, a13)
    r13_1 = F.vmul(v31, F.vmul(a22sq, a23)) ^ F.vmul(v21, F.vmul(a22sq, a13)) \
        ^ F.vmul(v1, F.vmul(a12sq, a23))
    cond_x = (a22 != 0) & (r12_0 == 0) & (r12_1 == 0) & (r13_0 == 0) & (r13_1 == 0)
    # pencil through (a22 : a12 : 0): a22*X + a12*V = w*
    cond_q = np.zeros(n, dtype=bool)
    if both.any():
        denom = F.vmul(a12, a22)
        num0 = a12cu ^ F.vmul(a12, F.vmul(a22, a23)) ^ F.vmul(a22sq, s0)
        num1 = F.vmul(a22sq, s1)
        w0 = F.vdiv(num0, denom)
        w1 = F.vdiv(num1, denom)
        ws0, ws1 = _ext_square(E2, F, w0, w1)
        inner0 = F.vmul(v20, a12) ^ F.vmul(v0, a23) ^ a13
        inner1 = F.vmul(v21, a12) ^ F.vmul(v1, a23)
        c1_0 = F.vmul(a12, ws0) ^ F.vmul(F.vmul(a12, a23), w0) \
            ^ F.vmul(a12sq, inner0) ^ F.vmul(a12, F.vmul(a22, a33))
        c1_1 = F.vmul(a12, ws1) ^ F.vmul(F.vmul(a12, a23), w1) ^ F.vmul(a12sq, inner1)
        sw0, sw1 = _ext_mul_vec(E2, F, s0, s1, ws0, ws1)
        tail0 = F.vmul(a12sq, F.vmul(v30, a23) ^ F.vmul(v20, a13))
        tail1 = F.vmul(a12sq, F.vmul(v31, a23) ^ F.vmul(v21, a13))
        c0_0 = sw0 ^ F.vmul(F.vmul(a12, a33), w0) ^ tail0
        c0_1 = sw1 ^ F.vmul(F.vmul(a12, a33), w1) ^ tail1
        cond_q = both & (c1_0 == 0) & (c1_1 == 0) & (c0_0 == 0) & (c0_1 == 0)
    return cond_v, cond_x, cond_q


def verify_reducibility(F: Field) -> SuiteReport:
    t0 = time.perf_counter()
    q = F.q
    rep = SuiteReport("reducibility", q, F.modulus)
    cols = conic_class_columns(F)
    a11, a12, a22, a13, a23, a33 = [c.astype(np.int64) for c in cols]
    hyp = _triples_ok_mask(cols)
    applicable = hyp & ((a12 != 0) | (a22 != 0))
    degenerate = degeneracy_vector(F, cols) == 0
    both = (a12 != 0) & (a22 != 0)
    E2 = ExtField(F, 2)
    n = len(a11)
    zero = np.zeros(n, dtype=np.int64)

    v0, v1 = _vbar_component_sweep(F, cols, applicable, E2)
    v20, v21 = _ext_square(E2, F, v0, v1)
    v30, v31 = _ext_mul_vec(E2, F, v20, v21, v0, v1)

    def lin_comb(l3, l2, l1, l0):
        """components of l3*vbar^3 + l2*vbar^2 + l1*vbar + l0"""
        c0 = F.vmul(v30, l3) ^ F.vmul(v20, l2) ^ F.vmul(v0, l1) ^ l0
        c1 = F.vmul(v31, l3) ^ F.vmul(v21, l2) ^ F.vmul(v1, l1)
        return c0, c1

    a23sq = F.vmul(a23, a23)
    a22sq = F.vmul(a22, a22)
    a12sq = F.vmul(a12, a12)
    a12cu = F.vmul(a12sq, a12)
    a22cu = F.vmul(a22sq, a22)

    # the resultant-style quantities of the stated criteria, as cubics in vbar
    u12 = lin_comb(zero, F.vmul(a22, a23sq), F.vmul(a12, a23sq),
                   F.vmul(a12sq, a33) ^ F.vmul(a12, F.vmul(a13, a23))
                   ^ F.vmul(a22, F.vmul(a13, a13)))
    r12 = lin_comb(zero, F.vmul(a12, a22sq), F.vmul(a22sq, a23),
                   a12cu ^ F.vmul(a12, F.vmul(a22, a23)) ^ F.vmul(a22sq, a13))
    r13 = lin_comb(F.vmul(a22sq, a23), F.vmul(a22sq, a13), F.vmul(a12sq, a23),
                   F.vmul(a12, F.vmul(a22, a33)) ^ F.vmul(a12sq, a13))
    q12 = lin_comb(zero, F.vmul(a12, a22cu), F.vmul(a22cu, a23),
                   F.vmul(a12cu, a22) ^ F.vmul(a12, F.vmul(a22sq, a23))
                   ^ F.vmul(a22cu, a13))
    q13 = lin_comb(F.vmul(F.vmul(a22sq, a22sq), a23),
                   F.vmul(a12cu, a22sq) ^ F.vmul(F.vmul(a22sq, a22sq), a13),
                   zero,
                   F.vmul(a12cu, a12sq) ^ F.vmul(a12cu, F.vmul(a22, a23))
                   ^ F.vmul(a12, F.vmul(a22cu, a33)))
    s12 = lin_comb(zero, zero, a23sq, F.vmul(a12, a33) ^ F.vmul(a13, a23))
    s_comb = lin_comb(zero, zero, a23, a13)  # vbar*a23 + a13

    def is_zero(pair):
        return (pair[0] == 0) & (pair[1] == 0)

    stated = np.where(
        a22 == 0, is_zero(s12),
        np.where(a12 == 0, is_zero(s_comb), is_zero(u12)),
    ).astype(bool)

    agree = stated[applicable] == degenerate[applicable]
    n_checked = int(applicable.sum())
    bad = [(_class_tuple(cols, int(i)), bool(stated[i]), bool(degenerate[i]))
           for i in np.flatnonzero(applicable)[~agree][:5]]
    rep.add("stated component criteria hold iff the conic is degenerate",
            not bad, 0, n_checked - int(agree.sum()),
            note=f"checked {n_checked} classes" + (f"; first: {bad}" if bad else ""))

    for name, lhs, rhs in (
        ("resultant identity Q12 = a22 * R12", q12,
         (F.vmul(a22, r12[0]), F.vmul(a22, r12[1]))),
        ("resultant identity Q13 = a22^2 * R13 + a12^2 * R12", q13,
         (F.vmul(a22sq, r13[0]) ^ F.vmul(a12sq, r12[0]),
          F.vmul(a22sq, r13[1]) ^ F.vmul(a12sq, r12[1]))),
    ):
        sel = applicable & both
        ok = (lhs[0][sel] == rhs[0][sel]) & (lhs[1][sel] == rhs[1][sel])
        rep.add(name, bool(ok.all()))

    cond_v, cond_x, cond_q = _honest_linear_sweep(F, cols, v0, v1, E2)
    honest = cond_v | cond_x | cond_q

    hag = honest[applicable] == degenerate[applicable]
    bad_h = [(_class_tuple(cols, int(i)), bool(honest[i]), bool(degenerate[i]))
             for i in np.flatnonzero(applicable)[~hag][:5]]
    rep.add("H has a linear component iff the conic is degenerate",
            bool(hag.all()), 0, n_checked - int(hag.sum()),
            note=("stated equivalence fails: the criteria miss lines through "
                  "the third infinite point; first: " + str(bad_h)) if bad_h else "")
    gap = applicable & honest & ~stated
    rep.add("stated criteria capture every linear component",
            not gap.any(), 0, int(gap.sum()),
            note=("classes with a line through (a22:a12:0) missed by the "
                  "stated criteria; first: "
                  + str([_class_tuple(cols, int(i)) for i in np.flatnonzero(gap)[:5]]))
            if gap.any() else "")

    rng = random.Random(q * 7 + 3)
    sample_ok = True
    for i in _sample_indices(rng, applicable, SAMPLE_CHECKS):
        c = Conic(*_class_tuple(cols, i))
        det = curves.reducibility_details(F, c)
        sample_ok &= det["reducible"] == bool(stated[i])
        sample_ok &= det["identity_q12"] and det["identity_q13"]
        has_line, _ = curves.has_linear_component(F, c)
        sample_ok &= has_line == bool(honest[i])
    for i in _sample_indices(rng, gap if gap.any() else applicable, 8):
        c = Conic(*_class_tuple(cols, i))
        has_line, _ = curves.has_linear_component(F, c)
        sample_ok &= has_line == bool(honest[i])
    rep.add("vectorized sweep agrees with the per-conic implementation (sampled)",
            sample_ok)
    rep.elapsed = time.perf_counter() - t0
    return rep


# ----------------------------------------------------------------------
# Hasse suite: windows for the cubic, and the transfer between G and H
# ----------------------------------------------------------------------

def _h_monomials(F: Field, pts) -> list[tuple[int, ...]]:
    """Monomial values (x^2 v, x^2, x v^2, x v, x, v^2, v, 1) per point."""
    out = []
    for x, v in pts:
        x2 = F.mul(x, x)
        v2 = F.mul(v, v)
        out.append((F.mul(x2, v), x2, F.mul(x, v2), F.mul(x, v), x, v2, v, 1))
    return out


def verify_hasse(F: Field) -> SuiteReport:
    t0 = time.perf_counter()
    q = F.q
    rep = SuiteReport("hasse", q, F.modulus)
    cols = conic_class_columns(F)
    a11, a12, a22, a13, a23, a33 = [c.astype(np.int64) for c in cols]
    hyp = _triples_ok_mask(cols)
    nondeg = degeneracy_vector(F, cols) != 0
    applicable = hyp & nondeg & ((a12 != 0) | (a22 != 0))
    tr = F.trace_table.astype(np.int64)
    grid = grid_points(F)
    hmono = _h_monomials(F, grid)

    n_g = zero_counts(F, cols, sheared_g_monomials(F, grid, 0))
    # note: G always carries a13 and a33 here (s = 0 form); for classes with
    # a33 = 0 or a13 = 0 those coefficients vanish anyway.

    n_h = np.zeros(len(a11), dtype=np.int64)

    # rational-vbar classes: evaluate H directly
    scale = F.vdiv(a12, a22)
    w = F.vdiv(F.vmul(a11, a22), F.vmul(a12, a12))
    rational = applicable & (
        (a22 == 0)
        | ((a22 != 0) & (a12 == 0))
        | ((a22 != 0) & (a12 != 0) & (tr[w] == 0))
    )
    corrected_transfer: Optional[tuple[int, int]] = None
    if rational.any():
        r = np.zeros(len(a11), dtype=np.int64)
        m = a22 == 0
        r[m] = F.vdiv(a11, a12)[m]
        m = (a22 != 0) & (a12 == 0)
        r[m] = F.sqrt_table[F.vdiv(a11, a22)][m]
        m = (a22 != 0) & (a12 != 0) & (tr[w] == 0)
        u = F.artin_schreier_table[w].clip(min=0).astype(np.int64)
        r[m] = F.vmul(scale, u)[m]
        r2 = F.vmul(r, r)
        r3 = F.vmul(r2, r)
        h_x = F.vmul(r2, a12) ^ F.vmul(r, a23) ^ a13
        h_const = F.vmul(r3, a23) ^ F.vmul(r2, a13)
        h_coeffs = [a22, a12, a12, a23, h_x, F.vmul(r, a23) ^ a13, a33, h_const]
        n_h_rat = zero_counts(F, h_coeffs, hmono)
        n_h[rational] = n_h_rat[rational]

        # corrected transfer: the quadratic map sends the (up to) k points of
        # G on the line V = vbar to one point of H, and H picks up its other
        # points on the line V = 0; bookkeeping those recovers N(H) exactly.
        xs_mono = [(F.mul(x, x), x, 1) for x in F.elements()]
        g_on_vbar = [
            a11 ^ F.vmul(a12, r) ^ F.vmul(a22, r2),
            F.vmul(a12, r2) ^ F.vmul(a23, r) ^ a13,
            F.vmul(a22, F.vmul(r2, r2)) ^ F.vmul(a23, r2) ^ a33,
        ]
        k_axis = zero_counts(F, g_on_vbar, xs_mono)
        h_on_axis = [a12, h_x, h_const]
        h_axis_all = zero_counts(F, h_on_axis, xs_mono)
        img_val = F.vmul(a12, F.vmul(r2, r2)) ^ F.vmul(h_x, r2) ^ h_const
        img_pt = (img_val == 0).astype(np.int64)
        extra = h_axis_all - img_pt
        corrected = n_g - k_axis + img_pt + extra
        ok = corrected[rational] == n_h[rational]
        corrected_transfer = (int(rational.sum()), int(ok.sum()))

    # quadratic-vbar classes: H = A + vbar*B; a rational point needs A = B = 0
    quad = applicable & (a22 != 0) & (a12 != 0) & (tr[w] == 1)
    if quad.any():
        alpha = F.vdiv(a12, a22)
        beta = F.vdiv(a11, a22)
        a_coeffs = [
            a22, a12, a12, a23,
            F.vmul(beta, a12) ^ a13,
            a13,
            a33,
            F.vmul(F.vmul(alpha, beta), a23) ^ F.vmul(beta, a13),
        ]
        zero = np.zeros(len(a11), dtype=np.int64)
        b_coeffs = [
            zero, zero, zero, zero,
            F.vmul(alpha, a12) ^ a23,
            a23,
            zero,
            F.vmul(F.vmul(alpha, alpha) ^ beta, a23) ^ F.vmul(alpha, a13),
        ]
        counts = np.zeros(len(a11), dtype=np.int64)
        for monos in hmono:
            acc_a: Optional[np.ndarray] = None
            acc_b: Optional[np.ndarray] = None
            for arr, mval in zip(a_coeffs, monos):
                if mval == 0:
                    continue
                term = F.mul_col(arr, int(mval))
                acc_a = term if acc_a is None else acc_a ^ term
            for arr, mval in zip(b_coeffs, monos):
                if mval == 0:
                    continue
                term = F.mul_col(arr, int(mval))
                acc_b = term if acc_b is None else acc_b ^ term
            za = (acc_a == 0) if acc_a is not None else np.ones(len(a11), dtype=bool)
            zb = (acc_b == 0) if acc_b is not None else np.ones(len(a11), dtype=bool)
            counts += za & zb
        n_h[quad] = counts[quad]

    # claim 1: N(G) = N(H)
    eq_mask = n_g[applicable] == n_h[applicable]
    n_eq = int(eq_mask.sum())
    n_app = int(applicable.sum())
    idx_bad = np.flatnonzero(applicable)[~eq_mask]
    rep.add("stated transfer N(G) = N(H) holds on every applicable class",
            n_eq == n_app, n_app, n_eq,
            note=(f"violations {n_app - n_eq}; first: "
                  + str([(_class_tuple(cols, int(i)), int(n_g[i]), int(n_h[i]))
                         for i in idx_bad[:3]]) if n_eq != n_app else ""))

    if corrected_transfer is not None:
        rep.add("corrected transfer (axis-point bookkeeping) holds for rational vbar",
                corrected_transfer[0] == corrected_transfer[1],
                corrected_transfer[0], corrected_transfer[1])

    # claim 2: N(H) in the union of the elliptic and rational affine windows
    in_win = np.array([
        curves.in_elliptic_affine_window(int(x), q) or curves.in_rational_affine_window(int(x), q)
        for x in range(int(n_h.max()) + 1)
    ])
    win_ok = in_win[n_h[applicable]]
    idx_bad = np.flatnonzero(applicable)[~win_ok]
    rep.add("N(H) lies in the union of the affine windows on every applicable class",
            bool(win_ok.all()), n_app, int(win_ok.sum()),
            note=("violations: "
                  + str([(_class_tuple(cols, int(i)), int(n_h[i])) for i in idx_bad[:5]])
                  if not win_ok.all() else ""))
    if rational.any():
        win_rat = in_win[n_h[rational]]
        rep.add("N(H) lies in the union window on every rational-vbar class",
                bool(win_rat.all()), int(rational.sum()), int(win_rat.sum()),
                note="" if win_rat.all() else
                "window fails even where the cubic is defined over the base field")
    if quad.any():
        win_quad = in_win[n_h[quad]]
        rep.add("window status on quadratic-vbar classes (informational)",
                True, int(quad.sum()), int(win_quad.sum()),
                note="N(H) counts base-field points of a curve with extension "
                     "coefficients; the cubic-curve windows do not govern them")

    # the window can only fail where H is secretly reducible: an irreducible
    # cubic obeys the stated bounds, so every violator must carry a line
    E2 = ExtField(F, 2)
    v0, v1 = _vbar_component_sweep(F, cols, applicable, E2)
    cond_v, cond_x, cond_q = _honest_linear_sweep(F, cols, v0, v1, E2)
    has_line = cond_v | cond_x | cond_q
    viol = np.zeros(len(a11), dtype=bool)
    viol[np.flatnonzero(applicable)[~win_ok]] = True
    viol_rat = viol & rational
    rep.add("every rational-vbar window violation comes from a reducible cubic",
            bool((~viol_rat | has_line).all()),
            int(viol_rat.sum()), int((viol_rat & has_line).sum()),
            note="their conics are non-degenerate, so the stated reducibility "
                 "criteria do not see these lines")

    rng = random.Random(q * 7 + 4)
    sample_ok = True
    for i in _sample_indices(rng, applicable, min(SAMPLE_CHECKS, 24)):
        c = Conic(*_class_tuple(cols, i))
        res = curves.hasse_window_check(F, c)
        sample_ok &= res["n_g"] == int(n_g[i]) and res["n_h"] == int(n_h[i])
    rep.add("vectorized counts agree with the per-conic implementation (sampled)",
            sample_ok)
    rep.elapsed = time.perf_counter() - t0
    return rep


# ----------------------------------------------------------------------
# Intersection spectrum sweeps (also backing the corollary check)
# ----------------------------------------------------------------------

def _in_window_with_origin(count: int, q: int) -> bool:
    """(q - 2*sqrt(q) - 2)/2 <= count <= (sqrt(q) + 1)^2 / 2, exactly."""
    c2 = 2 * count
    lo_rhs = q - 2 - c2
    if lo_rhs > 0 and lo_rhs * lo_rhs > 4 * q:
        return False
    hi_lhs = c2 - q - 1
    if hi_lhs > 0 and hi_lhs * hi_lhs > 4 * q:
        return False
    return True


def conic_spectrum(F: Field, delta: Optional[DeltaSet] = None) -> dict:
    """Histogram of |Delta ∩ C| over all non-degenerate conic classes, with
    window and exceptional-family accounting for both set variants."""
    t0 = time.perf_counter()
    q = F.q
    delta = delta or build_delta(F, include_origin=False)
    dbar = build_delta(F, include_origin=True)
    cols = conic_class_columns(F)
    a11, a12, a22, a13, a23, a33 = [c.astype(np.int64) for c in cols]
    counts = zero_counts(F, cols, conic_monomials_at(F, delta.points))
    counts_bar = zero_counts(F, cols, conic_monomials_at(F, dbar.points))
    nondeg = degeneracy_vector(F, cols) != 0
    family_parabola = (a12 == 0) & (a22 == 0) & (a23 != 0) & (
        F.vmul(a13, a13) == F.vmul(a33, a23))
    family_vertical = (a12 == 0) & (a22 == 0) & (a23 == 0) & (a11 != 0) & (a13 != 0) & (a33 != 0)
    in_win = np.array([in_window_half_open(c, q) for c in range(int(counts.max()) + 1)])
    window_ok = in_win[counts]
    in_win_bar = np.array([_in_window_with_origin(c, q)
                           for c in range(int(counts_bar.max()) + 1)])
    window_bar_ok = in_win_bar[counts_bar]

    hist = np.bincount(counts[nondeg])
    explained = window_ok | family_parabola | family_vertical
    violations = nondeg & ~explained
    idx = np.flatnonzero(violations)
    viol_hist = np.bincount(counts[violations], minlength=1)
    stated_families = family_parabola | ((a12 == 0) & (a22 == 0) & (a23 == 0))
    violations_bar = nondeg & ~(window_bar_ok | stated_families)
    viol_bar_hist = np.bincount(counts_bar[violations_bar], minlength=1)
    return {
        "q": q,
        "nondegenerate_classes": int(nondeg.sum()),
        "histogram": {int(c): int(n) for c, n in enumerate(hist) if n},
        "window_violations": int(violations.sum()),
        "violation_counts": {int(c): int(n) for c, n in enumerate(viol_hist) if n},
        "violation_examples": [
            (_class_tuple(cols, int(i)), int(counts[i])) for i in idx[:8]
        ],
        "exceptional_parabola_classes": int((nondeg & family_parabola).sum()),
        "origin_included_window_violations": int(violations_bar.sum()),
        "origin_included_violation_counts": {
            int(c): int(n) for c, n in enumerate(viol_bar_hist) if n},
        "elapsed": round(time.perf_counter() - t0, 3),
    }


def line_spectrum(F: Field) -> dict:
    delta = build_delta(F, include_origin=False)
    dbar = build_delta(F, include_origin=True)
    hist: dict[int, int] = {}
    flagged = []
    for line in all_lines(F):
        nd = count_on_delta(F, line, delta)
        nb = count_on_delta(F, line, dbar)
        hist[nd] = hist.get(nd, 0) + 1
        stated = line_delta_count_closed_form(F, line)
        if stated not in (nd, nb):
            flagged.append((line.coeffs(), stated, nd, nb))
    return {
        "q": F.q,
        "lines": F.q * F.q + F.q,
        "histogram_delta": dict(sorted(hist.items())),
        "stated_mismatches": flagged,
    }


def parabola_spectrum(F: Field) -> dict:
    """Brute-force counts over every class with a12 = a22 = 0 (vectorized),
    compared against the closed-form case analysis."""
    delta = build_delta(F, include_origin=False)
    dbar = build_delta(F, include_origin=True)
    cols4 = projective_class_columns(F.q, 4, F.np_dtype)
    monos_d = [(F.mul(x, x), x, y, 1) for x, y in delta.points]
    monos_b = [(F.mul(x, x), x, y, 1) for x, y in dbar.points]
    counts_d = zero_counts(F, cols4, monos_d)
    counts_b = zero_counts(F, cols4, monos_b)
    mismatches = []
    for i in range(len(cols4[0])):
        c = Conic(int(cols4[0][i]), 0, 0, int(cols4[1][i]), int(cols4[2][i]), int(cols4[3][i]))
        for io, actual in ((False, int(counts_d[i])), (True, int(counts_b[i]))):
            pred = parabola_count_closed_form(F, c, io)
            if pred != actual:
                mismatches.append((c.coeffs(), io, pred, actual))
    hist = np.bincount(counts_d)
    return {
        "q": F.q,
        "classes": len(cols4[0]),
        "histogram_delta": {int(c): int(n) for c, n in enumerate(hist) if n},
        "closed_form_mismatches": mismatches,
    }


SUITES: dict[str, Callable[[Field], SuiteReport]] = {
    "field": verify_field,
    "geometry": verify_geometry,
    "lemma": verify_lemma,
    "relations": verify_relations,
    "reducibility": verify_reducibility,
    "hasse": verify_hasse,
}


def run_suite(name: str, F: Field) -> list[SuiteReport]:
    if name == "all":
        return [fn(F) for fn in SUITES.values()]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return [SUITES[name](F)]
