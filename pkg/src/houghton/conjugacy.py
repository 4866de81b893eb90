"""Conjugacy decision for H_n with explicit conjugator certificates.

The solver layers:

  fsym_conjugate        conjugator with zero translation (finite support)
  conjugate_mod_zero    conjugator whose translation is divisible by the
                        moduli |t_i(a)| on every moving ray, found by a
                        bounded enumeration of translation tuples reduced
                        to the finite-support case
  conjugate             the full decision, enumerating residue classes of
                        conjugator translations and reducing each to the
                        divisible case

Every positive answer carries an element x with x^-1 * a * x = b, checked
exactly before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from math import gcd
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .core import (
    HoughtonElement,
    Point,
    apply,
    compose,
    conjugate_element,
    equals,
    identity,
    inverse,
)
from .orbits import (
    CycleDecomposition,
    InfiniteOrbit,
    cycle_decomposition,
    cycle_type,
    ends_partition,
)

TRANSLATION_MISMATCH = "translation-mismatch"
SUPPORT_COUNT_MISMATCH = "support-count-mismatch"
CYCLE_TYPE_MISMATCH = "cycle-type-mismatch"
FORCED_MAP_INCONSISTENT = "forced-map-inconsistent"
EXHAUSTED_SEARCH = "exhausted-bounded-search"

_WALK_LIMIT = 10_000_000


class StructuralMismatch(ValueError):
    """Infinite orbits of the two elements do not pair up residue-for-residue."""


@dataclass(frozen=True)
class BoundData:
    K: int  # max |S|+|T| over matched orbit pairs
    M: int  # max |t_i(a)| over moving rays
    N: int  # cap on the total translation of the searched conjugator


@dataclass(frozen=True)
class ConjugacyOutcome:
    conjugator: Optional[HoughtonElement]
    verified: bool = False
    reason: Optional[str] = None
    bounds: Optional[BoundData] = None

    @property
    def is_conjugate(self) -> bool:
        return self.conjugator is not None


def _yes(x: HoughtonElement, verified: bool, bounds: Optional[BoundData] = None) -> ConjugacyOutcome:
    return ConjugacyOutcome(conjugator=x, verified=verified, bounds=bounds)


def _no(reason: str, bounds: Optional[BoundData] = None) -> ConjugacyOutcome:
    return ConjugacyOutcome(conjugator=None, reason=reason, bounds=bounds)


def verify(a: HoughtonElement, b: HoughtonElement, x: HoughtonElement) -> bool:
    """Exact certificate check: x^-1 * a * x equals b."""
    return equals(conjugate_element(a, x), b)


# -- conjugation by finite-support elements ----------------------------------


def fsym_conjugate(a: HoughtonElement, b: HoughtonElement) -> ConjugacyOutcome:
    """Decide whether some x with t(x) = 0 and finite support conjugates a to b.

    Such an x is forced to be the identity far out on every moving ray, so
    its values on every infinite orbit propagate inward from the stable
    tails; finite cycles are matched by length; the leftover supports are
    paired off.  Each stage either pins down more of x or refutes.
    """
    if a.n != b.n:
        raise ValueError("elements live in different H_n")
    if a.t != b.t:
        return _no(TRANSLATION_MISMATCH)
    if cycle_type(a) != cycle_type(b):
        return _no(CYCLE_TYPE_MISMATCH)

    n = a.n
    big = max(a.max_exception_offset(), b.max_exception_offset())
    mass = max((abs(v) for v in a.t), default=0)
    # a zero-translation conjugator is the identity at offsets >= force on
    # every moving ray; stop is a window top safely inside the pure region
    force = big + 1 + mass
    stop = force + mass + 1

    window = [(i, m) for i in range(1, n + 1) for m in range(stop + 1)]
    moved_a = {p for p in window if apply(a, p) != p}
    moved_b = {p for p in window if apply(b, p) != p}
    only_a = sorted(moved_a - moved_b)
    only_b = sorted(moved_b - moved_a)
    if len(only_a) != len(only_b):
        return _no(SUPPORT_COUNT_MISMATCH)

    dec_a = cycle_decomposition(a)
    dec_b = cycle_decomposition(b)

    mapping: Dict[Point, Point] = {}
    for orbit in dec_a.infinite_orbits:
        j, s = orbit.neg_ray, orbit.neg_residue
        step = -a.t[j - 1]
        m0 = stop + ((s - stop) % step)
        p = v = (j, m0)
        guard = 0
        while True:
            p = apply(a, p)
            v = apply(b, v)
            if a.t[p[0] - 1] > 0 and p[1] >= stop:
                if p != v:
                    return _no(FORCED_MAP_INCONSISTENT)
                break
            if p != v:
                mapping[p] = v
            guard += 1
            if guard > _WALK_LIMIT:
                raise RuntimeError("forced-value walk did not terminate")
    if len(set(mapping.values())) != len(mapping):
        return _no(FORCED_MAP_INCONSISTENT)

    # finite cycles: equal length multisets (implied by the cycle-type check);
    # pair them lexicographically, aligned at their minimal points
    by_len_a: Dict[int, List[Tuple[Point, ...]]] = {}
    by_len_b: Dict[int, List[Tuple[Point, ...]]] = {}
    for c in dec_a.finite_cycles:
        by_len_a.setdefault(len(c), []).append(c)
    for c in dec_b.finite_cycles:
        by_len_b.setdefault(len(c), []).append(c)
    for length, cycles_a in by_len_a.items():
        for ca, cb in zip(cycles_a, by_len_b[length]):
            for pa, pb in zip(ca, cb):
                if pa != pb:
                    mapping[pa] = pb

    for pb, pa in zip(only_b, only_a):
        mapping[pb] = pa

    x = HoughtonElement(n, (0,) * n, {p: q for p, q in mapping.items() if p != q})
    return _yes(x, verified=verify(a, b, x))


# -- building blocks for the reduction ---------------------------------------


def _two_ray_shift(n: int, src: int, dst: int, amount: int, floor: int) -> HoughtonElement:
    """Move `amount` points from ray src to ray dst, fixing offsets below floor."""
    t = [0] * n
    t[dst - 1] = amount
    t[src - 1] = -amount
    exc: Dict[Point, Point] = {}
    for m in range(floor):
        exc[(dst, m)] = (dst, m)
        exc[(src, m)] = (src, m)
    for k in range(amount):
        exc[(src, floor + k)] = (dst, floor + k)
    return HoughtonElement(n, t, exc)


def construct_translation_element(
    n: int, w: Sequence[int], forbidden: Iterable[Point] = ()
) -> HoughtonElement:
    """An element with translation vector w whose support avoids `forbidden`.

    Built as a product of two-ray shifts operating above a floor that
    clears every forbidden offset.
    """
    w = [int(v) for v in w]
    if len(w) != n:
        raise ValueError("translation tuple must have length n")
    if sum(w) != 0:
        raise ValueError("translation tuple must sum to zero")
    forbidden = list(forbidden)
    floor = 1 + max((m for _, m in forbidden), default=-1)
    result = identity(n)
    sources = [[j + 1, -v] for j, v in enumerate(w) if v < 0]
    for i, need in ((i + 1, v) for i, v in enumerate(w) if v > 0):
        while need:
            j, avail = sources[0]
            take = min(need, avail)
            result = compose(result, _two_ray_shift(n, j, i, take, floor))
            need -= take
            if avail == take:
                sources.pop(0)
            else:
                sources[0][1] = avail - take
    return result


def centralizer_element(g: HoughtonElement, ray_class: Iterable[int]) -> HoughtonElement:
    """The product of all infinite cycles of g living on one ends class.

    The result commutes with g, translates like g on the class's rays and
    fixes the other rays almost everywhere.
    """
    cls = frozenset(ray_class)
    partition = ends_partition(g)
    if cls not in partition.classes:
        raise ValueError("%s is not an equivalence class of rays for this element" % sorted(cls))
    dec = cycle_decomposition(g)
    included = [o for o in dec.infinite_orbits if o.pos_ray in cls]
    t_masked = tuple(v if (i + 1) in cls else 0 for i, v in enumerate(g.t))

    spine_points = {p for o in included for p in o.spine}
    tails: Dict[Tuple[int, int], int] = {}
    for o in included:
        tails[(o.pos_ray, o.pos_residue)] = o.pos_cutoff
        tails[(o.neg_ray, o.neg_residue)] = o.neg_cutoff

    def member(p: Point) -> bool:
        if p in spine_points:
            return True
        i, m = p
        step = abs(g.t[i - 1])
        if step == 0:
            return False
        cutoff = tails.get((i, m % step))
        return cutoff is not None and m >= cutoff

    top = max(
        [g.max_exception_offset()]
        + [m for o in dec.infinite_orbits for _, m in o.spine]
        + [o.pos_cutoff for o in dec.infinite_orbits]
        + [o.neg_cutoff for o in dec.infinite_orbits]
        + [0]
    )
    exc: Dict[Point, Point] = {}
    for i in range(1, g.n + 1):
        for m in range(top + 1):
            p = (i, m)
            img = apply(g, p) if member(p) else p
            tail = m + t_masked[i - 1]
            if tail < 0 or img != (i, tail):
                exc[p] = img
    return HoughtonElement(g.n, t_masked, exc)


# -- bounds -------------------------------------------------------------------


def _match_orbits(
    dec_a: CycleDecomposition, dec_b: CycleDecomposition
) -> List[Tuple[InfiniteOrbit, InfiniteOrbit]]:
    by_pos = {(o.pos_ray, o.pos_residue): o for o in dec_b.infinite_orbits}
    pairs = []
    for oa in dec_a.infinite_orbits:
        ob = by_pos.get((oa.pos_ray, oa.pos_residue))
        if ob is None or (oa.neg_ray, oa.neg_residue) != (ob.neg_ray, ob.neg_residue):
            raise StructuralMismatch(
                "orbit ending at ray %d residue %d has no counterpart"
                % (oa.pos_ray, oa.pos_residue)
            )
        pairs.append((oa, ob))
    return pairs


def compute_bounds(
    a: HoughtonElement,
    b: HoughtonElement,
    dec_a: Optional[CycleDecomposition] = None,
    dec_b: Optional[CycleDecomposition] = None,
) -> BoundData:
    """Search bounds for the divisible-translation conjugator enumeration.

    K caps |S| + |T| over matched orbit pairs, where S and T are the finite
    parts of the two orbits outside common stable tails.  A conjugator
    whose translation is divisible by the moduli can be normalised, one
    ends class at a time, so that its per-ray translation multiplier is at
    most K times the class diameter; N caps the resulting total translation
    (doubled to absorb the rays that both elements almost fix, plus slack
    for tail-alignment off-by-ones).
    """
    if a.t != b.t:
        raise ValueError("bounds require equal translation vectors")
    if dec_a is None:
        dec_a = cycle_decomposition(a)
    if dec_b is None:
        dec_b = cycle_decomposition(b)
    pairs = _match_orbits(dec_a, dec_b)
    big_k = 0
    for oa, ob in pairs:
        up = a.t[oa.pos_ray - 1]
        down = -a.t[oa.neg_ray - 1]
        pos_cut = max(oa.pos_cutoff, ob.pos_cutoff)
        neg_cut = max(oa.neg_cutoff, ob.neg_cutoff)
        size_a = (
            len(oa.spine)
            + (pos_cut - oa.pos_cutoff) // up
            + (neg_cut - oa.neg_cutoff) // down
        )
        size_b = (
            len(ob.spine)
            + (pos_cut - ob.pos_cutoff) // up
            + (neg_cut - ob.neg_cutoff) // down
        )
        big_k = max(big_k, size_a + size_b)
    moving = [abs(v) for v in a.t if v != 0]
    mass = max(moving, default=0)
    if not moving:
        cap = 0
    else:
        n = a.n
        cap = 2 * n * max(1, n - 1) * big_k * mass + 2 * mass + 2
    return BoundData(K=big_k, M=mass, N=cap)


# -- enumeration of candidate translation tuples ------------------------------


def _level_tuples(steps: Sequence[int], level: int) -> Iterator[Tuple[int, ...]]:
    """Zero-sum integer tuples with sum(|s_i|) == level, s_i divisible by
    steps[i], in ascending lexicographic order."""
    n = len(steps)

    def rec(idx: int, remaining: int, total: int, prefix: List[int]) -> Iterator[Tuple[int, ...]]:
        if idx == n - 1:
            last = -total
            if abs(last) == remaining and last % steps[idx] == 0:
                yield tuple(prefix + [last])
            return
        step = steps[idx]
        lo = -(remaining // step) * step
        for s in range(lo, remaining + 1, step):
            rest = remaining - abs(s)
            if abs(total + s) > rest:
                continue
            yield from rec(idx + 1, rest, total + s, prefix + [s])

    if n == 0:
        if level == 0:
            yield ()
        return
    yield from rec(0, level, 0, [])


def _tuple_stream(steps: Sequence[int], limit: int) -> Iterator[Tuple[int, ...]]:
    for level in range(0, limit + 1, 2):
        yield from _level_tuples(steps, level)


def _conjugator_steps(a: HoughtonElement) -> List[int]:
    return [abs(v) if v != 0 else 1 for v in a.t]


# -- coset reduction -----------------------------------------------------------


def coset_reduce(solver, reps: Iterable[HoughtonElement], a: HoughtonElement, b: HoughtonElement) -> ConjugacyOutcome:
    """Decide conjugacy over a union of cosets C_i = C_0 * z_i^-1.

    Runs the base solver on each pair (a, b^z) and translates a witness x
    back as x * z^-1.
    """
    for z in reps:
        out = solver(a, conjugate_element(b, z))
        if out.is_conjugate:
            x = compose(out.conjugator, inverse(z))
            return _yes(x, verified=verify(a, b, x))
    return _no(EXHAUSTED_SEARCH)


# -- divisible-translation conjugators ----------------------------------------


def conjugate_mod_zero(a: HoughtonElement, b: HoughtonElement) -> ConjugacyOutcome:
    """Decide conjugacy by some x with t_i(x) divisible by |t_i(a)| on every
    moving ray; requires t(a) = t(b)."""
    if a.n != b.n:
        raise ValueError("elements live in different H_n")
    if a.t != b.t:
        return _no(TRANSLATION_MISMATCH)
    if cycle_type(a) != cycle_type(b):
        return _no(CYCLE_TYPE_MISMATCH)
    try:
        bounds = compute_bounds(a, b)
    except StructuralMismatch:
        return _no(EXHAUSTED_SEARCH)
    steps = _conjugator_steps(a)

    def reps() -> Iterator[HoughtonElement]:
        for s in _tuple_stream(steps, bounds.N):
            yield inverse(construct_translation_element(a.n, s))

    out = coset_reduce(fsym_conjugate, reps(), a, b)
    return replace(out, bounds=bounds)


# -- the full decision ----------------------------------------------------------


def _bezout_combination(values: Sequence[int], target: int) -> Optional[List[int]]:
    """Integers k with sum(k_i * values_i) == target, or None."""
    g = 0
    for v in values:
        g = gcd(g, v)
    if g == 0:
        return [0] * len(values) if target == 0 else None
    if target % g:
        return None
    coeffs = [0] * len(values)
    run = 0  # gcd of the prefix, with known combination in coeffs[:i]
    for i, v in enumerate(values):
        if run == 0:
            coeffs[i] = 1
            run = v
            continue
        new, x, y = _egcd(run, v)
        for j in range(i):
            coeffs[j] *= x
        coeffs[i] = y
        run = new
    scale = target // run
    return [c * scale for c in coeffs]


def _egcd(p: int, q: int) -> Tuple[int, int, int]:
    if q == 0:
        return (p, 1, 0) if p >= 0 else (-p, -1, 0)
    g, x, y = _egcd(q, p % q)
    return g, y, x - (p // q) * y


def _realize_residues(
    n: int, moving: Sequence[int], moduli: Sequence[int], residues: Sequence[int]
) -> Optional[List[int]]:
    """A zero-sum integer tuple congruent to the given residues on the
    moving rays, or None when no such tuple exists."""
    w = [0] * n
    for ray, r in zip(moving, residues):
        w[ray - 1] = r
    deficit = -sum(w)
    if deficit == 0:
        return w
    free = [i for i in range(1, n + 1) if i not in moving]
    if free:
        w[free[0] - 1] = deficit
        return w
    ks = _bezout_combination(list(moduli), deficit)
    if ks is None:
        return None
    for ray, m, k in zip(moving, moduli, ks):
        w[ray - 1] += k * m
    return w


def conjugate(a: HoughtonElement, b: HoughtonElement) -> ConjugacyOutcome:
    """The full conjugacy decision in H_n, with certificate.

    Candidate conjugator translations are split into residue classes
    modulo the |t_i(a)|; each realizable class is reduced to the
    divisible case and all classes are searched level by level (total
    candidate translation ascending, class order then lexicographic), so
    the first verified certificate is deterministic.
    """
    if a.n != b.n:
        raise ValueError("elements live in different H_n")
    if a.t != b.t:
        return _no(TRANSLATION_MISMATCH)
    if cycle_type(a) != cycle_type(b):
        return _no(CYCLE_TYPE_MISMATCH)

    n = a.n
    moving = [i for i in range(1, n + 1) if a.t[i - 1] != 0]
    moduli = [abs(a.t[i - 1]) for i in moving]
    steps = _conjugator_steps(a)
    dec_a = cycle_decomposition(a)

    classes = []  # (x_r, b_r, bounds)
    for residues in itertools.product(*(range(m) for m in moduli)):
        w = _realize_residues(n, moving, moduli, residues)
        if w is None:
            continue
        x_r = construct_translation_element(n, w)
        b_r = conjugate_element(b, inverse(x_r))  # x_r * b * x_r^-1
        try:
            bounds = compute_bounds(a, b_r, dec_a=dec_a)
        except StructuralMismatch:
            continue
        classes.append((x_r, b_r, bounds))

    last_bounds = classes[0][2] if classes else None
    top = max((c[2].N for c in classes), default=-1)
    for level in range(0, top + 1, 2):
        for x_r, b_r, bounds in classes:
            if level > bounds.N:
                continue
            for s in _level_tuples(steps, level):
                z = construct_translation_element(n, s)
                out = fsym_conjugate(a, conjugate_element(b_r, inverse(z)))
                if out.is_conjugate:
                    x = compose(compose(out.conjugator, z), x_r)
                    return _yes(x, verified=verify(a, b, x), bounds=bounds)
    return _no(EXHAUSTED_SEARCH, bounds=last_bounds)
