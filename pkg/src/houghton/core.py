"""Exact elements of Houghton's groups H_n and their group arithmetic.

An element is stored in normal form: the eventual translation amount of
each ray plus a finite exception table holding every point whose image
differs from the tail formula (i, m) -> (i, m + t_i).  The normal form is
unique, so equality is structural.

Points are plain tuples (ray, offset) with rays 1-indexed and offsets
0-indexed.  The action convention is on the right throughout: (p)(g*h)
means apply g first, then h.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

Point = Tuple[int, int]


class InvalidElementError(ValueError):
    """The given data does not describe a valid element (e.g. not a bijection)."""


class WordError(ValueError):
    """Malformed word text or a generator id that is invalid for this n."""


_TOKEN_RE = re.compile(r"^(g[0-9]+|s)('?)$")


def generator_ids(n: int) -> Tuple[str, ...]:
    """The fixed generating set: g2..gn for n >= 3, {g2, s} for n = 2."""
    if n < 2:
        raise WordError("n must be at least 2")
    if n == 2:
        return ("g2", "s")
    return tuple("g%d" % i for i in range(2, n + 1))


@dataclass(frozen=True)
class Word:
    """A word over the signed generators, e.g. parsed from "g2 g3' s"."""

    n: int
    letters: Tuple[Tuple[str, int], ...]

    @classmethod
    def parse(cls, n: int, text: str) -> "Word":
        valid = set(generator_ids(n))
        letters = []
        for token in text.split():
            match = _TOKEN_RE.match(token)
            if match is None:
                raise WordError("bad token %r" % token)
            gid, prime = match.groups()
            if gid not in valid:
                raise WordError("generator %r is not valid for n=%d" % (gid, n))
            letters.append((gid, -1 if prime else 1))
        return cls(n, tuple(letters))

    def inverse(self) -> "Word":
        return Word(self.n, tuple((gid, -sign) for gid, sign in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(gid + ("" if sign > 0 else "'") for gid, sign in self.letters)


class HoughtonElement:
    """An element of H_n: translation vector plus finite exception table."""

    __slots__ = ("n", "t", "exceptions", "_hash")

    def __init__(
        self,
        n: int,
        t: Iterable[int],
        exceptions: Union[Mapping[Point, Point], Iterable[Tuple[Point, Point]]],
        validate: bool = True,
    ):
        self.n = int(n)
        self.t = tuple(int(v) for v in t)
        items = exceptions.items() if isinstance(exceptions, Mapping) else exceptions
        self.exceptions: Dict[Point, Point] = {
            (int(p[0]), int(p[1])): (int(q[0]), int(q[1])) for p, q in items
        }
        self._hash: Optional[int] = None
        if validate:
            self._validate()

    # -- normal form / bijectivity checks ---------------------------------

    def _validate(self) -> None:
        if self.n < 2:
            raise InvalidElementError("n must be at least 2")
        if len(self.t) != self.n:
            raise InvalidElementError("translation vector must have length n")
        if sum(self.t) != 0:
            raise InvalidElementError("translation vector must sum to zero")
        dom = self.exceptions
        for p, q in dom.items():
            for i, m in (p, q):
                if not (1 <= i <= self.n):
                    raise InvalidElementError("ray %d out of range" % i)
                if m < 0:
                    raise InvalidElementError("negative offset at %r" % ((i, m),))
        # minimality: never store a tail-consistent entry
        for (i, m), q in dom.items():
            tail = m + self.t[i - 1]
            if tail >= 0 and q == (i, tail):
                raise InvalidElementError(
                    "non-minimal entry %r -> %r matches the tail formula" % ((i, m), q)
                )
        # points whose tail image would be negative must be redirected
        for i in range(1, self.n + 1):
            ti = self.t[i - 1]
            for m in range(max(0, -ti)):
                if (i, m) not in dom:
                    raise InvalidElementError(
                        "point %r has no image: tail offset would be negative" % ((i, m),)
                    )
        ran = {}
        for p, q in dom.items():
            if q in ran:
                raise InvalidElementError("two points map to %r" % (q,))
            ran[q] = p
        # injectivity against the tail part
        for q in ran:
            j, k = q
            src = k - self.t[j - 1]
            if src >= 0 and (j, src) not in dom:
                raise InvalidElementError(
                    "%r is hit both by an exception and by the tail formula" % (q,)
                )
        # surjectivity: points missed by the tail part must be in the range
        for j in range(1, self.n + 1):
            for k in range(max(0, self.t[j - 1])):
                if (j, k) not in ran:
                    raise InvalidElementError("point %r is never hit" % ((j, k),))
        for (i, m) in dom:
            tail = m + self.t[i - 1]
            if tail >= 0 and (i, tail) not in ran:
                raise InvalidElementError("point %r is never hit" % ((i, tail),))

    # -- structural identity ----------------------------------------------

    def _key(self):
        return (self.n, self.t, tuple(sorted(self.exceptions.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, HoughtonElement):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __mul__(self, other: "HoughtonElement") -> "HoughtonElement":
        return compose(self, other)

    def __repr__(self) -> str:
        return "HoughtonElement(n=%d, t=%s, exceptions=%s)" % (
            self.n,
            self.t,
            sorted(self.exceptions.items()),
        )

    def max_exception_offset(self) -> int:
        """Largest offset appearing in the exception table, -1 if empty."""
        best = -1
        for (_, m), (_, k) in self.exceptions.items():
            best = max(best, m, k)
        return best

    def is_identity(self) -> bool:
        return not self.exceptions and all(v == 0 for v in self.t)


# -- constructors -----------------------------------------------------------


def identity(n: int) -> HoughtonElement:
    if n < 2:
        raise InvalidElementError("n must be at least 2")
    return HoughtonElement(n, (0,) * n, {}, validate=False)


def generator(n: int, gid: str) -> HoughtonElement:
    """The generator g_i (push ray i one step in, ray 1 one step out) or s."""
    if gid not in generator_ids(n):
        raise WordError("generator %r is not valid for n=%d" % (gid, n))
    if gid == "s":
        return HoughtonElement(2, (0, 0), {(1, 0): (2, 0), (2, 0): (1, 0)}, validate=False)
    i = int(gid[1:])
    t = [0] * n
    t[0] = 1
    t[i - 1] = -1
    return HoughtonElement(n, t, {(i, 0): (1, 0)}, validate=False)


# -- point action -----------------------------------------------------------


def apply(g: HoughtonElement, p: Point) -> Point:
    """(p)g under the right action."""
    i, m = p
    if not (1 <= i <= g.n) or m < 0:
        raise InvalidElementError("point %r is not in the ray set" % (p,))
    q = g.exceptions.get(p)
    if q is not None:
        return q
    return (i, m + g.t[i - 1])


# -- composition via a lazily shifted running product -----------------------


class _Accumulator:
    """Right-multiplies elements onto a running product.

    Image offsets are kept relative to per-ray shift counters, so absorbing
    an element only touches that element's own exception entries.  This is
    what keeps evaluation of long words fast: each generator letter costs
    O(1) amortised.
    """

    def __init__(self, n: int):
        self.n = n
        self.shift = [0] * (n + 1)  # 1-indexed rays
        self.table: Dict[Point, Point] = {}  # domain point -> stored image
        self.inv: Dict[Point, Point] = {}  # stored image -> domain point

    def push(self, h: HoughtonElement) -> None:
        # find the current-product preimage of each exceptional point of h
        fixes = []
        for q, v in h.exceptions.items():
            j, k = q
            stored = (j, k - self.shift[j])
            p = self.inv.get(stored)
            if p is None:
                if stored[1] < 0 or stored in self.table:
                    raise InvalidElementError("running product is not a bijection")
                p = stored
            fixes.append((p, v))
        for i in range(1, self.n + 1):
            self.shift[i] += h.t[i - 1]
        # drop all stale inverse entries before writing: a new image may
        # coincide with another entry's old image
        for p, _ in fixes:
            old = self.table.get(p)
            if old is not None:
                self.inv.pop(old, None)
        for p, v in fixes:
            stored = (v[0], v[1] - self.shift[v[0]])
            self.table[p] = stored
            self.inv[stored] = p

    def element(self) -> HoughtonElement:
        t = tuple(self.shift[1:])
        exc = {}
        for (i, m), (j, k) in self.table.items():
            actual = (j, k + self.shift[j])
            if actual != (i, m + t[i - 1]):
                exc[(i, m)] = actual
        return HoughtonElement(self.n, t, exc, validate=False)


def compose(g: HoughtonElement, h: HoughtonElement) -> HoughtonElement:
    """The product g*h under the right action: (p)(g*h) = ((p)g)h."""
    if g.n != h.n:
        raise InvalidElementError("cannot compose elements with n=%d and n=%d" % (g.n, h.n))
    acc = _Accumulator(g.n)
    acc.push(g)
    acc.push(h)
    return acc.element()


def inverse(g: HoughtonElement) -> HoughtonElement:
    exc = {}
    t = tuple(-v for v in g.t)
    for p, q in g.exceptions.items():
        j, k = q
        tail = k + t[j - 1]
        if tail >= 0 and p == (j, tail):
            continue
        exc[q] = p
    return HoughtonElement(g.n, t, exc, validate=False)


def evaluate(w: Word) -> HoughtonElement:
    """The element represented by a word, in normal form."""
    letters = {}
    for gid in generator_ids(w.n):
        gen = generator(w.n, gid)
        letters[(gid, 1)] = gen
        letters[(gid, -1)] = inverse(gen)
    acc = _Accumulator(w.n)
    for letter in w.letters:
        acc.push(letters[letter])
    return acc.element()


def equals(g: HoughtonElement, h: HoughtonElement) -> bool:
    if g.n != h.n:
        raise InvalidElementError("cannot compare elements with different n")
    return g == h


def conjugate_element(g: HoughtonElement, x: HoughtonElement) -> HoughtonElement:
    """g^x = x^{-1} * g * x."""
    if g.n != x.n:
        raise InvalidElementError("cannot conjugate elements with different n")
    acc = _Accumulator(g.n)
    acc.push(inverse(x))
    acc.push(g)
    acc.push(x)
    return acc.element()


# -- canonical text format ---------------------------------------------------


def serialize(g: HoughtonElement) -> str:
    doc = {
        "n": g.n,
        "t": list(g.t),
        "exceptions": [[list(p), list(q)] for p, q in sorted(g.exceptions.items())],
    }
    return json.dumps(doc, separators=(",", ":"))


def deserialize(text: str) -> HoughtonElement:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidElementError("not valid JSON: %s" % exc) from exc
    if not isinstance(doc, dict):
        raise InvalidElementError("element document must be an object")
    missing = {"n", "t", "exceptions"} - set(doc)
    if missing:
        raise InvalidElementError("missing fields: %s" % ", ".join(sorted(missing)))
    n, t, pairs = doc["n"], doc["t"], doc["exceptions"]
    if not isinstance(n, int) or not isinstance(t, list) or not isinstance(pairs, list):
        raise InvalidElementError("bad field types in element document")
    exc = {}
    for entry in pairs:
        try:
            (i, m), (j, k) = entry
            p, q = (int(i), int(m)), (int(j), int(k))
        except (TypeError, ValueError) as err:
            raise InvalidElementError("bad exception entry %r" % (entry,)) from err
        if p in exc:
            raise InvalidElementError("duplicate exception domain point %r" % (p,))
        exc[p] = q
    return HoughtonElement(n, t, exc)
