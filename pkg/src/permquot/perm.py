"""Permutations of {1..n}: composition, cycles, cycle types, cycle notation.

Points are 1-based in every public method; the images are stored 0-based.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Malformed cycle notation; ``position`` is the 0-based offset in the text."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Permutation:
    """A bijection of {1..n}. Immutable and hashable."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int]) -> None:
        imgs = tuple(int(x) - 1 for x in images)
        n = len(imgs)
        if n < 1:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(imgs) != list(range(n)):
            raise ValueError(f"images {tuple(x + 1 for x in imgs)} are not a bijection of 1..{n}")
        self._img = imgs
        self._hash = hash(imgs)

    @classmethod
    def _raw(cls, img: tuple[int, ...]) -> Permutation:
        # trusted 0-based constructor for hot loops
        p = object.__new__(cls)
        p._img = img
        p._hash = hash(img)
        return p

    @classmethod
    def identity(cls, n: int) -> Permutation:
        if n < 1:
            raise ValueError("a permutation needs degree >= 1")
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from disjoint cycles of 1-based points."""
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= degree:
                    raise ValueError(f"point {a} outside 1..{degree}")
                if a in seen:
                    raise ValueError(f"point {a} appears twice")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                img[a - 1] = b - 1
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based images: ``images[i-1]`` is the image of point ``i``."""
        return tuple(x + 1 for x in self._img)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        img = list(range(self.degree))
        for cyc in _cycles0(self._img):
            L = len(cyc)
            for pos, a in enumerate(cyc):
                img[a] = cyc[(pos + k) % L]
        return Permutation._raw(tuple(img))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: Permutation) -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q``, i.e. the permutation ``i -> p(q(i))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p._img
    return Permutation._raw(tuple([pi[j] for j in q._img]))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, j in enumerate(p._img):
        inv[j] = i
    return Permutation._raw(tuple(inv))


def _cycles0(img: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(img)
    out = []
    for start in range(len(img)):
        if seen[start]:
            continue
        cyc = []
        a = start
        while not seen[a]:
            seen[a] = True
            cyc.append(a)
            a = img[a]
        out.append(cyc)
    return out


def cycle_decomposition(p: Permutation) -> list[tuple[int, ...]]:
    """All cycles of ``p``, fixed points included, each starting at its least point."""
    return [tuple(a + 1 for a in c) for c in _cycles0(p._img)]


@dataclass(frozen=True)
class CycleType:
    degree: int
    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        if sum(self.lengths) != self.degree:
            raise ValueError(f"cycle lengths {self.lengths} do not sum to {self.degree}")
        if list(self.lengths) != sorted(self.lengths, reverse=True):
            raise ValueError("cycle lengths must be sorted descending")

    @property
    def order(self) -> int:
        return lcm(*self.lengths)

    @property
    def nontrivial(self) -> tuple[int, ...]:
        return tuple(L for L in self.lengths if L > 1)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.lengths)) + "]"


def cycle_lengths(p: Permutation) -> tuple[int, ...]:
    img = p._img
    seen = bytearray(len(img))
    lengths = []
    for start in range(len(img)):
        if seen[start]:
            continue
        L = 0
        a = start
        while not seen[a]:
            seen[a] = 1
            a = img[a]
            L += 1
        lengths.append(L)
    lengths.sort(reverse=True)
    return tuple(lengths)


def cycle_type(p: Permutation) -> CycleType:
    return CycleType(p.degree, cycle_lengths(p))


def order(p: Permutation) -> int:
    return lcm(*cycle_lengths(p))


# conjugacy classes of (12), (123), (12)(34) in S_n
FORBIDDEN_TYPES = frozenset({(2,), (3,), (2, 2)})


def is_forbidden_type(p: Permutation) -> bool:
    return tuple(L for L in cycle_lengths(p) if L > 1) in FORBIDDEN_TYPES


def format_cycles(p: Permutation) -> str:
    cycles = [c for c in cycle_decomposition(p) if len(c) > 1]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\d+)|(,)|(\S))")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint cycle notation such as ``"(1 2 3)(4 5)"``.

    ``"()"``, ``"id"`` and the empty string give the identity. Commas may
    separate points. Errors carry the offending character offset.
    """
    stripped = text.strip()
    if stripped in ("", "id", "()"):
        return Permutation.identity(degree)
    cycles: list[list[int]] = []
    current: list[int] | None = None
    seen: set[int] = set()
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        pos = m.end()
        if m.group(1):
            if current is not None:
                raise ParseError("nested '('", start)
            current = []
        elif m.group(2):
            if current is None:
                raise ParseError("unmatched ')'", start)
            cycles.append(current)
            current = None
        elif m.group(3):
            if current is None:
                raise ParseError("point outside a cycle", start)
            a = int(m.group(3))
            if not 1 <= a <= degree:
                raise ParseError(f"point {a} outside 1..{degree}", start)
            if a in seen:
                raise ParseError(f"repeated point {a}", start)
            seen.add(a)
            current.append(a)
        elif m.group(4):
            if current is None:
                raise ParseError("',' outside a cycle", start)
        else:
            raise ParseError(f"unexpected character {m.group(5)!r}", start)
    if current is not None:
        raise ParseError("unclosed '('", len(text))
    return Permutation.from_cycles(cycles, degree)


def max_point(text: str) -> int:
    """Largest integer appearing in a cycle string (0 if none)."""
    return max((int(t) for t in re.findall(r"\d+", text)), default=0)


def cycle_type_counts(perms: Iterable[Permutation]) -> Counter:
    return Counter(cycle_lengths(p) for p in perms)
