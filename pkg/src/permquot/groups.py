"""Finite permutation groups.

Groups are enumerated in full: breadth-first closure of the generators up to
a hard element cap. Abstract groups are given by multiplication tables and
turned into permutation groups through the left regular action.
"""

from __future__ import annotations

import itertools
import json
import re
from collections import deque
from dataclasses import dataclass, field
from math import factorial
from operator import itemgetter
from typing import Iterator, Sequence

import numpy as np

from .perm import Permutation, format_cycles, max_point, parse_cycles

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    def __init__(self, cap: int) -> None:
        super().__init__(f"group closure exceeded the cap of {cap} elements")
        self.cap = cap


@dataclass(frozen=True, eq=False)
class PermutationGroup:
    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]  # identity first, then lexicographic
    cap: int = DEFAULT_CAP
    _members: frozenset = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self._members

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [format_cycles(g) for g in self.generators]}


def close_generators(
    gens: Sequence[Permutation], cap: int = DEFAULT_CAP, degree: int | None = None
) -> PermutationGroup:
    """Enumerate the group generated by ``gens``.

    ``degree`` is only needed when ``gens`` is empty. Raises ``CapExceeded``
    as soon as more than ``cap`` elements have been found.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if degree is None:
        if not gens:
            raise ValueError("degree is required for an empty generator list")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")

    ident = tuple(range(degree))
    gen_imgs = list(dict.fromkeys(g._img for g in gens if g._img != ident))
    # itemgetter(*s)(x) is the tuple x∘s; degree 1 has no nontrivial generators
    right_mul = [itemgetter(*s) for s in gen_imgs]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for mul in right_mul:
            y = mul(x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(cap)
                queue.append(y)
    elements = tuple(Permutation._raw(t) for t in sorted(seen))
    return PermutationGroup(degree, tuple(gens), elements, cap)


def element_iter(G: PermutationGroup) -> Iterator[Permutation]:
    """Every element once: identity first, then lexicographic on images."""
    return iter(G.elements)


def symmetric_group(n: int, cap: int = DEFAULT_CAP) -> PermutationGroup:
    if n == 1:
        return close_generators([], cap, degree=1)
    gens = [Permutation.from_cycles([(1, 2)], n), Permutation.from_cycles([tuple(range(1, n + 1))], n)]
    return close_generators(gens, cap)


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order, without building a group."""
    for t in itertools.permutations(range(n)):
        yield Permutation._raw(t)


def check_lagrange(G: PermutationGroup) -> bool:
    return factorial(G.degree) % G.order == 0


# -- multiplication tables -------------------------------------------------


class TableError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MultiplicationTable:
    """``table[a, b]`` is the index of ``a·b``; index 0 is the identity."""

    table: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
            raise TableError(f"table must be a non-empty square array, got shape {t.shape}")
        k = t.shape[0]
        target = np.arange(k)
        for a in range(k):
            if not np.array_equal(np.sort(t[a]), target):
                raise TableError(f"row {a} is not a permutation of 0..{k - 1}")
        for b in range(k):
            if not np.array_equal(np.sort(t[:, b]), target):
                raise TableError(f"column {b} is not a permutation of 0..{k - 1}")
        if not (np.array_equal(t[0], target) and np.array_equal(t[:, 0], target)):
            raise TableError("index 0 is not the identity")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_associative(self, samples: int | None = None, seed: int = 0) -> bool:
        t = self.table
        k = self.size
        if samples is None:
            a, b, c = np.meshgrid(np.arange(k), np.arange(k), np.arange(k), indexing="ij")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, k, size=(3, samples))
        return bool(np.array_equal(t[t[a, b], c], t[a, t[b, c]]))

    def element_order(self, a: int) -> int:
        x, m = a, 1
        while x != 0:
            x = int(self.table[x, a])
            m += 1
        return m

    def generating_set(self) -> list[int]:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        sub = {0}
        for a in range(1, self.size):
            if a in sub:
                continue
            gens.append(a)
            queue = deque(sub)
            while queue:
                x = queue.popleft()
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in sub:
                        sub.add(y)
                        queue.append(y)
            if len(sub) == self.size:
                break
        return gens

    def to_json(self) -> dict:
        return {"size": self.size, "table": self.table.tolist()}

    @classmethod
    def from_json(cls, data: dict | str) -> MultiplicationTable:
        if isinstance(data, str):
            data = json.loads(data)
        table = data["table"]
        if "size" in data and data["size"] != len(table):
            raise TableError(f"size {data['size']} does not match {len(table)} table rows")
        return cls(np.array(table, dtype=np.int64))


def cyclic(k: int) -> MultiplicationTable:
    if k < 1:
        raise ValueError("cyclic(k) needs k >= 1")
    r = np.arange(k)
    return MultiplicationTable((r[:, None] + r[None, :]) % k)


def dihedral(k: int) -> MultiplicationTable:
    """Symmetries of a k-gon, order 2k; index i + k*j stands for r^i s^j."""
    if k < 1:
        raise ValueError("dihedral(k) needs k >= 1")
    idx = np.arange(2 * k)
    i, j = idx % k, idx // k
    sign = np.where(j == 1, -1, 1)
    # (r^i s^a)(r^j s^b) = r^(i + (-1)^a j) s^(a+b)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % k
    ref = (j[:, None] + j[None, :]) % 2
    return MultiplicationTable(rot + k * ref)


def heisenberg_mod_p(p: int) -> MultiplicationTable:
    """Unitriangular 3x3 matrices over Z/p, order p^3.

    (a, b, c) is the matrix [[1, a, c], [0, 1, b], [0, 0, 1]] with index
    a*p^2 + b*p + c.
    """
    if p < 2:
        raise ValueError("heisenberg_mod_p(p) needs p >= 2")
    idx = np.arange(p**3)
    a, b, c = idx // (p * p), (idx // p) % p, idx % p
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return MultiplicationTable(A * p * p + B * p + C)


def direct_product(t1: MultiplicationTable, t2: MultiplicationTable) -> MultiplicationTable:
    """Pairs (x, y) indexed x*|t2| + y."""
    k2 = t2.size
    T = t1.table[:, None, :, None] * k2 + t2.table[None, :, None, :]
    k = t1.size * k2
    return MultiplicationTable(T.reshape(k, k))


def symmetric(k: int) -> MultiplicationTable:
    """S_k with elements in lexicographic order and product p∘q."""
    if not 1 <= k <= 7:
        raise ValueError("symmetric(k) supports 1 <= k <= 7")
    perms = list(itertools.permutations(range(k)))
    index = {p: n for n, p in enumerate(perms)}
    t = np.array([[index[tuple(p[j] for j in q)] for q in perms] for p in perms])
    return MultiplicationTable(t)


def power(t: MultiplicationTable, e: int) -> MultiplicationTable:
    if e < 1:
        raise ValueError("exponent must be >= 1")
    out = t
    for _ in range(e - 1):
        out = direct_product(out, t)
    return out


NAMED = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "heisenberg": heisenberg_mod_p,
    "heisenberg_mod_p": heisenberg_mod_p,
    "symmetric": symmetric,
}


def named_group(name: str, *params, cap: int = DEFAULT_CAP) -> MultiplicationTable:
    """Look up a constructor by name.

    ``direct_product`` takes two tables; the others take one integer.
    """
    if name == "direct_product":
        t1, t2 = params
        if t1.size * t2.size > cap:
            raise ValueError(f"product order {t1.size * t2.size} exceeds cap {cap}")
        return direct_product(t1, t2)
    if name not in NAMED:
        raise ValueError(f"unknown group family {name!r}")
    (k,) = params
    t = NAMED[name](int(k))
    if t.size > cap:
        raise ValueError(f"{name}({k}) has order {t.size} > cap {cap}")
    return t


def parse_family(text: str, cap: int = DEFAULT_CAP) -> MultiplicationTable:
    """Parse e.g. ``"heisenberg:3"`` or ``"dihedral:4 x cyclic:2^6"``."""
    factors = [f.strip() for f in re.split(r"\s*[x*]\s*", text.strip()) if f.strip()]
    if not factors:
        raise ValueError(f"empty family specification {text!r}")
    table = None
    for f in factors:
        m = re.fullmatch(r"([a-z_]+):(\d+)(?:\^(\d+))?", f)
        if m is None:
            raise ValueError(f"cannot parse group factor {f!r}; expected name:param[^power]")
        name, k, e = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        base = named_group(name, k, cap=cap)
        if base.size**e > cap:
            raise ValueError(f"{f} has order {base.size ** e} > cap {cap}")
        t = power(base, e)
        table = t if table is None else named_group("direct_product", table, t, cap=cap)
    return table


def regular_representation(
    t: MultiplicationTable, add_fixed_point: bool = False, cap: int = DEFAULT_CAP
) -> PermutationGroup:
    """Left regular action: element a acts as b -> a·b on points 1..|G|.

    With ``add_fixed_point`` the group sits in S_{|G|+1} fixing the last point.
    """
    k = t.size
    if k > cap:
        raise CapExceeded(cap)
    degree = k + 1 if add_fixed_point else k
    tail = (k,) if add_fixed_point else ()

    def image(a: int) -> Permutation:
        return Permutation._raw(tuple(t.table[a].tolist()) + tail)

    gens = tuple(image(a) for a in t.generating_set())
    elements = tuple(sorted(image(a) for a in range(k)))
    return PermutationGroup(degree, gens, elements, cap)


def parse_generators(spec: str | list | dict, degree: int | None = None) -> tuple[int, list[Permutation]]:
    """Read generators from JSON or a plain cycle list.

    Accepted: ``{"degree": n, "generators": [...]}``, a JSON list of cycle
    strings, or cycle strings separated by ``;`` or newlines. Without an
    explicit degree the largest point mentioned is used.
    """
    data = spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("{") or s.startswith("["):
            data = json.loads(s)
        else:
            data = [part for part in re.split(r"[;\n]", s) if part.strip()]
    if isinstance(data, dict):
        degree = data.get("degree", degree)
        data = data.get("generators", [])
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise ValueError("generators must be a list of cycle strings")
    if degree is None:
        degree = max([max_point(x) for x in data] + [1])
    return degree, [parse_cycles(x, degree) for x in data]

