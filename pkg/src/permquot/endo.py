"""The coordinatewise d-th power map on P^n and its descent to P^n/G.

Maps are stored as sparse monomial exponent matrices: entry i maps each
variable index to its exponent in the i-th output coordinate. Composition
of monomial maps is integer matrix multiplication, so commutation is
checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .age import Verdict, reid_tai_verdict
from .groups import PermutationGroup
from .perm import Permutation, format_cycles

Exponents = tuple[dict[int, int], ...]


@dataclass(frozen=True)
class MonomialMap:
    d: int
    N: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("exponent d must be >= 1")
        if self.N < 2:
            raise ValueError("need at least 2 homogeneous coordinates")

    def exponents(self) -> Exponents:
        return tuple({i: self.d} for i in range(self.N))

    def __str__(self) -> str:
        xs = [f"x{i}" for i in range(1, self.N + 1)]
        body = ", ".join(xs if self.d == 1 else [f"{x}^{self.d}" for x in xs])
        return f"({', '.join(xs)}) -> ({body})"


def power_map(d: int, N: int) -> MonomialMap:
    return MonomialMap(d, N)


def permutation_exponents(s: Permutation) -> Exponents:
    """Exponents of the substitution x_i -> x_{s(i)}."""
    return tuple({s(i + 1) - 1: 1} for i in range(s.degree))


def compose_monomial(outer: Exponents, inner: Exponents) -> Exponents:
    """Exponents of ``outer∘inner``: substitute ``inner`` into ``outer``."""
    out = []
    for row in outer:
        acc: dict[int, int] = {}
        for k, e in row.items():
            for j, f in inner[k].items():
                acc[j] = acc.get(j, 0) + e * f
        out.append({j: v for j, v in acc.items() if v})
    return tuple(out)


def commutes(phi: MonomialMap, s: Permutation) -> bool:
    if s.degree != phi.N:
        raise ValueError(f"permutation of degree {s.degree} acting on {phi.N} coordinates")
    F = phi.exponents()
    S = permutation_exponents(s)
    return compose_monomial(F, S) == compose_monomial(S, F)


def endo_degree(d: int, dim: int) -> int:
    if d < 1 or dim < 1:
        raise ValueError("need d >= 1 and dim >= 1")
    return d**dim


def count_preimages_p1(d: int, point: complex = 0.3 + 0.7j) -> int:
    """Distinct solutions of z^d = point, found by numeric root finding.

    ``point`` is an affine coordinate on P^1 away from 0 and infinity, where
    [z:1] -> [z^d:1] has exactly d preimages.
    """
    coeffs = np.zeros(d + 1, dtype=complex)
    coeffs[0], coeffs[-1] = 1.0, -point
    roots = np.roots(coeffs)
    distinct: list[complex] = []
    for r in roots:
        if abs(r**d - point) > 1e-8:
            continue
        if all(abs(r - q) > 1e-6 for q in distinct):
            distinct.append(r)
    return len(distinct)


@dataclass(frozen=True)
class EndoCertificate:
    d: int
    dimension: int
    generators: tuple[Permutation, ...]
    commutes: tuple[bool, ...]
    degree: int
    verdict: Verdict | None = None

    @property
    def valid(self) -> bool:
        return all(self.commutes) and self.degree == self.d**self.dimension

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "dimension": self.dimension,
            "degree": self.degree,
            "commutes": {format_cycles(g): ok for g, ok in zip(self.generators, self.commutes)},
            "valid": self.valid,
        }
        if self.verdict is not None:
            out["verdict"] = self.verdict.kind.value
        return out


class CommutationError(RuntimeError):
    pass


def certificate(G: PermutationGroup, d: int, with_verdict: bool = True) -> EndoCertificate:
    """Check that the d-th power map on P^(N-1) is G-equivariant and give its degree.

    Commutation is checked on generators, which suffices for the whole group.
    Generators are sorted so the result does not depend on their order.
    """
    N = G.degree
    if N < 2:
        raise ValueError("the group must act on at least 2 coordinates")
    phi = power_map(d, N)
    gens = tuple(sorted(set(G.generators)))
    flags = tuple(commutes(phi, g) for g in gens)
    if not all(flags):
        bad = [format_cycles(g) for g, ok in zip(gens, flags) if not ok]
        raise CommutationError(f"power map does not commute with {bad}")
    return EndoCertificate(
        d=d,
        dimension=N - 1,
        generators=gens,
        commutes=flags,
        degree=endo_degree(d, N - 1),
        verdict=reid_tai_verdict(G) if with_verdict else None,
    )
