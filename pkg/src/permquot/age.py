"""Ages of permutation actions on projective space and the Reid-Tai test.

A permutation g of order m with cycles of lengths n_1..n_k is diagonalised
by the discrete Fourier basis of each cycle. With xi a fixed primitive m-th
root of unity, a cycle of length n_j contributes the eigenvalues
xi^(k*m_j), 0 <= k < n_j, where m_j = m / n_j. The integer exponents are the
weight vector.

A fixed point of g on P^(n-1) lying on the chart of an eigencoordinate with
weight w sees the tangent weights (w_i - w) mod m over the remaining
coordinates; the age there is their sum divided by m. The tangent weights
depend only on w, so one chart per distinct weight value suffices.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable

import numpy as np

from .perm import Permutation, cycle_lengths, format_cycles, is_forbidden_type


@dataclass(frozen=True)
class WeightVector:
    modulus: int
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if any(not 0 <= w < self.modulus for w in self.weights):
            raise ValueError(f"weights must lie in [0, {self.modulus})")

    @property
    def charts(self) -> tuple[int, ...]:
        """Distinct weight values, ascending."""
        return tuple(sorted(set(self.weights)))


def weights_from_lengths(lengths: Iterable[int]) -> WeightVector:
    lengths = tuple(lengths)
    m = _lcm(lengths)
    out: list[int] = []
    for n_j in lengths:
        m_j = m // n_j
        out.extend(k * m_j for k in range(n_j))
    return WeightVector(m, tuple(out))


def _lcm(xs: tuple[int, ...]) -> int:
    return lcm(*xs) if xs else 1


def weights_of(g: Permutation) -> WeightVector:
    return weights_from_lengths(cycle_lengths(g))


def tangent_weights(w: WeightVector, chart_weight: int) -> list[int]:
    """Residues (w_i - w_p) mod m with one occurrence of w_p removed."""
    if chart_weight not in w.weights:
        raise ValueError(f"{chart_weight} is not a weight; g has no fixed point on that chart")
    m = w.modulus
    res = [(x - chart_weight) % m for x in w.weights]
    res.remove(0)
    return res


def chart_age(w: WeightVector, chart_weight: int) -> Fraction:
    return Fraction(sum(tangent_weights(w, chart_weight)), w.modulus)


def age_lower_bound(g: Permutation) -> Fraction:
    return Fraction(sum(n - 1 for n in cycle_lengths(g)), 2)


def chart_ages(g: Permutation) -> dict[int, Fraction]:
    return dict(_chart_ages_for(cycle_lengths(g)))


def min_age(g: Permutation) -> Fraction:
    """Least age over all charts; 0 for the identity."""
    if g.is_identity():
        return Fraction(0)
    return min(chart_ages(g).values())


def quasi_reflection_charts(g: Permutation) -> list[int]:
    """Charts where exactly one tangent weight is nonzero."""
    return list(_qr_charts_for(cycle_lengths(g)))


@lru_cache(maxsize=4096)
def _chart_ages_for(lengths: tuple[int, ...]) -> tuple[tuple[int, Fraction], ...]:
    w = weights_from_lengths(lengths)
    return tuple((c, chart_age(w, c)) for c in w.charts)


@lru_cache(maxsize=4096)
def _qr_charts_for(lengths: tuple[int, ...]) -> tuple[int, ...]:
    w = weights_from_lengths(lengths)
    if w.modulus == 1:
        return ()
    return tuple(c for c in w.charts if sum(1 for r in tangent_weights(w, c) if r) == 1)


@dataclass(frozen=True)
class AgeReport:
    element: Permutation
    cycle_type: tuple[int, ...]
    order: int
    chart_ages: dict[int, Fraction]
    min_age: Fraction
    lower_bound: Fraction
    quasi_reflection_charts: tuple[int, ...]


def age_report(g: Permutation) -> AgeReport:
    lengths = cycle_lengths(g)
    ages = dict(_chart_ages_for(lengths))
    return AgeReport(
        element=g,
        cycle_type=lengths,
        order=weights_from_lengths(lengths).modulus,
        chart_ages=ages,
        min_age=Fraction(0) if g.is_identity() else min(ages.values()),
        lower_bound=Fraction(sum(n - 1 for n in lengths), 2),
        quasi_reflection_charts=_qr_charts_for(lengths),
    )


# -- verdicts ----------------------------------------------------------------


class VerdictKind(enum.Enum):
    TERMINAL = "Terminal"
    CANONICAL_NOT_TERMINAL = "CanonicalNotTerminal"
    NOT_CANONICAL = "NotCanonical"
    INCONCLUSIVE_QUASI_REFLECTION = "InconclusiveQuasiReflection"


@dataclass(frozen=True)
class Witness:
    element: Permutation
    chart: int
    age: Fraction

    def to_json(self) -> dict:
        return {"element": format_cycles(self.element), "chart": self.chart, "age": str(self.age)}


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    witnesses: tuple[Witness, ...] = ()
    min_age: Fraction | None = None  # over nontrivial elements; None for the trivial group

    def __post_init__(self) -> None:
        if self.kind is not VerdictKind.TERMINAL and not self.witnesses:
            raise ValueError("a non-terminal verdict needs witnesses")

    @property
    def is_extension(self) -> bool:
        """True for the canonical/non-canonical refinements beyond a terminality test."""
        return self.kind in (VerdictKind.CANONICAL_NOT_TERMINAL, VerdictKind.NOT_CANONICAL)


def lemma_shortcut(G: Iterable[Permutation]) -> bool:
    """True iff no element is conjugate in S_n to (12), (123) or (12)(34).

    Such a group has a terminal quotient of projective space.
    """
    return not any(is_forbidden_type(g) for g in G)


def reid_tai_verdict(G: Iterable[Permutation]) -> Verdict:
    """Classify P^(n-1)/G from the ages of all nontrivial elements at all charts."""
    qr: list[Witness] = []
    low: list[Witness] = []
    best: Fraction | None = None
    for g in G:
        if g.is_identity():
            continue
        lengths = cycle_lengths(g)
        ages = dict(_chart_ages_for(lengths))
        for c in _qr_charts_for(lengths):
            qr.append(Witness(g, c, ages[c]))
        for c, a in ages.items():
            if best is None or a < best:
                best = a
            if a <= 1:
                low.append(Witness(g, c, a))
    if qr:
        return Verdict(VerdictKind.INCONCLUSIVE_QUASI_REFLECTION, tuple(qr), best)
    if best is None or best > 1:
        return Verdict(VerdictKind.TERMINAL, (), best)
    if best >= 1:
        return Verdict(VerdictKind.CANONICAL_NOT_TERMINAL, tuple(low), best)
    return Verdict(VerdictKind.NOT_CANONICAL, tuple(w for w in low if w.age < 1), best)


# -- numeric cross-check -----------------------------------------------------


class OracleError(RuntimeError):
    pass


def permutation_matrix(g: Permutation) -> np.ndarray:
    """0/1 matrix sending basis vector e_i to e_g(i)."""
    n = g.degree
    M = np.zeros((n, n))
    M[list(g._img), np.arange(n)] = 1.0
    return M


def spectrum_exponents(g: Permutation, tol: float = 1e-6) -> tuple[int, list[int]]:
    """Eigenvalue exponents of the permutation matrix, recovered numerically.

    The order is found by repeated matrix multiplication, and each eigenvalue
    is snapped to the nearest m-th root of unity exp(2*pi*i*k/m).
    """
    M = permutation_matrix(g)
    n = g.degree
    m, P = 1, M.copy()
    eye = np.eye(n)
    while not np.array_equal(P, eye):
        P = P @ M
        m += 1
    eig = np.linalg.eigvals(M)
    exps = []
    for z in eig:
        if abs(abs(z) - 1.0) > tol:
            raise OracleError(f"eigenvalue {z} is off the unit circle")
        t = np.angle(z) * m / (2 * np.pi)
        k = round(t)
        if abs(t - k) > tol * m:
            raise OracleError(f"eigenvalue {z} is not near an {m}-th root of unity")
        exps.append(k % m)
    return m, exps


def age_via_spectrum(g: Permutation, chart_weight: int, tol: float = 1e-6) -> float:
    m, exps = spectrum_exponents(g, tol)
    return _age_from_exponents(m, exps, chart_weight)


def _age_from_exponents(m: int, exps: list[int], chart_weight: int) -> float:
    if chart_weight not in exps:
        raise OracleError(f"weight {chart_weight} not in the numeric spectrum {sorted(exps)}")
    rest = list(exps)
    rest.remove(chart_weight)
    return float(sum((e - chart_weight) % m for e in rest)) / m


@dataclass
class OracleCheck:
    element: Permutation
    chart: int
    exact: Fraction
    numeric: float

    @property
    def error(self) -> float:
        return abs(float(self.exact) - self.numeric)


def oracle_disagreements(gs: Iterable[Permutation], atol: float = 1e-9) -> list[OracleCheck]:
    """Every (element, chart) where exact and numeric ages differ by more than ``atol``."""
    bad = []
    for g in gs:
        m, exps = spectrum_exponents(g)
        for c, exact in chart_ages(g).items():
            try:
                num = _age_from_exponents(m, exps, c)
            except OracleError:
                num = float("nan")
            if not abs(float(exact) - num) <= atol:
                bad.append(OracleCheck(g, c, exact, num))
    return bad


def ages_by_cycle_type(G: Iterable[Permutation]) -> dict[tuple[int, ...], tuple[AgeReport, int]]:
    """One report per cycle type (first element met) with its multiplicity."""
    counts: Counter = Counter()
    reps: dict[tuple[int, ...], Permutation] = {}
    for g in G:
        lengths = cycle_lengths(g)
        counts[lengths] += 1
        reps.setdefault(lengths, g)
    return {k: (age_report(reps[k]), counts[k]) for k in reps}
