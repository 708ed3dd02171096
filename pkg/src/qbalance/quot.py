"""Torus fixed points of the Quot scheme compactifying degree-d maps from
the projective line to G(r, n), and their weight-space combinatorics.

A fixed point is the combinatorial datum (delta, a, b): the r-element
support subset delta of {1..n}, and per support index the degrees (a_i, b_i)
of the monomial x^{a_i} y^{b_i} cutting out the kernel line.  The point is
supported at zero exactly when b vanishes; those points match degree
vectors of fixed quasimaps to the cotangent bundle one for one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .algebra import Alphabet, FactoredRational, Monomial, WeightCharacter, lambda_class


@dataclass(frozen=True)
class QuotFixedPoint:
    r: int
    n: int
    delta: tuple[int, ...]  # strictly increasing support subset of 1..n
    a: tuple[int, ...]      # x-degrees along delta
    b: tuple[int, ...]      # y-degrees along delta

    def __post_init__(self):
        if len(self.delta) != self.r or len(self.a) != self.r or len(self.b) != self.r:
            raise ValueError("delta, a, b must all have length r")
        if list(self.delta) != sorted(set(self.delta)) or not all(1 <= i <= self.n for i in self.delta):
            raise ValueError(f"support {self.delta} is not an r-subset of 1..{self.n}")
        if any(x < 0 for x in self.a) or any(x < 0 for x in self.b):
            raise ValueError("degrees must be nonnegative")

    @property
    def degree(self) -> int:
        return sum(self.a) + sum(self.b)

    @property
    def supported_at_zero(self) -> bool:
        return not any(self.b)

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "delta": list(self.delta), "a": list(self.a), "b": list(self.b)}


@dataclass(frozen=True)
class GrassFixedPoint:
    r: int
    n: int
    subset: tuple[int, ...]

    def __post_init__(self):
        if len(self.subset) != self.r or list(self.subset) != sorted(set(self.subset)):
            raise ValueError("subset must be a strictly increasing r-tuple")
        if not all(1 <= i <= self.n for i in self.subset):
            raise ValueError(f"subset {self.subset} not inside 1..{self.n}")

    @property
    def complement(self) -> tuple[int, ...]:
        inside = set(self.subset)
        return tuple(j for j in range(1, self.n + 1) if j not in inside)

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "subset": list(self.subset)}


@dataclass(frozen=True)
class QuasimapFixedPoint:
    r: int
    n: int
    subset: tuple[int, ...]
    dvec: tuple[int, ...]   # degrees along subset, all nonnegative

    def __post_init__(self):
        GrassFixedPoint(self.r, self.n, self.subset)
        if len(self.dvec) != self.r or any(d < 0 for d in self.dvec):
            raise ValueError("dvec must be r nonnegative integers")

    @property
    def degree(self) -> int:
        return sum(self.dvec)

    @property
    def base_point(self) -> GrassFixedPoint:
        return GrassFixedPoint(self.r, self.n, self.subset)

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "subset": list(self.subset), "dvec": list(self.dvec)}


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` nonnegative integers summing to ``total``, ascending lex."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_fixed_points(r: int, n: int, d: int, supported_at_zero: bool = True) -> list[QuotFixedPoint]:
    """All torus fixed points of the degree-d Quot scheme, in (delta, a, b) lex order."""
    if not 0 < r <= n or d < 0:
        raise ValueError(f"need 0 < r <= n and d >= 0, got r={r}, n={n}, d={d}")
    points = []
    for delta in itertools.combinations(range(1, n + 1), r):
        if supported_at_zero:
            for a in compositions(d, r):
                points.append(QuotFixedPoint(r, n, delta, a, (0,) * r))
        else:
            for ab in compositions(d, 2 * r):
                points.append(QuotFixedPoint(r, n, delta, ab[:r], ab[r:]))
    return points


def tangent_weights(alph: Alphabet, p: QuotFixedPoint) -> WeightCharacter:
    """Weight-space decomposition of the tangent space at a fixed point.

    Four families of one-dimensional weights, indexed over the support delta
    and its complement; their total dimension is n*d + r*(n - r).
    """
    if (alph.r, alph.n) != (p.r, p.n):
        raise ValueError(f"point {p} does not live over {alph!r}")
    inside = set(p.delta)
    outside = [j for j in range(1, p.n + 1) if j not in inside]
    deg = {i: (p.a[k], p.b[k]) for k, i in enumerate(p.delta)}
    weights = []
    for i in p.delta:
        ai, bi = deg[i]
        # mixed directions into the complement
        for j in outside:
            for s in range(ai + bi + 1):
                weights.append(alph.t(j) * alph.t(i, -1) * alph.q(-ai + s))
        # pure q-weights along the same summand
        for s in range(ai + bi + 1):
            if s != ai:
                weights.append(alph.q(-ai + s))
        # directions between two support summands
        for j in p.delta:
            if j == i:
                continue
            aj, bj = deg[j]
            if aj >= 1:
                for s in range(-ai, -ai + aj):
                    weights.append(alph.t(j) * alph.t(i, -1) * alph.q(s))
            if bj >= 1:
                for s in range(bi - bj + 1, bi + 1):
                    weights.append(alph.t(j) * alph.t(i, -1) * alph.q(s))
    return WeightCharacter.from_weights(alph, weights)


def cotangent_lambda_y(alph: Alphabet, p: QuotFixedPoint, mode: Optional[Monomial] = None) -> FactoredRational:
    """lambda_y class of the cotangent space at a fixed point supported at zero."""
    if not p.supported_at_zero:
        raise ValueError("cotangent lambda_y is only taken at points supported at zero")
    if mode is None:
        mode = alph.y()
    return lambda_class(tangent_weights(alph, p).dual(), mode)


def cotangent_lambda_y_product(alph: Alphabet, p: QuotFixedPoint, mode: Optional[Monomial] = None) -> FactoredRational:
    """The same class assembled from its three closed product blocks.

    Block A runs over support/complement pairs with the extra m = 0 factor,
    block B collects the pure q-binomials, block C the support/support
    cross terms; the result must agree with :func:`cotangent_lambda_y`.
    """
    if not p.supported_at_zero:
        raise ValueError("the product form assumes a point supported at zero")
    if mode is None:
        mode = alph.y()
    deg = {i: p.a[k] for k, i in enumerate(p.delta)}
    inside = set(p.delta)
    out = FactoredRational.one(alph)
    for i in p.delta:
        for j in range(1, p.n + 1):
            if j in inside:
                continue
            for m in range(deg[i] + 1):
                out = out * FactoredRational.binomial(mode * alph.t(i) * alph.t(j, -1) * alph.q(m))
    for i in p.delta:
        for m in range(1, deg[i] + 1):
            out = out * FactoredRational.binomial(mode * alph.q(m))
    for i in p.delta:
        for j in p.delta:
            if i == j:
                continue
            for m in range(-deg[i], -deg[i] + deg[j]):
                out = out * FactoredRational.binomial(mode * alph.t(i) * alph.t(j, -1) * alph.q(-m))
    return out


def rho(p: QuotFixedPoint) -> GrassFixedPoint:
    """Projection to the underlying Grassmannian fixed point (forgets degrees)."""
    return GrassFixedPoint(p.r, p.n, p.delta)


def grassmannian_cotangent_lambda_minus1(alph: Alphabet, g: GrassFixedPoint) -> FactoredRational:
    """prod over (i in subset, j outside) of (1 - t_i/t_j)."""
    out = FactoredRational.one(alph)
    for i in g.subset:
        for j in g.complement:
            out = out * FactoredRational.binomial(-(alph.t(i) * alph.t(j, -1)))
    return out


def quasimap_bijection(p: QuotFixedPoint) -> QuasimapFixedPoint:
    """Match a fixed point supported at zero with its fixed quasimap datum."""
    if not p.supported_at_zero:
        raise ValueError(f"{p} is not supported at zero")
    return QuasimapFixedPoint(p.r, p.n, p.delta, p.a)


def quasimap_to_quot(qp: QuasimapFixedPoint) -> QuotFixedPoint:
    """Inverse of :func:`quasimap_bijection`."""
    return QuotFixedPoint(qp.r, qp.n, qp.subset, qp.dvec, (0,) * qp.r)
