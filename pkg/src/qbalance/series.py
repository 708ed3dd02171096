"""Localized series coefficients on both sides of the lift.

Grassmannian side: the fixed-point I/J coefficients, computed either from
the closed three-block product or by summing reciprocal cotangent classes
over Quot fixed points in the fiber of a Grassmannian fixed point.

Cotangent side: the vertex coefficients, computed either as the
q-hypergeometric brace product or by running the roof function over the
virtual tangent character of the matching fixed quasimap.

The bridge is the class-level balancing operation: every denominator factor
(1 - m) acquires a (1 + y m) partner; substituting y -> -hbar/q turns the
balanced Grassmannian coefficient into the normalized vertex coefficient.
"""

from __future__ import annotations

from typing import Mapping, Optional

from .algebra import (
    Alphabet,
    FactoredRational,
    Monomial,
    WeightCharacter,
    brace,
    expand_parts,
    factored_equal,
    lambda_class,
    roof,
)
from .quot import (
    GrassFixedPoint,
    QuasimapFixedPoint,
    QuotFixedPoint,
    compositions,
    enumerate_fixed_points,
    grassmannian_cotangent_lambda_minus1,
    quasimap_to_quot,
    rho,
    tangent_weights,
)
from .report import Report


class BalanceShapeError(ValueError):
    """A factor fed to the balancing operation is not of the (1 - m) shape."""


def _check_point(alph: Alphabet, g: GrassFixedPoint) -> None:
    if (alph.r, alph.n) != (g.r, g.n):
        raise ValueError(f"{g} does not live over {alph!r}")


def equality_witness(alph: Alphabet, lhs: FactoredRational, rhs: FactoredRational) -> dict:
    """Serialized fail witness: both sides factored and fully expanded."""
    ln, ld = expand_parts(lhs)
    rn, rd = expand_parts(rhs)
    return {
        "lhs": lhs.to_json(),
        "rhs": rhs.to_json(),
        "lhs_expanded": {"num": str(ln), "den": str(ld)},
        "rhs_expanded": {"num": str(rn), "den": str(rd)},
    }


# ---------------------------------------------------------------------------
# Grassmannian side
# ---------------------------------------------------------------------------


def i_coefficient(alph: Alphabet, g: GrassFixedPoint, dvec: tuple[int, ...]) -> FactoredRational:
    """Fixed-point I coefficient for one degree vector along the subset.

    1 / (A' B' C') with A' the subset/complement block starting at m = 1,
    B' one (1 - q^m) per subset index and m, and C' the subset/subset cross
    block over m in [-d_i, -d_i + d_j - 1].
    """
    _check_point(alph, g)
    if len(dvec) != g.r or any(d < 0 for d in dvec):
        raise ValueError("dvec must be r nonnegative integers")
    deg = dict(zip(g.subset, dvec))
    den = FactoredRational.one(alph)
    for i in g.subset:
        for j in g.complement:
            for m in range(1, deg[i] + 1):
                den = den * FactoredRational.binomial(-(alph.t(i) * alph.t(j, -1) * alph.q(m)))
    for i in g.subset:
        for m in range(1, deg[i] + 1):
            den = den * FactoredRational.binomial(-alph.q(m))
    for i in g.subset:
        for j in g.subset:
            if i == j:
                continue
            for m in range(-deg[i], -deg[i] + deg[j]):
                den = den * FactoredRational.binomial(-(alph.t(i) * alph.t(j, -1) * alph.q(-m)))
    return den.inverse()


def j_coefficient_terms(alph: Alphabet, g: GrassFixedPoint, d: int) -> dict[tuple[int, ...], FactoredRational]:
    """Fixed-point J coefficient assembled from the Quot scheme fiber.

    For every fixed point supported at zero lying over g, the reciprocal of
    the minus-one exterior class of its cotangent space, times the ambient
    (1 - t_i/t_j) prefactor.  Keyed by the fiber point's degree vector; the
    values sum to the degree-d coefficient and match the closed product
    composition by composition.
    """
    _check_point(alph, g)
    prefactor = grassmannian_cotangent_lambda_minus1(alph, g)
    out: dict[tuple[int, ...], FactoredRational] = {}
    for p in enumerate_fixed_points(g.r, g.n, d, supported_at_zero=True):
        if rho(p) != g:
            continue
        cot = lambda_class(tangent_weights(alph, p).dual(), -1)
        out[p.a] = prefactor * cot.inverse()
    return out


def balance(f: FactoredRational, param: Optional[Monomial] = None) -> FactoredRational:
    """Class-level balancing: each factor (1 - m)**e acquires (1 + y m)**-e.

    Acts on the stored presentation (quotients are balanced factor by
    factor), so every factor must literally be (1 - m) for a nonconstant
    monomial m.  With param omitted, y stays formal.
    """
    alph = f.alph
    if param is None:
        param = alph.y()
    out = f
    for b, e in f.factors:
        if b.coeff != -1:
            raise BalanceShapeError(f"factor (1 + {b}) is not of the shape (1 - m)")
        out = out * FactoredRational.binomial(param * (-b), -e)
    return out


def balanced_i_coefficient(
    alph: Alphabet,
    g: GrassFixedPoint,
    dvec: tuple[int, ...],
    y_value: Optional[Monomial] = None,
) -> FactoredRational:
    """balance(i_coefficient), optionally with a concrete value for y."""
    out = balance(i_coefficient(alph, g, dvec))
    if y_value is not None:
        out = out.substitute({"y": y_value})
    return out


def minus_hbar_over_q(alph: Alphabet) -> Monomial:
    """The substitution value turning balanced coefficients into vertex ones."""
    return alph.monomial(-1, {"q": -1, "hbar": 1})


# ---------------------------------------------------------------------------
# cotangent side
# ---------------------------------------------------------------------------


def vertex_coefficient_hypergeometric(
    alph: Alphabet,
    g: GrassFixedPoint,
    dvec: tuple[int, ...],
    normalized: bool = True,
) -> FactoredRational:
    """Vertex coefficient as the brace product, relabeled to the subset.

    prod over subset pairs of {t_j/t_i}_{d_i - d_j}^{-1} times prod over
    (i in subset, j in 1..n) of {t_j/t_i}_{d_i}.  The normalized variant
    drops the q^{n d / 2} prefactor and the per-brace sign units.
    """
    _check_point(alph, g)
    deg = dict(zip(g.subset, dvec))
    out = FactoredRational.one(alph)
    for i in g.subset:
        for j in g.subset:
            if deg[i] != deg[j]:
                out = out * brace(alph.t(j) * alph.t(i, -1), deg[i] - deg[j], normalized).inverse()
    for i in g.subset:
        for j in range(1, alph.n + 1):
            out = out * brace(alph.t(j) * alph.t(i, -1), deg[i], normalized)
    if not normalized:
        d = sum(dvec)
        out = out.scale(alph.q(Fraction(alph.n * d, 2)))
    return out


def _line_bundle_cohomology(alph: Alphabet, weight: Monomial, m: int) -> WeightCharacter:
    """Euler characteristic of weight * O(m) on the line, as a character.

    Degree m >= 0 contributes weight * (1 + q + ... + q^m); degree -1 is
    zero; lower degrees contribute minus weight * (q^-1 + ... + q^{m+1}).
    """
    terms: dict[Monomial, int] = {}
    if m >= 0:
        for s in range(m + 1):
            w = weight * alph.q(s)
            terms[w] = terms.get(w, 0) + 1
    else:
        for s in range(-1, m, -1):
            w = weight * alph.q(s)
            terms[w] = terms.get(w, 0) - 1
    return WeightCharacter(alph, terms)


def virtual_tangent_character(alph: Alphabet, qp: QuasimapFixedPoint) -> WeightCharacter:
    """Virtual tangent character of a fixed quasimap to the cotangent bundle.

    Assembled from line-bundle summands of V^dual (x) W minus V^dual (x) V,
    doubled by the hbar-twisted dual, minus the tangent space of the ambient
    cotangent bundle at the limit point.
    """
    if (alph.r, alph.n) != (qp.r, qp.n):
        raise ValueError(f"{qp} does not live over {alph!r}")
    hbar = alph.hbar()
    # summands of the half tangent complex: (weight, bundle degree, sign)
    summands: list[tuple[Monomial, int, int]] = []
    for k, i in enumerate(qp.subset):
        di = qp.dvec[k]
        for j in range(1, alph.n + 1):
            summands.append((alph.t(j) * alph.t(i, -1) * alph.q(-di), di, +1))
        for l, j in enumerate(qp.subset):
            dj = qp.dvec[l]
            summands.append((alph.t(j) * alph.t(i, -1) * alph.q(dj - di), di - dj, -1))
    total = WeightCharacter(alph)
    for weight, m, sign in summands:
        h = _line_bundle_cohomology(alph, weight, m)
        hdual = _line_bundle_cohomology(alph, hbar * weight.inverse(), -m)
        piece = h + hdual
        total = total + piece if sign > 0 else total - piece
    # subtract the tangent space of the ambient variety at the limit point
    inside = set(qp.subset)
    ambient = WeightCharacter(alph)
    for i in qp.subset:
        for j in range(1, alph.n + 1):
            if j in inside:
                continue
            ambient = ambient + WeightCharacter.from_weights(
                alph, [alph.t(j) * alph.t(i, -1), hbar * alph.t(i) * alph.t(j, -1)]
            )
    return total - ambient


def vertex_coefficient_localization(alph: Alphabet, qp: QuasimapFixedPoint) -> FactoredRational:
    """Vertex coefficient from the roof function of the virtual character.

    The raw roof value lives on the half-integer lattice; it is normalized
    immediately (per-degree unit (-1)^{n d} (hbar/q)^{n d / 2}) so the
    result is directly comparable with the normalized brace product.
    """
    raw = roof(virtual_tangent_character(alph, qp))
    d = qp.degree
    nd = alph.n * d
    unit = alph.monomial((-1) ** nd, {"q": Fraction(-nd, 2), "hbar": Fraction(nd, 2)})
    return raw.scale(unit)


# ---------------------------------------------------------------------------
# the lift, verified
# ---------------------------------------------------------------------------

from fractions import Fraction  # noqa: E402  (used in unit exponents above)


def verify_main(r: int, n: int, dmax: int, seed: Optional[int] = 0, command: Optional[dict] = None) -> Report:
    """Check, composition by composition, that balancing lifts I to the vertex.

    For every fixed point and every degree vector of total degree <= dmax:
    balance the closed I coefficient, substitute y -> -hbar/q, and compare
    exactly against the normalized brace product.
    """
    alph = Alphabet(r, n)
    report = Report(command or {"verify": "main", "r": r, "n": n, "dmax": dmax})
    report.seed = seed
    yval = minus_hbar_over_q(alph)
    import itertools

    for subset in itertools.combinations(range(1, n + 1), r):
        g = GrassFixedPoint(r, n, subset)
        for d in range(dmax + 1):
            for dvec in compositions(d, r):
                lhs = balanced_i_coefficient(alph, g, dvec, y_value=yval)
                rhs = vertex_coefficient_hypergeometric(alph, g, dvec, normalized=True)
                ok = factored_equal(lhs, rhs, seed=seed)
                case = f"I={subset} dvec={dvec}"
                report.record(case, ok, witness=None if ok else equality_witness(alph, lhs, rhs))
    return report.finish()
