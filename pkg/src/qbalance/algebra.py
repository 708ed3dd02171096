"""Exact arithmetic kernel: monomials on a half-integer exponent lattice,
integer weight characters, factored rational functions, and the classical
product constructions built on top of them (q-Pochhammer symbols, brace
ratios, lambda_y classes, the roof function).

Representation notes
--------------------
* Exponents are half-integers stored as *doubled* integers, so ``q**(3/2)``
  is stored as ``{"q": 3}``.  Every product then stays in plain integer
  arithmetic; a residual half power only ever survives in unit monomials.
* A :class:`FactoredRational` is a unit monomial times a multiset of binomial
  factors ``(1 + c*m)**e`` where ``c*m`` is a nonconstant monomial and ``e``
  a nonzero integer.  The stored presentation is preserved as constructed
  (the balancing operation depends on it); equality canonicalizes copies on
  the fly and never mutates operands.
* Equality of factored rationals is decided by exact cancellation first and
  by cross-multiplied expansion into sparse Laurent polynomials second.  A
  seeded rational-point evaluation may short-circuit the answer ``False``
  but never certifies ``True``.
* Sums of factored rationals have no factored normal form; they are handled
  as tuples of terms ("rat sums") with equality decided by expansion.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to use from concurrent workers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

Rational = Union[int, Fraction]
RatSum = tuple["FactoredRational", ...]


class VanishingFactorError(ValueError):
    """A binomial factor degenerated to zero where that is not allowed."""


class AlphabetMismatchError(ValueError):
    """Operands over different variable alphabets were combined."""


def _as_fraction(c: Rational) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _doubled(power: Rational) -> int:
    d = _as_fraction(power) * 2
    if d.denominator != 1:
        raise ValueError(f"exponent {power} is not a half-integer")
    return d.numerator


class Alphabet:
    """Fixed variable set of a session, determined by the pair (r, n).

    Variables, in canonical order: P1..Pr, x1..xr, t1..tn, q, hbar, y, lam.
    The order fixes the preferred direction of binomial factors during
    cancellation and the exponent-tuple layout of expanded polynomials.
    Monomials over alphabets with different (r, n) are incomparable and
    rejected on arithmetic.
    """

    __slots__ = ("r", "n", "names", "index", "key")

    def __init__(self, r: int, n: int) -> None:
        if not 0 < r <= n:
            raise ValueError(f"need 0 < r <= n, got r={r}, n={n}")
        self.r = r
        self.n = n
        self.names: tuple[str, ...] = tuple(
            [f"P{i}" for i in range(1, r + 1)]
            + [f"x{i}" for i in range(1, r + 1)]
            + [f"t{j}" for j in range(1, n + 1)]
            + ["q", "hbar", "y", "lam"]
        )
        self.index = {name: k for k, name in enumerate(self.names)}
        self.key = (r, n)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Alphabet(r={self.r}, n={self.n})"

    # -- monomial builders -------------------------------------------------

    def monomial(self, coeff: Rational = 1, exps: Optional[Mapping[str, Rational]] = None) -> "Monomial":
        pairs = {}
        for name, power in (exps or {}).items():
            if name not in self.index:
                raise ValueError(f"unknown variable {name!r} for {self!r}")
            d = _doubled(power)
            if d:
                pairs[self.index[name]] = d
        return Monomial(self, _as_fraction(coeff), tuple(sorted(pairs.items())))

    def one(self) -> "Monomial":
        return self.monomial(1)

    def const(self, c: Rational) -> "Monomial":
        return self.monomial(c)

    def var(self, name: str, power: Rational = 1, coeff: Rational = 1) -> "Monomial":
        return self.monomial(coeff, {name: power})

    def t(self, j: int, power: Rational = 1) -> "Monomial":
        return self.var(f"t{j}", power)

    def P(self, i: int, power: Rational = 1) -> "Monomial":
        return self.var(f"P{i}", power)

    def x(self, i: int, power: Rational = 1) -> "Monomial":
        return self.var(f"x{i}", power)

    def q(self, power: Rational = 1) -> "Monomial":
        return self.var("q", power)

    def hbar(self, power: Rational = 1) -> "Monomial":
        return self.var("hbar", power)

    def y(self) -> "Monomial":
        return self.var("y")

    def lam(self) -> "Monomial":
        return self.var("lam")


def _check_same(a: "Monomial", b: "Monomial") -> None:
    if a.alph.key != b.alph.key:
        raise AlphabetMismatchError(f"{a.alph!r} vs {b.alph!r}")


class Monomial:
    """coeff * prod(var ** (dexp/2)) in canonical sparse form.

    ``exps`` is a sorted tuple of (variable index, doubled exponent) pairs
    with zero exponents never stored.  The monomial with empty ``exps`` and
    coefficient 1 is the multiplicative identity.
    """

    __slots__ = ("alph", "coeff", "exps", "_hash")

    def __init__(self, alph: Alphabet, coeff: Fraction, exps: tuple[tuple[int, int], ...]) -> None:
        self.alph = alph
        self.coeff = coeff
        self.exps = exps if coeff else ()
        self._hash: Optional[int] = None

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_constant(self) -> bool:
        return not self.exps

    @property
    def is_one(self) -> bool:
        return not self.exps and self.coeff == 1

    def monic(self) -> "Monomial":
        """The same exponents with coefficient 1."""
        return Monomial(self.alph, Fraction(1), self.exps)

    def sort_key(self):
        return (self.exps, self.coeff)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Monomial)
            and self.alph.key == other.alph.key
            and self.coeff == other.coeff
            and self.exps == other.exps
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alph.key, self.coeff, self.exps))
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    def __mul__(self, other: "Monomial") -> "Monomial":
        _check_same(self, other)
        coeff = self.coeff * other.coeff
        if coeff == 0:
            return Monomial(self.alph, Fraction(0), ())
        merged = dict(self.exps)
        for i, d in other.exps:
            nd = merged.get(i, 0) + d
            if nd:
                merged[i] = nd
            else:
                merged.pop(i, None)
        return Monomial(self.alph, coeff, tuple(sorted(merged.items())))

    def __pow__(self, e: int) -> "Monomial":
        if self.coeff == 0:
            if e <= 0:
                raise ZeroDivisionError("0 ** nonpositive")
            return self
        return Monomial(self.alph, self.coeff ** e, tuple((i, d * e) for i, d in self.exps))

    def inverse(self) -> "Monomial":
        return self ** -1

    def __neg__(self) -> "Monomial":
        return Monomial(self.alph, -self.coeff, self.exps)

    def scale(self, c: Rational) -> "Monomial":
        c = _as_fraction(c)
        if c == 0:
            return Monomial(self.alph, Fraction(0), ())
        return Monomial(self.alph, self.coeff * c, self.exps)

    def sqrt(self) -> "Monomial":
        """Monic square root; requires coefficient 1 and even doubled exponents."""
        if self.coeff != 1:
            raise ValueError("square root only of monic monomials")
        for i, d in self.exps:
            if d % 2:
                raise ValueError("square root would leave quarter powers")
        return Monomial(self.alph, Fraction(1), tuple((i, d // 2) for i, d in self.exps))

    def substitute(self, sub: Mapping[str, Union["Monomial", Rational]]) -> "Monomial":
        """Replace variables by monomials or constants.

        A variable mapped to a constant c contributes c**(dexp/2); this needs
        either an even doubled exponent or c in {0, 1}.
        """
        idx_sub = {self.alph.index[name]: val for name, val in sub.items()}
        out = Monomial(self.alph, self.coeff, tuple((i, d) for i, d in self.exps if i not in idx_sub))
        for i, d in self.exps:
            if i not in idx_sub:
                continue
            val = idx_sub[i]
            if isinstance(val, Monomial):
                _check_same(self, val)
                if val.is_zero:
                    if d < 0:
                        raise ZeroDivisionError("substituting 0 into a negative power")
                    return Monomial(self.alph, Fraction(0), ())
                if d % 2 == 0:
                    out = out * (val ** (d // 2))
                else:
                    if val.coeff != 1:
                        raise ValueError("half power of a non-monic substitution value")
                    if any((e * d) % 2 for _, e in val.exps):
                        raise ValueError("substitution would leave quarter powers")
                    out = out * Monomial(val.alph, Fraction(1), tuple((j, (e * d) // 2) for j, e in val.exps))
            else:
                c = _as_fraction(val)
                if c == 0:
                    if d < 0:
                        raise ZeroDivisionError("substituting 0 into a negative power")
                    return Monomial(self.alph, Fraction(0), ())
                if c == 1:
                    continue
                if d % 2:
                    raise ValueError(f"half power of constant {c}")
                out = out.scale(c ** (d // 2))
        return out

    def evaluate(self, vals: Sequence[Fraction]) -> Fraction:
        """Value at a point; ``vals[i]`` is the value of ``names[i] ** (1/2)``."""
        v = self.coeff
        for i, d in self.exps:
            v *= vals[i] ** d
        return v

    # -- presentation --------------------------------------------------------

    def __str__(self) -> str:
        if not self.exps:
            return str(self.coeff)
        parts = []
        for i, d in self.exps:
            name = self.alph.names[i]
            if d == 2:
                parts.append(name)
            elif d % 2 == 0:
                parts.append(f"{name}^{d // 2}")
            else:
                parts.append(f"{name}^{Fraction(d, 2)}")
        body = "*".join(parts)
        if self.coeff == 1:
            return body
        if self.coeff == -1:
            return f"-{body}"
        return f"{self.coeff}*{body}"

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def to_json(self) -> dict:
        return {
            "coeff": str(self.coeff),
            "exps": {self.alph.names[i]: d for i, d in self.exps},
        }


class WeightCharacter:
    """Integer-multiplicity combination of monic monomials (torus weights).

    Multiplicities may be negative (virtual characters); zero multiplicities
    are never stored.
    """

    __slots__ = ("alph", "terms")

    def __init__(self, alph: Alphabet, terms: Optional[Mapping[Monomial, int]] = None) -> None:
        self.alph = alph
        clean: dict[Monomial, int] = {}
        for w, m in (terms or {}).items():
            if w.alph.key != alph.key:
                raise AlphabetMismatchError("weight over a different alphabet")
            if w.coeff != 1:
                raise ValueError(f"weights must be monic monomials, got {w}")
            if m:
                clean[w] = clean.get(w, 0) + m
        self.terms = {w: m for w, m in clean.items() if m}

    @classmethod
    def from_weights(cls, alph: Alphabet, weights: Iterable[Monomial]) -> "WeightCharacter":
        terms: dict[Monomial, int] = {}
        for w in weights:
            terms[w] = terms.get(w, 0) + 1
        return cls(alph, terms)

    def __add__(self, other: "WeightCharacter") -> "WeightCharacter":
        merged = dict(self.terms)
        for w, m in other.terms.items():
            merged[w] = merged.get(w, 0) + m
        return WeightCharacter(self.alph, merged)

    def __sub__(self, other: "WeightCharacter") -> "WeightCharacter":
        merged = dict(self.terms)
        for w, m in other.terms.items():
            merged[w] = merged.get(w, 0) - m
        return WeightCharacter(self.alph, merged)

    def __neg__(self) -> "WeightCharacter":
        return WeightCharacter(self.alph, {w: -m for w, m in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeightCharacter)
            and self.alph.key == other.alph.key
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.alph.key, tuple(sorted((w.sort_key(), m) for w, m in self.terms.items()))))

    def dual(self) -> "WeightCharacter":
        """Invert every weight (the character of the dual module)."""
        return WeightCharacter(self.alph, {w.inverse(): m for w, m in self.terms.items()})

    def twist(self, mono: Monomial) -> "WeightCharacter":
        """Multiply every weight by a fixed monic monomial."""
        if mono.coeff != 1:
            raise ValueError("twist by a non-monic monomial")
        return WeightCharacter(self.alph, {w * mono: m for w, m in self.terms.items()})

    @property
    def dimension(self) -> int:
        return sum(self.terms.values())

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self.terms.items(), key=lambda wm: wm[0].sort_key()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{m}*({w})" if m != 1 else f"({w})" for w, m in self.items())

    def to_json(self) -> dict:
        return {"terms": [{"monomial": w.to_json(), "mult": m} for w, m in self.items()]}


class FactoredRational:
    """unit * prod (1 + B)**e over a multiset of binomial monomial parts B.

    ``factors`` maps the monomial part B (a nonconstant monomial, including
    its rational coefficient) to a nonzero integer exponent.  Two stored B's
    are never equal; constant B's are folded into the unit at construction
    and a constant B with 1 + B == 0 raises :class:`VanishingFactorError`.
    """

    __slots__ = ("alph", "unit", "factors", "_hash")

    def __init__(self, alph: Alphabet, unit: Monomial, factors: Mapping[Monomial, int]) -> None:
        if unit.is_zero:
            raise ValueError("zero unit in a factored rational")
        self.alph = alph
        self.unit = unit
        self.factors: tuple[tuple[Monomial, int], ...] = tuple(
            sorted(((b, e) for b, e in factors.items() if e), key=lambda be: be[0].sort_key())
        )
        self._hash: Optional[int] = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def one(cls, alph: Alphabet) -> "FactoredRational":
        return cls(alph, alph.one(), {})

    @classmethod
    def from_monomial(cls, mono: Monomial) -> "FactoredRational":
        return cls(mono.alph, mono, {})

    @classmethod
    def binomial(cls, part: Monomial, exp: int = 1) -> "FactoredRational":
        """(1 + part)**exp, folding a constant part into the unit."""
        alph = part.alph
        if exp == 0 or part.is_zero:
            return cls.one(alph)
        if part.is_constant:
            c = 1 + part.coeff
            if c == 0:
                raise VanishingFactorError("binomial factor (1 - 1) vanishes")
            return cls(alph, alph.const(c ** exp), {})
        return cls(alph, alph.one(), {part: exp})

    @classmethod
    def product(cls, factors: Iterable["FactoredRational"]) -> "FactoredRational":
        out = None
        for f in factors:
            out = f if out is None else out * f
        if out is None:
            raise ValueError("empty product needs an alphabet; use FactoredRational.one")
        return out

    # -- algebra ---------------------------------------------------------------

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        _check_same(self.unit, other.unit)
        merged = dict(self.factors)
        for b, e in other.factors:
            ne = merged.get(b, 0) + e
            if ne:
                merged[b] = ne
            else:
                merged.pop(b, None)
        return FactoredRational(self.alph, self.unit * other.unit, merged)

    def inverse(self) -> "FactoredRational":
        return FactoredRational(self.alph, self.unit.inverse(), {b: -e for b, e in self.factors})

    def __truediv__(self, other: "FactoredRational") -> "FactoredRational":
        return self * other.inverse()

    def __pow__(self, e: int) -> "FactoredRational":
        if e == 0:
            return FactoredRational.one(self.alph)
        return FactoredRational(self.alph, self.unit ** e, {b: k * e for b, k in self.factors})

    def scale(self, mono: Monomial) -> "FactoredRational":
        return FactoredRational(self.alph, self.unit * mono, dict(self.factors))

    def substitute(self, sub: Mapping[str, Union[Monomial, Rational]]) -> "FactoredRational":
        unit = self.unit.substitute(sub)
        if unit.is_zero:
            raise VanishingFactorError("unit vanishes under substitution")
        out = FactoredRational.from_monomial(unit)
        for b, e in self.factors:
            out = out * FactoredRational.binomial(b.substitute(sub), e)
        return out

    def evaluate(self, vals: Sequence[Fraction]) -> Fraction:
        v = self.unit.evaluate(vals)
        for b, e in self.factors:
            bv = 1 + b.evaluate(vals)
            if bv == 0 and e < 0:
                raise ZeroDivisionError("evaluation point hits a denominator zero")
            v *= bv ** e
        return v

    def __eq__(self, other: object) -> bool:
        """Structural equality of presentations (not rational-function equality)."""
        return (
            isinstance(other, FactoredRational)
            and self.alph.key == other.alph.key
            and self.unit == other.unit
            and self.factors == other.factors
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alph.key, self.unit, self.factors))
        return self._hash

    def __str__(self) -> str:
        parts = [] if self.unit.is_one else [str(self.unit)]
        for b, e in self.factors:
            base = f"(1 + {b})" if b.coeff > 0 else f"(1 - {-b})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return " * ".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"FactoredRational({self})"

    def to_json(self) -> dict:
        return {
            "unit": self.unit.to_json(),
            "factors": [
                {
                    "binomial": {"coeff": str(b.coeff), "monomial": b.monic().to_json()},
                    "exp": e,
                }
                for b, e in self.factors
            ],
        }


# ---------------------------------------------------------------------------
# expansion backend: sparse Laurent polynomials on the doubled lattice
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial: full-width doubled-exponent tuples -> Fraction."""

    __slots__ = ("alph", "terms")

    def __init__(self, alph: Alphabet, terms: Optional[Mapping[tuple[int, ...], Fraction]] = None) -> None:
        self.alph = alph
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, alph: Alphabet) -> "LaurentPoly":
        return cls(alph)

    @classmethod
    def one(cls, alph: Alphabet) -> "LaurentPoly":
        return cls(alph, {(0,) * len(alph.names): Fraction(1)})

    @classmethod
    def from_monomial(cls, mono: Monomial) -> "LaurentPoly":
        if mono.is_zero:
            return cls.zero(mono.alph)
        exp = [0] * len(mono.alph.names)
        for i, d in mono.exps:
            exp[i] = d
        return cls(mono.alph, {tuple(exp): mono.coeff})

    @classmethod
    def from_binomial(cls, part: Monomial) -> "LaurentPoly":
        return cls.one(part.alph) + cls.from_monomial(part)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        merged = dict(self.terms)
        for e, c in other.terms.items():
            nc = merged.get(e, 0) + c
            if nc:
                merged[e] = nc
            else:
                merged.pop(e, None)
        return LaurentPoly(self.alph, merged)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        merged = dict(self.terms)
        for e, c in other.terms.items():
            nc = merged.get(e, 0) - c
            if nc:
                merged[e] = nc
            else:
                merged.pop(e, None)
        return LaurentPoly(self.alph, merged)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = out.get(e, 0) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return LaurentPoly(self.alph, out)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = LaurentPoly.one(self.alph)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.alph.key == other.alph.key
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.alph.key, tuple(sorted(self.terms.items()))))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.alph.names
        bits = []
        for e, c in sorted(self.terms.items()):
            vs = "*".join(
                f"{names[i]}^{Fraction(d, 2)}" if d % 2 else (names[i] if d == 2 else f"{names[i]}^{d // 2}")
                for i, d in enumerate(e)
                if d
            )
            bits.append(f"{c}" + (f"*{vs}" if vs else ""))
        return " + ".join(bits)

    def divides_into(self, dividend: "LaurentPoly") -> bool:
        """True if ``dividend`` is a Laurent-polynomial multiple of ``self``.

        Both sides are shifted so every variable has minimum exponent zero,
        then reduced by single-divisor division in lexicographic order.  A
        zero remainder certifies divisibility.
        """
        if dividend.is_zero:
            return True
        if self.is_zero:
            return False
        width = len(self.alph.names)

        def shifted(p: LaurentPoly) -> dict[tuple[int, ...], Fraction]:
            mins = [min(e[i] for e in p.terms) for i in range(width)]
            return {tuple(a - m for a, m in zip(e, mins)): c for e, c in p.terms.items()}

        n = shifted(dividend)
        r = shifted(self)
        lt = max(r)
        ltc = r[lt]
        while n:
            t = max(n)
            if any(a < b for a, b in zip(t, lt)):
                return False
            shift = tuple(a - b for a, b in zip(t, lt))
            ratio = n[t] / ltc
            for e, c in r.items():
                key = tuple(a + b for a, b in zip(e, shift))
                nc = n.get(key, 0) - ratio * c
                if nc:
                    n[key] = nc
                else:
                    n.pop(key, None)
        return True


def expand_parts(f: FactoredRational) -> tuple[LaurentPoly, LaurentPoly]:
    """Expand into (numerator, denominator) Laurent polynomials."""
    num = LaurentPoly.from_monomial(f.unit)
    den = LaurentPoly.one(f.alph)
    for b, e in f.factors:
        p = LaurentPoly.from_binomial(b)
        if e > 0:
            num = num * p ** e
        else:
            den = den * p ** (-e)
    return num, den


# ---------------------------------------------------------------------------
# equality
# ---------------------------------------------------------------------------


def _canonical_parts(f: FactoredRational) -> tuple[Monomial, dict[Monomial, int]]:
    """Flip every binomial to the canonical direction and merge.

    The direction of (1 + B) is flipped via (1 + B) = B * (1 + 1/B) whenever
    the first stored doubled exponent of B is negative, so flip-equivalent
    factors cancel exactly.
    """
    unit = f.unit
    out: dict[Monomial, int] = {}
    for b, e in f.factors:
        if b.exps and b.exps[0][1] < 0:
            unit = unit * (b ** e)
            b = b.inverse()
        ne = out.get(b, 0) + e
        if ne:
            out[b] = ne
        else:
            out.pop(b, None)
    return unit, out


def canonical_form(f: FactoredRational) -> FactoredRational:
    """The flip-merged copy of ``f`` (equal as a rational function)."""
    unit, factors = _canonical_parts(f)
    return FactoredRational(f.alph, unit, factors)


def _random_point(alph: Alphabet, rng: random.Random) -> list[Fraction]:
    return [Fraction(rng.randint(2, 23), rng.randint(1, 9)) for _ in alph.names]


def factored_equal(
    a: FactoredRational,
    b: FactoredRational,
    seed: Optional[int] = 0,
    eval_tries: int = 6,
) -> bool:
    """Exact rational-function equality.

    Canonical cancellation first; then, when a seed is given, a randomized
    evaluation that may only short-circuit to ``False``; finally the
    cross-multiplied expansion, which is the deciding oracle.
    """
    diff = a / b
    unit, factors = _canonical_parts(diff)
    if not factors:
        return unit.is_one
    residual = FactoredRational(diff.alph, unit, factors)
    if seed is not None:
        rng = random.Random(seed)
        for _ in range(eval_tries):
            try:
                v = residual.evaluate(_random_point(diff.alph, rng))
            except ZeroDivisionError:
                continue
            if v != 1:
                return False
            break
    num, den = expand_parts(residual)
    return num == den


def is_one(f: FactoredRational, seed: Optional[int] = 0) -> bool:
    return factored_equal(f, FactoredRational.one(f.alph), seed=seed)


def contains_factors(f: FactoredRational, parts: Iterable[Monomial]) -> bool:
    """True if the canonical form of f carries each (1 + part) with exponent >= 1.

    This is the fast certificate that f lies in the ideal generated by the
    product of those binomials; the polynomial-division check is the slow
    fallback for presentations that hide the factors.
    """
    _, factors = _canonical_parts(f)
    for part in parts:
        if part.exps and part.exps[0][1] < 0:
            part = part.inverse()
        if factors.get(part, 0) < 1:
            return False
    return True


def reduces_by_relation(f: FactoredRational, parts: Sequence[Monomial]) -> bool:
    """True if f is a multiple of prod (1 + part) as a rational function."""
    if contains_factors(f, parts):
        return True
    num, den = expand_parts(f)
    rel = LaurentPoly.one(f.alph)
    for part in parts:
        rel = rel * LaurentPoly.from_binomial(part)
    return rel.divides_into(num)


# ---------------------------------------------------------------------------
# sums of factored rationals
# ---------------------------------------------------------------------------


def rs_zero() -> RatSum:
    return ()


def rs_from(f: FactoredRational) -> RatSum:
    return (f,)


def rs_add(a: RatSum, b: RatSum) -> RatSum:
    return a + b


def rs_mul_f(a: RatSum, f: FactoredRational) -> RatSum:
    return tuple(t * f for t in a)


def rs_mul(a: RatSum, b: RatSum) -> RatSum:
    return tuple(x * y for x in a for y in b)


def rs_neg(a: RatSum) -> RatSum:
    return tuple(t.scale(t.alph.const(-1)) for t in a)


def rs_expand(a: RatSum, alph: Alphabet) -> tuple[LaurentPoly, LaurentPoly]:
    num = LaurentPoly.zero(alph)
    den = LaurentPoly.one(alph)
    for f in a:
        nf, df = expand_parts(f)
        num = num * df + nf * den
        den = den * df
    return num, den


def rs_is_zero(a: RatSum, alph: Alphabet, seed: Optional[int] = 0) -> bool:
    if not a:
        return True
    if len(a) == 1:
        return False  # a single factored rational is never the zero function
    num, _ = rs_expand(a, alph)
    return num.is_zero


def rs_equal(a: RatSum, b: RatSum, alph: Alphabet, seed: Optional[int] = 0) -> bool:
    """Exact equality of two sums of factored rationals."""
    if len(a) == len(b):
        remaining = list(b)
        for t in a:
            for k, u in enumerate(remaining):
                if factored_equal(t, u, seed=seed):
                    del remaining[k]
                    break
            else:
                break
        else:
            return True
    na, da = rs_expand(a, alph)
    nb, db = rs_expand(b, alph)
    return na * db == nb * da


# ---------------------------------------------------------------------------
# classical product constructions
# ---------------------------------------------------------------------------


def pochhammer(x: Monomial, d: int) -> FactoredRational:
    """q-shifted factorial (x)_d.

    (x)_d = (1 - x)(1 - x q)...(1 - x q^{d-1}) for d >= 0, and the
    telescoped extension 1 / prod_{m=1}^{-d} (1 - x q^{-m}) for d < 0.
    """
    alph = x.alph
    out = FactoredRational.one(alph)
    if d >= 0:
        for m in range(d):
            out = out * FactoredRational.binomial(-(x * alph.q(m)))
    else:
        for m in range(1, -d + 1):
            try:
                out = out * FactoredRational.binomial(-(x * alph.q(-m)), -1)
            except VanishingFactorError as exc:
                raise VanishingFactorError(
                    f"(x)_{d} undefined: factor 1 - x*q^-{m} vanishes for x = {x}"
                ) from exc
    return out


def brace(x: Monomial, d: int, normalized: bool = True) -> FactoredRational:
    """Brace ratio {x}_d = (hbar/x)_d / (q/x)_d.

    The unnormalized variant carries the extra unit (-q^{1/2} hbar^{-1/2})^d
    on the half-integer lattice.
    """
    alph = x.alph
    out = pochhammer(alph.hbar() * x.inverse(), d) / pochhammer(alph.q() * x.inverse(), d)
    if not normalized:
        unit = alph.monomial((-1) ** d, {"q": Fraction(d, 2), "hbar": Fraction(-d, 2)})
        out = out.scale(unit)
    return out


def lambda_class(character: WeightCharacter, mode: Union[Monomial, Rational]) -> FactoredRational:
    """Total exterior-power class: prod over weights of (1 + mode * w)**mult.

    Only genuine (nonnegative) characters are accepted; the empty character
    gives 1.  With mode -1 a weight equal to 1 makes the class vanish, which
    is reported as a :class:`VanishingFactorError`.
    """
    alph = character.alph
    if not isinstance(mode, Monomial):
        mode = alph.const(mode)
    out = FactoredRational.one(alph)
    for w, m in character.items():
        if m < 0:
            raise ValueError("lambda class of a virtual character (negative multiplicity)")
        out = out * FactoredRational.binomial(mode * w, m)
    return out


def roof(character: WeightCharacter) -> FactoredRational:
    """Multiplicative roof-function value of a virtual character.

    The square-root branch is fixed once and for all as
    s(w) = -w^{1/2} / (1 - w); it cancels in every normalized comparison.
    Weights equal to 1 are rejected (s(1) is undefined).
    """
    alph = character.alph
    out = FactoredRational.one(alph)
    for w, m in character.items():
        if w.is_one:
            raise VanishingFactorError("roof function undefined on the trivial weight")
        piece = FactoredRational(alph, -w.sqrt(), {}) * FactoredRational.binomial(-w, -1)
        out = out * piece ** m
    return out
