"""Exact Laurent polynomials in one variable with half-integer exponents.

Exponents are kept internally as doubled integers so that ``t^(1/2)`` and
friends stay exact.  Public accessors hand exponents back as ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = Union[int, Fraction, float]


def _double(exp: Exponent) -> int:
    value = Fraction(exp) * 2
    if value.denominator != 1:
        raise ValueError(f"exponent {exp!r} is not a multiple of 1/2")
    return int(value)


def _as_number(value: Fraction) -> int | float:
    """JSON-friendly form of a half-integer: int when integral, else float."""
    return int(value) if value.denominator == 1 else float(value)


class HalfLaurent:
    """Immutable integer Laurent polynomial in a single variable.

    ``terms`` maps exponents (multiples of 1/2) to integer coefficients;
    zero coefficients are dropped.
    """

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None, var: str = "t"):
        doubled: dict[int, int] = {}
        for exp, coeff in (terms or {}).items():
            if int(coeff) != coeff:
                raise ValueError(f"non-integer coefficient {coeff!r}")
            key = _double(exp)
            doubled[key] = doubled.get(key, 0) + int(coeff)
        self._terms = {k: v for k, v in doubled.items() if v}
        self.var = var
        self._hash = None

    @classmethod
    def from_doubled(cls, terms: Mapping[int, int], var: str = "t") -> "HalfLaurent":
        poly = cls.__new__(cls)
        poly._terms = {int(k): int(v) for k, v in terms.items() if v}
        poly.var = var
        poly._hash = None
        return poly

    @classmethod
    def monomial(cls, exp: Exponent = 0, coeff: int = 1, var: str = "t") -> "HalfLaurent":
        return cls.from_doubled({_double(exp): coeff}, var)

    @classmethod
    def constant(cls, value: int, var: str = "t") -> "HalfLaurent":
        return cls.from_doubled({0: value}, var)

    # -- inspection -------------------------------------------------------

    def doubled(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exp: Exponent) -> int:
        return self._terms.get(_double(exp), 0)

    def items(self) -> list[tuple[Fraction, int]]:
        return [(Fraction(k, 2), v) for k, v in sorted(self._terms.items())]

    def exponents(self) -> list[Fraction]:
        return [Fraction(k, 2) for k in sorted(self._terms)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def min_degree(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return Fraction(min(self._terms), 2)

    @property
    def max_degree(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return Fraction(max(self._terms), 2)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "HalfLaurent":
        if isinstance(other, HalfLaurent):
            if other.var != self.var and other._terms and self._terms:
                if set(other._terms) != {0} and set(self._terms) != {0}:
                    raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return HalfLaurent.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return HalfLaurent.from_doubled(out, self._pick_var(other))

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent.from_doubled({k: -v for k, v in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return HalfLaurent.from_doubled(out, self._pick_var(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int) and len(self._terms) == 1:
                (k, v), = self._terms.items()
                if abs(v) == 1:
                    return HalfLaurent.from_doubled({k * n: v ** abs(n)}, self.var)
            raise ValueError("only non-negative powers (or powers of unit monomials)")
        result = HalfLaurent.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _pick_var(self, other: "HalfLaurent") -> str:
        if set(self._terms) <= {0} and other._terms:
            return other.var
        return self.var

    def shift(self, exp: Exponent) -> "HalfLaurent":
        """Multiply by ``var^exp``."""
        d = _double(exp)
        return HalfLaurent.from_doubled({k + d: v for k, v in self._terms.items()}, self.var)

    def subs(self, base: Exponent, image: Exponent, sign: int = 1, var: str | None = None) -> "HalfLaurent":
        """Monomial substitution ``x^base -> sign * y^image``.

        Every exponent must be an integer multiple of ``base``; the images
        must land on the half-integer lattice.  ``A -> A^-1`` is
        ``subs(1, -1)``; ``t^(1/2) -> -q`` is ``subs(Fraction(1, 2), 1, -1, "q")``.
        """
        base_f, image_f = Fraction(base), Fraction(image)
        if sign not in (1, -1):
            raise ValueError("substitution sign must be +1 or -1")
        if base_f == 0:
            raise ValueError("substitution base exponent must be nonzero")
        out: dict[int, int] = {}
        for k, v in self._terms.items():
            ratio = Fraction(k, 2) / base_f
            if ratio.denominator != 1:
                raise ValueError(f"exponent {Fraction(k, 2)} is not a multiple of {base_f}")
            power = int(ratio)
            key = _double(ratio * image_f)
            out[key] = out.get(key, 0) + v * sign ** abs(power)
        return HalfLaurent.from_doubled(out, var or self.var)

    def invert_variable(self) -> "HalfLaurent":
        return HalfLaurent.from_doubled({-k: v for k, v in self._terms.items()}, self.var)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        if self._terms != other._terms:
            return False
        if set(self._terms) <= {0}:
            return True
        return self.var == other.var

    def __hash__(self) -> int:
        if self._hash is None:
            key = frozenset(self._terms.items())
            self._hash = hash(key) if set(self._terms) <= {0} else hash((self.var, key))
        return self._hash

    # -- text / JSON ------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, v in sorted(self._terms.items()):
            exp = Fraction(k, 2)
            if k == 0:
                mono = str(abs(v))
            else:
                if exp == 1:
                    power = self.var
                elif exp.denominator == 1:
                    power = f"{self.var}^{exp}"
                else:
                    power = f"{self.var}^({exp})"
                mono = power if abs(v) == 1 else f"{abs(v)}{power}"
            if not parts:
                parts.append(mono if v > 0 else f"-{mono}")
            else:
                parts.append(f"+ {mono}" if v > 0 else f"- {mono}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"HalfLaurent({str(self)!r}, var={self.var!r})"

    def to_json(self) -> list[list[int | float]]:
        return [[_as_number(e), c] for e, c in self.items()]

    @classmethod
    def from_json(cls, pairs: Iterable[Iterable], var: str = "t") -> "HalfLaurent":
        return cls({Fraction(str(e)): int(c) for e, c in pairs}, var)


@dataclass(frozen=True)
class GapRecord:
    """A maximal run of vanishing coefficients (or rows/columns).

    ``start`` is the first missing exponent, ``length`` the number of
    missing lattice points and ``step`` the lattice spacing.
    """

    start: Fraction
    length: int
    step: Fraction

    @property
    def stop(self) -> Fraction:
        """Last missing exponent."""
        return self.start + (self.length - 1) * self.step

    def to_json(self) -> dict:
        return {
            "start": _as_number(Fraction(self.start)),
            "length": self.length,
            "step": _as_number(Fraction(self.step)),
        }


def breadth(p: HalfLaurent) -> Fraction:
    """Span between the highest and lowest exponent."""
    if p.is_zero():
        raise ValueError("breadth of the zero polynomial is undefined")
    return p.max_degree - p.min_degree


def gaps_from_support(support: Iterable[Fraction], step: Exponent = 1) -> list[GapRecord]:
    """Maximal runs of missing lattice points strictly inside a support set."""
    step_f = Fraction(step)
    if step_f <= 0:
        raise ValueError("step must be positive")
    points = sorted(set(Fraction(s) for s in support))
    if not points:
        raise ValueError("empty support")
    lo = points[0]
    for pt in points:
        if ((pt - lo) / step_f).denominator != 1:
            raise ValueError(f"exponent {pt} is off the lattice {lo} + {step_f}Z")
    gaps = []
    for left, right in zip(points, points[1:]):
        missing = int((right - left) / step_f) - 1
        if missing > 0:
            gaps.append(GapRecord(left + step_f, missing, step_f))
    return gaps


def gaps_of(p: HalfLaurent, step: Exponent = 1) -> list[GapRecord]:
    if p.is_zero():
        raise ValueError("gaps of the zero polynomial are undefined")
    return gaps_from_support(p.exponents(), step)


def gap_between(f: HalfLaurent, g: HalfLaurent, step: Exponent = 1) -> GapRecord | None:
    """Gap between two polynomials whose supports do not interleave.

    Returns ``None`` when the supports interleave or touch.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("gap_between needs nonzero polynomials")
    step_f = Fraction(step)
    if f.max_degree < g.min_degree:
        low, high = f.max_degree, g.min_degree
    elif g.max_degree < f.min_degree:
        low, high = g.max_degree, f.min_degree
    else:
        return None
    missing = (high - low) / step_f - 1
    if missing.denominator != 1:
        raise ValueError("supports lie on different lattices")
    if missing <= 0:
        return None
    return GapRecord(low + step_f, int(missing), step_f)


def determinant_eval(v: HalfLaurent) -> int:
    """|V(-1)| computed by sending t^(1/2) to the imaginary unit."""
    parities = {k % 2 for k in v.doubled()}
    if len(parities) > 1:
        raise ValueError("mixed integer/half-integer exponents")
    re = im = 0
    for k, c in v.doubled().items():
        r = k % 4
        if r == 0:
            re += c
        elif r == 1:
            im += c
        elif r == 2:
            re -= c
        else:
            im -= c
    norm = re * re + im * im
    root = math.isqrt(norm)
    if root * root != norm:
        raise ValueError(f"|V(-1)|^2 = {norm} is not a perfect square")
    return root
