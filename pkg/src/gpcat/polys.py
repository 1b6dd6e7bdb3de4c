"""Dense univariate polynomials in ``d`` with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction]


class PolyRat:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``d**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c: Number) -> "PolyRat":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, c: Number = 1) -> "PolyRat":
        return cls([0] * power + [c])

    @classmethod
    def coerce(cls, x) -> "PolyRat":
        return x if isinstance(x, PolyRat) else cls.const(x)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyRat.const(other)
        if not isinstance(other, PolyRat):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = PolyRat.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyRat([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return PolyRat(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-PolyRat.coerce(other))

    def __rsub__(self, other):
        return PolyRat.coerce(other) - self

    def __mul__(self, other):
        other = PolyRat.coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyRat()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyRat(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = PolyRat.const(1)
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "PolyRat") -> tuple["PolyRat", "PolyRat"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - db] = c
                for j, y in enumerate(other.coeffs):
                    rem[i - db + j] -= c * y
        return PolyRat(quot), PolyRat(rem)

    def exact_div(self, other: "PolyRat") -> "PolyRat":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def roots_in(self, candidates: Iterable[Number]) -> list[Fraction]:
        return [Fraction(x) for x in candidates if self(x) == 0]

    def to_pairs(self) -> list[list[str]]:
        return [[str(c.numerator), str(c.denominator)] for c in self.coeffs]

    @classmethod
    def from_pairs(cls, pairs) -> "PolyRat":
        return cls(Fraction(int(n), int(d)) for n, d in pairs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*d")
            else:
                terms.append(f"{c}*d^{i}")
        return " + ".join(terms)

    @classmethod
    def parse(cls, text: str) -> "PolyRat":
        """Inverse of ``str``: ``c0 + c1*d + c2*d^2`` with fractional coefficients."""
        text = text.strip()
        if text == "0":
            return cls()
        coeffs: dict[int, Fraction] = {}
        for term in text.split(" + "):
            term = term.strip()
            if "*d" in term:
                c, _, power = term.partition("*d")
                power = int(power[1:]) if power.startswith("^") else 1
            else:
                c, power = term, 0
            coeffs[power] = coeffs.get(power, Fraction(0)) + Fraction(c)
        top = max(coeffs)
        return cls(coeffs.get(i, 0) for i in range(top + 1))

    def __repr__(self):
        return f"PolyRat({str(self)})"


D = PolyRat.monomial(1)
ONE = PolyRat.const(1)
