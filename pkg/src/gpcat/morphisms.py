"""Hom-spaces of Par(G, d): formal Q[d]-combinations of canonical diagrams."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

from . import diagrams as dg
from .diagrams import GPartition
from .errors import TypeMismatch
from .groups import FiniteGroup
from .polys import D, PolyRat


class Morphism:
    """A morphism ``k -> l``; ``terms`` maps canonical diagrams to nonzero PolyRat."""

    __slots__ = ("k", "l", "group", "terms")

    def __init__(self, k: int, l: int, group: FiniteGroup, terms: Mapping[GPartition, PolyRat] | None = None):
        self.k, self.l, self.group = k, l, group
        clean = {}
        for p, c in (terms or {}).items():
            if (p.k, p.l) != (k, l):
                raise TypeMismatch(f"term of type {p.dtype} in a {k}->{l} morphism")
            c = PolyRat.coerce(c)
            if c:
                clean[p] = c
        self.terms: dict[GPartition, PolyRat] = clean

    @classmethod
    def diagram(cls, p: GPartition, coeff=1) -> "Morphism":
        return cls(p.k, p.l, p.group, {p: PolyRat.coerce(coeff)})

    @classmethod
    def zero(cls, k: int, l: int, group: FiniteGroup) -> "Morphism":
        return cls(k, l, group)

    @classmethod
    def identity(cls, k: int, group: FiniteGroup) -> "Morphism":
        return cls.diagram(dg.identity(k, group))

    @property
    def dtype(self) -> dg.DiagramType:
        return dg.DiagramType(self.k, self.l)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, p: GPartition) -> PolyRat:
        return self.terms.get(p, PolyRat())

    def sorted_terms(self) -> list[tuple[GPartition, PolyRat]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0].blocks, kv[0].labels))

    def _check(self, other: "Morphism"):
        if (self.k, self.l) != (other.k, other.l):
            raise TypeMismatch(f"type mismatch: {self.dtype} vs {other.dtype}")
        if self.group != other.group:
            raise TypeMismatch(f"group mismatch: {self.group.name} vs {other.group.name}")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, PolyRat()) + c
        return Morphism(self.k, self.l, self.group, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, c) -> "Morphism":
        c = PolyRat.coerce(c)
        return Morphism(self.k, self.l, self.group, {p: v * c for p, v in self.terms.items()})

    def __rmul__(self, c) -> "Morphism":
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.k, self.l) == (other.k, other.l) and self.group == other.group and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, self.l, frozenset(self.terms.items())))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``a @ b`` is the composite ``a o b``."""
        return compose_lin(self, other)

    def __str__(self):
        if not self.terms:
            return "0"
        return "\n".join(f"({c}) * <{p}>" for p, c in self.sorted_terms())

    def __repr__(self):
        return f"Morphism({self.k}->{self.l}, {len(self.terms)} terms)"

    # ------------------------------------------------------------- JSON form
    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "group": self.group.name,
            "terms": [{"diagram": dg.format_diagram(p), "coeff": c.to_pairs()} for p, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict | str, group: FiniteGroup) -> "Morphism":
        if isinstance(data, str):
            data = json.loads(data)
        k, l = int(data["k"]), int(data["l"])
        out: dict[GPartition, PolyRat] = {}
        for term in data["terms"]:
            p = dg.parse_diagram(term["diagram"], group)
            out[p] = out.get(p, PolyRat()) + PolyRat.from_pairs(term["coeff"])
        return cls(k, l, group, out)


def compose_lin(q: Morphism, p: Morphism) -> Morphism:
    if q.k != p.l:
        raise TypeMismatch(f"cannot compose {q.dtype} after {p.dtype}")
    if q.group != p.group:
        raise TypeMismatch(f"group mismatch: {q.group.name} vs {p.group.name}")
    out: dict[GPartition, PolyRat] = {}
    for b, cb in q.terms.items():
        for a, ca in p.terms.items():
            res = dg.compose(b, a)
            if res.diagram is None:
                continue
            c = ca * cb
            if res.alpha:
                c = c * D ** res.alpha
            out[res.diagram] = out.get(res.diagram, PolyRat()) + c
    return Morphism(p.k, q.l, p.group, out)


def tensor_lin(a: Morphism, b: Morphism) -> Morphism:
    if a.group != b.group:
        raise TypeMismatch(f"group mismatch: {a.group.name} vs {b.group.name}")
    out: dict[GPartition, PolyRat] = {}
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            t = dg.tensor(x, y)
            out[t] = out.get(t, PolyRat()) + cx * cy
    return Morphism(a.k + b.k, a.l + b.l, a.group, out)


def dual_lin(m: Morphism) -> Morphism:
    return Morphism(m.l, m.k, m.group, {dg.dual(p): c for p, c in m.terms.items()})


def specialize(m: Morphism, d0) -> Morphism:
    """Evaluate every coefficient at ``d = d0``; the result has constant coefficients."""
    d0 = Fraction(d0)
    return Morphism(m.k, m.l, m.group, {p: PolyRat.const(c(d0)) for p, c in m.terms.items()})


# ------------------------------------------------------------------ x-basis

def to_x_basis(m: Morphism) -> dict[GPartition, PolyRat]:
    """Coefficients in the basis ``x_[P,g]`` with ``[P,g] = sum_{[Q,h] >= [P,g]} x_[Q,h]``."""
    out: dict[GPartition, PolyRat] = {}
    for p, c in m.terms.items():
        for q in [p, *dg.coarsenings(p)]:
            out[q] = out.get(q, PolyRat()) + c
    return {q: c for q, c in out.items() if c}


def x_element(p: GPartition, _memo: dict | None = None) -> Morphism:
    """``x_[P,g] = [P,g] - sum_{[Q,h] > [P,g]} x_[Q,h]`` expanded in diagrams."""
    memo = {} if _memo is None else _memo
    if p in memo:
        return memo[p]
    out = Morphism.diagram(p)
    for q in dg.coarsenings(p):
        out = out - x_element(q, memo)
    memo[p] = out
    return out


def from_x_basis(coeffs: Mapping[GPartition, PolyRat], k: int, l: int, group: FiniteGroup) -> Morphism:
    memo: dict = {}
    out = Morphism.zero(k, l, group)
    for p, c in coeffs.items():
        out = out + x_element(p, memo).scale(c)
    return out


def span_basis(k: int, l: int, group: FiniteGroup, **caps) -> list[Morphism]:
    return [Morphism.diagram(p) for p in dg.enumerate_diagrams(k, l, group, **caps)]


def sum_morphisms(ms: Iterable[Morphism], k: int, l: int, group: FiniteGroup) -> Morphism:
    out = Morphism.zero(k, l, group)
    for m in ms:
        out = out + m
    return out
