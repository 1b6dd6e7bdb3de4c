"""Defining and derived relations of the presentation, checked by evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .groups import FiniteGroup
from .morphisms import Morphism, specialize
from .polys import D, ONE, PolyRat
from .words import SymbolMap, evaluate, parse_word, symbol_diagram

Scalar = Callable[[FiniteGroup, int, int], PolyRat]


def _one(_group, _g, _h) -> PolyRat:
    return ONE


def _delta(_group, g, h) -> PolyRat:
    return ONE if g == h else PolyRat()


def _loop(_group, _g, _h) -> PolyRat:
    return D


@dataclass(frozen=True)
class Relation:
    """``lhs = scalar * rhs`` for all substitutions of the placeholders.

    Words may use ``{g}``, ``{h}``, ``{gi}`` (inverse of g) and ``{gh}``.
    """

    family: str
    name: str
    lhs: str
    rhs: str
    params: str = ""
    scalar: Scalar = field(default=_one, compare=False)

    def instances(self, group: FiniteGroup):
        gs = group.elements if "g" in self.params else [0]
        hs = group.elements if "h" in self.params else [0]
        for g in gs:
            for h in hs:
                subs = {"g": g, "h": h, "gi": group.inv[g], "gh": group.mul[g][h]}
                yield g, h, self.lhs.format(**subs), self.rhs.format(**subs)


def _rel(family, name, lhs, rhs, params="", scalar=_one):
    return Relation(family, name, lhs, rhs, params, scalar)


RELATIONS: tuple[Relation, ...] = (
    # special commutative Frobenius object
    _rel("GPC1", "unit", "id pinb; merge", "id"),
    _rel("GPC1", "counit right", "split; id pint", "id"),
    _rel("GPC1", "counit left", "split; pint id", "id"),
    _rel("GPC1", "frobenius left", "id split; merge id", "merge; split"),
    _rel("GPC1", "frobenius right", "split id; id merge", "merge; split"),
    # symmetric group
    _rel("GPC2", "involution", "cross; cross", "id id"),
    _rel("GPC2", "braid", "cross id; id cross; cross id", "id cross; cross id; id cross"),
    # naturality of the crossing
    _rel("GPC3", "unit slide", "id pinb; cross", "pinb id"),
    _rel("GPC3", "counit slide", "cross; id pint", "pint id"),
    _rel("GPC3", "merge slide", "id cross; cross id; id merge", "merge id; cross"),
    _rel("GPC3", "split slide", "id split; cross id; id cross", "cross; split id"),
    # commutativity and tokens against the Frobenius structure
    _rel("GPC4", "commutative", "cross; merge", "merge"),
    _rel("GPC4", "token bubble", "split; tok({g}) tok({h}); merge", "tok({g})", "gh", _delta),
    # tokens
    _rel("GPC5", "tokens multiply", "tok({h}); tok({g})", "tok({gh})", "gh"),
    _rel("GPC5", "trivial token", "tok(0)", "id"),
    _rel("GPC5", "token crossing", "tok({g}) id; cross", "cross; id tok({g})", "g"),
    _rel("GPC5", "token split", "tok({g}); split", "split; tok({g}) tok({g})", "g"),
    _rel("GPC5", "token unit", "pinb; tok({g})", "pinb", "g"),
    # derived relations
    _rel("mirror", "unit slide", "pinb id; cross", "id pinb"),
    _rel("mirror", "counit slide", "cross; pint id", "id pint"),
    _rel("mirror", "unit", "pinb id; merge", "id"),
    _rel("mirror", "cocommutative", "split; cross", "split"),
    _rel("adjunction", "zigzag", "id pinb; id split; merge id; pint id", "id"),
    _rel("adjunction", "zigzag mirrored", "pinb id; split id; id merge; id pint", "id"),
    _rel("vortex1", "split from left cup", "pinb id; split id; id merge", "split"),
    _rel("vortex1", "split from right cup", "id pinb; id split; merge id", "split"),
    _rel("vortex1", "merge from left cap", "id split; merge id; pint id", "merge"),
    _rel("vortex1", "merge from right cap", "split id; id merge; id pint", "merge"),
    _rel("vortex2", "crossing via left cup",
         "pinb id id; split id id; id cross id; id id merge; id id pint", "cross"),
    _rel("vortex2", "crossing via right cup",
         "id id pinb; id id split; id cross id; merge id id; pint id id", "cross"),
    _rel("vortex2", "counit left", "pinb id; merge; pint", "pint"),
    _rel("vortex2", "counit right", "id pinb; merge; pint", "pint"),
    _rel("vortex2", "unit left", "pinb; split; pint id", "pinb"),
    _rel("vortex2", "unit right", "pinb; split; id pint", "pinb"),
    _rel("ramp", "token through cup", "pinb; split; tok({g}) id", "pinb; split; id tok({gi})", "g"),
    _rel("ramp", "token through cap", "tok({g}) id; merge; pint", "id tok({gi}); merge; pint", "g"),
    _rel("ramp", "token crossing", "id tok({g}); cross", "cross; tok({g}) id", "g"),
    _rel("ramp", "token counit", "tok({g}); pint", "pint", "g"),
    _rel("pool", "split left token", "split; tok({g}) id", "tok({g}); split; id tok({gi})", "g"),
    _rel("pool", "split right token", "split; id tok({g})", "tok({g}); split; tok({gi}) id", "g"),
    _rel("pool", "merge token", "merge; tok({g})", "tok({g}) tok({g}); merge", "g"),
    _rel("pool", "merge left token", "tok({g}) id; merge", "id tok({gi}); merge; tok({g})", "g"),
    _rel("pool", "merge right token", "id tok({g}); merge", "tok({gi}) id; merge; tok({g})", "g"),
    _rel("loop", "centrality", "pinb id; pint id", "id pinb; id pint"),
    _rel("loop", "loop times strand", "pinb id; pint id", "id", "", _loop),
    _rel("GPC6", "loop", "pinb; pint", "", "", _loop),
)

# GPC6 specialisations: the loop is the scalar d0 in Par(G, d0)
SPECIALIZATIONS = (Fraction(0), Fraction(1), Fraction(2), Fraction(5, 2))


@dataclass
class RelationResult:
    family: str
    name: str
    passed: bool
    instances: int
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {"family": self.family, "name": self.name, "passed": self.passed,
                "instances": self.instances, "counterexample": self.counterexample}


def _counterexample(g, h, lhs_text, rhs_text, lhs: Morphism, rhs: Morphism) -> dict:
    return {"g": g, "h": h, "lhs": lhs_text, "rhs": rhs_text,
            "lhs_value": lhs.to_json(), "rhs_value": rhs.to_json()}


def check_relation(rel: Relation, group: FiniteGroup, symbol_map: SymbolMap = symbol_diagram) -> RelationResult:
    count = 0
    for g, h, lt, rt in rel.instances(group):
        count += 1
        lhs = evaluate(parse_word(lt), group, symbol_map)
        rhs = evaluate(parse_word(rt), group, symbol_map).scale(rel.scalar(group, g, h))
        if lhs != rhs:
            return RelationResult(rel.family, rel.name, False, count, _counterexample(g, h, lt, rt, lhs, rhs))
    return RelationResult(rel.family, rel.name, True, count)


def check_loop_specialized(group: FiniteGroup, symbol_map: SymbolMap = symbol_diagram) -> list[RelationResult]:
    out = []
    loop = evaluate(parse_word("pinb; pint"), group, symbol_map)
    empty = evaluate(parse_word(""), group, symbol_map)
    for d0 in [*SPECIALIZATIONS, Fraction(group.order)]:
        lhs, rhs = specialize(loop, d0), empty.scale(d0)
        ok = lhs == rhs
        ce = None if ok else _counterexample(0, 0, "pinb; pint", f"{d0} * (empty)", lhs, rhs)
        out.append(RelationResult("GPC6", f"loop at d={d0}", ok, 1, ce))
    return out


def relation_suite(group: FiniteGroup, symbol_map: SymbolMap = symbol_diagram) -> list[RelationResult]:
    """Evaluate both sides of every relation; ``symbol_map`` allows mutated generators."""
    results = [check_relation(rel, group, symbol_map) for rel in RELATIONS]
    results += check_loop_specialized(group, symbol_map)
    return results


def all_passed(results: list[RelationResult]) -> bool:
    return all(r.passed for r in results)
