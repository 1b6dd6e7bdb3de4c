"""G-partition algebras: structure constants, trace form and centralizer dimensions."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import action
from . import diagrams as dg
from .diagrams import GPartition
from .errors import CapExceeded
from .groups import FiniteGroup
from .linalg import rank_dense, stack_rank
from .morphisms import Morphism
from .polys import D, ONE, PolyRat

ALGEBRA_DIM_CAP = 5000


def algebra_dim(k: int, group: FiniteGroup) -> int:
    return dg.hom_dimension(k, k, group.order)


def algebra_basis(k: int, group: FiniteGroup, cap: int = ALGEBRA_DIM_CAP) -> list[GPartition]:
    if algebra_dim(k, group) > cap:
        raise CapExceeded(f"P_{k}({group.name}) has dimension {algebra_dim(k, group)} (cap {cap})")
    return dg.enumerate_diagrams(k, k, group, cap=cap, max_vertices=max(2 * k, dg.ENUMERATE_MAX_VERTICES))


@dataclass
class StructureConstants:
    k: int
    group: FiniteGroup
    basis: list[GPartition]
    table: dict[tuple[int, int], dict[int, PolyRat]]

    def product(self, a: dict[int, PolyRat], b: dict[int, PolyRat]) -> dict[int, PolyRat]:
        out: dict[int, PolyRat] = {}
        for i, ca in a.items():
            for j, cb in b.items():
                for r, c in self.table[(i, j)].items():
                    out[r] = out.get(r, PolyRat()) + ca * cb * c
        return {r: c for r, c in out.items() if c}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "basisIndex", "coeffPolynomial"])
        for (i, j) in sorted(self.table):
            for r, c in sorted(self.table[(i, j)].items()):
                w.writerow([i, j, r, str(c)])
        return buf.getvalue()

    @staticmethod
    def read_csv(text: str) -> dict[tuple[int, int], dict[int, PolyRat]]:
        out: dict[tuple[int, int], dict[int, PolyRat]] = {}
        for row in csv.DictReader(io.StringIO(text)):
            key = (int(row["i"]), int(row["j"]))
            out.setdefault(key, {})[int(row["basisIndex"])] = PolyRat.parse(row["coeffPolynomial"])
        return out


def structure_constants(k: int, group: FiniteGroup, cap: int = ALGEBRA_DIM_CAP) -> StructureConstants:
    """``table[(i, j)]`` expands ``basis[i] o basis[j]`` in the diagram basis."""
    basis = algebra_basis(k, group, cap)
    index = {p: i for i, p in enumerate(basis)}
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            res = dg.compose(a, b)
            table[(i, j)] = {} if res.diagram is None else {index[res.diagram]: D ** res.alpha}
    for key in table:
        table[key] = {r: c for r, c in table[key].items() if c}
    return StructureConstants(k, group, basis, table)


# --------------------------------------------------------------- trace form

def _closure_pieces(k: int, group: FiniteGroup) -> tuple[GPartition, GPartition]:
    # cup 0 -> 2k joins top j' and (k+j)'; cap 2k -> 0 joins bottom j and k+j
    cup = dg.canonicalize(0, 2 * k, list(range(k)) * 2, [0] * (2 * k), group)
    cap = dg.canonicalize(2 * k, 0, list(range(k)) * 2, [0] * (2 * k), group)
    return cup, cap


def trace_diagram(p: GPartition) -> PolyRat:
    """Close top ``j'`` onto bottom ``j`` for every ``j``: ``0`` or ``d^alpha``."""
    if p.k != p.l:
        raise ValueError(f"trace needs an endomorphism, got {p.dtype}")
    group = p.group
    cup, cap = _closure_pieces(p.k, group)
    mid = dg.tensor(p, dg.identity(p.k, group))
    r1 = dg.compose(mid, cup)
    if r1.diagram is None:
        return PolyRat()
    r2 = dg.compose(cap, r1.diagram)
    if r2.diagram is None:
        return PolyRat()
    return D ** (r1.alpha + r2.alpha)


def trace(m: Morphism) -> PolyRat:
    out = PolyRat()
    for p, c in m.terms.items():
        out = out + c * trace_diagram(p)
    return out


def pairing(a: GPartition, b: GPartition) -> PolyRat:
    """``<a, b> = tr(b o dual(a))``."""
    res = dg.compose(b, dg.dual(a))
    if res.diagram is None:
        return PolyRat()
    return D ** res.alpha * trace_diagram(res.diagram)


def gram_matrix(k: int, group: FiniteGroup, cap: int = ALGEBRA_DIM_CAP) -> list[list[PolyRat]]:
    basis = algebra_basis(k, group, cap)
    return [[pairing(a, b) for b in basis] for a in basis]


def bareiss_determinant(matrix: Sequence[Sequence[PolyRat]]) -> PolyRat:
    """Fraction-free determinant over Q[d]; every division is exact."""
    m = [[PolyRat.coerce(x) for x in row] for row in matrix]
    n = len(m)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for c in range(n - 1):
        if not m[c][c]:
            swap = next((r for r in range(c + 1, n) if m[r][c]), None)
            if swap is None:
                return PolyRat()
            m[c], m[swap] = m[swap], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]).exact_div(prev)
        prev = m[c][c]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def gram_determinant(k: int, group: FiniteGroup) -> PolyRat:
    return bareiss_determinant(gram_matrix(k, group))


def gram_rank(k: int, group: FiniteGroup, d0) -> int:
    d0 = Fraction(d0)
    return rank_dense([[x(d0) for x in row] for row in gram_matrix(k, group)])


# --------------------------------------------------------------- centralizer

@dataclass
class CentralizerReport:
    k: int
    n: int
    source_dim: int
    image_dim: int
    end_dim: int
    bounded_count: int

    @property
    def surjective(self) -> bool:
        return self.image_dim == self.end_dim

    @property
    def injective(self) -> bool:
        return self.image_dim == self.source_dim

    @property
    def iso_expected(self) -> bool:
        return self.n >= 2 * self.k

    @property
    def ok(self) -> bool:
        return (self.surjective and self.image_dim == self.bounded_count
                and self.injective == self.iso_expected)

    def to_json(self) -> dict:
        return {
            "k": self.k, "n": self.n, "source_dim": self.source_dim, "image_dim": self.image_dim,
            "end_dim": self.end_dim, "classes_with_at_most_n_parts": self.bounded_count,
            "surjective": self.surjective, "injective": self.injective,
            "n_ge_2k": self.iso_expected, "ok": self.ok,
        }


def centralizer_report(k: int, n: int, group: FiniteGroup, cap: int = action.DEFAULT_CAP) -> CentralizerReport:
    """Source, image and ``End_{G_n}`` dimensions; the last by orbit counting."""
    basis = algebra_basis(k, group)
    image = stack_rank(action.phi_diagram(p, n, cap) for p in basis)
    end = action.count_orbits(2 * k, n, group, cap)
    bounded = sum(1 for p in basis if p.nparts <= n)
    return CentralizerReport(k, n, len(basis), image, end, bounded)
