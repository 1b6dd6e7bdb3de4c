from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from gpcat import action, algebra
from gpcat import diagrams as dg
from gpcat.morphisms import Morphism
from gpcat.polys import D, PolyRat

from conftest import C1, C2, C3, S3


def test_dimensions():
    assert algebra.algebra_dim(1, C1) == 2
    assert algebra.algebra_dim(1, C2) == 3
    assert algebra.algebra_dim(2, C2) == 49
    for k in range(3):
        for g in (C1, C2, C3):
            assert algebra.algebra_dim(k, g) == len(dg.enumerate_diagrams(k, k, g))


def test_rank_zero_algebra():
    t = algebra.structure_constants(0, C2)
    assert len(t.basis) == 1 and t.table == {(0, 0): {0: PolyRat.const(1)}}


def test_trivial_group_idempotent_up_to_d():
    t = algebra.structure_constants(1, C1)
    e = t.basis.index(dg.parse_diagram("1 -> 1; parts: [1 | 1']; labels:", C1))
    assert t.table[(e, e)] == {e: D}


def test_token_classes_multiply_by_the_group_law():
    t = algebra.structure_constants(1, S3)
    idx = {p: i for i, p in enumerate(t.basis)}
    for g in S3.elements:
        for h in S3.elements:
            a, b = idx[dg.token(g, S3)], idx[dg.token(h, S3)]
            assert t.table[(a, b)] == {idx[dg.token(S3.mul[g][h], S3)]: PolyRat.const(1)}


@pytest.mark.parametrize("k,group", [(1, C2), (1, S3), (2, C1), (2, C2)])
def test_structure_constants_associative(k, group):
    t = algebra.structure_constants(k, group)
    n = len(t.basis)
    for i in range(n):
        for j in range(n):
            for m in range(n):
                left = t.product(t.product({i: PolyRat.const(1)}, {j: PolyRat.const(1)}), {m: PolyRat.const(1)})
                right = t.product({i: PolyRat.const(1)}, t.product({j: PolyRat.const(1)}, {m: PolyRat.const(1)}))
                assert left == right


def test_structure_constants_match_matrices():
    t = algebra.structure_constants(1, C2)
    for (i, j), row in t.table.items():
        prod = action.phi_diagram(t.basis[i], 2) @ action.phi_diagram(t.basis[j], 2)
        m = Morphism(1, 1, C2, {t.basis[r]: c for r, c in row.items()})
        assert action.phi_morphism(m, 2) == prod


def test_csv_round_trip():
    t = algebra.structure_constants(1, C2)
    text = t.to_csv()
    assert text.splitlines()[0] == "i,j,basisIndex,coeffPolynomial"
    assert algebra.StructureConstants.read_csv(text) == {k: v for k, v in t.table.items() if v}


# --------------------------------------------------------------- trace form

def test_trace_of_identity_and_loop():
    assert algebra.trace_diagram(dg.identity(2, C2)) == D ** 2
    assert algebra.trace_diagram(dg.empty(C2)) == 1
    assert algebra.trace_diagram(dg.token(1, C2)) == 0


def test_trace_is_cyclic():
    ds = dg.enumerate_diagrams(1, 1, S3)
    for a in ds:
        for b in ds:
            ab = Morphism.diagram(a) @ Morphism.diagram(b)
            ba = Morphism.diagram(b) @ Morphism.diagram(a)
            assert algebra.trace(ab) == algebra.trace(ba)


def _sympy_det(matrix):
    d = sympy.Symbol("d")
    M = sympy.Matrix([[sum((sympy.Rational(c.numerator, c.denominator) * d ** i
                            for i, c in enumerate(x.coeffs)), sympy.Integer(0)) for x in row] for row in matrix])
    return sympy.Poly(M.det(), d)


@pytest.mark.parametrize("k,group", [(1, C1), (1, C2), (1, C3), (2, C1)])
def test_bareiss_matches_sympy(k, group):
    gram = algebra.gram_matrix(k, group)
    ours = algebra.bareiss_determinant(gram)
    theirs = _sympy_det(gram)
    assert [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in reversed(theirs.all_coeffs())] == \
        list(ours.coeffs)


def test_gram_closed_forms():
    assert [[str(x) for x in row] for row in algebra.gram_matrix(1, C1)] == [["1*d", "1*d"], ["1*d", "1*d^2"]]
    assert algebra.gram_determinant(1, C1) == D ** 2 * (D - 1)
    assert algebra.gram_determinant(1, C2) == D ** 3 * (D - 2)


@pytest.mark.parametrize("group,d0,rank", [
    (C1, 5, 2), (C1, 1, 1), (C1, 0, 0), (C2, 2, 2), (C2, 3, 3), (C2, Fraction(7, 2), 3),
])
def test_gram_rank(group, d0, rank):
    assert algebra.gram_rank(1, group, d0) == rank


def test_bareiss_handles_pivot_swaps():
    m = [[PolyRat(), D], [D, PolyRat()]]
    assert algebra.bareiss_determinant(m) == -(D ** 2)
    assert algebra.bareiss_determinant([]) == 1


# -------------------------------------------------------------- centralizer

@pytest.mark.parametrize("n,iso", [(1, False), (2, True), (3, True)])
def test_centralizer_c2(n, iso):
    rep = algebra.centralizer_report(1, n, C2)
    assert rep.surjective and rep.injective == iso and rep.ok
    if iso:
        assert rep.source_dim == rep.image_dim == rep.end_dim == 3
    else:
        assert rep.image_dim == 2 < rep.source_dim


def test_centralizer_k0():
    rep = algebra.centralizer_report(0, 1, C2)
    assert (rep.source_dim, rep.image_dim, rep.end_dim) == (1, 1, 1)
