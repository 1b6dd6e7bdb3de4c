"""The action functor on the permutation representation of a wreath product.

``V = (kG)^n`` has basis ``g e_i``; its index is ``i * |G| + g`` (slots
0-based).  A basis vector of ``V^(x)k`` lists one factor per vertex; factor 1
(the rightmost) varies fastest, so Kronecker products are literal.  Matrices
send column vectors of the bottom row to the top row.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import diagrams as dg
from .diagrams import GPartition
from .errors import CapExceeded
from .groups import FiniteGroup
from .linalg import SparseRationalMatrix, stack_rank
from .morphisms import Morphism, x_element
from .words import GeneratorWord, Symbol, standard_decomposition

DEFAULT_CAP = 10 ** 6


def dim_v(n: int, group: FiniteGroup) -> int:
    return n * group.order


def basis_index(factors: Sequence[tuple[int, int]], n: int, group: FiniteGroup) -> int:
    """Index of ``(g_1, i_1), ..., (g_k, i_k)`` (factor 1 first, slots 0-based)."""
    N = dim_v(n, group)
    idx = 0
    for g, i in reversed(factors):
        if not (0 <= i < n and 0 <= g < group.order):
            raise ValueError(f"basis factor {(g, i)} out of range")
        idx = idx * N + i * group.order + g
    return idx


def basis_factors(idx: int, k: int, n: int, group: FiniteGroup) -> list[tuple[int, int]]:
    N = dim_v(n, group)
    out = []
    for _ in range(k):
        idx, b = divmod(idx, N)
        out.append((b % group.order, b // group.order))
    return out


# ------------------------------------------------------------------ wreath

@dataclass(frozen=True)
class WreathElement:
    """``(g, pi)`` in ``G^n x| S_n``; ``pi`` is 0-based one-line notation."""

    g: tuple[int, ...]
    pi: tuple[int, ...]
    group: FiniteGroup

    def __post_init__(self):
        if len(self.g) != len(self.pi) or sorted(self.pi) != list(range(len(self.pi))):
            raise ValueError(f"invalid wreath element {self.g}, {self.pi}")

    @property
    def n(self) -> int:
        return len(self.pi)

    @classmethod
    def identity(cls, n: int, group: FiniteGroup) -> "WreathElement":
        return cls((0,) * n, tuple(range(n)), group)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        mul = self.group.mul
        inv_pi = [0] * self.n
        for i, x in enumerate(self.pi):
            inv_pi[x] = i
        g = tuple(mul[self.g[j]][other.g[inv_pi[j]]] for j in range(self.n))
        return WreathElement(g, tuple(self.pi[other.pi[i]] for i in range(self.n)), self.group)

    def act_factor(self, a: int, i: int) -> tuple[int, int]:
        """``(g, pi) . (a e_i) = g_pi(i) a e_pi(i)``."""
        j = self.pi[i]
        return self.group.mul[self.g[j]][a], j

    def matrix(self, k: int = 1) -> SparseRationalMatrix:
        n, G = self.n, self.group.order
        N = n * G
        rows = np.empty(N, dtype=np.int64)
        for i in range(n):
            for a in range(G):
                b, j = self.act_factor(a, i)
                rows[i * G + a] = j * G + b
        one = SparseRationalMatrix.from_coo(N, N, rows, np.arange(N))
        out = SparseRationalMatrix.identity(1)
        for _ in range(k):
            out = out.kron(one)
        return out


def wreath_action(w: WreathElement, factors: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    return [w.act_factor(g, i) for g, i in factors]


def wreath_generators(n: int, group: FiniteGroup) -> list[WreathElement]:
    """Simple transpositions and the one-slot label elements ``(g, 1, ..., 1)``."""
    out = []
    for i in range(n - 1):
        pi = list(range(n))
        pi[i], pi[i + 1] = pi[i + 1], pi[i]
        out.append(WreathElement((0,) * n, tuple(pi), group))
    if n:
        for g in group.elements:
            if g:
                out.append(WreathElement((g,) + (0,) * (n - 1), tuple(range(n)), group))
    return out


# --------------------------------------------------------------- generators

def _check_cap(count: int, cap: int):
    if count > cap:
        raise CapExceeded(f"matrix would store {count} entries (cap {cap})")


def phi_generator(sym: Symbol, n: int, group: FiniteGroup) -> SparseRationalMatrix:
    """Image of a generator from its defining formula on basis vectors."""
    G = group.order
    N = n * G
    ar = np.arange(N, dtype=np.int64)
    kind = sym.kind
    if kind == "id":
        return SparseRationalMatrix.identity(N)
    if kind == "merge":
        return SparseRationalMatrix.from_coo(N, N * N, ar, ar * N + ar)
    if kind == "split":
        return SparseRationalMatrix.from_coo(N * N, N, ar * N + ar, ar)
    if kind == "cross":
        a, b = np.divmod(np.arange(N * N, dtype=np.int64), N)
        return SparseRationalMatrix.from_coo(N * N, N * N, b * N + a, a * N + b)
    if kind == "pinb":
        return SparseRationalMatrix.from_coo(N, 1, ar, np.zeros(N, dtype=np.int64))
    if kind == "pint":
        return SparseRationalMatrix.from_coo(1, N, np.zeros(N, dtype=np.int64), ar)
    # token: h e_i -> h g^-1 e_i
    ginv = group.inv[sym.elt]
    rows = [i * G + group.mul[h][ginv] for i in range(n) for h in range(G)]
    return SparseRationalMatrix.from_coo(N, N, rows, ar)


def phi_word(w: GeneratorWord, n: int, group: FiniteGroup) -> SparseRationalMatrix:
    out: Optional[SparseRationalMatrix] = None
    for layer in w.layers:
        m = SparseRationalMatrix.identity(1)
        for s in layer:
            m = m.kron(phi_generator(s, n, group))
        out = m if out is None else m @ out
    return out


def phi_via_generators(p: GPartition, n: int) -> SparseRationalMatrix:
    return phi_word(standard_decomposition(p), n, p.group)


# ---------------------------------------------------------------- diagrams

@lru_cache(maxsize=4096)
def _phi_cached(k: int, l: int, blocks: tuple, labels: tuple, group: FiniteGroup, n: int,
                cap: int) -> SparseRationalMatrix:
    G = group.order
    N = n * G
    nparts = max(blocks) + 1 if blocks else 0
    _check_cap(N ** nparts, cap)
    rows = np.zeros(1, dtype=np.int64)
    cols = np.zeros(1, dtype=np.int64)
    mul = np.array(group.mul, dtype=np.int64)
    slots = np.repeat(np.arange(n, dtype=np.int64), G)   # choice c = s * G + t
    twist = np.tile(np.arange(G, dtype=np.int64), n)
    for b in range(nparts):
        cr = np.zeros(N, dtype=np.int64)
        cc = np.zeros(N, dtype=np.int64)
        for v, pb in enumerate(blocks):
            if pb != b:
                continue
            digit = slots * G + mul[twist, labels[v]]   # vector label t * g_v
            if v < k:
                cc += digit * N ** v
            else:
                cr += digit * N ** (v - k)
        rows = (rows[:, None] + cr[None, :]).ravel()
        cols = (cols[:, None] + cc[None, :]).ravel()
    return SparseRationalMatrix.from_coo(N ** l, N ** k, rows, cols)


def phi_diagram(p: GPartition, n: int, cap: int = DEFAULT_CAP) -> SparseRationalMatrix:
    """0/1 matrix: entry 1 iff on every part the slots agree and ``h_v g_v^-1`` is constant."""
    return _phi_cached(p.k, p.l, p.blocks, p.labels, p.group, n, cap)


def phi_morphism(m: Morphism, n: int, cap: int = DEFAULT_CAP) -> SparseRationalMatrix:
    N = dim_v(n, m.group)
    d0 = Fraction(N)
    out = SparseRationalMatrix.zeros(N ** m.l, N ** m.k)
    for p, c in m.sorted_terms():
        out = out + phi_diagram(p, n, cap).scale(c(d0))
    return out


# -------------------------------------------------------- orbit functionals

def _slot_pattern(slots: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(s, len(seen)) for s in slots)


def orbit_matrix(p: GPartition, n: int, cap: int = DEFAULT_CAP) -> SparseRationalMatrix:
    """Indicator of the orbit ``O_[P,g]`` by a scan over all basis pairs.

    A pair lies in the orbit iff its slot-equality pattern is exactly ``P``
    and ``h_v g_v^-1`` is constant on every part.
    """
    group = p.group
    k, l = p.k, p.l
    N = dim_v(n, group)
    _check_cap(N ** (k + l), cap)
    mul, inv = group.mul, group.inv
    rows, cols = [], []
    for vec in itertools.product(range(N), repeat=k + l):
        slots = [b // group.order for b in vec]
        if _slot_pattern(slots) != p.blocks:
            continue
        twist: dict[int, int] = {}
        if all(twist.setdefault(p.blocks[v], mul[b % group.order][inv[p.labels[v]]])
               == mul[b % group.order][inv[p.labels[v]]] for v, b in enumerate(vec)):
            col = sum(vec[v] * N ** v for v in range(k))
            row = sum(vec[k + j] * N ** j for j in range(l))
            rows.append(row)
            cols.append(col)
    return SparseRationalMatrix.from_coo(N ** l, N ** k, rows, cols)


def orbit_functional(p: GPartition, n: int, cap: int = DEFAULT_CAP) -> SparseRationalMatrix:
    """The functional ``f_[P,g]`` of a diagram ``k -> 0`` as a ``1 x (n|G|)^k`` row."""
    if p.l:
        raise ValueError(f"orbit functionals need diagrams of type k->0, got {p.dtype}")
    return orbit_matrix(p, n, cap)


def count_orbits(m: int, n: int, group: FiniteGroup, cap: int = DEFAULT_CAP) -> int:
    """Number of ``G_n``-orbits on basis vectors of ``V^(x)m`` (union-find)."""
    N = dim_v(n, group)
    size = N ** m
    _check_cap(size, cap)
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = wreath_generators(n, group)
    G = group.order
    for idx in range(size):
        factors = basis_factors(idx, m, n, group)
        for w in gens:
            image = wreath_action(w, [(g, i) for g, i in factors])
            j = 0
            for g, i in reversed(image):
                j = j * N + i * G + g
            a, b = find(idx), find(j)
            if a != b:
                parent[a] = b
    return sum(1 for x in range(size) if find(x) == x)


# ------------------------------------------------------------ rank reports

@dataclass
class HomRankReport:
    k: int
    l: int
    n: int
    dim: int
    rank: int
    expected: int
    kernel: list[GPartition]
    kernel_maps_to_zero: bool

    @property
    def full(self) -> bool:
        return self.rank == self.dim

    @property
    def ok(self) -> bool:
        return self.rank == self.expected and self.kernel_maps_to_zero and self.full == (self.k + self.l <= self.n)

    def to_json(self) -> dict:
        return {
            "k": self.k, "l": self.l, "n": self.n, "dim": self.dim, "rank": self.rank,
            "expected": self.expected, "full": self.full, "ok": self.ok,
            "kernel_maps_to_zero": self.kernel_maps_to_zero,
            "kernel": [dg.format_diagram(p) for p in self.kernel],
        }


def hom_rank(k: int, l: int, n: int, group: FiniteGroup, cap: int = DEFAULT_CAP) -> HomRankReport:
    basis = dg.enumerate_diagrams(k, l, group)
    rank = stack_rank(phi_diagram(p, n, cap) for p in basis)
    expected = sum(1 for p in basis if p.nparts <= n)
    kernel = [p for p in basis if p.nparts > n]
    memo: dict = {}
    zero = all(phi_morphism(x_element(p, memo), n, cap).is_zero() for p in kernel)
    return HomRankReport(k, l, n, len(basis), rank, expected, kernel, zero)


def commutes_with_wreath(matrix: SparseRationalMatrix, k: int, l: int, n: int, group: FiniteGroup) -> bool:
    for w in wreath_generators(n, group):
        if matrix @ w.matrix(k) != w.matrix(l) @ matrix:
            return False
    return True


def equivariance_check(p: GPartition, n: int, matrix: Optional[SparseRationalMatrix] = None) -> bool:
    """Whether the image of ``p`` (or a supplied matrix) commutes with ``G_n``."""
    m = phi_diagram(p, n) if matrix is None else matrix
    return commutes_with_wreath(m, p.k, p.l, n, p.group)
