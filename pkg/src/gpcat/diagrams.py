"""Canonical G-partition diagrams and their composition/tensor calculus.

Vertices of a diagram of type ``k -> l`` are stored in the order
``1 < 2 < ... < k < 1' < ... < l'``; internally vertex ``v < k`` is the bottom
vertex ``v + 1`` and vertex ``k + j`` is the top vertex ``(j + 1)'``.  As in
the string-diagram pictures, vertex 1 is the rightmost one in its row.

A diagram is kept in canonical gauge: parts are numbered by increasing
minimum vertex and the minimum vertex of every part carries the identity.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .errors import CapExceeded, ParseError, TypeMismatch
from .groups import FiniteGroup

ENUMERATE_MAX_VERTICES = 8
ENUMERATE_CAP = 500_000


@dataclass(frozen=True)
class DiagramType:
    k: int
    l: int

    def __str__(self):
        return f"{self.k}->{self.l}"


@dataclass(frozen=True)
class GPartition:
    """An equivalence class [P, g] in canonical form.  Build via :func:`canonicalize`."""

    k: int
    l: int
    blocks: tuple[int, ...]
    labels: tuple[int, ...]
    group: FiniteGroup = field(compare=False, repr=False)

    @property
    def dtype(self) -> DiagramType:
        return DiagramType(self.k, self.l)

    @property
    def nverts(self) -> int:
        return self.k + self.l

    @cached_property
    def nparts(self) -> int:
        return max(self.blocks) + 1 if self.blocks else 0

    @cached_property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.nparts)]
        for v, b in enumerate(self.blocks):
            out[b].append(v)
        return tuple(tuple(p) for p in out)

    def bottom(self, v: int) -> bool:
        return v < self.k

    def vertex_name(self, v: int) -> str:
        return str(v + 1) if v < self.k else f"{v - self.k + 1}'"

    def relabeled(self, labels: Sequence[int]) -> "GPartition":
        return canonicalize(self.k, self.l, self.blocks, labels, self.group)

    def __str__(self):
        return format_diagram(self)


@dataclass(frozen=True)
class CompositionResult:
    """``alpha`` closed middle components and the composite, or ``None`` for zero."""

    alpha: int
    diagram: Optional[GPartition]

    @property
    def is_zero(self) -> bool:
        return self.diagram is None


ZERO = CompositionResult(0, None)


def canonicalize(k: int, l: int, part_of: Sequence[int], labels: Sequence[int],
                 group: FiniteGroup) -> GPartition:
    n = k + l
    if len(part_of) != n or len(labels) != n:
        raise TypeMismatch(
            f"type {k}->{l} needs {n} part ids and labels, got {len(part_of)} and {len(labels)}"
        )
    renum: dict = {}
    blocks = []
    for b in part_of:
        if b not in renum:
            renum[b] = len(renum)
        blocks.append(renum[b])
    mul, inv = group.mul, group.inv
    gauge = [0] * len(renum)
    seen = [False] * len(renum)
    out = []
    for v, b in enumerate(blocks):
        g = labels[v]
        if not 0 <= g < group.order:
            raise ValueError(f"label {g} at vertex {v} is not an element of {group.name}")
        if not seen[b]:
            seen[b] = True
            gauge[b] = inv[g]
            out.append(0)
        else:
            out.append(mul[gauge[b]][g])
    return GPartition(k, l, tuple(blocks), tuple(out), group)


def equivalent(k: int, l: int, part_a, labels_a, part_b, labels_b, group: FiniteGroup) -> bool:
    """Whether two raw labelled partitions of the same type represent the same class."""
    return canonicalize(k, l, part_a, labels_a, group) == canonicalize(k, l, part_b, labels_b, group)


def _same_group(a: GPartition, b: GPartition):
    if a.group != b.group:
        raise TypeMismatch(f"group mismatch: {a.group.name} vs {b.group.name}")


def compose(q: GPartition, p: GPartition) -> CompositionResult:
    """Vertical composite ``q o p`` (``p`` below ``q``).

    Class-level compatibility is decided by solving for per-part gauge factors
    ``t`` on parts of ``p`` and ``u`` on parts of ``q`` with ``l_i = t^-1 u`` at
    every middle vertex, where ``l_i = g_{i'} h_i^-1``.
    """
    if q.k != p.l:
        raise TypeMismatch(f"cannot compose {q.dtype} after {p.dtype}")
    _same_group(q, p)
    group = p.group
    mul, inv = group.mul, group.inv
    k, l, m = p.k, p.l, q.l
    rp, rq = p.nparts, q.nparts
    pb, pl, qb, ql = p.blocks, p.labels, q.blocks, q.labels

    # bipartite incidence: P-part a <-> Q-part b through middle vertex i
    adj: list[list[tuple[int, int]]] = [[] for _ in range(rp + rq)]
    for i in range(l):
        a = pb[k + i]
        b = rp + qb[i]
        ell = mul[pl[k + i]][inv[ql[i]]]
        adj[a].append((b, ell))
        adj[b].append((a, inv[ell]))

    # node value: t for P-parts, u for Q-parts; edge a->b requires u_b = t_a * ell
    value = [-1] * (rp + rq)
    comp = [-1] * (rp + rq)
    ncomp = 0
    alpha = 0
    outer = [False] * (rp + rq)
    for v in range(k):
        outer[pb[v]] = True
    for w in range(m):
        outer[rp + qb[l + w]] = True
    for start in range(rp + rq):
        if comp[start] >= 0:
            continue
        comp[start] = ncomp
        value[start] = 0
        stack = [start]
        touches_outer = outer[start]
        while stack:
            x = stack.pop()
            vx = value[x]
            for y, ell in adj[x]:
                want = mul[vx][ell]
                if comp[y] < 0:
                    comp[y] = ncomp
                    value[y] = want
                    touches_outer = touches_outer or outer[y]
                    stack.append(y)
                elif value[y] != want:
                    return ZERO
        if not touches_outer:
            alpha += 1
        ncomp += 1

    part_of = [comp[pb[v]] for v in range(k)] + [comp[rp + qb[l + w]] for w in range(m)]
    labels = [mul[value[pb[v]]][pl[v]] for v in range(k)]
    labels += [mul[value[rp + qb[l + w]]][ql[l + w]] for w in range(m)]
    return CompositionResult(alpha, canonicalize(k, m, part_of, labels, group))


def tensor(a: GPartition, b: GPartition) -> GPartition:
    """Horizontal juxtaposition with ``a`` on the left and ``b`` on the right.

    ``b`` keeps the low vertex numbers in each row.
    """
    _same_group(a, b)
    ra = b.nparts
    part_of = list(b.blocks[: b.k]) + [x + ra for x in a.blocks[: a.k]]
    part_of += list(b.blocks[b.k:]) + [x + ra for x in a.blocks[a.k:]]
    labels = list(b.labels[: b.k]) + list(a.labels[: a.k]) + list(b.labels[b.k:]) + list(a.labels[a.k:])
    return canonicalize(a.k + b.k, a.l + b.l, part_of, labels, a.group)


def tensor_all(factors: Sequence[GPartition], group: FiniteGroup) -> GPartition:
    out = empty(group)
    for f in factors:
        out = tensor(out, f)
    return out


def dual(p: GPartition) -> GPartition:
    """Rotation through 180 degrees: bottom ``i`` becomes top ``(k+1-i)'``."""
    k, l = p.k, p.l
    order = [k + (l - 1 - j) for j in range(l)] + [k - 1 - j for j in range(k)]
    return canonicalize(l, k, [p.blocks[v] for v in order], [p.labels[v] for v in order], p.group)


def flip(p: GPartition) -> GPartition:
    """Reflection in the horizontal axis (top and bottom rows swapped, order kept)."""
    k, l = p.k, p.l
    order = list(range(k, k + l)) + list(range(k))
    return canonicalize(l, k, [p.blocks[v] for v in order], [p.labels[v] for v in order], p.group)


# ---------------------------------------------------------------- generators

def empty(group: FiniteGroup) -> GPartition:
    return GPartition(0, 0, (), (), group)


def identity(k: int, group: FiniteGroup) -> GPartition:
    return permutation(range(k), group)


def permutation(pi: Sequence[int], group: FiniteGroup) -> GPartition:
    """The diagram with parts ``{i, pi(i)'}`` (``pi`` in 0-based one-line notation)."""
    pi = list(pi)
    k = len(pi)
    if sorted(pi) != list(range(k)):
        raise ValueError(f"not a permutation: {pi}")
    part_of = list(range(k)) + [0] * k
    for i, j in enumerate(pi):
        part_of[k + j] = i
    return canonicalize(k, k, part_of, [0] * (2 * k), group)


def merge(group: FiniteGroup) -> GPartition:
    return canonicalize(2, 1, [0, 0, 0], [0, 0, 0], group)


def split(group: FiniteGroup) -> GPartition:
    return canonicalize(1, 2, [0, 0, 0], [0, 0, 0], group)


def crossing(group: FiniteGroup) -> GPartition:
    return permutation([1, 0], group)


def pin_bottom(group: FiniteGroup) -> GPartition:
    """The unit ``0 -> 1``: a single top vertex."""
    return canonicalize(0, 1, [0], [0], group)


def pin_top(group: FiniteGroup) -> GPartition:
    """The counit ``1 -> 0``: a single bottom vertex."""
    return canonicalize(1, 0, [0], [0], group)


def token(g: int, group: FiniteGroup) -> GPartition:
    """One strand with bottom label ``g`` (equivalently top label ``g^-1``)."""
    return canonicalize(1, 1, [0, 0], [g, 0], group)


def star(a: int, b: int, group: FiniteGroup) -> GPartition:
    """The one-part diagram with ``a`` bottom and ``b`` top vertices."""
    return canonicalize(a, b, [0] * (a + b), [0] * (a + b), group)


def generator(kind: str, group: FiniteGroup, arg=None) -> GPartition:
    table = {
        "merge": merge, "split": split, "crossing": crossing,
        "pin_bottom": pin_bottom, "pin_top": pin_top, "empty": empty,
    }
    if kind in table:
        return table[kind](group)
    if kind == "token":
        return token(arg, group)
    if kind == "identity":
        return identity(arg, group)
    if kind == "permutation":
        return permutation(arg, group)
    raise ValueError(f"unknown generator {kind!r}")


def as_permutation(p: GPartition) -> Optional[tuple[int, ...]]:
    """One-line notation if ``p`` is an unlabelled permutation diagram, else None."""
    if p.k != p.l or any(p.labels):
        return None
    k = p.k
    pi = [-1] * k
    for part in p.parts:
        if len(part) != 2 or not (part[0] < k <= part[1]):
            return None
        pi[part[0]] = part[1] - k
    return tuple(pi)


# --------------------------------------------------------------- enumeration

def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n`` in lexicographic order."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(rgs)
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def hom_dimension(k: int, l: int, order: int) -> int:
    """Number of classes of type ``k -> l``: sum over P of |G|^(k+l-#parts)."""
    n = k + l
    # Stirling numbers of the second kind by recurrence
    s = [[0] * (n + 1) for _ in range(n + 1)]
    s[0][0] = 1
    for i in range(1, n + 1):
        for r in range(1, i + 1):
            s[i][r] = r * s[i - 1][r] + s[i - 1][r - 1]
    return sum(s[n][r] * order ** (n - r) for r in range(n + 1))


def enumerate_diagrams(k: int, l: int, group: FiniteGroup, cap: int = ENUMERATE_CAP,
                       max_vertices: int = ENUMERATE_MAX_VERTICES) -> list[GPartition]:
    """All canonical classes of type ``k -> l``: set partitions in RGS order,
    then non-minimum labels lexicographically."""
    n = k + l
    if n > max_vertices:
        raise CapExceeded(f"{n} vertices exceeds the enumeration limit {max_vertices}")
    count = hom_dimension(k, l, group.order)
    if count > cap:
        raise CapExceeded(f"Hom({k},{l}) over {group.name} has {count} diagrams (cap {cap})")
    out = []
    for rgs in set_partitions(n):
        seen: set = set()
        free = []
        for v, b in enumerate(rgs):
            if b in seen:
                free.append(v)
            else:
                seen.add(b)
        for choice in itertools.product(range(group.order), repeat=len(free)):
            labels = [0] * n
            for v, g in zip(free, choice):
                labels[v] = g
            out.append(GPartition(k, l, rgs, tuple(labels), group))
    return out


# ----------------------------------------------------------------- coarsening

def coarsenings(p: GPartition, max_parts: int = 12) -> list[GPartition]:
    """All classes ``[Q, h]`` strictly above ``p``: ``Q`` strictly coarser than
    the partition of ``p`` and ``h`` any representative of ``p``'s labels."""
    r = p.nparts
    if r > max_parts:
        raise CapExceeded(f"{r} parts exceeds the coarsening limit {max_parts}")
    group = p.group
    mul = group.mul
    out = []
    seen = set()
    for rgs in set_partitions(r):
        if max(rgs, default=-1) + 1 == r:
            continue  # the partition itself
        # within each new block the first old part is the gauge anchor
        anchored: set = set()
        free = []
        for a, b in enumerate(rgs):
            if b in anchored:
                free.append(a)
            else:
                anchored.add(b)
        part_of = [rgs[b] for b in p.blocks]
        for choice in itertools.product(range(group.order), repeat=len(free)):
            factor = [0] * r
            for a, t in zip(free, choice):
                factor[a] = t
            labels = [mul[factor[p.blocks[v]]][g] for v, g in enumerate(p.labels)]
            q = canonicalize(p.k, p.l, part_of, labels, group)
            if q not in seen:
                seen.add(q)
                out.append(q)
    return out


def is_coarser_or_equal(q: GPartition, p: GPartition) -> bool:
    """``[Q, h] >= [P, g]``: every part of P lies in a part of Q and
    ``(P, h) ~ (P, g)``."""
    if q.dtype != p.dtype:
        return False
    image: dict = {}
    for pb, qb in zip(p.blocks, q.blocks):
        if image.setdefault(pb, qb) != qb:
            return False
    return p.relabeled(q.labels) == p


# ----------------------------------------------------------------- planarity

def is_tensor_planar(p: GPartition) -> bool:
    """Whether ``p`` is a horizontal juxtaposition of one-part diagrams."""
    k = p.k
    nb = nt = 0
    remaining = list(p.parts)
    while remaining:
        for idx, part in enumerate(remaining):
            bots = [v for v in part if v < k]
            tops = [v - k for v in part if v >= k]
            if bots == list(range(nb, nb + len(bots))) and tops == list(range(nt, nt + len(tops))):
                nb += len(bots)
                nt += len(tops)
                del remaining[idx]
                break
        else:
            return False
    return True


# -------------------------------------------------------------- text grammar

_HEADER = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*;\s*parts:\s*\[(.*)\]\s*;\s*labels:(.*)$", re.S)
_VERTEX = re.compile(r"^(\d+)('?)$")


def _parse_vertex(tok: str, k: int, l: int) -> int:
    m = _VERTEX.match(tok)
    if not m:
        raise ParseError(f"bad vertex {tok!r}")
    i = int(m.group(1))
    if m.group(2):
        if not 1 <= i <= l:
            raise ParseError(f"top vertex {tok} out of range for l={l}")
        return k + i - 1
    if not 1 <= i <= k:
        raise ParseError(f"bottom vertex {tok} out of range for k={k}")
    return i - 1


def parse_diagram(text: str, group: FiniteGroup) -> GPartition:
    """Parse ``k -> l; parts: [1 1' | 2]; labels: 2:1``.  Missing labels are 0."""
    m = _HEADER.match(text.strip())
    if not m:
        raise ParseError(f"cannot parse diagram {text!r}")
    k, l = int(m.group(1)), int(m.group(2))
    body = m.group(3).strip()
    part_of = [-1] * (k + l)
    if body:
        for b, chunk in enumerate(body.split("|")):
            toks = chunk.split()
            if not toks:
                raise ParseError("empty part")
            for tok in toks:
                v = _parse_vertex(tok, k, l)
                if part_of[v] >= 0:
                    raise ParseError(f"vertex {tok} listed twice")
                part_of[v] = b
    missing = [v for v, b in enumerate(part_of) if b < 0]
    if missing:
        raise ParseError(f"vertices not in any part: {missing}")
    labels = [0] * (k + l)
    for tok in m.group(4).split():
        vert, sep, elt = tok.partition(":")
        if not sep:
            raise ParseError(f"bad label assignment {tok!r}")
        try:
            g = int(elt)
        except ValueError:
            raise ParseError(f"bad element index {elt!r}") from None
        if not 0 <= g < group.order:
            raise ParseError(f"element {g} not in {group.name}")
        labels[_parse_vertex(vert, k, l)] = g
    return canonicalize(k, l, part_of, labels, group)


def format_diagram(p: GPartition) -> str:
    parts = " | ".join(" ".join(p.vertex_name(v) for v in part) for part in p.parts)
    labels = " ".join(f"{p.vertex_name(v)}:{g}" for v, g in enumerate(p.labels) if g)
    return f"{p.k} -> {p.l}; parts: [{parts}]; labels:" + (f" {labels}" if labels else "")
