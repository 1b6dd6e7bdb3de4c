"""Layered words in the generators of Par(G) and their evaluation.

A word is a list of layers read bottom to top.  Each layer is a list of
symbols written left to right as in a picture, so the last symbol of a layer
acts on strand 1 (the rightmost strand).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import diagrams as dg
from .diagrams import GPartition
from .errors import ParseError, TypeMismatch
from .groups import FiniteGroup
from .morphisms import Morphism
from .polys import D

ARITY = {
    "id": (1, 1),
    "merge": (2, 1),
    "split": (1, 2),
    "cross": (2, 2),
    "pinb": (0, 1),
    "pint": (1, 0),
    "tok": (1, 1),
}


@dataclass(frozen=True)
class Symbol:
    kind: str
    elt: int = 0

    def __post_init__(self):
        if self.kind not in ARITY:
            raise ValueError(f"unknown generator {self.kind!r}")

    @property
    def source(self) -> int:
        return ARITY[self.kind][0]

    @property
    def target(self) -> int:
        return ARITY[self.kind][1]

    def __str__(self):
        return f"tok({self.elt})" if self.kind == "tok" else self.kind


ID = Symbol("id")
MERGE = Symbol("merge")
SPLIT = Symbol("split")
CROSS = Symbol("cross")
PINB = Symbol("pinb")
PINT = Symbol("pint")


def tok(g: int) -> Symbol:
    return Symbol("tok", g)


Layer = tuple[Symbol, ...]


def layer_source(layer: Sequence[Symbol]) -> int:
    return sum(s.source for s in layer)


def layer_target(layer: Sequence[Symbol]) -> int:
    return sum(s.target for s in layer)


@dataclass(frozen=True)
class GeneratorWord:
    layers: tuple[Layer, ...]

    def __post_init__(self):
        if not self.layers:
            raise ValueError("a word needs at least one layer")
        for i in range(1, len(self.layers)):
            below, above = self.layers[i - 1], self.layers[i]
            if layer_target(below) != layer_source(above):
                raise TypeMismatch(
                    f"layer {i} expects {layer_source(above)} strands but layer {i - 1} "
                    f"produces {layer_target(below)}"
                )

    @classmethod
    def of(cls, layers: Sequence[Sequence[Symbol]]) -> "GeneratorWord":
        return cls(tuple(tuple(layer) for layer in layers))

    @property
    def source(self) -> int:
        return layer_source(self.layers[0])

    @property
    def target(self) -> int:
        return layer_target(self.layers[-1])

    def then(self, other: "GeneratorWord") -> "GeneratorWord":
        """``other o self``: ``other`` stacked on top."""
        return GeneratorWord(self.layers + other.layers)

    def __str__(self):
        return format_word(self)


_TOKEN = re.compile(r"tok\((\d+)\)$")


def parse_word(text: str) -> GeneratorWord:
    """Parse ``tok(1) id; merge`` (layers bottom first, separated by ``;``)."""
    layers = []
    for chunk in text.split(";"):
        syms = []
        for name in chunk.split():
            m = _TOKEN.match(name)
            if m:
                syms.append(tok(int(m.group(1))))
            elif name in ARITY and name != "tok":
                syms.append(Symbol(name))
            else:
                raise ParseError(f"unknown symbol {name!r}")
        layers.append(tuple(syms))
    try:
        return GeneratorWord(tuple(layers))
    except TypeMismatch as exc:
        raise TypeMismatch(f"ill-formed word {text!r}: {exc}") from None


def format_word(w: GeneratorWord) -> str:
    return "; ".join(" ".join(str(s) for s in layer) for layer in w.layers)


# ---------------------------------------------------------------- evaluation

def symbol_diagram(sym: Symbol, group: FiniteGroup) -> GPartition:
    kind = sym.kind
    if kind == "id":
        return dg.identity(1, group)
    if kind == "merge":
        return dg.merge(group)
    if kind == "split":
        return dg.split(group)
    if kind == "cross":
        return dg.crossing(group)
    if kind == "pinb":
        return dg.pin_bottom(group)
    if kind == "pint":
        return dg.pin_top(group)
    if not 0 <= sym.elt < group.order:
        raise ValueError(f"token label {sym.elt} not in {group.name}")
    return dg.token(sym.elt, group)


SymbolMap = Callable[[Symbol, FiniteGroup], GPartition]


def layer_diagram(layer: Sequence[Symbol], group: FiniteGroup, symbol_map: SymbolMap = symbol_diagram) -> GPartition:
    return dg.tensor_all([symbol_map(s, group) for s in layer], group)


def evaluate_diagram(w: GeneratorWord, group: FiniteGroup,
                     symbol_map: SymbolMap = symbol_diagram) -> tuple[int, Optional[GPartition]]:
    """Fold a word into ``(alpha, diagram)``; ``diagram`` is None when the word is zero."""
    cur = layer_diagram(w.layers[0], group, symbol_map)
    alpha = 0
    for layer in w.layers[1:]:
        res = dg.compose(layer_diagram(layer, group, symbol_map), cur)
        if res.diagram is None:
            return 0, None
        alpha += res.alpha
        cur = res.diagram
    return alpha, cur


def evaluate(w: GeneratorWord | str, group: FiniteGroup, symbol_map: SymbolMap = symbol_diagram) -> Morphism:
    if isinstance(w, str):
        w = parse_word(w)
    alpha, p = evaluate_diagram(w, group, symbol_map)
    if p is None:
        return Morphism.zero(w.source, w.target, group)
    return Morphism.diagram(p, D ** alpha)


# ------------------------------------------------------ standard decomposition

def reduced_word(pi: Sequence[int]) -> list[int]:
    """Lexicographically least reduced word ``[j1, ..., jL]`` with
    ``pi = s_j1 s_j2 ... s_jL`` (1-based simple transpositions, 0-based ``pi``)."""
    pi = list(pi)
    word = []
    while True:
        inv = [0] * len(pi)
        for i, x in enumerate(pi):
            inv[x] = i
        # smallest left descent: pi^-1(j) > pi^-1(j+1)
        for j in range(len(pi) - 1):
            if inv[j] > inv[j + 1]:
                word.append(j + 1)
                # pi <- s_j pi
                pi = [j + 1 if x == j else j if x == j + 1 else x for x in pi]
                break
        else:
            return word


def transposition_layer(j: int, width: int) -> Layer:
    """Crossing of strands ``j`` and ``j+1`` counted from the right."""
    return tuple([ID] * (width - j - 1) + [CROSS] + [ID] * (j - 1))


def permutation_layers(pi: Sequence[int]) -> list[Layer]:
    """Layers (bottom first) realising the permutation diagram of ``pi``."""
    width = len(pi)
    return [transposition_layer(j, width) for j in reversed(reduced_word(pi))]


def permutation_word(pi: Sequence[int]) -> GeneratorWord:
    layers = permutation_layers(pi)
    return GeneratorWord.of(layers or [[ID] * len(pi)])


def star_layers(a: int, b: int) -> list[Layer]:
    """Layers of the star diagram with ``a`` inputs and ``b`` outputs (merges, then splits)."""
    if a == 0 and b == 0:
        raise ValueError("no star diagram of type 0 -> 0")
    layers: list[Layer] = []
    if a == 0:
        layers.append((PINB,))
    else:
        for width in range(a, 1, -1):
            layers.append(tuple([ID] * (width - 2) + [MERGE]))
        if b == 0:
            layers.append((PINT,))
    for c in range(1, b):
        layers.append(tuple([ID] * (c - 1) + [SPLIT]))
    return layers or [(ID,)]


def juxtapose(blocks: Sequence[tuple[list[Layer], int]]) -> list[Layer]:
    """Place blocks side by side (given left to right), padding short ones with
    identities.  Each block is ``(layers, output width)``."""
    height = max((len(ls) for ls, _ in blocks), default=0)
    out = []
    for t in range(max(height, 1)):
        layer: list[Symbol] = []
        for ls, width in blocks:
            layer.extend(ls[t] if t < len(ls) else [ID] * width)
        out.append(tuple(layer))
    return out


def _leg_positions(p: GPartition) -> tuple[list[int], list[int]]:
    """Leg positions (0-based from the right) of each vertex in the star tensor."""
    k = p.k
    bottom = [0] * p.k
    top = [0] * p.l
    nb = nt = 0
    for part in p.parts:
        for v in part:
            if v < k:
                bottom[v] = nb
                nb += 1
            else:
                top[v - k] = nt
                nt += 1
    return bottom, top


def standard_decomposition(p: GPartition) -> GeneratorWord:
    """Word ``(top tokens) D_pi S D_sigma (bottom tokens)`` evaluating to ``1 * [p]``.

    ``S`` has one star per part, parts ordered by minimum vertex from right to
    left; ``D_pi``, ``D_sigma`` use least reduced words.
    """
    group = p.group
    k, l = p.k, p.l
    layers: list[Layer] = []
    if any(p.labels[:k]):
        layers.append(tuple(tok(g) if g else ID for g in reversed(p.labels[:k])))
    bottom, top = _leg_positions(p)
    layers += permutation_layers(bottom)
    blocks = []
    for part in reversed(p.parts):
        a = sum(1 for v in part if v < k)
        b = len(part) - a
        blocks.append((star_layers(a, b), b))
    layers += juxtapose(blocks)
    # top leg position j feeds top vertex pi(j)'
    pi = [0] * l
    for j, pos in enumerate(top):
        pi[pos] = j
    layers += permutation_layers(pi)
    inv = group.inv
    if any(p.labels[k:]):
        layers.append(tuple(tok(inv[g]) if g else ID for g in reversed(p.labels[k:])))
    return GeneratorWord.of(layers)


# ------------------------------------------------------ shuffle factorization

@dataclass(frozen=True)
class ShuffleFactorization:
    """``[p] = top o [left] o [planar] o [right] o bottom`` with ``planar`` tensor-planar.

    ``left`` and ``right`` are permutations in 0-based one-line notation;
    ``top_labels``/``bottom_labels`` are the labels of ``p``'s representative.
    """

    top_labels: tuple[int, ...]
    left: tuple[int, ...]
    planar: GPartition
    right: tuple[int, ...]
    bottom_labels: tuple[int, ...]

    def factors(self) -> list[GPartition]:
        """The five factors, top first."""
        group = self.planar.group
        k, l = len(self.bottom_labels), len(self.top_labels)
        top = dg.canonicalize(l, l, list(range(l)) * 2, [0] * l + list(self.top_labels), group)
        bottom = dg.canonicalize(k, k, list(range(k)) * 2, list(self.bottom_labels) + [0] * k, group)
        return [top, dg.permutation(self.left, group), self.planar, dg.permutation(self.right, group), bottom]

    def recompose(self) -> tuple[int, Optional[GPartition]]:
        fs = self.factors()
        cur = fs[-1]
        alpha = 0
        for f in reversed(fs[:-1]):
            res = dg.compose(f, cur)
            if res.diagram is None:
                return 0, None
            alpha += res.alpha
            cur = res.diagram
        return alpha, cur


def _plum_order(p: GPartition) -> list[tuple[int, ...]]:
    k = p.k
    remaining = list(p.parts)
    placed_b: set[int] = set()
    placed_t: set[int] = set()
    order = []
    while remaining:
        free_b = [v for v in range(k) if v not in placed_b]
        free_t = [v for v in range(k, p.nverts) if v not in placed_t]

        def fits(part):
            bots = [v for v in part if v < k]
            tops = [v for v in part if v >= k]
            return bots == free_b[: len(bots)] and tops == free_t[: len(tops)]

        def rank(part):
            # prefer the part holding the lowest free top vertex, then lowest free bottom
            has_t = bool(free_t) and free_t[0] in part
            has_b = bool(free_b) and free_b[0] in part
            return (not has_t, not has_b)

        fitting = [c for c in remaining if fits(c)]
        pool = fitting or remaining
        choice = min(pool, key=rank)
        remaining.remove(choice)
        order.append(choice)
        for v in choice:
            (placed_b if v < k else placed_t).add(v)
    return order


def plum_decomposition(p: GPartition) -> ShuffleFactorization:
    """Factor ``p`` through a tensor-planar diagram with shuffles on both sides."""
    group = p.group
    k, l = p.k, p.l
    order = _plum_order(p)
    right = [0] * k
    left = [0] * l
    part_of = [0] * (k + l)
    nb = nt = 0
    for c, part in enumerate(order):
        for v in part:
            if v < k:
                right[v] = nb
                part_of[nb] = c
                nb += 1
            else:
                left[nt] = v - k
                part_of[k + nt] = c
                nt += 1
    planar = dg.canonicalize(k, l, part_of, [0] * (k + l), group)
    return ShuffleFactorization(tuple(p.labels[k:]), tuple(left), planar, tuple(right), tuple(p.labels[:k]))


def is_left_shuffle(pi: Sequence[int], q: GPartition) -> bool:
    """No inversion ``(i, j)`` of ``pi`` with ``i'``, ``j'`` in one component of ``q``."""
    k = q.k
    return not any(
        pi[i] > pi[j] and q.blocks[k + i] == q.blocks[k + j]
        for i in range(len(pi)) for j in range(i + 1, len(pi))
    )


def is_right_shuffle(pi: Sequence[int], q: GPartition) -> bool:
    """No inversion ``(i, j)`` of ``pi^-1`` with ``i``, ``j`` in one component of ``q``."""
    inv = [0] * len(pi)
    for i, x in enumerate(pi):
        inv[x] = i
    return not any(
        inv[i] > inv[j] and q.blocks[i] == q.blocks[j]
        for i in range(len(inv)) for j in range(i + 1, len(inv))
    )
