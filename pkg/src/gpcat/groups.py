"""Finite groups as explicit Cayley tables with 0-based element indices."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

EXHAUSTIVE_ASSOC_LIMIT = 64
SYMMETRIC_MAX_DEGREE = 5


class GroupError(ValueError):
    """Raised when a table does not describe a group."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    Element ``0`` is always the identity.  ``mul[a][b]`` is the index of the
    product ``a*b``.  ``assoc_verified`` is False only for groups larger than
    the exhaustive-check limit, where associativity was only sampled.
    """

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    name: str = "G"
    identity: int = 0
    assoc_verified: bool = True
    _hash: int = field(default=0, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.order, self.mul)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and self.mul == other.mul

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def is_trivial(self) -> bool:
        return self.order == 1

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def serialize(self) -> str:
        """Render the table in the Cayley text format read by :func:`load_cayley`."""
        lines = [f"# {self.name}", str(self.order)]
        lines += [" ".join(map(str, row)) for row in self.mul]
        return "\n".join(lines) + "\n"


def _from_table(table: Sequence[Sequence[int]], name: str) -> FiniteGroup:
    n = len(table)
    mul = tuple(tuple(int(x) for x in row) for row in table)
    inv = tuple(row.index(0) for row in mul)
    return FiniteGroup(order=n, mul=mul, inv=inv, name=name)


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"cyclic group order must be positive, got {n}")
    return _from_table([[(i + j) % n for j in range(n)] for i in range(n)], f"C{n}")


def make_symmetric(n: int) -> FiniteGroup:
    """S_n with elements in lexicographic one-line order; ``mul(a, b) = a o b``."""
    if n < 1:
        raise GroupError(f"symmetric group degree must be positive, got {n}")
    if n > SYMMETRIC_MAX_DEGREE:
        raise GroupError(f"S_{n} is too large (degree limit {SYMMETRIC_MAX_DEGREE})")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms]
    return _from_table(table, f"S{n}")


def make_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Direct product; the pair ``(x, y)`` has index ``x * |b| + y``."""
    nb = b.order
    table = [
        [a.mul[x1][x2] * nb + b.mul[y1][y2] for x2 in a.elements for y2 in b.elements]
        for x1 in a.elements
        for y1 in b.elements
    ]
    return _from_table(table, f"{a.name}x{b.name}")


def check_group_table(table: Sequence[Sequence[int]], *, rng: random.Random | None = None,
                      samples: int = 20000) -> bool:
    """Validate a raw table; return whether associativity was checked exhaustively.

    Raises :class:`GroupError` naming the offending indices.
    """
    n = len(table)
    if n == 0:
        raise GroupError("group must have at least one element")
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupError(f"row {i} has {len(row)} entries, expected {n}")
        for j, x in enumerate(row):
            if not 0 <= x < n:
                raise GroupError(f"entry ({i},{j}) = {x} out of range")
    for x in range(n):
        if table[0][x] != x or table[x][0] != x:
            raise GroupError(f"index 0 is not an identity: 0*{x}={table[0][x]}, {x}*0={table[x][0]}")
    for x in range(n):
        if 0 not in table[x]:
            raise GroupError(f"element {x} has no inverse")
        y = table[x].index(0)
        if table[y][x] != 0:
            raise GroupError(f"element {x} has right inverse {y} but {y}*{x}={table[y][x]}")

    def assoc(a, b, c):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupError(
                f"associativity fails at ({a},{b},{c}): "
                f"({a}*{b})*{c}={table[table[a][b]][c]} but {a}*({b}*{c})={table[a][table[b][c]]}"
            )

    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    assoc(a, b, c)
        return True
    rng = rng or random.Random(0)
    for _ in range(samples):
        assoc(rng.randrange(n), rng.randrange(n), rng.randrange(n))
    return False


def _data_lines(text: str) -> Iterable[str]:
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line


def load_cayley(text: str | bytes, name: str | None = None) -> FiniteGroup:
    """Parse the Cayley text format: order line, then ``order`` rows of products."""
    if isinstance(text, bytes):
        text = text.decode()
    lines = list(_data_lines(text))
    if not lines:
        raise GroupError("empty Cayley file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise GroupError(f"parse error: {exc}") from None
    if len(rows) != n:
        raise GroupError(f"expected {n} table rows, found {len(rows)}")
    exhaustive = check_group_table(rows)
    g = _from_table(rows, name or f"cayley{n}")
    if not exhaustive:
        object.__setattr__(g, "assoc_verified", False)
    return g


def group_from_spec(spec: str) -> FiniteGroup:
    """Resolve ``cyclic:n``, ``sym:n``, ``product:a,b`` or ``cayley:path``."""
    kind, _, arg = spec.partition(":")
    if kind == "cyclic":
        return make_cyclic(int(arg))
    if kind == "sym":
        return make_symmetric(int(arg))
    if kind == "product":
        left, right = _split_product(arg)
        return make_product(group_from_spec(left), group_from_spec(right))
    if kind == "cayley":
        with open(arg, "rb") as fh:
            return load_cayley(fh.read(), name=spec)
    raise GroupError(f"unknown group spec {spec!r}")


def _split_product(arg: str) -> tuple[str, str]:
    # split at the top-level comma; nested product specs carry their own commas
    depth = 0
    i = 0
    while i < len(arg):
        if arg.startswith("product:", i):
            depth += 1
            i += len("product:")
            continue
        if arg[i] == ",":
            if depth == 0:
                return arg[:i], arg[i + 1:]
            depth -= 1
        i += 1
    raise GroupError(f"product spec needs two factors: {arg!r}")
