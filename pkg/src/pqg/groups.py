"""Finite groups given by Cayley tables, and isomorphism testing between them."""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import InvalidGroup


class FiniteGroup:
    """A finite group on element names ``names`` with multiplication table ``table``.

    ``table[a][b]`` is the index of the product of elements ``a`` and ``b``.
    """

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        n = len(table)
        if n == 0:
            raise InvalidGroup("a group has at least one element")
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        if any(len(row) != n for row in self.table):
            raise InvalidGroup("Cayley table is not square")
        if any(not 0 <= v < n for row in self.table for v in row):
            raise InvalidGroup("Cayley table entry out of range")
        self.names = tuple(str(x) for x in names) if names is not None else tuple(f"g{i}" for i in range(n))
        if len(self.names) != n or len(set(self.names)) != n:
            raise InvalidGroup("element names must be distinct and match the table size")
        ids = [e for e in range(n) if all(self.table[e][a] == a == self.table[a][e] for a in range(n))]
        if not ids:
            raise InvalidGroup("no identity element")
        self.identity = ids[0]
        inverse = []
        for a in range(n):
            inv = [b for b in range(n) if self.table[a][b] == self.identity]
            if len(inv) != 1 or self.table[inv[0]][a] != self.identity:
                raise InvalidGroup(f"element {self.names[a]} has no two-sided inverse")
            inverse.append(inv[0])
        self.inverse = tuple(inverse)
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise InvalidGroup("multiplication is not associative")
        self._index = {name: i for i, name in enumerate(self.names)}

    # -- basic access ---------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return self.order

    def index(self, name: str) -> int:
        return self._index[name]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def mul_names(self, a: str, b: str) -> str:
        return self.names[self.table[self._index[a]][self._index[b]]]

    def inv_name(self, a: str) -> str:
        return self.names[self.inverse[self._index[a]]]

    @property
    def identity_name(self) -> str:
        return self.names[self.identity]

    def product_of(self, word: Sequence[str]) -> str:
        acc = self.identity
        for g in word:
            acc = self.table[acc][self._index[g]]
        return self.names[acc]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def order_statistics(self) -> tuple[int, ...]:
        """Sorted element orders: a cheap isomorphism invariant."""
        return tuple(sorted(self.element_order(a) for a in range(self.order)))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name() or self.order})"

    # -- constructors ---------------------------------------------------------

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], ["e"])

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise InvalidGroup("cyclic group order must be positive")
        names = ["e", "g"] if n == 2 else ["e"] + [f"g{i}" for i in range(1, n)]
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], names)

    @classmethod
    def direct_product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        pairs = list(itertools.product(range(g.order), range(h.order)))
        index = {p: i for i, p in enumerate(pairs)}
        table = [
            [index[(g.table[a][c], h.table[b][d])] for (c, d) in pairs] for (a, b) in pairs
        ]
        names = [f"({g.names[a]},{h.names[b]})" for a, b in pairs]
        return cls(table, names)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        perms = list(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        # (s t)(i) = s(t(i))
        table = [[index[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
        names = ["".join(str(i) for i in p) for p in perms]
        return cls(table, names)

    @classmethod
    def from_json(cls, data) -> "FiniteGroup":
        if isinstance(data, str):
            return named_group(data)
        return cls(data["table"], data.get("names"))

    def to_json(self) -> dict:
        """Table reindexed so that the identity comes first."""
        order = [self.identity] + [a for a in range(self.order) if a != self.identity]
        pos = {a: i for i, a in enumerate(order)}
        table = [[pos[self.table[a][b]] for b in order] for a in order]
        return {"order": self.order, "table": table, "names": [self.names[a] for a in order]}

    def name(self) -> str | None:
        """Conventional name when the isomorphism type is recognised, else None."""
        n = self.order
        if n == 1:
            return "trivial"
        if any(self.element_order(a) == n for a in range(n)):
            return f"Z{n}"
        for label in ("Z2xZ2", "S3"):
            if is_isomorphic(self, named_group(label)):
                return label
        return None


def named_group(label: str) -> FiniteGroup:
    """Build a group from a name such as ``trivial``, ``Z5``, ``Z2xZ2`` or ``S3``."""
    label = label.strip()
    if label in ("trivial", "e", "1"):
        return FiniteGroup.trivial()
    if "x" in label:
        parts = [named_group(part) for part in label.split("x")]
        out = parts[0]
        for part in parts[1:]:
            out = FiniteGroup.direct_product(out, part)
        return out
    if label.startswith("Z") and label[1:].isdigit():
        return FiniteGroup.cyclic(int(label[1:]))
    if label.startswith("S") and label[1:].isdigit():
        return FiniteGroup.symmetric(int(label[1:]))
    raise InvalidGroup(f"unrecognised group name {label!r}")


def _generators(g: FiniteGroup) -> list[int]:
    """A small generating set, picked greedily by decreasing element order."""
    elements = sorted(range(g.order), key=lambda a: -g.element_order(a))
    gens: list[int] = []
    span = {g.identity}
    for a in elements:
        if a in span:
            continue
        gens.append(a)
        span = _closure(g, gens)
        if len(span) == g.order:
            break
    return gens


def _closure(g: FiniteGroup, gens: Sequence[int]) -> set[int]:
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.table[x][s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _extend(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> dict[int, int] | None:
    """Extend generator images to a homomorphism by breadth-first words; None if inconsistent."""
    phi = {g.identity: h.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, images):
                y = g.table[x][s]
                val = h.table[phi[x]][t]
                if y in phi:
                    if phi[y] != val:
                        return None
                else:
                    phi[y] = val
                    nxt.append(y)
        frontier = nxt
    # every product must be respected, not just right multiplication by generators
    for a in range(g.order):
        for b in range(g.order):
            if phi[g.table[a][b]] != h.table[phi[a]][phi[b]]:
                return None
    return phi


def isomorphism(g: FiniteGroup, h: FiniteGroup) -> dict[int, int] | None:
    """An isomorphism g -> h as an index map, or None."""
    if g.order != h.order or g.order_statistics() != h.order_statistics():
        return None
    if g.is_abelian() != h.is_abelian():
        return None
    gens = _generators(g)
    candidates = [
        [b for b in range(h.order) if h.element_order(b) == g.element_order(a)] for a in gens
    ]
    for images in itertools.product(*candidates):
        phi = _extend(g, h, gens, images)
        if phi is not None and len(set(phi.values())) == h.order:
            return phi
    return None


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return isomorphism(g, h) is not None


def small_groups(max_order: int = 6) -> list[FiniteGroup]:
    """One representative of every isomorphism type of order at most 6 (8 types)."""
    out = [FiniteGroup.trivial()]
    for n in range(2, max_order + 1):
        out.append(FiniteGroup.cyclic(n))
        if n == 4:
            out.append(named_group("Z2xZ2"))
        if n == 6:
            out.append(FiniteGroup.symmetric(3))
    return out
