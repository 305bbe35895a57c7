"""
Coloured two-row set partitions and the four category operations.

A partition of type (k, l) has k upper points and l lower points. Points are
indexed globally: ``0 .. k-1`` are the upper points from left to right and
``k .. k+l-1`` are the lower points from left to right. The block structure
is stored as a restricted-growth sequence (block labels numbered by first
occurrence), which makes equality and hashing O(n).

Planarity is judged on the cyclic reading order used to draw diagrams: the
upper row from left to right followed by the lower row from right to left.
With that order the four-index crossing test agrees with the pictures, e.g.
``| (x) |`` is noncrossing while the crossing ``ab|ba`` is not.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections import defaultdict
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ColourMismatch,
    EmptyRow,
    LimitExceeded,
    OverlapOrGap,
    ShapeMismatch,
    UnknownColour,
    WordLengthMismatch,
)

DEFAULT_COLOUR = "x"
MAX_POINTS = 12

Word = tuple[str, ...]


@dataclasses.dataclass(frozen=True)
class ColourSet:
    """A finite set of colours with an involutive conjugation."""

    colours: tuple[str, ...]
    conjugates: tuple[str, ...]

    def __post_init__(self):
        if len(self.colours) != len(self.conjugates):
            raise ValueError("every colour needs exactly one conjugate")
        if len(set(self.colours)) != len(self.colours):
            raise ValueError("duplicate colour")
        table = dict(zip(self.colours, self.conjugates))
        for c, cbar in table.items():
            if cbar not in table or table[cbar] != c:
                raise ValueError(f"conjugation is not an involution at {c!r}")

    @classmethod
    def from_mapping(cls, conj: Mapping[str, str]) -> "ColourSet":
        colours = tuple(conj)
        return cls(colours, tuple(conj[c] for c in colours))

    @classmethod
    def self_conjugate(cls, colours: Iterable[str]) -> "ColourSet":
        colours = tuple(colours)
        return cls(colours, colours)

    @classmethod
    def uncoloured(cls) -> "ColourSet":
        return cls.self_conjugate([DEFAULT_COLOUR])

    @property
    def mapping(self) -> dict[str, str]:
        return dict(zip(self.colours, self.conjugates))

    def conj(self, colour: str) -> str:
        try:
            return self.conjugates[self.colours.index(colour)]
        except ValueError:
            raise UnknownColour(colour) from None

    def conj_word(self, word: Sequence[str]) -> Word:
        """Conjugate of a word: reversed, letter by letter conjugated."""
        return tuple(self.conj(c) for c in reversed(word))

    def __contains__(self, colour) -> bool:
        return colour in self.colours

    def __len__(self) -> int:
        return len(self.colours)

    def __iter__(self):
        return iter(self.colours)

    def union(self, other: "ColourSet") -> "ColourSet":
        if set(self.colours) & set(other.colours):
            raise ValueError("colour sets are not disjoint")
        return ColourSet(self.colours + other.colours, self.conjugates + other.conjugates)


UNCOLOURED = ColourSet.uncoloured()


def canonical_labels(labels: Sequence) -> tuple[int, ...]:
    """Relabel a sequence of block labels as a restricted-growth sequence."""
    seen: dict = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def _join_labels(n: int, *label_seqs: Sequence[int]) -> list[int]:
    """Root labels of the join of several partitions of the same n points."""
    uf = _UnionFind(n)
    for labels in label_seqs:
        first: dict[int, int] = {}
        for i, lab in enumerate(labels):
            if lab in first:
                uf.union(first[lab], i)
            else:
                first[lab] = i
    return [uf.find(i) for i in range(n)]


@dataclasses.dataclass(frozen=True)
class Partition:
    """Uncoloured partition of k upper and l lower points."""

    k: int
    l: int
    labels: tuple[int, ...]

    def __post_init__(self):
        if self.k < 0 or self.l < 0 or len(self.labels) != self.k + self.l:
            raise OverlapOrGap("label sequence does not match k + l")
        if canonical_labels(self.labels) != tuple(self.labels):
            object.__setattr__(self, "labels", canonical_labels(self.labels))

    @classmethod
    def from_blocks(cls, k: int, l: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        """Build from 1-based point sets (upper points 1..k, lower points k+1..k+l)."""
        n = k + l
        labels: list[int | None] = [None] * n
        for b, block in enumerate(blocks):
            block = list(block)
            if not block:
                raise OverlapOrGap("empty block")
            for point in block:
                if not isinstance(point, int) or not 1 <= point <= n:
                    raise OverlapOrGap(f"point {point!r} outside 1..{n}")
                if labels[point - 1] is not None:
                    raise OverlapOrGap(f"point {point} appears in two blocks")
                labels[point - 1] = b
        missing = [i + 1 for i, lab in enumerate(labels) if lab is None]
        if missing:
            raise OverlapOrGap(f"points {missing} are not covered")
        return cls(k, l, canonical_labels(labels))

    @property
    def size(self) -> int:
        return self.k + self.l

    def blocks(self) -> list[tuple[int, ...]]:
        """Blocks as sorted tuples of 1-based points, listed by smallest element."""
        out: dict[int, list[int]] = defaultdict(list)
        for i, lab in enumerate(self.labels):
            out[lab].append(i + 1)
        return [tuple(out[b]) for b in sorted(out)]

    @property
    def num_blocks(self) -> int:
        return len(set(self.labels))

    @property
    def through_blocks(self) -> int:
        return len(set(self.labels[: self.k]) & set(self.labels[self.k:]))

    def cyclic_labels(self) -> tuple[int, ...]:
        """Labels in drawing order: upper row left-to-right, lower row right-to-left."""
        return self.labels[: self.k] + self.labels[self.k:][::-1]

    def is_noncrossing(self) -> bool:
        return labels_noncrossing(self.cyclic_labels())


def join_block_count(p: "ColouredPartition | Partition", q: "ColouredPartition | Partition") -> int:
    """Number of blocks of the finest partition coarser than both p and q (same shape)."""
    a = p.partition if isinstance(p, ColouredPartition) else p
    b = q.partition if isinstance(q, ColouredPartition) else q
    if (a.k, a.l) != (b.k, b.l):
        raise ShapeMismatch("join needs partitions of the same shape")
    return len(set(_join_labels(a.size, a.labels, b.labels)))


def labels_noncrossing(seq: Sequence[int]) -> bool:
    """Stack scan: a block reappearing below the top of the stack witnesses a crossing."""
    last = {lab: i for i, lab in enumerate(seq)}
    stack: list[int] = []
    open_set: set[int] = set()
    for i, lab in enumerate(seq):
        if lab in open_set:
            if stack[-1] != lab:
                return False
            if last[lab] == i:
                stack.pop()
                open_set.discard(lab)
        elif last[lab] != i:
            stack.append(lab)
            open_set.add(lab)
    return True


def crossing_witness(p: "ColouredPartition | Partition") -> tuple[int, int, int, int] | None:
    """Return 1-based points k1, k2, k3, k4 (cyclic order) exhibiting a crossing, if any."""
    part = p.partition if isinstance(p, ColouredPartition) else p
    order = list(range(part.k)) + list(range(part.size - 1, part.k - 1, -1))
    seq = [part.labels[i] for i in order]
    n = len(seq)
    for a, b, c, d in itertools.combinations(range(n), 4):
        if seq[a] == seq[c] and seq[b] == seq[d] and seq[a] != seq[b]:
            return tuple(order[i] + 1 for i in (a, b, c, d))
    return None


@dataclasses.dataclass(frozen=True)
class ColouredPartition:
    """A partition with a colour attached to each point."""

    partition: Partition
    upper: Word
    lower: Word

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.upper) != self.partition.k or len(self.lower) != self.partition.l:
            raise WordLengthMismatch(
                f"words of length {len(self.upper)}/{len(self.lower)} for a "
                f"({self.partition.k}, {self.partition.l}) partition"
            )

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_labels(cls, k: int, l: int, labels: Sequence[int], upper=None, lower=None):
        if upper is None:
            upper = (DEFAULT_COLOUR,) * k
        if lower is None:
            lower = (DEFAULT_COLOUR,) * l
        if len(labels) != k + l:
            raise OverlapOrGap("label sequence does not match k + l")
        return cls(Partition(k, l, canonical_labels(labels)), tuple(upper), tuple(lower))

    @classmethod
    def parse(cls, text: str) -> "ColouredPartition":
        """Parse the compact form ``"ab|ba"`` or ``"ab|ba@x,y/y,x"``."""
        body, _, colours = text.partition("@")
        if body.count("|") != 1:
            raise ValueError(f"expected exactly one '|' in {text!r}")
        top, bottom = body.split("|")
        k, l = len(top), len(bottom)
        labels = list(top + bottom)
        if colours:
            up, _, low = colours.partition("/")
            upper = tuple(c for c in up.split(",") if c) if up else ()
            lower = tuple(c for c in low.split(",") if c) if low else ()
        else:
            upper, lower = None, None
        return cls.from_labels(k, l, labels, upper, lower)

    @classmethod
    def from_json(cls, data: Mapping) -> "ColouredPartition":
        k, l = int(data["k"]), int(data["l"])
        part = Partition.from_blocks(k, l, data["blocks"])
        upper = tuple(data.get("upper") or (DEFAULT_COLOUR,) * k)
        lower = tuple(data.get("lower") or (DEFAULT_COLOUR,) * l)
        return cls(part, upper, lower)

    # -- views ---------------------------------------------------------------

    @property
    def k(self) -> int:
        return self.partition.k

    @property
    def l(self) -> int:
        return self.partition.l

    @property
    def labels(self) -> tuple[int, ...]:
        return self.partition.labels

    @property
    def size(self) -> int:
        return self.partition.size

    @property
    def colours(self) -> Word:
        return self.upper + self.lower

    def blocks(self) -> list[tuple[int, ...]]:
        return self.partition.blocks()

    @property
    def num_blocks(self) -> int:
        return self.partition.num_blocks

    @property
    def through_blocks(self) -> int:
        return self.partition.through_blocks

    def is_noncrossing(self) -> bool:
        return self.partition.is_noncrossing()

    def sort_key(self):
        return (self.size, self.k, self.labels, self.upper, self.lower)

    def __lt__(self, other: "ColouredPartition") -> bool:
        return self.sort_key() < other.sort_key()

    def is_uncoloured(self) -> bool:
        return all(c == DEFAULT_COLOUR for c in self.colours)

    def text(self) -> str:
        letters = "abcdefghijklmnopqrstuvwxyz"
        if self.num_blocks > len(letters):
            raise ValueError("too many blocks for the compact text form")
        top = "".join(letters[b] for b in self.labels[: self.k])
        bottom = "".join(letters[b] for b in self.labels[self.k:])
        out = f"{top}|{bottom}"
        if not self.is_uncoloured():
            out += "@" + ",".join(self.upper) + "/" + ",".join(self.lower)
        return out

    __str__ = text

    def __repr__(self) -> str:
        return f"ColouredPartition({self.text()!r})"

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "blocks": [list(b) for b in self.blocks()],
            "upper": list(self.upper),
            "lower": list(self.lower),
        }

    def block_labels(self) -> list[int]:
        return sorted(set(self.labels))

    def block_points(self, label: int) -> tuple[list[int], list[int]]:
        """Upper and lower 0-based row positions of the block with the given label."""
        up = [i for i in range(self.k) if self.labels[i] == label]
        low = [j for j in range(self.l) if self.labels[self.k + j] == label]
        return up, low

    def block_partitions(self) -> list["ColouredPartition"]:
        """Each block as a standalone one-block partition keeping rows and colours."""
        out = []
        for lab in self.block_labels():
            up, low = self.block_points(lab)
            out.append(
                one_block([self.upper[i] for i in up], [self.lower[j] for j in low])
            )
        return out


def one_block(upper: Sequence[str], lower: Sequence[str]) -> ColouredPartition:
    """The one-block partition pi(upper, lower)."""
    k, l = len(upper), len(lower)
    return ColouredPartition(Partition(k, l, (0,) * (k + l)), tuple(upper), tuple(lower))


def identity(colour: str = DEFAULT_COLOUR) -> ColouredPartition:
    return one_block([colour], [colour])


def empty_partition() -> ColouredPartition:
    return ColouredPartition(Partition(0, 0, ()), (), ())


def new_partition(k: int, l: int, blocks, upper=None, lower=None) -> ColouredPartition:
    """Validated constructor from 1-based blocks and optional colour words."""
    part = Partition.from_blocks(k, l, blocks)
    upper = tuple(upper) if upper is not None else (DEFAULT_COLOUR,) * k
    lower = tuple(lower) if lower is not None else (DEFAULT_COLOUR,) * l
    return ColouredPartition(part, upper, lower)


# -- category operations --------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class CompositionResult:
    result: ColouredPartition
    loops: int


def tensor(p: ColouredPartition, q: ColouredPartition) -> ColouredPartition:
    """Horizontal concatenation p (x) q."""
    shift = p.num_blocks
    lp, lq = p.labels, q.labels
    labels = (
        lp[: p.k] + tuple(b + shift for b in lq[: q.k]) + lp[p.k:] + tuple(b + shift for b in lq[q.k:])
    )
    return ColouredPartition(
        Partition(p.k + q.k, p.l + q.l, canonical_labels(labels)),
        p.upper + q.upper,
        p.lower + q.lower,
    )


def tensor_all(parts: Iterable[ColouredPartition]) -> ColouredPartition:
    out = empty_partition()
    for p in parts:
        out = tensor(out, p)
    return out


def compose(q: ColouredPartition, p: ColouredPartition, check_colours: bool = True) -> CompositionResult:
    """Vertical concatenation qp: p on top, continued by q below.

    Returns the composite with its loops removed and the number of loops.
    """
    if p.l != q.k:
        raise ShapeMismatch(f"cannot compose: p has {p.l} lower points, q has {q.k} upper points")
    if check_colours and p.lower != q.upper:
        raise ColourMismatch(f"lower word {p.lower} of p does not match upper word {q.upper} of q")
    k, mid, m = p.k, p.l, q.l
    n = k + mid + m
    uf = _UnionFind(n)
    first: dict[int, int] = {}
    for i, lab in enumerate(p.labels):
        if lab in first:
            uf.union(first[lab], i)
        else:
            first[lab] = i
    first = {}
    for j, lab in enumerate(q.labels):
        node = k + j
        if lab in first:
            uf.union(first[lab], node)
        else:
            first[lab] = node
    roots = [uf.find(i) for i in range(n)]
    outer_roots = set(roots[:k]) | set(roots[k + mid:])
    loops = len({r for r in roots[k: k + mid] if r not in outer_roots})
    labels = roots[:k] + roots[k + mid:]
    result = ColouredPartition(Partition(k, m, canonical_labels(labels)), p.upper, q.lower)
    return CompositionResult(result, loops)


def adjoint(p: ColouredPartition) -> ColouredPartition:
    """Reflection in a horizontal line."""
    labels = p.labels[p.k:] + p.labels[: p.k]
    return ColouredPartition(Partition(p.l, p.k, canonical_labels(labels)), p.lower, p.upper)


CORNERS = ("upper-left", "lower-left", "upper-right", "lower-right")


def rotate(p: ColouredPartition, corner: str, colours: ColourSet | None = None) -> ColouredPartition:
    """Move the point at ``corner`` to the other row, conjugating its colour.

    ``upper-left`` sends the leftmost upper point to the left end of the lower
    row, ``lower-left`` does the converse, and likewise on the right. With
    ``colours=None`` every colour is treated as self-conjugate.
    """
    conj = (lambda c: c) if colours is None else colours.conj
    up_lab = list(p.labels[: p.k])
    low_lab = list(p.labels[p.k:])
    up_col, low_col = list(p.upper), list(p.lower)
    if corner == "upper-left":
        if not up_lab:
            raise EmptyRow("no upper point to rotate")
        low_lab.insert(0, up_lab.pop(0))
        low_col.insert(0, conj(up_col.pop(0)))
    elif corner == "lower-left":
        if not low_lab:
            raise EmptyRow("no lower point to rotate")
        up_lab.insert(0, low_lab.pop(0))
        up_col.insert(0, conj(low_col.pop(0)))
    elif corner == "upper-right":
        if not up_lab:
            raise EmptyRow("no upper point to rotate")
        low_lab.append(up_lab.pop())
        low_col.append(conj(up_col.pop()))
    elif corner == "lower-right":
        if not low_lab:
            raise EmptyRow("no lower point to rotate")
        up_lab.append(low_lab.pop())
        up_col.append(conj(low_col.pop()))
    else:
        raise ValueError(f"unknown corner {corner!r}; expected one of {CORNERS}")
    return ColouredPartition(
        Partition(len(up_lab), len(low_lab), canonical_labels(up_lab + low_lab)),
        tuple(up_col),
        tuple(low_col),
    )


INVERSE_CORNER = {
    "upper-left": "lower-left",
    "lower-left": "upper-left",
    "upper-right": "lower-right",
    "lower-right": "upper-right",
}


def rotate_to_lower(p: ColouredPartition, colours: ColourSet | None = None) -> ColouredPartition:
    """Rotate every upper point down on the left, giving a partition of type (0, k+l)."""
    while p.k:
        p = rotate(p, "upper-left", colours)
    return p


def rotate_from_lower(p: ColouredPartition, k: int, colours: ColourSet | None = None) -> ColouredPartition:
    """Inverse of :func:`rotate_to_lower`: lift the k leftmost lower points back up."""
    for _ in range(k):
        p = rotate(p, "lower-left", colours)
    return p


def is_noncrossing(p: ColouredPartition) -> bool:
    return p.is_noncrossing()


def num_blocks(p: ColouredPartition) -> int:
    return p.num_blocks


def through_blocks(p: ColouredPartition) -> int:
    return p.through_blocks


# -- enumeration --------------------------------------------------------------------

PREDICATES = ("all", "noncrossing", "pair", "noncrossing-pair")


def restricted_growth_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted-growth sequences of length n in lexicographic order."""
    if n == 0:
        yield ()
        return
    seq = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(seq)
            return
        for v in range(top + 2):
            seq[i] = v
            yield from rec(i + 1, max(top, v))

    seq[0] = 0
    yield from rec(1, 0)


def _is_pair(labels: Sequence[int]) -> bool:
    counts: dict[int, int] = defaultdict(int)
    for lab in labels:
        counts[lab] += 1
    return all(c == 2 for c in counts.values())


def enumerate_partitions(
    k: int,
    l: int,
    predicate: str = "all",
    upper: Sequence[str] | None = None,
    lower: Sequence[str] | None = None,
    limit: int = MAX_POINTS,
) -> Iterator[ColouredPartition]:
    """Every partition of type (k, l) satisfying ``predicate``, in canonical order."""
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    n = k + l
    if n > limit:
        raise LimitExceeded(f"{n} points exceeds the limit {limit}")
    upper = tuple(upper) if upper is not None else (DEFAULT_COLOUR,) * k
    lower = tuple(lower) if lower is not None else (DEFAULT_COLOUR,) * l
    if len(upper) != k or len(lower) != l:
        raise WordLengthMismatch("colour words do not match (k, l)")
    pair = predicate in ("pair", "noncrossing-pair")
    nc = predicate in ("noncrossing", "noncrossing-pair")
    if pair and n % 2:
        return
    for labels in restricted_growth_sequences(n):
        if pair and not _is_pair(labels):
            continue
        part = Partition(k, l, labels)
        if nc and not part.is_noncrossing():
            continue
        yield ColouredPartition(part, upper, lower)


def enumerate_coloured(
    k: int, l: int, colours: ColourSet, predicate: str = "all", limit: int = MAX_POINTS
) -> Iterator[ColouredPartition]:
    """Every partition of type (k, l) under every colouring by ``colours``."""
    shapes = list(enumerate_partitions(k, l, predicate, limit=limit))
    for word in itertools.product(colours.colours, repeat=k + l):
        for p in shapes:
            yield ColouredPartition(p.partition, word[:k], word[k:])
