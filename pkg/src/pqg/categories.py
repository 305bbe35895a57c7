"""
Categories of coloured partitions as membership oracles.

Builtin families decide membership exactly from a defining predicate.
Generated categories are computed by bounded saturation and can only answer
``YES`` or ``UNKNOWN``: a partition missing from the saturated set might still
be reachable through intermediates larger than the bound.

Saturation works on the "all-lower" form of a partition (every point rotated
to the lower row, which is a bijection), where the category operations become

* cyclic rotation of the point sequence (colours unchanged),
* reflection: reverse the sequence and conjugate every colour,
* tensor product: concatenation,
* composition: tensor product followed by contractions, where two adjacent
  points of conjugate colours are capped off and their blocks merged.

Elements are stored as canonical representatives of their orbit under
rotations and reflections.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from typing import Iterator, Sequence

from .errors import BoundTooSmall, NonAssociativeFusionSet, UnknownColour
from .groups import FiniteGroup
from .partitions import (
    ColouredPartition,
    ColourSet,
    Partition,
    canonical_labels,
    enumerate_partitions,
    one_block,
    rotate_from_lower,
    rotate_to_lower,
)


class Membership(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown-at-bound"

    def __bool__(self) -> bool:
        return self is Membership.YES


def _verdict(flag: bool) -> Membership:
    return Membership.YES if flag else Membership.NO


# -- all-lower sequences --------------------------------------------------------------

Seq = tuple[tuple[int, ...], tuple[str, ...]]


def to_sequence(p: ColouredPartition, colours: ColourSet) -> Seq:
    q = rotate_to_lower(p, colours)
    return q.labels, q.lower


def from_sequence(seq: Seq, k: int = 0, colours: ColourSet | None = None) -> ColouredPartition:
    labels, cols = seq
    n = len(labels)
    p = ColouredPartition(Partition(0, n, canonical_labels(labels)), (), tuple(cols))
    return rotate_from_lower(p, k, colours) if k else p


def _rotations(seq: Seq) -> Iterator[Seq]:
    labels, cols = seq
    n = len(labels)
    for r in range(max(n, 1)):
        yield canonical_labels(labels[r:] + labels[:r]), cols[r:] + cols[:r]


def _reflect(seq: Seq, conj) -> Seq:
    labels, cols = seq
    return canonical_labels(labels[::-1]), tuple(conj(c) for c in reversed(cols))


def dihedral_images(seq: Seq, conj) -> set[Seq]:
    return set(_rotations(seq)) | set(_rotations(_reflect(seq, conj)))


def dihedral_canonical(seq: Seq, conj) -> Seq:
    return min(dihedral_images(seq, conj))


def contract(seq: Seq, i: int) -> Seq:
    """Cap off the cyclically adjacent positions i and i+1 (merging their blocks)."""
    labels, cols = seq
    n = len(labels)
    j = (i + 1) % n
    a, b = labels[i], labels[j]
    merged = [a if lab == b else lab for lab in labels]
    keep = [t for t in range(n) if t not in (i, j)]
    return canonical_labels([merged[t] for t in keep]), tuple(cols[t] for t in keep)


def insert(seq: Seq, gap: int, piece: Seq) -> Seq:
    """Place ``piece`` between positions gap-1 and gap (a tensor product up to rotation)."""
    labels, cols = seq
    shift = max(labels, default=-1) + 1
    plabels, pcols = piece
    new_labels = labels[:gap] + tuple(b + shift for b in plabels) + labels[gap:]
    return canonical_labels(new_labels), cols[:gap] + pcols + cols[gap:]


# -- base class -----------------------------------------------------------------------------


class Category:
    """Membership oracle for a category of partitions coloured by ``colours``."""

    colours: ColourSet
    noncrossing: bool = False

    def contains(self, p: ColouredPartition) -> Membership:
        for c in p.colours:
            if c not in self.colours:
                return Membership.NO
        return self._contains(p)

    def _contains(self, p: ColouredPartition) -> Membership:
        raise NotImplementedError

    def __contains__(self, p: ColouredPartition) -> bool:
        return self.contains(p) is Membership.YES

    def descriptor(self) -> dict:
        raise NotImplementedError

    @property
    def x0(self) -> str:
        return self.colours.colours[0]

    def lower_members(self, n: int) -> Iterator[ColouredPartition]:
        """Known members of type (0, n)."""
        predicate = "noncrossing" if self.noncrossing else "all"
        shapes = list(enumerate_partitions(0, n, predicate, limit=max(n, 1)))
        for word in itertools.product(self.colours.colours, repeat=n):
            for s in shapes:
                p = ColouredPartition(s.partition, (), word)
                if self.contains(p) is Membership.YES:
                    yield p

    def members(self, upper: Sequence[str], lower: Sequence[str]) -> list[ColouredPartition]:
        """Known members of C(upper, lower) in canonical order."""
        predicate = "noncrossing" if self.noncrossing else "all"
        out = []
        for p in enumerate_partitions(len(upper), len(lower), predicate, upper, lower, limit=len(upper) + len(lower)):
            if self.contains(p) is Membership.YES:
                out.append(p)
        return out


class BuiltinCategory(Category):
    tag = "builtin"

    def __init__(self, colours: ColourSet):
        self.colours = colours

    def _contains(self, p):
        if self.noncrossing and not p.is_noncrossing():
            return Membership.NO
        return _verdict(self._member(p))

    def _member(self, p: ColouredPartition) -> bool:
        raise NotImplementedError

    def descriptor(self) -> dict:
        return {"kind": "builtin", "tag": self.tag}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.colours)})"


class AllPartitions(BuiltinCategory):
    tag = "ALL"

    def _member(self, p):
        return True


class NoncrossingPartitions(BuiltinCategory):
    tag = "NC"
    noncrossing = True

    def _member(self, p):
        return True


def _is_rotated_identity(up: Sequence[str], low: Sequence[str], conj) -> bool:
    """Is the two-point block (upper colours ``up``, lower ``low``) a rotation of an identity?"""
    if len(up) + len(low) != 2:
        return False
    if len(up) == 1:
        return up[0] == low[0]
    pair = tuple(up) or tuple(low)
    return pair[1] == conj(pair[0])


class NoncrossingPairs(BuiltinCategory):
    """Noncrossing pair partitions whose pairs are rotated identities."""

    tag = "NC2"
    noncrossing = True

    def _member(self, p):
        for lab in p.block_labels():
            up, low = p.block_points(lab)
            if not _is_rotated_identity([p.upper[i] for i in up], [p.lower[j] for j in low], self.colours.conj):
                return False
        return True


class GroupBlockCategory(BuiltinCategory):
    """Noncrossing partitions coloured by a symmetric generating subset of a finite group,
    in which each block has equal upper and lower colour products."""

    tag = "C_gamma0"
    noncrossing = True

    def __init__(self, group: FiniteGroup, subset: Sequence[str] | None = None):
        subset = list(group.names if subset is None else subset)
        if group.identity_name not in subset:
            raise ValueError("the generating subset must contain the identity")
        if any(group.inv_name(g) not in subset for g in subset):
            raise ValueError("the generating subset must be symmetric")
        super().__init__(ColourSet.from_mapping({g: group.inv_name(g) for g in subset}))
        self.group = group

    def _member(self, p):
        for lab in p.block_labels():
            up, low = p.block_points(lab)
            if self.group.product_of([p.upper[i] for i in up]) != self.group.product_of([p.lower[j] for j in low]):
                return False
        return True

    def descriptor(self):
        return {"kind": "builtin", "tag": self.tag, "group": self.group.to_json(), "subset": list(self.colours)}


WHITE, BLACK = "w", "b"


class ModularBalanceCategory(BuiltinCategory):
    """Two conjugate colours; per block, (#white - #black) agrees on both rows modulo s.

    Crossings are allowed.
    """

    tag = "C_s_ab"

    def __init__(self, s: int):
        if s < 1:
            raise ValueError("s must be at least 1")
        super().__init__(ColourSet((WHITE, BLACK), (BLACK, WHITE)))
        self.s = s

    def _member(self, p):
        for lab in p.block_labels():
            up, low = p.block_points(lab)
            top = sum(1 if p.upper[i] == WHITE else -1 for i in up)
            bottom = sum(1 if p.lower[j] == WHITE else -1 for j in low)
            if (top - bottom) % self.s:
                return False
        return True

    def descriptor(self):
        return {"kind": "builtin", "tag": self.tag, "s": self.s}


class FusionSetCategory(BuiltinCategory):
    """The category attached to an associative fusion set.

    Members are noncrossing; a block coloured inside H(S) must be f-invariant,
    and a block containing a colour outside H(S) must be a rotated identity.
    """

    tag = "C_S"
    noncrossing = True

    def __init__(self, fusion_set):
        if not fusion_set.is_associative():
            raise NonAssociativeFusionSet("C_S needs an associative fusion set")
        super().__init__(ColourSet.from_mapping(fusion_set.conj))
        self.fusion_set = fusion_set
        self.h_part = set(fusion_set.h_part())
        self._units = {fusion_set.fuse(fusion_set.conj[x], x) for x in fusion_set.elements} - {None}

    def block_ok(self, up: Sequence[str], low: Sequence[str]) -> bool:
        if any(c not in self.h_part for c in itertools.chain(up, low)):
            return _is_rotated_identity(up, low, self.colours.conj)
        f = self.fusion_set.fold
        if up and low:
            value = f(up)
            return value is not None and value == f(low)
        return f(up or low) in self._units

    def _member(self, p):
        for lab in p.block_labels():
            up, low = p.block_points(lab)
            if not self.block_ok([p.upper[i] for i in up], [p.lower[j] for j in low]):
                return False
        return True

    def descriptor(self):
        return {"kind": "builtin", "tag": self.tag, "fusion_set": self.fusion_set.to_json()}


class FreeProductCategory(Category):
    """Category generated inside NC by two categories on disjoint colour sets.

    A partition belongs to it when no block mixes the two colour families and it
    can be taken apart by repeatedly removing a cyclic interval of whole
    single-family blocks that lies in the corresponding factor.
    """

    tag = "free_product"
    noncrossing = True

    def __init__(self, first: Category, second: Category):
        self.first, self.second = first, second
        self.colours = first.colours.union(second.colours)
        self._family = {c: 0 for c in first.colours} | {c: 1 for c in second.colours}
        self._memo: dict[Seq, Membership] = {}

    def descriptor(self):
        return {"kind": "builtin", "tag": self.tag, "factors": [self.first.descriptor(), self.second.descriptor()]}

    def _contains(self, p):
        if not p.is_noncrossing():
            return Membership.NO
        fam = self._family
        for lab in p.block_labels():
            up, low = p.block_points(lab)
            cols = [p.upper[i] for i in up] + [p.lower[j] for j in low]
            if len({fam[c] for c in cols}) > 1:
                return Membership.NO
        return self._peel(to_sequence(p, self.colours))

    def _peel(self, seq: Seq) -> Membership:
        labels, cols = seq
        n = len(labels)
        if n == 0:
            return Membership.YES
        if seq in self._memo:
            return self._memo[seq]
        factors = (self.first, self.second)
        result = Membership.NO
        for start in range(n):
            for length in range(1, n + 1):
                idx = [(start + t) % n for t in range(length)]
                inside = {labels[i] for i in idx}
                if any(labels[i] in inside for i in range(n) if i not in set(idx)):
                    continue
                families = {self._family[cols[i]] for i in idx}
                if len(families) != 1:
                    break
                piece = ColouredPartition(
                    Partition(0, length, canonical_labels([labels[i] for i in idx])), (), tuple(cols[i] for i in idx)
                )
                verdict = factors[families.pop()].contains(piece)
                if verdict is Membership.NO:
                    continue
                rest_idx = [i for i in range(n) if i not in set(idx)]
                rest = (canonical_labels([labels[i] for i in rest_idx]), tuple(cols[i] for i in rest_idx))
                sub = self._peel(rest)
                if verdict is Membership.YES and sub is Membership.YES:
                    self._memo[seq] = Membership.YES
                    return Membership.YES
                if Membership.UNKNOWN in (verdict, sub):
                    result = Membership.UNKNOWN
        self._memo[seq] = result
        return result


class AbelianizedCategory(Category):
    """A category with every (x, y)-crossing added.

    Crossings permute points within a row, so membership is decided by asking
    whether some rearrangement of the two rows lands in the original category.
    """

    tag = "abelianize"

    def __init__(self, base: Category, max_points: int = 8):
        self.base = base
        self.colours = base.colours
        self.max_points = max_points

    def descriptor(self):
        return {"kind": "builtin", "tag": self.tag, "base": self.base.descriptor()}

    def _contains(self, p):
        if p.size > self.max_points:
            return Membership.UNKNOWN
        seen = set()
        result = Membership.NO
        upper_idx, lower_idx = range(p.k), range(p.k, p.size)
        for up in itertools.permutations(upper_idx):
            for low in itertools.permutations(lower_idx):
                order = up + low
                key = (tuple(p.labels[i] for i in order), tuple(p.colours[i] for i in order))
                key = (canonical_labels(key[0]), key[1])
                if key in seen:
                    continue
                seen.add(key)
                q = ColouredPartition(Partition(p.k, p.l, key[0]), key[1][: p.k], key[1][p.k:])
                verdict = self.base.contains(q)
                if verdict is Membership.YES:
                    return verdict
                if verdict is Membership.UNKNOWN:
                    result = verdict
        return result


# -- generated categories -------------------------------------------------------------------


class GeneratedCategory(Category):
    """Bounded saturation of a generator list.

    ``bound`` limits the points of reported members, ``bound + slack`` the
    points of intermediates. Membership answers are ``YES`` or ``UNKNOWN``.
    """

    tag = "generated"

    def __init__(self, colours: ColourSet, generators: Sequence[ColouredPartition], bound: int, slack: int | None = None):
        self.colours = colours
        self.generators = list(generators)
        self.bound = bound
        self.slack = bound if slack is None else slack
        self.max_intermediate = bound + self.slack
        for g in self.generators:
            if g.size > bound:
                raise BoundTooSmall(f"generator {g.text()} has {g.size} points > bound {bound}")
            for c in g.colours:
                if c not in colours:
                    raise UnknownColour(c)
        self.noncrossing = all(g.is_noncrossing() for g in self.generators)
        self.elements: set[Seq] = set()
        self.complete = False
        self._saturate()

    def descriptor(self):
        return {
            "kind": "generated",
            "generators": [g.to_json() for g in self.generators],
            "bound": self.bound,
            "slack": self.slack,
        }

    def _saturate(self):
        conj = self.colours.conj
        pieces: set[Seq] = set()
        seeds: list[Seq] = [((0, 0), (conj(x), x)) for x in self.colours]
        seeds += [to_sequence(g, self.colours) for g in self.generators]
        for s in seeds:
            pieces |= dihedral_images(s, conj)
        pieces.discard(((), ()))
        pieces_by_size = sorted(pieces, key=lambda s: (len(s[0]), s))

        queue: deque[Seq] = deque()

        def add(seq: Seq):
            rep = dihedral_canonical(seq, conj)
            if rep not in self.elements:
                self.elements.add(rep)
                queue.append(rep)

        add(((), ()))
        for s in seeds:
            add(s)
        limit = self.max_intermediate
        while queue:
            seq = queue.popleft()
            labels, cols = seq
            n = len(labels)
            for i in range(n if n > 1 else 0):
                if cols[(i + 1) % n] == conj(cols[i]):
                    add(contract(seq, i))
            for piece in pieces_by_size:
                if n + len(piece[0]) > limit:
                    break
                for gap in range(max(n, 1)):
                    add(insert(seq, gap, piece))
        self.complete = True

    def _contains(self, p):
        if p.size <= self.bound:
            seq = to_sequence(p, self.colours)
            if dihedral_canonical(seq, self.colours.conj) in self.elements:
                return Membership.YES
        return Membership.UNKNOWN

    def member_sequences(self, max_points: int | None = None) -> list[Seq]:
        cap = self.bound if max_points is None else max_points
        return sorted(s for s in self.elements if len(s[0]) <= cap)

    def lower_members(self, n: int) -> Iterator[ColouredPartition]:
        if n > self.bound:
            return
        found = set()
        for rep in self.elements:
            if len(rep[0]) == n:
                found |= set(_rotations(rep)) | set(_rotations(_reflect(rep, self.colours.conj)))
        for labels, cols in sorted(found):
            yield ColouredPartition(Partition(0, n, labels), (), cols)

    def members(self, upper, lower):
        n = len(upper) + len(lower)
        out = []
        for q in self.lower_members(n):
            p = rotate_from_lower(q, len(upper), self.colours)
            if p.upper == tuple(upper) and p.lower == tuple(lower):
                out.append(p)
        return sorted(out, key=lambda p: p.sort_key())

    def __repr__(self) -> str:
        return f"GeneratedCategory({len(self.generators)} generators, bound={self.bound}, {len(self.elements)} orbits)"


# -- constructors ------------------------------------------------------------------------------


def builtin(tag: str, *args, colours: ColourSet | None = None, **kwargs) -> Category:
    """Build one of the builtin families by tag."""
    tag_u = tag.upper()
    if tag_u in ("ALL", "P"):
        return AllPartitions(colours or ColourSet.uncoloured())
    if tag_u == "NC":
        return NoncrossingPartitions(colours or ColourSet.uncoloured())
    if tag_u == "NC2":
        return NoncrossingPairs(colours or ColourSet.uncoloured())
    if tag_u == "C_GAMMA0":
        return GroupBlockCategory(*args, **kwargs)
    if tag_u == "C_S_AB":
        return ModularBalanceCategory(*args, **kwargs)
    if tag_u == "C_S":
        return FusionSetCategory(*args, **kwargs)
    if tag_u == "FREE_PRODUCT":
        return FreeProductCategory(*args, **kwargs)
    if tag_u == "ABELIANIZE":
        return AbelianizedCategory(*args, **kwargs)
    raise ValueError(f"unknown builtin tag {tag!r}")


def closure(
    generators: Sequence[ColouredPartition],
    bound: int,
    slack: int | None = None,
    colours: ColourSet | None = None,
) -> GeneratedCategory:
    """The category generated by ``generators`` (identities included), saturated up to the bound."""
    if colours is None:
        names = sorted({c for g in generators for c in g.colours} or {"x"})
        colours = ColourSet.self_conjugate(names)
    return GeneratedCategory(colours, generators, bound, slack)


def block_of_sequence(seq: Seq, label: int) -> ColouredPartition:
    labels, cols = seq
    return one_block([], [c for lab, c in zip(labels, cols) if lab == label])


def is_block_stable(c: Category, bound: int = 6) -> bool:
    """Does every block of every member with at most ``bound`` points lie in c?

    Blocks are checked in all-lower form, which commutes with block extraction.
    """
    cache: dict[ColouredPartition, bool] = {}
    for n in range(bound + 1):
        for p in c.lower_members(n):
            for block in p.block_partitions():
                if block not in cache:
                    cache[block] = c.contains(block) is Membership.YES
                if not cache[block]:
                    return False
    return True


def category_from_descriptor(data: dict, colours: ColourSet | None = None) -> Category:
    if data.get("kind") == "generated":
        gens = [ColouredPartition.from_json(g) for g in data["generators"]]
        return closure(gens, int(data["bound"]), data.get("slack"), colours)
    tag = data["tag"]
    if tag == "C_gamma0":
        group = FiniteGroup.from_json(data["group"])
        return GroupBlockCategory(group, data.get("subset"))
    if tag == "C_s_ab":
        return ModularBalanceCategory(int(data["s"]))
    if tag == "C_S":
        from .fusion import FusionSet

        return FusionSetCategory(FusionSet.from_json(data["fusion_set"]))
    if tag == "free_product":
        first, second = (category_from_descriptor(d) for d in data["factors"])
        return FreeProductCategory(first, second)
    if tag == "abelianize":
        return AbelianizedCategory(category_from_descriptor(data["base"]))
    return builtin(tag, colours=colours)
