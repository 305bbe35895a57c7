"""
Projective partitions and the combinatorics of their tensor products.

Representations are handled as labels only: a projective partition stands
for its subrepresentation, equivalence of projectives stands for unitary
equivalence, and tensor products are computed by inserting mixing
partitions between the through-block halves of two projectives.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections import Counter
from typing import Iterator, Sequence

from .categories import Category, GeneratedCategory, Membership
from .errors import NotProjective, UnknownAtBound
from .fusion import FusionSet, format_sum, format_word
from .partitions import (
    ColouredPartition,
    Partition,
    adjoint,
    canonical_labels,
    compose,
    empty_partition,
    one_block,
    tensor,
    tensor_all,
)

Word = tuple[str, ...]


def _member(c: Category, p: ColouredPartition) -> bool:
    verdict = c.contains(p)
    if verdict is Membership.UNKNOWN:
        raise UnknownAtBound(f"membership of {p.text()} is not decided by the generated category's bound")
    return verdict is Membership.YES


# -- projective partitions --------------------------------------------------------------------


def is_projective(p: ColouredPartition) -> bool:
    """pp = p = p*, with loops discarded."""
    if p.k != p.l or p.upper != p.lower:
        return False
    if adjoint(p) != p:
        return False
    return compose(p, p).result == p


def through_order(p: ColouredPartition) -> list[int]:
    """Labels of the through-blocks ordered by their leftmost upper point."""
    lower = set(p.labels[p.k:])
    seen: list[int] = []
    for lab in p.labels[: p.k]:
        if lab in lower and lab not in seen:
            seen.append(lab)
    return seen


@dataclasses.dataclass(frozen=True)
class ThroughDecomposition:
    """The upper half of a projective partition, with one lower point per through-block."""

    p_u: ColouredPartition

    @property
    def t(self) -> int:
        return self.p_u.l


def through_decomposition(p: ColouredPartition, x0: str) -> ThroughDecomposition:
    if not is_projective(p):
        raise NotProjective(f"{p.text()} is not projective")
    order = through_order(p)
    labels = list(p.labels[: p.k]) + order
    p_u = ColouredPartition(
        Partition(p.k, len(order), canonical_labels(labels)), p.upper, (x0,) * len(order)
    )
    if compose(adjoint(p_u), p_u).result != p:
        raise NotProjective(f"{p.text()} does not factor through its upper half")
    return ThroughDecomposition(p_u)


def proj_enumerate(c: Category, word: Sequence[str]) -> list[ColouredPartition]:
    return [p for p in c.members(word, word) if is_projective(p)]


def _witness_ok(r: ColouredPartition, p: ColouredPartition, q: ColouredPartition) -> bool:
    return compose(adjoint(r), r).result == p and compose(r, adjoint(r)).result == q


def equivalent(p: ColouredPartition, q: ColouredPartition, c: Category, max_points: int = 10) -> bool:
    """Whether some r in c has r*r = p and rr* = q.

    The candidate q_u* p_u is tried first; otherwise c(w_p, w_q) is searched.
    """
    for x in (p, q):
        if not is_projective(x):
            raise NotProjective(f"{x.text()} is not projective")
    if p == q:
        return True
    if p.through_blocks == q.through_blocks:
        x0 = c.x0
        pu = through_decomposition(p, x0).p_u
        qu = through_decomposition(q, x0).p_u
        r = compose(adjoint(qu), pu).result
        if _witness_ok(r, p, q) and c.contains(r) is Membership.YES:
            return True
    if isinstance(c, GeneratedCategory):
        raise UnknownAtBound("equivalence in a generated category is only decided by an explicit witness")
    if p.k + q.k > max_points:
        raise UnknownAtBound(f"search over {p.k + q.k} points exceeds the limit {max_points}")
    return any(_witness_ok(r, p, q) for r in c.members(p.upper, q.upper))


# -- mixing partitions ---------------------------------------------------------------------------------


def _mixing_from_matching(k: int, l: int, matching: dict[int, tuple[int, bool]], colour: str) -> ColouredPartition:
    n = k + l
    labels = list(range(n)) + list(range(n))
    for a, (b, joined) in matching.items():
        labels[b] = a
        labels[n + a] = a if joined else n + a
        labels[n + b] = labels[n + a]
    return ColouredPartition(Partition(n, n, canonical_labels(labels)), (colour,) * n, (colour,) * n)


def enumerate_mixing(k: int, l: int, colour: str = "x") -> list[ColouredPartition]:
    """(k, l)-mixing partitions other than the identity.

    Such a partition pairs some left strings a <= k with right strings b > k;
    each pair is either two caps (a, b), (a', b') or one block (a, a', b, b').
    """
    out = []

    def rec(a: int, used: frozenset, matching: dict):
        if a == k:
            if matching:
                out.append(_mixing_from_matching(k, l, dict(matching), colour))
            return
        rec(a + 1, used, matching)
        for b in range(k, k + l):
            if b in used:
                continue
            for joined in (False, True):
                matching[a] = (b, joined)
                rec(a + 1, used | {b}, matching)
                del matching[a]

    rec(0, frozenset(), {})
    return sorted(set(out))


def nested_caps(k: int, colour: str = "x") -> ColouredPartition:
    """Point i joined to point 2k-i+1 in each row."""
    labels = [min(i, 2 * k - 1 - i) for i in range(2 * k)]
    labels += [k + x for x in labels]
    return ColouredPartition(Partition(2 * k, 2 * k, canonical_labels(labels)), (colour,) * (2 * k), (colour,) * (2 * k))


def nested_caps_joined(k: int, colour: str = "x") -> ColouredPartition:
    """nested_caps with the outermost upper and lower caps merged into one block."""
    labels = [min(i, 2 * k - 1 - i) for i in range(2 * k)]
    labels += [k + x if x else 0 for x in labels]
    return ColouredPartition(Partition(2 * k, 2 * k, canonical_labels(labels)), (colour,) * (2 * k), (colour,) * (2 * k))


def _strands(n: int, colour: str) -> ColouredPartition:
    return tensor_all([one_block([colour], [colour])] * n)


def mix(p: ColouredPartition, q: ColouredPartition, h: ColouredPartition, x0: str) -> ColouredPartition:
    """(p_u* (x) q_u*) h (p_u (x) q_u), loops discarded."""
    upper = tensor(through_decomposition(p, x0).p_u, through_decomposition(q, x0).p_u)
    middle = compose(h, upper).result
    return compose(adjoint(upper), middle).result


def square_product(p, q, k: int, x0: str) -> ColouredPartition:
    h = tensor_all([_strands(p.through_blocks - k, x0), nested_caps(k, x0), _strands(q.through_blocks - k, x0)])
    return mix(p, q, h, x0)


def box_product(p, q, k: int, x0: str) -> ColouredPartition:
    h = tensor_all([_strands(p.through_blocks - k, x0), nested_caps_joined(k, x0), _strands(q.through_blocks - k, x0)])
    return mix(p, q, h, x0)


# -- labels ----------------------------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True, order=True)
class RepLabel:
    """An equivalence class of projective partitions.

    ``word`` spells the class in one-block letters when that decomposition
    was verified; otherwise ``word`` is None and ``representative`` is the
    projective partition itself.
    """

    word: Word | None
    representative: ColouredPartition = dataclasses.field(compare=False)
    raw: ColouredPartition | None = None

    def text(self) -> str:
        if self.word is not None:
            return "u[" + " ".join(self.word) + "]" if self.word else "u[]"
        return f"u[{self.raw.text()}]"

    def to_json(self) -> dict:
        return {"word": list(self.word) if self.word is not None else None, "representative": self.representative.to_json()}


class ClassIndex:
    """Equivalence classes of one-block projectives of a category, discovered on demand."""

    def __init__(self, c: Category, bound: int = 8):
        self.c = c
        self.bound = bound
        self.reps: list[Word] = []
        self.names: list[str] = []

    def letter(self, word: Word) -> str:
        if not _member(self.c, one_block(word, word)):
            raise NotProjective(f"one-block partition on {word} is not in the category")
        for rep, name in zip(self.reps, self.names):
            if _member(self.c, one_block(word, rep)):
                return name
        self.reps.append(tuple(word))
        self.names.append(".".join(word))
        return self.names[-1]

    def representative(self, name: str) -> ColouredPartition:
        rep = self.reps[self.names.index(name)]
        return one_block(rep, rep)

    def scan(self) -> None:
        """Visit every one-block projective with at most ``bound`` points."""
        colours = self.c.colours.colours
        for n in range(1, self.bound // 2 + 1):
            for word in itertools.product(colours, repeat=n):
                if _member(self.c, one_block(word, word)):
                    self.letter(word)


class Labeller:
    def __init__(self, c: Category, bound: int = 8):
        self.c = c
        self.classes = ClassIndex(c, bound)

    def label(self, p: ColouredPartition) -> RepLabel:
        """Word label from the through-blocks of p, verified by an explicit witness in c."""
        order = through_order(p)
        pieces = [tuple(p.upper[i] for i in range(p.k) if p.labels[i] == lab) for lab in order]
        labels = list(p.labels[: p.k])
        low: list[int] = []
        for lab, piece in zip(order, pieces):
            low += [lab] * len(piece)
        lower_word = tuple(itertools.chain.from_iterable(pieces))
        r = ColouredPartition(Partition(p.k, len(low), canonical_labels(labels + low)), p.upper, lower_word)
        target = tensor_all([one_block(w, w) for w in pieces])
        if _member(self.c, r) and _witness_ok(r, p, target):
            word = tuple(self.classes.letter(w) for w in pieces)
            rep = tensor_all([self.classes.representative(x) for x in word]) if word else empty_partition()
            return RepLabel(word, rep, None)
        return RepLabel(None, p, p)


# -- fusion rules ----------------------------------------------------------------------------------------------


@dataclasses.dataclass
class FusionResult:
    terms: Counter
    collisions: list[tuple[ColouredPartition, int]] = dataclasses.field(default_factory=list)

    def words(self) -> Counter:
        out: Counter = Counter()
        for lab, m in self.terms.items():
            out[lab.word] += m
        return out

    def text(self, lhs: str) -> str:
        parts = []
        for lab in sorted(self.terms, key=lambda x: (x.word is None, -len(x.word or ()), x.word or (), x.raw.text() if x.raw else "")):
            m = self.terms[lab]
            parts.append((f"{m}*" if m != 1 else "") + lab.text())
        return f"{lhs} = " + (" + ".join(parts) if parts else "0")


def _require_in(c: Category, p: ColouredPartition):
    if not is_projective(p):
        raise NotProjective(f"{p.text()} is not projective")
    if not _member(c, p):
        raise NotProjective(f"{p.text()} is not in the category")


def fuse_noncrossing(p: ColouredPartition, q: ColouredPartition, c: Category, labeller: Labeller | None = None) -> FusionResult:
    _require_in(c, p)
    _require_in(c, q)
    labeller = labeller or Labeller(c)
    x0 = c.x0
    out: Counter = Counter()
    candidates = [tensor(p, q)]
    for k in range(1, min(p.through_blocks, q.through_blocks) + 1):
        candidates.append(square_product(p, q, k, x0))
        candidates.append(box_product(p, q, k, x0))
    for r in candidates:
        if _member(c, r):
            out[labeller.label(r)] += 1
    return FusionResult(out)


def fuse_general(p: ColouredPartition, q: ColouredPartition, c: Category, labeller: Labeller | None = None) -> FusionResult:
    _require_in(c, p)
    _require_in(c, q)
    labeller = labeller or Labeller(c)
    x0 = c.x0
    out: Counter = Counter()
    seen: Counter = Counter()
    candidates = [tensor(p, q)] + [mix(p, q, h, x0) for h in enumerate_mixing(p.through_blocks, q.through_blocks, x0)]
    for r in candidates:
        if _member(c, r):
            seen[r] += 1
            out[labeller.label(r)] += 1
    collisions = sorted((r, m) for r, m in seen.items() if m > 1)
    return FusionResult(out, collisions)


def same_decomposition(a: FusionResult, b: FusionResult) -> bool:
    return a.terms == b.terms


# -- the fusion set of one-block projectives -------------------------------------------------------------------


def one_block_fusion_set(c: Category, bound: int = 8) -> tuple[FusionSet, ClassIndex]:
    """Classes of one-block projectives with at most ``bound`` points, with the
    upside-down rotation as conjugation and the joined-middle product as fusion."""
    index = ClassIndex(c, bound)
    index.scan()
    conj_word = c.colours.conj_word
    names = list(index.names)
    conj = {}
    table = {}
    for name, rep in zip(names, list(index.reps)):
        conj[name] = index.letter(conj_word(rep))
    for (a, ra), (b, rb) in itertools.product(zip(names, list(index.reps)), repeat=2):
        w = ra + rb
        table[(a, b)] = index.letter(w) if _member(c, one_block(w, w)) else None
    if index.names != names:
        raise UnknownAtBound("products of one-block classes leave the enumerated range")
    return FusionSet(names, conj, table), index


def word_partition(index: ClassIndex, word: Sequence[str]) -> ColouredPartition:
    return tensor_all([index.representative(x) for x in word]) if word else empty_partition()


def bridge_check(c: Category, max_len: int = 3, bound: int = 8) -> Iterator[tuple[Word, Word, Counter, Counter]]:
    """Yield (v, w, partition-side words, semiring words) for every pair of words
    of length <= max_len over the one-block letters of c."""
    from .fusion import word_tensor

    s, index = one_block_fusion_set(c, bound)
    labeller = Labeller(c, bound)
    labeller.classes = index
    words = [w for n in range(max_len + 1) for w in itertools.product(s.elements, repeat=n)]
    for v, w in itertools.product(words, repeat=2):
        lhs = fuse_noncrossing(word_partition(index, v), word_partition(index, w), c, labeller).words()
        rhs = word_tensor(v, w, s)
        yield v, w, lhs, rhs


def format_fusion_row(v: Word, w: Word, terms: Counter, joiner: str = "") -> str:
    return f"{format_word(v, joiner)}⊗{format_word(w, joiner)} = {format_sum(terms, joiner)}"
