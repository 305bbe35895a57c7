"""
Fusion sets, the free fusion semiring on their words, admissibility axioms,
classification into fusion triples and the inverse construction.

A fusion set is a finite set with an involution ``conj`` and a partial
product ``fuse(a, b)`` whose undefined value is represented by ``None``
(printed as ``"0"``). Words are tuples of element names; the empty word is
the unit of the semiring.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections import Counter
from typing import Iterable, Mapping, Sequence

from .errors import ConditionFails, NotAdmissible, PartitionError
from .groups import FiniteGroup, is_isomorphic, isomorphism

EMPTY = "0"
Word = tuple[str, ...]


class FusionSet:
    def __init__(self, elements: Sequence[str], conj: Mapping[str, str], table: Mapping[tuple[str, str], str | None]):
        self.elements = tuple(str(e) for e in elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate element names")
        if EMPTY in self.elements:
            raise ValueError(f"{EMPTY!r} is reserved for the empty product")
        self.conj = {str(a): str(b) for a, b in conj.items()}
        members = set(self.elements)
        for x in self.elements:
            if x not in self.conj or self.conj[x] not in members or self.conj[self.conj[x]] != x:
                raise ValueError(f"conjugation is not an involution at {x!r}")
        self.table: dict[tuple[str, str], str | None] = {}
        for a in self.elements:
            for b in self.elements:
                v = table.get((a, b))
                if v == EMPTY:
                    v = None
                if v is not None and v not in members:
                    raise ValueError(f"{a}*{b} = {v!r} is not an element")
                self.table[(a, b)] = v

    # -- construction --------------------------------------------------------

    @classmethod
    def from_rule(cls, elements: Sequence[str], conj: Mapping[str, str], rule) -> "FusionSet":
        return cls(elements, conj, {(a, b): rule(a, b) for a in elements for b in elements})

    @classmethod
    def from_json(cls, data: Mapping) -> "FusionSet":
        elements = list(data["elements"])
        rows = data["table"]
        table = {}
        for a, row in zip(elements, rows):
            for b, v in zip(elements, row):
                table[(a, b)] = None if v in (EMPTY, None) else v
        return cls(elements, data["conj"], table)

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "conj": {x: self.conj[x] for x in self.elements},
            "table": [[self.table[(a, b)] or EMPTY for b in self.elements] for a in self.elements],
        }

    def __repr__(self) -> str:
        return f"FusionSet({list(self.elements)})"

    def __len__(self) -> int:
        return len(self.elements)

    # -- operations ----------------------------------------------------------

    def fuse(self, a: str | None, b: str | None) -> str | None:
        if a is None or b is None:
            return None
        return self.table[(a, b)]

    def fold(self, word: Sequence[str]) -> str | None:
        """w1 * w2 * ... * wn folded from the left; None for the empty word or an empty product."""
        if not word:
            return None
        acc = word[0]
        for c in word[1:]:
            acc = self.fuse(acc, c)
            if acc is None:
                return None
        return acc

    def conj_word(self, word: Sequence[str]) -> Word:
        return tuple(self.conj[c] for c in reversed(word))

    # -- axioms --------------------------------------------------------------------

    def is_associative(self) -> bool:
        opts = list(self.elements)
        return all(
            self.fuse(self.fuse(a, b), c) == self.fuse(a, self.fuse(b, c))
            for a, b, c in itertools.product(opts, repeat=3)
        )

    def is_frobenius(self) -> bool:
        for x, y, z in itertools.product(self.elements, repeat=3):
            if (x == self.fuse(y, z)) != (self.fuse(self.conj[x], y) == self.conj[z]):
                return False
        return True

    def is_antisymmetric(self) -> bool:
        for x, y in itertools.product(self.elements, repeat=2):
            v = self.fuse(x, y)
            lhs = None if v is None else self.conj[v]
            if lhs != self.fuse(self.conj[y], self.conj[x]):
                return False
        return True

    def check_axioms(self) -> dict[str, bool]:
        return {
            "associative": self.is_associative(),
            "frobenius": self.is_frobenius(),
            "antisymmetric": self.is_antisymmetric(),
        }

    def is_admissible_candidate(self) -> bool:
        return all(self.check_axioms().values())

    # -- subsets -----------------------------------------------------------------------

    def h_part(self) -> list[str]:
        return [x for x in self.elements if self.fuse(self.conj[x], x) is not None]

    def restrict(self, subset: Iterable[str]) -> "FusionSet":
        keep = [x for x in self.elements if x in set(subset)]
        table = {(a, b): self.table[(a, b)] for a in keep for b in keep}
        return FusionSet(keep, {x: self.conj[x] for x in keep}, table)

    def renamed(self, mapping: Mapping[str, str]) -> "FusionSet":
        table = {
            (mapping[a], mapping[b]): (None if v is None else mapping[v]) for (a, b), v in self.table.items()
        }
        return FusionSet([mapping[x] for x in self.elements], {mapping[a]: mapping[b] for a, b in self.conj.items()}, table)


# -- standard examples ------------------------------------------------------------------


def orthogonal_set(name: str = "x") -> FusionSet:
    """One self-conjugate element with empty square."""
    return FusionSet([name], {name: name}, {})


def unitary_set(name: str = "x", bar: str = "xb") -> FusionSet:
    """Two mutually conjugate elements, every product empty."""
    return FusionSet([name, bar], {name: bar, bar: name}, {})


def idempotent_set(name: str = "x") -> FusionSet:
    """One self-conjugate element with x * x = x."""
    return FusionSet([name], {name: name}, {(name, name): name})


def group_set(group: FiniteGroup, prefix: str = "") -> FusionSet:
    names = [prefix + n for n in group.names]
    lookup = dict(zip(group.names, names))
    return FusionSet.from_rule(
        names,
        {lookup[g]: lookup[group.inv_name(g)] for g in group.names},
        lambda a, b: lookup[group.mul_names(a[len(prefix):], b[len(prefix):])],
    )


def groupoid_set(group: FiniteGroup, objects: int, prefix: str = "") -> FusionSet:
    """Connected groupoid with vertex group ``group`` on ``objects`` objects.

    Elements (i, g, j) compose as (i, g, j) * (j, h, k) = (i, gh, k).
    """

    def name(i, g, j):
        return f"{prefix}{i}.{g}.{j}"

    triples = [(i, g, j) for i in range(objects) for j in range(objects) for g in group.names]
    names = [name(*t) for t in triples]
    conj = {name(i, g, j): name(j, group.inv_name(g), i) for i, g, j in triples}
    table = {}
    for (i, g, j), (j2, h, k) in itertools.product(triples, repeat=2):
        table[(name(i, g, j), name(j2, h, k))] = name(i, group.mul_names(g, h), k) if j == j2 else None
    return FusionSet(names, conj, table)


def zigzag_set() -> FusionSet:
    """{x, xb, x*xb, xb*x}: two objects joined by a pair of inverse arrows, trivial vertex groups."""
    s = groupoid_set(FiniteGroup.trivial(), 2).renamed({"0.e.1": "x", "1.e.0": "xb", "0.e.0": "x.xb", "1.e.1": "xb.x"})
    return FusionSet(["x", "xb", "x.xb", "xb.x"], s.conj, s.table)


def disjoint_union(*sets: FusionSet) -> FusionSet:
    elements, conj, table = [], {}, {}
    for s in sets:
        clash = set(s.elements) & set(elements)
        if clash:
            raise ValueError(f"element names {sorted(clash)} appear twice")
        elements += s.elements
        conj.update(s.conj)
        table.update(s.table)
    return FusionSet(elements, conj, table)


# -- the free fusion semiring ------------------------------------------------------------------


def word_tensor(w: Sequence[str], v: Sequence[str], s: FusionSet) -> Counter:
    """w (x) v = sum over w = a z, v = conj(z) b of  a b + a*b."""
    w, v = tuple(w), tuple(v)
    out: Counter = Counter()
    for zlen in range(min(len(w), len(v)) + 1):
        a, z = w[: len(w) - zlen], w[len(w) - zlen:]
        if v[:zlen] != s.conj_word(z):
            continue
        b = v[zlen:]
        out[a + b] += 1
        if a and b:
            mid = s.fuse(a[-1], b[0])
            if mid is not None:
                out[a[:-1] + (mid,) + b[1:]] += 1
    return out


def semiring_tensor(x: Mapping[Word, int], y: Mapping[Word, int], s: FusionSet) -> Counter:
    out: Counter = Counter()
    for w, m in x.items():
        for v, n in y.items():
            for u, k in word_tensor(w, v, s).items():
                out[u] += m * n * k
    return out


def format_word(w: Sequence[str], joiner: str = "") -> str:
    return joiner.join(w) if w else "1"


def format_sum(terms: Mapping[Word, int], joiner: str = "") -> str:
    """Terms by decreasing length, then lexicographically; coefficients written as k*word."""
    parts = []
    for w in sorted(terms, key=lambda w: (-len(w), w)):
        c = terms[w]
        parts.append((f"{c}*" if c != 1 else "") + format_word(w, joiner))
    return " + ".join(parts) if parts else "0"


def lemma_inverse_check(s: FusionSet) -> bool:
    """(conj(y) * y) * z == z whenever y * z is defined."""
    for y, z in itertools.product(s.elements, repeat=2):
        if s.fuse(y, z) is not None:
            if s.fuse(s.fuse(s.conj[y], y), z) != z:
                return False
    return True


# -- structure of admissible fusion sets --------------------------------------------------------------


@dataclasses.dataclass
class DerivedSubsets:
    h_part: list[str]
    o_part: list[str]
    u_part: list[str]
    gamma: list[list[str]]
    gamma_prime: list[list[str]]
    lam: list[list[str]]
    z_part: list[str]
    lambda_of: dict[str, int]
    approx_classes: list[list[str]]
    components: list[list[int]]

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _require_admissible(s: FusionSet):
    axioms = s.check_axioms()
    failed = [k for k, v in axioms.items() if not v]
    if failed:
        raise NotAdmissible(f"fusion set fails: {', '.join(failed)}")


def derived_subsets(s: FusionSet) -> DerivedSubsets:
    _require_admissible(s)
    conj, fuse = s.conj, s.fuse
    h = s.h_part()
    o = [x for x in s.elements if x not in h and conj[x] == x]
    u = [x for x in s.elements if x not in h and conj[x] != x]
    gamma_elems = [x for x in h if fuse(x, conj[x]) == fuse(conj[x], x)]
    z = [x for x in h if x not in gamma_elems]

    # ~ classes: x ~ y iff x * conj(y) is defined
    groups: list[list[str]] = []
    for x in gamma_elems:
        for g in groups:
            if fuse(x, conj[g[0]]) is not None:
                g.append(x)
                break
        else:
            groups.append([x])

    def interacts(g: list[str]) -> bool:
        return any(fuse(x, y) is not None for x in g for y in z)

    gamma_prime = [g for g in groups if not interacts(g)]
    lam = [g for g in groups if interacts(g)]
    where = {x: i for i, g in enumerate(lam) for x in g}
    lambda_of = {x: where[fuse(x, conj[x])] for x in z}
    lam_elems = set(where)

    approx: list[list[str]] = []
    for x in z:
        for cls in approx:
            if fuse(x, conj[cls[0]]) in lam_elems:
                cls.append(x)
                break
        else:
            approx.append([x])

    # components of the relation i ~ j iff some y in Z has Lambda_y = i and Lambda_conj(y) = j
    parent = list(range(len(lam)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for y in z:
        a, b = find(lambda_of[y]), find(lambda_of[conj[y]])
        if a != b:
            parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for i in range(len(lam)):
        comps.setdefault(find(i), []).append(i)
    return DerivedSubsets(h, o, u, groups, gamma_prime, lam, z, lambda_of, approx, list(comps.values()))


def group_from_elements(s: FusionSet, elements: Sequence[str]) -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[s.fuse(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, list(elements))


@dataclasses.dataclass
class FusionTriple:
    n_o: int
    n_u: int
    components: list[tuple[FiniteGroup, int]]

    def sorted_components(self) -> list[tuple[FiniteGroup, int]]:
        return sorted(
            self.components,
            key=lambda c: (c[0].order, c[1], c[0].order_statistics(), c[0].name() or ""),
        )

    def to_json(self) -> dict:
        comps = []
        for g, n in self.sorted_components():
            label = g.name()
            comps.append({"group": label if label is not None else g.to_json(), "n": n})
        return {"nO": self.n_o, "nU": self.n_u, "components": comps}

    @classmethod
    def from_json(cls, data: Mapping) -> "FusionTriple":
        comps = [(FiniteGroup.from_json(c["group"]), int(c["n"])) for c in data.get("components", [])]
        return cls(int(data["nO"]), int(data["nU"]), comps)

    def __repr__(self) -> str:
        comps = ", ".join(f"({g.name() or g.order}, {n})" for g, n in self.sorted_components())
        return f"FusionTriple({self.n_o}, {self.n_u}, [{comps}])"


def classify(s: FusionSet) -> FusionTriple:
    d = derived_subsets(s)
    components: list[tuple[FiniteGroup, int]] = []
    for g in d.gamma_prime:
        components.append((group_from_elements(s, _identity_first(s, g)), 0))
    for comp in d.components:
        base = min(comp)
        group = group_from_elements(s, _identity_first(s, d.lam[base]))
        # approx classes whose Lambda_x is the base group; their number is the
        # number of objects minus one in the groupoid picture
        n = sum(1 for cls in d.approx_classes if d.lambda_of[cls[0]] == base)
        components.append((group, n))
    return FusionTriple(len(d.o_part), len(d.u_part) // 2, components)


def _identity_first(s: FusionSet, elements: Sequence[str]) -> list[str]:
    e = s.fuse(s.conj[elements[0]], elements[0])
    return [e] + [x for x in elements if x != e]


def realize(triple: FusionTriple) -> FusionSet:
    parts: list[FusionSet] = []
    for i in range(triple.n_o):
        parts.append(orthogonal_set(f"o{i}"))
    for i in range(triple.n_u):
        parts.append(unitary_set(f"u{i}", f"u{i}b"))
    for c, (group, n) in enumerate(triple.sorted_components()):
        if n == 0:
            parts.append(group_set(group, prefix=f"G{c}:"))
        else:
            parts.append(groupoid_set(group, n + 1, prefix=f"G{c}:"))
    return disjoint_union(*parts) if parts else FusionSet([], {}, {})


def triples_isomorphic(t1: FusionTriple, t2: FusionTriple) -> bool:
    if (t1.n_o, t1.n_u) != (t2.n_o, t2.n_u) or len(t1.components) != len(t2.components):
        return False
    remaining = list(t2.components)

    def match(i: int) -> bool:
        if i == len(t1.components):
            return True
        g, n = t1.components[i]
        for j, (h, m) in enumerate(remaining):
            if m == n and h is not None and is_isomorphic(g, h):
                remaining[j] = (None, -1)
                if match(i + 1):
                    return True
                remaining[j] = (h, m)
        return False

    return match(0)


# -- isomorphism of fusion sets -------------------------------------------------------------------------


def _signature(s: FusionSet, x: str) -> tuple:
    c = s.conj[x]
    row = sum(1 for y in s.elements if s.fuse(x, y) is not None)
    col = sum(1 for y in s.elements if s.fuse(y, x) is not None)
    hits = sum(1 for a in s.elements for b in s.elements if s.fuse(a, b) == x)
    return (
        c == x,
        s.fuse(c, x) is None,
        s.fuse(x, c) == s.fuse(c, x),
        s.fuse(x, x) == x,
        s.fuse(x, x) is None,
        row,
        col,
        hits,
    )


def iso_check(s1: FusionSet, s2: FusionSet) -> tuple[bool, dict[str, str] | None]:
    """Search for a bijection preserving conjugation and the partial product."""
    if len(s1) != len(s2):
        return False, None
    sig1 = {x: _signature(s1, x) for x in s1.elements}
    sig2 = {y: _signature(s2, y) for y in s2.elements}
    if Counter(sig1.values()) != Counter(sig2.values()):
        return False, None

    def propagate(mapping: dict, inverse: dict, x: str, y: str) -> bool:
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if a in mapping:
                if mapping[a] != b:
                    return False
                continue
            if b in inverse or sig1[a] != sig2[b]:
                return False
            mapping[a], inverse[b] = b, a
            stack.append((s1.conj[a], s2.conj[b]))
            for c in list(mapping):
                for p, q in ((a, c), (c, a)):
                    v1 = s1.fuse(p, q)
                    v2 = s2.fuse(mapping[p], mapping[q])
                    if (v1 is None) != (v2 is None):
                        return False
                    if v1 is not None:
                        stack.append((v1, v2))
        return True

    order = sorted(s1.elements, key=lambda x: sum(1 for y in s1.elements if sig1[y] == sig1[x]))

    def search(mapping: dict, inverse: dict) -> dict | None:
        free = [x for x in order if x not in mapping]
        if not free:
            return mapping
        x = free[0]
        for y in s2.elements:
            if y in inverse or sig2[y] != sig1[x]:
                continue
            m2, i2 = dict(mapping), dict(inverse)
            if propagate(m2, i2, x, y):
                found = search(m2, i2)
                if found is not None:
                    return found
        return None

    witness = search({}, {})
    return (witness is not None), witness


def is_isomorphic_fusion(s1: FusionSet, s2: FusionSet) -> bool:
    return iso_check(s1, s2)[0]


# -- word-set decompositions -------------------------------------------------------------------------------------


def eq_main_holds(s: FusionSet) -> bool:
    """At least two elements, and conj(x) * x is not one fixed element for all x."""
    if len(s) < 2:
        return False
    values = {s.fuse(s.conj[x], x) for x in s.elements}
    return not (len(values) == 1 and None not in values)


def words_up_to(s: FusionSet, length: int) -> list[Word]:
    out: list[Word] = [()]
    for n in range(1, length + 1):
        out.extend(itertools.product(s.elements, repeat=n))
    return out


@dataclasses.dataclass
class CircResult:
    words: set[Word]
    truncated: bool


def circ(xs: Iterable[Word], ys: Iterable[Word], s: FusionSet, max_len: int) -> CircResult:
    """Every word of length <= max_len in the support of x (x) y for x in xs, y in ys."""
    xs = list(xs)
    by_prefix: dict[Word, list[Word]] = {}
    for y in ys:
        for n in range(len(y) + 1):
            by_prefix.setdefault(y[:n], []).append(y)
    out: set[Word] = set()
    truncated = False
    for x in xs:
        for zlen in range(len(x) + 1):
            a, z = x[: len(x) - zlen], x[len(x) - zlen:]
            for y in by_prefix.get(s.conj_word(z), ()):
                b = y[zlen:]
                if len(a) + len(b) - 1 > max_len:
                    truncated = True
                    continue
                for u in _split_terms(a, b, s):
                    if len(u) <= max_len:
                        out.add(u)
                    else:
                        truncated = True
    return CircResult(out, truncated)


def _split_terms(a: Word, b: Word, s: FusionSet) -> list[Word]:
    terms = [a + b]
    if a and b:
        mid = s.fuse(a[-1], b[0])
        if mid is not None:
            terms.append(a[:-1] + (mid,) + b[1:])
    return terms


def _completion(s: FusionSet, prefix: Word, min_len: int) -> Word:
    """Shortest, then lexicographically least, word extending ``prefix`` to at least
    ``min_len`` letters and not ending in conj(prefix[0])."""
    bad = s.conj[prefix[0]]
    letters = sorted(s.elements)
    n = max(len(prefix), min_len)
    while True:
        for tail in itertools.product(letters, repeat=n - len(prefix)):
            w = prefix + tail
            if w[-1] != bad:
                return w
        n += 1


@dataclasses.dataclass
class AppendixReport:
    beta: str
    gamma: str
    max_len: int
    eq_main: bool
    partition_ok: bool
    f_circ_d_disjoint: bool
    r_circ_e_disjoint: bool
    r_words: list[Word]
    truncated: bool
    sizes: dict[str, int]

    @property
    def ok(self) -> bool:
        return self.eq_main and self.partition_ok and self.f_circ_d_disjoint and self.r_circ_e_disjoint


def appendix_sets(s: FusionSet, beta: str | None = None, gamma: str | None = None, max_len: int = 6) -> dict:
    """The word sets D, E, F and r_1, r_2, r_3, truncated at ``max_len`` letters."""
    if not eq_main_holds(s):
        raise ConditionFails("the fusion set has fewer than two elements or conj(x)*x is constant")
    beta = s.elements[0] if beta is None else beta
    gamma = next(x for x in s.elements if x != beta) if gamma is None else gamma
    if beta == gamma or beta not in s.elements or gamma not in s.elements:
        raise PartitionError("beta and gamma must be two different elements")
    words = words_up_to(s, max_len)
    d = {w for w in words if w and w[0] != beta}
    e = {w for w in words if not w or w[0] == beta}
    f = {w for w in words if len(w) >= 2 and w[0] == beta and w[-1] == s.conj[beta]}
    r = [
        _completion(s, (beta, gamma, beta), 4),
        _completion(s, (beta, gamma, gamma, beta), 4),
        _completion(s, (beta, gamma, gamma, gamma, beta), 4),
    ]
    return {"beta": beta, "gamma": gamma, "words": words, "D": d, "E": e, "F": f, "r": r}


def appendix_check(s: FusionSet, beta: str | None = None, gamma: str | None = None, max_len: int = 6) -> AppendixReport:
    sets = appendix_sets(s, beta, gamma, max_len)
    words, d, e, f, r = sets["words"], sets["D"], sets["E"], sets["F"], sets["r"]
    partition_ok = not (d & e) and (d | e) == set(words)
    fd = circ(f, d, s, max_len)
    images = [circ([ri], e, s, max_len) for ri in r]
    disjoint = all(not (images[i].words & images[j].words) for i, j in itertools.combinations(range(3), 2))
    return AppendixReport(
        beta=sets["beta"],
        gamma=sets["gamma"],
        max_len=max_len,
        eq_main=True,
        partition_ok=partition_ok,
        f_circ_d_disjoint=not (fd.words & d),
        r_circ_e_disjoint=disjoint,
        r_words=r,
        truncated=fd.truncated or any(im.truncated for im in images),
        sizes={"D": len(d), "E": len(e), "F": len(f), "F.D": len(fd.words)},
    )


def build_CS(s: FusionSet):
    """The category of partitions attached to an associative fusion set."""
    from .categories import FusionSetCategory

    return FusionSetCategory(s)
