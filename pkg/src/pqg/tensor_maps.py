"""
Linear maps attached to partitions, their functorial laws, Gram ranks, the
group-averaged operators and the formal diagram algebra with loop parameter.

``tp_matrix(p, N)`` is the 0/1 matrix of shape ``N**l x N**k`` whose entry in
row ``j`` and column ``i`` is 1 exactly when every block of ``p`` sees a single
index value. Multi-indices are flattened big-endian in base N, so the tensor
``e_{i1} (x) ... (x) e_{ik}`` sits at position ``i1*N**(k-1) + ... + ik``.
Colours are ignored here.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp
import sympy

from .errors import ColourMismatch, ShapeMismatch, SizeOverflow
from .groups import FiniteGroup
from .linalg import bareiss_rank
from .partitions import (
    ColouredPartition,
    Partition,
    adjoint,
    compose,
    join_block_count,
    tensor,
)

# Largest allowed N**k on either side, and largest number of stored entries.
MAX_DIMENSION = 1 << 31
MAX_ENTRIES = 20_000_000


@dataclasses.dataclass(frozen=True, eq=False)
class TpMatrix:
    """Sparse integer matrix from (C^N)^{(x)k} to (C^N)^{(x)l} in coordinate form."""

    N: int
    k: int
    l: int
    rows: np.ndarray
    cols: np.ndarray
    data: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.N ** self.l, self.N ** self.k

    @property
    def nnz(self) -> int:
        return int(np.count_nonzero(self.data))

    def canonical(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted flat keys and their (nonzero, summed) values."""
        keys = self.rows.astype(np.int64) * self.shape[1] + self.cols
        uniq, inv = np.unique(keys, return_inverse=True)
        vals = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(vals, inv, self.data)
        keep = vals != 0
        return uniq[keep], vals[keep]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TpMatrix):
            return NotImplemented
        if (self.N, self.k, self.l) != (other.N, other.k, other.l):
            return False
        k1, v1 = self.canonical()
        k2, v2 = other.canonical()
        return np.array_equal(k1, k2) and np.array_equal(v1, v2)

    __hash__ = None

    def transpose(self) -> "TpMatrix":
        return TpMatrix(self.N, self.l, self.k, self.cols, self.rows, self.data)

    def scale(self, c: int) -> "TpMatrix":
        return TpMatrix(self.N, self.k, self.l, self.rows, self.cols, self.data * int(c))

    def kron(self, other: "TpMatrix") -> "TpMatrix":
        if self.N != other.N:
            raise ShapeMismatch("tensor product of maps with different N")
        r2, c2 = other.shape
        rows = (self.rows[:, None] * r2 + other.rows[None, :]).ravel()
        cols = (self.cols[:, None] * c2 + other.cols[None, :]).ravel()
        data = (self.data[:, None] * other.data[None, :]).ravel()
        return TpMatrix(self.N, self.k + other.k, self.l + other.l, rows, cols, data)

    def to_scipy(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.data, (self.rows, self.cols)), shape=self.shape, dtype=np.int64)

    def __matmul__(self, other: "TpMatrix") -> "TpMatrix":
        """Composition: ``self @ other`` applies ``other`` first."""
        if self.N != other.N or self.k != other.l:
            raise ShapeMismatch(f"cannot compose maps: {self.k} != {other.l} legs")
        prod = (self.to_scipy() @ other.to_scipy()).tocoo()
        return TpMatrix(
            self.N,
            other.k,
            self.l,
            prod.row.astype(np.int64),
            prod.col.astype(np.int64),
            prod.data.astype(np.int64),
        )

    def __add__(self, other: "TpMatrix") -> "TpMatrix":
        if (self.N, self.k, self.l) != (other.N, other.k, other.l):
            raise ShapeMismatch("cannot add maps of different shapes")
        return TpMatrix(
            self.N,
            self.k,
            self.l,
            np.concatenate([self.rows, other.rows]),
            np.concatenate([self.cols, other.cols]),
            np.concatenate([self.data, other.data]),
        )

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        np.add.at(out, (self.rows, self.cols), self.data)
        return out

    def to_json(self) -> dict:
        keys, vals = self.canonical()
        n_cols = self.shape[1]
        return {
            "N": self.N,
            "k": self.k,
            "l": self.l,
            "shape": list(self.shape),
            "entries": [[int(key // n_cols), int(key % n_cols), int(v)] for key, v in zip(keys, vals)],
        }

    def text(self) -> str:
        dense = self.to_dense()
        return "\n".join(" ".join(str(v) for v in row) for row in dense)


def zero_map(N: int, k: int, l: int) -> TpMatrix:
    empty = np.zeros(0, dtype=np.int64)
    return TpMatrix(N, k, l, empty, empty, empty)


def _check_size(N: int, k: int, l: int, blocks: int):
    if N ** max(k, l) > MAX_DIMENSION:
        raise SizeOverflow(f"N^{max(k, l)} = {N ** max(k, l)} exceeds {MAX_DIMENSION}")
    if N ** blocks > MAX_ENTRIES:
        raise SizeOverflow(f"{N ** blocks} nonzero entries exceed {MAX_ENTRIES}")


def _block_weights(part: Partition, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Contribution of one unit of a block's index value to the flat row and column."""
    b = part.num_blocks
    row_w = np.zeros(b, dtype=np.int64)
    col_w = np.zeros(b, dtype=np.int64)
    for i in range(part.k):
        col_w[part.labels[i]] += N ** (part.k - 1 - i)
    for j in range(part.l):
        row_w[part.labels[part.k + j]] += N ** (part.l - 1 - j)
    return row_w, col_w


@functools.lru_cache(maxsize=64)
def _assignments(N: int, b: int) -> np.ndarray:
    """All index values per block, shape (N**b, b), lexicographic."""
    if b == 0:
        out = np.zeros((1, 0), dtype=np.int64)
    else:
        out = np.indices((N,) * b, dtype=np.int64).reshape(b, -1).T.copy()
    out.flags.writeable = False
    return out


def _tp_build(part: Partition, N: int) -> TpMatrix:
    _check_size(N, part.k, part.l, part.num_blocks)
    assign = _assignments(N, part.num_blocks)
    row_w, col_w = _block_weights(part, N)
    rows = assign @ row_w
    cols = assign @ col_w
    data = np.ones(len(rows), dtype=np.int64)
    for arr in (rows, cols, data):
        arr.flags.writeable = False
    return TpMatrix(N, part.k, part.l, rows, cols, data)


@functools.lru_cache(maxsize=4096)
def _tp_cached(part: Partition, N: int) -> TpMatrix:
    return _tp_build(part, N)


def tp_matrix(p: ColouredPartition | Partition, N: int) -> TpMatrix:
    if N < 1:
        raise ValueError("N must be at least 1")
    part = p.partition if isinstance(p, ColouredPartition) else p
    return _tp_cached(part, N)


@functools.lru_cache(maxsize=4096)
def _dense_cached(part: Partition, N: int) -> np.ndarray:
    out = _tp_cached(part, N).to_dense()
    out.flags.writeable = False
    return out


def tp_dense(p: ColouredPartition | Partition, N: int) -> np.ndarray:
    part = p.partition if isinstance(p, ColouredPartition) else p
    return _dense_cached(part, N)


# -- functor laws ---------------------------------------------------------------


@dataclasses.dataclass
class FunctorReport:
    ok: bool
    checked: list[str]
    failure: str | None = None


def adjoint_law_holds(p: ColouredPartition, N: int) -> bool:
    return tp_matrix(adjoint(p), N) == tp_matrix(p, N).transpose()


def _sorted_keys(t: TpMatrix) -> np.ndarray:
    return np.sort(t.rows * t.shape[1] + t.cols)


def _kron_support(p: ColouredPartition, q: ColouredPartition, N: int) -> np.ndarray:
    """Sorted support of T_{p (x) q}, flattened in Kronecker order.

    An entry of T_{p (x) q} with index digits (i_p, i_q; j_p, j_q) sits at flat
    position key(j_p, i_p) * size(T_q) + key(j_q, i_q) of T_p (x) T_q, which
    is linear in the digits, so every block of p (x) q gets one weight.
    """
    kp, lp, kq, lq = p.k, p.l, q.k, q.l
    q_size = N ** (kq + lq)
    point_weights = (
        [N ** (kp - 1 - i) * q_size for i in range(kp)]
        + [N ** (kq - 1 - i) for i in range(kq)]
        + [N ** (lp - 1 - j) * N ** kp * q_size for j in range(lp)]
        + [N ** (lq - 1 - j) * N ** kq for j in range(lq)]
    )
    part = tensor(p, q).partition
    _check_size(N, part.k, part.l, part.num_blocks)
    weights = np.zeros(part.num_blocks, dtype=np.int64)
    for lab, w in zip(part.labels, point_weights):
        weights[lab] += w
    return np.sort(_assignments(N, part.num_blocks) @ weights)


def _tensor_support_matches(p_keys: np.ndarray, q_keys: np.ndarray, q_size: int, support: np.ndarray) -> bool:
    """The Kronecker product of two sorted supports is already sorted in this order."""
    if len(support) != len(p_keys) * len(q_keys):
        return False
    expected = (p_keys[:, None] * q_size + q_keys[None, :]).ravel()
    return bool(np.array_equal(expected, support))


def tensor_law_holds(p: ColouredPartition, q: ColouredPartition, N: int) -> bool:
    """T_{p (x) q} == T_p (x) T_q (all three maps are 0/1, so supports decide)."""
    tq = tp_matrix(q, N)
    return _tensor_support_matches(_sorted_keys(tp_matrix(p, N)), _sorted_keys(tq), tq.shape[0] * tq.shape[1], _kron_support(p, q, N))


def composition_law_holds(p: ColouredPartition, q: ColouredPartition, N: int) -> bool:
    """T_p T_q == N**loops T_{pq} where pq puts q on top of p."""
    res = compose(p, q, check_colours=False)
    lhs_shape = (N ** p.l, N ** q.k)
    if lhs_shape[0] * lhs_shape[1] <= 1 << 16:
        lhs = tp_dense(p, N) @ tp_dense(q, N)
        return bool(np.array_equal(lhs, N ** res.loops * tp_dense(res.result, N)))
    return tp_matrix(p, N) @ tp_matrix(q, N) == tp_matrix(res.result, N).scale(N ** res.loops)


def verify_functor(p: ColouredPartition, q: ColouredPartition, N: int) -> FunctorReport:
    """Check the adjoint, tensor and (where shapes allow) composition laws for p and q."""
    checked = []
    for name, test in (
        ("adjoint(p)", lambda: adjoint_law_holds(p, N)),
        ("adjoint(q)", lambda: adjoint_law_holds(q, N)),
        ("tensor", lambda: tensor_law_holds(p, q, N)),
    ):
        checked.append(name)
        if not test():
            return FunctorReport(False, checked, name)
    if p.k == q.l:
        checked.append("compose(p,q)")
        if not composition_law_holds(p, q, N):
            return FunctorReport(False, checked, "compose(p,q)")
    if q.k == p.l:
        checked.append("compose(q,p)")
        if not composition_law_holds(q, p, N):
            return FunctorReport(False, checked, "compose(q,p)")
    return FunctorReport(True, checked)


@dataclasses.dataclass
class ExhaustiveReport:
    N: int
    partitions: int
    adjoint_checks: int = 0
    tensor_checks: int = 0
    composition_checks: int = 0
    violations: list[tuple[str, str, str]] = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_functor_laws(parts: Sequence[ColouredPartition], N: int) -> ExhaustiveReport:
    """All three laws over every (ordered) pair drawn from ``parts``."""
    report = ExhaustiveReport(N, len(parts))
    keys = {}
    for p in parts:
        report.adjoint_checks += 1
        if not adjoint_law_holds(p, N):
            report.violations.append(("adjoint", p.text(), ""))
        keys[p] = _sorted_keys(tp_matrix(p, N))
    by_lower: dict[int, list[ColouredPartition]] = {}
    for q in parts:
        by_lower.setdefault(q.l, []).append(q)
    for p in parts:
        for q in parts:
            report.tensor_checks += 1
            support = _kron_support(p, q, N)
            if not _tensor_support_matches(keys[p], keys[q], N ** (q.k + q.l), support):
                report.violations.append(("tensor", p.text(), q.text()))
        for q in by_lower.get(p.k, ()):
            report.composition_checks += 1
            if not composition_law_holds(p, q, N):
                report.violations.append(("compose", p.text(), q.text()))
    return report


# -- Gram matrices ---------------------------------------------------------------


def gram_matrix(ps: Sequence[ColouredPartition], N: int) -> list[list[int]]:
    """Entries <T_p, T_q> = N ** (blocks of the join of p and q)."""
    shapes = {(p.k, p.l) for p in ps}
    if len(shapes) > 1:
        raise ShapeMismatch("Gram matrix needs partitions of a single shape")
    n = len(ps)
    g = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            g[a][b] = g[b][a] = N ** join_block_count(ps[a], ps[b])
    return g


def gram_rank(ps: Sequence[ColouredPartition], N: int) -> int:
    return bareiss_rank(gram_matrix(ps, N))


# -- formal diagram algebra --------------------------------------------------------


def _normalise(c):
    if isinstance(c, sympy.Basic):
        c = sympy.expand(c)
        if c.is_Integer:
            return int(c)
        if c.is_Rational:
            return Fraction(int(c.p), int(c.q))
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class DiagramElement:
    """A finite linear combination of coloured partitions of one type (k, l)."""

    def __init__(self, k: int, l: int, terms: Mapping[ColouredPartition, object] | None = None):
        self.k, self.l = k, l
        self.terms: dict[ColouredPartition, object] = {}
        for p, c in (terms or {}).items():
            self._add(p, c)

    def _add(self, p: ColouredPartition, c):
        if (p.k, p.l) != (self.k, self.l):
            raise ShapeMismatch(f"term of type ({p.k}, {p.l}) in an element of type ({self.k}, {self.l})")
        total = _normalise(self.terms.get(p, 0) + c)
        if total == 0:
            self.terms.pop(p, None)
        else:
            self.terms[p] = total

    @classmethod
    def of(cls, p: ColouredPartition, coeff=1) -> "DiagramElement":
        return cls(p.k, p.l, {p: coeff})

    @classmethod
    def sum_of(cls, k: int, l: int, parts: Iterable[ColouredPartition]) -> "DiagramElement":
        out = cls(k, l)
        for p in parts:
            out._add(p, 1)
        return out

    def __add__(self, other: "DiagramElement") -> "DiagramElement":
        if (self.k, self.l) != (other.k, other.l):
            raise ShapeMismatch("cannot add elements of different types")
        out = DiagramElement(self.k, self.l, self.terms)
        for p, c in other.terms.items():
            out._add(p, c)
        return out

    def __neg__(self) -> "DiagramElement":
        return self.scale(-1)

    def __sub__(self, other: "DiagramElement") -> "DiagramElement":
        return self + (-other)

    def scale(self, c) -> "DiagramElement":
        return DiagramElement(self.k, self.l, {p: v * c for p, v in self.terms.items()})

    def __rmul__(self, c) -> "DiagramElement":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramElement):
            return NotImplemented
        if (self.k, self.l) != (other.k, other.l):
            return False
        diff = self - other
        return not diff.terms

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return f"DiagramElement({self.k}, {self.l}, 0)"
        body = " + ".join(f"{c}*[{p.text()}]" for p, c in sorted(self.terms.items(), key=lambda t: t[0].sort_key()))
        return f"DiagramElement({body})"

    def tensor(self, other: "DiagramElement") -> "DiagramElement":
        out = DiagramElement(self.k + other.k, self.l + other.l)
        for (p, a), (q, b) in itertools.product(self.terms.items(), other.terms.items()):
            out._add(tensor(p, q), a * b)
        return out

    def compose(self, other: "DiagramElement", theta) -> "DiagramElement":
        """``self o other``: other on top; colour-incompatible pairs give zero."""
        if self.k != other.l:
            raise ShapeMismatch(f"cannot compose: {other.l} lower points against {self.k} upper points")
        out = DiagramElement(other.k, self.l)
        for (p, a), (q, b) in itertools.product(self.terms.items(), other.terms.items()):
            if q.lower != p.upper:
                continue
            res = compose(p, q)
            out._add(res.result, a * b * theta ** res.loops)
        return out

    def adjoint(self) -> "DiagramElement":
        out = DiagramElement(self.l, self.k)
        for p, c in self.terms.items():
            out._add(adjoint(p), c)
        return out

    def substitute(self, theta_symbol, value) -> "DiagramElement":
        out = DiagramElement(self.k, self.l)
        for p, c in self.terms.items():
            if isinstance(c, sympy.Basic):
                c = c.subs(theta_symbol, value)
            out._add(p, c)
        return out

    def evaluate(self, N: int, theta_symbol=None) -> TpMatrix:
        """Image under p -> T_p with the loop parameter set to N."""
        total = zero_map(N, self.k, self.l)
        for p, c in self.terms.items():
            if theta_symbol is not None and isinstance(c, sympy.Basic):
                c = c.subs(theta_symbol, N)
            c = _normalise(c)
            if isinstance(c, Fraction) or isinstance(c, sympy.Basic):
                raise ValueError(f"coefficient {c} does not evaluate to an integer")
            total = total + tp_matrix(p, N).scale(c)
        return total

    def to_json(self) -> list[dict]:
        return [
            {"partition": p.to_json(), "coefficient": str(c)}
            for p, c in sorted(self.terms.items(), key=lambda t: t[0].sort_key())
        ]


def algebra_multiply(a: DiagramElement, b: DiagramElement, theta) -> DiagramElement:
    """The product a o b in the diagram algebra: b on top, loops weighted by theta."""
    return a.compose(b, theta)


# -- group averaging -----------------------------------------------------------------


def translate(p: ColouredPartition, group: FiniteGroup, g: str) -> ColouredPartition:
    """g.p: multiply every colour on the left by g."""
    return ColouredPartition(
        p.partition,
        tuple(group.mul_names(g, c) for c in p.upper),
        tuple(group.mul_names(g, c) for c in p.lower),
    )


def block_order(p: ColouredPartition) -> list[int]:
    """Blocks by leftmost upper point; blocks without upper points follow, by leftmost lower point."""
    with_upper = list(dict.fromkeys(p.labels[: p.k]))
    rest = [b for b in dict.fromkeys(p.labels[p.k:]) if b not in set(with_upper)]
    return with_upper + rest


def translate_blocks(p: ColouredPartition, group: FiniteGroup, gs: Sequence[str]) -> ColouredPartition:
    """(g_1, ..., g_b).p: the i-th element acts on the i-th block in :func:`block_order`."""
    order = block_order(p)
    if len(gs) != len(order):
        raise ValueError(f"need {len(order)} group elements, got {len(gs)}")
    acting = dict(zip(order, gs))
    colours = [group.mul_names(acting[lab], c) for lab, c in zip(p.labels, p.colours)]
    return ColouredPartition(p.partition, tuple(colours[: p.k]), tuple(colours[p.k:]))


def _check_group_colours(p: ColouredPartition, group: FiniteGroup):
    for c in p.colours:
        if c not in group.names:
            raise ColourMismatch(f"colour {c!r} is not an element of the group")


def averaged_L(p: ColouredPartition, group: FiniteGroup) -> DiagramElement:
    _check_group_colours(p, group)
    return DiagramElement.sum_of(p.k, p.l, (translate(p, group, g) for g in group.names))


def averaged_M(p: ColouredPartition, group: FiniteGroup) -> DiagramElement:
    _check_group_colours(p, group)
    tuples = itertools.product(group.names, repeat=p.num_blocks)
    return DiagramElement.sum_of(p.k, p.l, (translate_blocks(p, group, gs) for gs in tuples))


def averaged_L_matrix(p: ColouredPartition, group: FiniteGroup, N: int) -> TpMatrix:
    return averaged_L(p, group).evaluate(N)


def averaged_M_matrix(p: ColouredPartition, group: FiniteGroup, N: int) -> TpMatrix:
    return averaged_M(p, group).evaluate(N)
