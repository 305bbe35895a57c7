import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pqg.errors import ShapeMismatch, SizeOverflow
from pqg import tensor_maps as tm
from pqg.groups import named_group
from pqg.partitions import (
    ColouredPartition,
    ColourSet,
    adjoint,
    compose,
    empty_partition,
    enumerate_coloured,
    enumerate_partitions,
    identity,
    new_partition,
    one_block,
    tensor,
    tensor_all,
)
from pqg.tensor_maps import (
    DiagramElement,
    algebra_multiply,
    averaged_L,
    averaged_L_matrix,
    averaged_M,
    block_order,
    check_functor_laws,
    gram_matrix,
    gram_rank,
    tp_dense,
    tp_matrix,
    translate,
    translate_blocks,
    verify_functor,
)

P1 = new_partition(4, 4, [[1, 8], [2, 6], [3, 4], [5, 7]])
CUP = ColouredPartition.parse("|aa")
CAP = ColouredPartition.parse("aa|")
THETA = sympy.Symbol("theta")


def index_of(digits, N):
    """Row-major index of a multi-index, first factor most significant."""
    out = 0
    for d in digits:
        out = out * N + d
    return out


def delta_oracle(p, N):
    """Dense T_p from the definition: entry (j, i) is 1 iff indices agree along every block."""
    k, l = p.k, p.l
    out = np.zeros((N ** l, N ** k), dtype=np.int64)
    for i in itertools.product(range(N), repeat=k):
        for j in itertools.product(range(N), repeat=l):
            values = {}
            ok = True
            for lab, v in zip(p.labels, i + j):
                if values.setdefault(lab, v) != v:
                    ok = False
                    break
            if ok:
                out[index_of(j, N), index_of(i, N)] = 1
    return out


# -- T_p -------------------------------------------------------------------------------------


def test_identity_matrix():
    assert np.array_equal(tp_dense(identity(), 3), np.eye(3, dtype=np.int64))


def test_cup_vector():
    v = tp_dense(CUP, 2)
    assert v.shape == (4, 1)
    assert v[:, 0].tolist() == [1, 0, 0, 1]


def test_transpose_of_p1():
    assert np.array_equal(tp_dense(P1, 2).T, tp_dense(adjoint(P1), 2))


@pytest.mark.parametrize("k,l", [(0, 3), (2, 2), (1, 3), (3, 1), (2, 3)])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_tp_matches_delta_oracle(k, l, N):
    for p in enumerate_partitions(k, l, "all"):
        assert np.array_equal(tp_dense(p, N), delta_oracle(p, N)), p.text()


def test_colours_are_forgotten():
    p = ColouredPartition.parse("ab|ba@x,y/y,x")
    q = ColouredPartition.parse("ab|ba")
    assert tp_matrix(p, 2) == tp_matrix(q, 2)


def test_size_overflow():
    with pytest.raises(SizeOverflow):
        tp_matrix(one_block(["x"] * 12, ["x"] * 12), 10)


def test_json_and_text_export():
    t = tp_matrix(identity(), 2)
    data = t.to_json()
    assert data["shape"] == [2, 2]
    assert sorted(map(tuple, data["entries"])) == [(0, 0, 1), (1, 1, 1)]
    assert "1" in t.text()


# -- functor laws --------------------------------------------------------------------------------


def test_cap_after_cup_is_n():
    report = verify_functor(CAP, CUP, 3)
    assert report.ok
    prod = tp_matrix(CAP, 3) @ tp_matrix(CUP, 3)
    assert prod.to_dense().tolist() == [[3]]


def test_identity_composition():
    assert verify_functor(identity(), identity(), 4).ok


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_functor_laws_against_numpy(data):
    pool = list(enumerate_partitions(2, 2, "all"))
    p, q = data.draw(st.sampled_from(pool)), data.draw(st.sampled_from(pool))
    N = 2
    res = compose(p, q)
    assert np.array_equal(delta_oracle(p, N) @ delta_oracle(q, N), N ** res.loops * delta_oracle(res.result, N))
    assert np.array_equal(np.kron(delta_oracle(p, N), delta_oracle(q, N)), delta_oracle(tensor(p, q), N))
    assert verify_functor(p, q, N).ok


def test_exhaustive_functor_laws_two_points():
    parts = [p for k in range(3) for l in range(3) for p in enumerate_partitions(k, l, "all")]
    for N in (1, 2):
        report = check_functor_laws(parts, N)
        assert report.ok and report.composition_checks > 0


# -- Gram ranks --------------------------------------------------------------------------------------


def gram_oracle(ps, N):
    vecs = [delta_oracle(p, N).reshape(-1) for p in ps]
    return sympy.Matrix([[int(a @ b) for b in vecs] for a in vecs])


def test_gram_entries_match_inner_products():
    ps = list(enumerate_partitions(0, 4, "noncrossing"))
    assert sympy.Matrix(gram_matrix(ps, 3)) == gram_oracle(ps, 3)


def test_gram_rank_nc_0_4():
    ps = list(enumerate_partitions(0, 4, "noncrossing"))
    assert len(ps) == 14
    assert gram_rank(ps, 4) == 14


def test_gram_rank_nc2_3_3():
    ps = list(enumerate_partitions(3, 3, "noncrossing-pair"))
    assert len(ps) == 5
    assert gram_rank(ps, 4) == 5


def test_gram_rank_at_n_1():
    ps = list(enumerate_partitions(2, 2, "all"))
    assert gram_rank(ps, 1) == 1


def test_gram_rank_deficient_at_small_n():
    ps = list(enumerate_partitions(3, 3, "noncrossing"))
    rank = gram_rank(ps, 2)
    assert rank < len(ps) and rank <= 2 ** 6
    vecs = np.stack([delta_oracle(p, 2).reshape(-1) for p in ps])
    assert rank == np.linalg.matrix_rank(vecs)


@pytest.mark.parametrize("k,l", [(0, 4), (2, 2), (1, 3)])
def test_gram_rank_matches_sympy(k, l):
    ps = list(enumerate_partitions(k, l, "all"))
    for N in (2, 3):
        assert gram_rank(ps, N) == sympy.Matrix(gram_matrix(ps, N)).rank()


# -- diagram algebra -------------------------------------------------------------------------------------


def e_at(i, n):
    """Temperley-Lieb generator on n strands: cap-over-cup on strands i, i+1."""
    cupcap = new_partition(2, 2, [[1, 2], [3, 4]])
    return tensor_all([identity()] * i + [cupcap] + [identity()] * (n - i - 2))


def test_temperley_lieb_relations():
    n = 3
    e = [DiagramElement.of(e_at(i, n)) for i in range(n - 1)]
    for x in e:
        assert algebra_multiply(x, x, THETA) == x.scale(THETA)
    assert algebra_multiply(e[0], algebra_multiply(e[1], e[0], THETA), THETA) == e[0]
    assert algebra_multiply(e[1], algebra_multiply(e[0], e[1], THETA), THETA) == e[1]


def test_identity_acts_trivially():
    one = DiagramElement.of(tensor(identity(), identity()))
    e = DiagramElement.of(e_at(0, 2))
    assert algebra_multiply(one, e, THETA) == e
    assert algebra_multiply(DiagramElement.of(identity()), DiagramElement.of(identity()), THETA) == DiagramElement.of(identity())


@pytest.mark.parametrize("N", [2, 3])
def test_evaluation_matches_matrices(N):
    n = 3
    gens = [e_at(i, n) for i in range(n - 1)] + [tensor_all([identity()] * n)]
    for p, q in itertools.product(gens, repeat=2):
        formal = algebra_multiply(DiagramElement.of(p), DiagramElement.of(q), THETA)
        assert formal.evaluate(N, THETA) == tp_matrix(p, N) @ tp_matrix(q, N)


def test_compose_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        algebra_multiply(DiagramElement.of(identity()), DiagramElement.of(CUP), THETA)


def test_diagram_json():
    x = DiagramElement.of(identity(), 2) + DiagramElement.of(identity())
    assert x.to_json() == [{"partition": identity().to_json(), "coefficient": "3"}]


# -- group averaging ---------------------------------------------------------------------------------------


def group_coloured(group, k, l, predicate="all", blocks=None):
    out = []
    colours = ColourSet.self_conjugate(group.names)
    for p in enumerate_coloured(k, l, colours, predicate):
        if blocks is None or p.num_blocks == blocks:
            out.append(p)
    return out


def test_l_of_identity_z2():
    z2 = named_group("Z2")
    p = one_block(["e"], ["e"])
    assert averaged_L(p, z2) == DiagramElement.of(p) + DiagramElement.of(one_block(["g"], ["g"]))


def test_l_matrix_is_multiple_of_t():
    z3 = named_group("Z3")
    p = one_block(["e", "g1"], ["g2"])
    assert averaged_L_matrix(p, z3, 2) == tp_matrix(p, 2).scale(3)


@pytest.mark.parametrize("name", ["Z2", "Z3"])
def test_l_tensor_identity(name):
    g = named_group(name)
    pool = [p for k in range(3) for l in range(3) if k + l for p in group_coloured(g, k, l, blocks=1)]
    for p, q in itertools.product(pool[:40], repeat=2):
        lhs = averaged_L(p, g).tensor(averaged_L(q, g))
        rhs = DiagramElement(p.k + q.k, p.l + q.l)
        for k in g.names:
            rhs = rhs + averaged_L(tensor(p, translate(q, g, k)), g)
        assert lhs == rhs


@pytest.mark.parametrize("name", ["Z2", "Z3"])
def test_l_composition_identity(name):
    g = named_group(name)
    checked = 0
    for a, b, c in itertools.product(range(1, 3), repeat=3):
        ps = group_coloured(g, b, c, blocks=1)
        qs = group_coloured(g, a, b, blocks=1)
        for p, q in itertools.product(ps, qs):
            ks = [k for k in g.names if translate(q, g, k).lower == p.upper]
            lhs = algebra_multiply(averaged_L(p, g), averaged_L(q, g), THETA)
            if not ks:
                assert lhs.is_zero()
                continue
            assert len(ks) == 1
            res = compose(p, translate(q, g, ks[0]))
            assert lhs == averaged_L(res.result, g).scale(THETA ** res.loops)
            checked += 1
    assert checked > 0


def test_block_order_by_leftmost_upper_point():
    p = new_partition(2, 2, [[1, 4], [2], [3]])
    assert block_order(p) == [p.labels[0], p.labels[1], p.labels[2]]


@pytest.mark.parametrize("name", ["Z2", "Z3"])
def test_m_tensor_and_average_identities(name):
    g = named_group(name)
    pool = [p for k in range(3) for l in range(3) if 0 < k + l <= 3 for p in group_coloured(g, k, l)][:60]
    for p, q in itertools.product(pool[:25], repeat=2):
        assert averaged_M(p, g).tensor(averaged_M(q, g)) == averaged_M(tensor(p, q), g)
    for p in pool:
        total = DiagramElement(p.k, p.l)
        for gs in itertools.product(g.names, repeat=p.num_blocks):
            total = total + averaged_L(translate_blocks(p, g, gs), g)
        assert total.scale(sympy.Rational(1, g.order)) == averaged_M(p, g)
        assert averaged_M(p, g).adjoint() == averaged_M(adjoint(p), g)


def is_m_combination(x, g):
    """Coefficients are constant on block-translation orbits."""
    for r, c in x.terms.items():
        for gs in itertools.product(g.names, repeat=r.num_blocks):
            if x.terms.get(translate_blocks(r, g, gs)) != c:
                return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["Z2", "Z3"]), st.data())
def test_m_composition_stays_in_span(name, data):
    g = named_group(name)
    a, b, c = (data.draw(st.integers(1, 2)) for _ in range(3))
    p = data.draw(st.sampled_from(group_coloured(g, b, c)))
    q = data.draw(st.sampled_from(group_coloured(g, a, b)))
    product = algebra_multiply(averaged_M(p, g), averaged_M(q, g), 3)
    assert is_m_combination(product, g)


def test_empty_partition_evaluates_to_one():
    assert tp_dense(empty_partition(), 3).tolist() == [[1]]


def test_tensor_support_check_detects_wrong_order():
    p = one_block(["x", "x"], ["x"])
    q = CUP
    N = 2
    keys = lambda x: tm._sorted_keys(tp_matrix(x, N))
    assert tm._tensor_support_matches(keys(p), keys(q), N ** 2, tm._kron_support(p, q, N))
    # the support of q (x) p read as if it were p (x) q must not match
    assert not tm._tensor_support_matches(keys(p), keys(q), N ** 2, tm._kron_support(q, p, N))
