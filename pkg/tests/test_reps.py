import itertools
import math
from collections import Counter

import pytest

from pqg.categories import builtin
from pqg.errors import NotProjective
from pqg.fusion import build_CS, group_set, idempotent_set, is_isomorphic_fusion, orthogonal_set, zigzag_set
from pqg.groups import named_group
from pqg.partitions import ColouredPartition, adjoint, compose, enumerate_partitions, identity, one_block, tensor
from pqg.reps import (
    Labeller,
    bridge_check,
    enumerate_mixing,
    equivalent,
    format_fusion_row,
    fuse_general,
    fuse_noncrossing,
    is_projective,
    nested_caps,
    nested_caps_joined,
    one_block_fusion_set,
    proj_enumerate,
    same_decomposition,
    through_decomposition,
)

NC, NC2 = builtin("NC"), builtin("NC2")
CUP = ColouredPartition.parse("|aa")
CAP = ColouredPartition.parse("aa|")
CAPCUP = tensor(CUP, CAP)


# -- projective partitions --------------------------------------------------------------------


def test_identity_decomposition():
    d = through_decomposition(identity(), "x")
    assert d.p_u == identity() and d.t == 1


def test_cap_over_cup_has_no_through_blocks():
    assert is_projective(CAPCUP)
    assert through_decomposition(CAPCUP, "x").t == 0


def test_non_projective_is_rejected():
    fork = one_block(["x", "x"], ["x"])
    assert not is_projective(fork)
    with pytest.raises(NotProjective):
        through_decomposition(fork, "x")


def nc_projective_oracle(k):
    """An upper noncrossing partition with any subset of its outer blocks sent through."""
    total = 0
    for p in enumerate_partitions(0, k, "noncrossing"):
        blocks = p.partition.blocks()
        outer = [b for b in blocks if not any(min(c) < min(b) and max(c) > max(b) for c in blocks)]
        total += 2 ** len(outer)
    return total


@pytest.mark.parametrize("k", [1, 2, 3])
def test_nc_projective_counts(k):
    assert len(proj_enumerate(NC, "x" * k)) == nc_projective_oracle(k) == [2, 6, 20][k - 1]


def test_nc2_projective_counts():
    assert [len(proj_enumerate(NC2, "x" * k)) for k in (1, 2, 3)] == [1, 2, 3]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_decomposition_round_trip_for_nc(k):
    for p in proj_enumerate(NC, "x" * k):
        pu = through_decomposition(p, "x").p_u
        assert compose(adjoint(pu), pu).result == p
        assert pu.l == p.through_blocks


# -- equivalence --------------------------------------------------------------------------------


def test_one_block_projectives_equivalent_in_nc():
    assert equivalent(one_block(["x"], ["x"]), one_block(["x", "x"], ["x", "x"]), NC)


def test_nc2_capcup_not_equivalent_to_strands():
    strands = tensor(identity(), identity())
    assert not equivalent(CAPCUP, strands, NC2)
    assert equivalent(CAPCUP, CAPCUP, NC2)


def test_equivalence_needs_matching_through_count():
    assert not equivalent(one_block(["x"], ["x"]), tensor(one_block(["x"], []), one_block([], ["x"])), NC)


# -- mixing partitions -----------------------------------------------------------------------------


def mixing_oracle(k, l):
    return sum(math.comb(k, j) * math.comb(l, j) * math.factorial(j) * 2 ** j for j in range(min(k, l) + 1)) - 1


@pytest.mark.parametrize("k,l,count", [(1, 1, 2), (0, 2, 0), (1, 2, 4), (2, 1, 4), (2, 2, 16)])
def test_mixing_counts(k, l, count):
    got = enumerate_mixing(k, l)
    assert len(got) == len(set(got)) == count == mixing_oracle(k, l)
    assert all(is_projective(h) for h in got)


def test_nested_caps():
    assert nested_caps(2).text() == "abba|cddc"
    assert nested_caps_joined(2).text() == "abba|acca"


# -- fusion of projectives ------------------------------------------------------------------------


def test_fusion_of_strands_in_nc2():
    assert fuse_noncrossing(identity(), identity(), NC2, Labeller(NC2)).text("u1⊗u1") == "u1⊗u1 = u[x x] + u[]"


def test_fusion_of_strands_in_nc():
    result = fuse_noncrossing(identity(), identity(), NC, Labeller(NC))
    assert result.text("u1⊗u1") == "u1⊗u1 = u[x x] + u[x] + u[]"
    assert result.words() == Counter({("x", "x"): 1, ("x",): 1, (): 1})


@pytest.mark.parametrize("c", [NC, NC2], ids=["NC", "NC2"])
def test_general_fusion_agrees_with_noncrossing(c):
    lab = Labeller(c)
    projs = [p for k in (1, 2) for p in proj_enumerate(c, "x" * k)]
    for p, q in itertools.product(projs, repeat=2):
        a = fuse_noncrossing(p, q, c, lab)
        b = fuse_general(p, q, c, lab)
        assert same_decomposition(a, b)
        assert not b.collisions


# -- one-block fusion sets ----------------------------------------------------------------------------


def test_one_block_sets_of_builtins():
    assert is_isomorphic_fusion(one_block_fusion_set(NC2)[0], orthogonal_set())
    assert is_isomorphic_fusion(one_block_fusion_set(NC)[0], idempotent_set())
    z2 = builtin("C_gamma0", named_group("Z2"))
    assert is_isomorphic_fusion(one_block_fusion_set(z2)[0], group_set(named_group("Z2")))


@pytest.mark.parametrize("s", [idempotent_set(), group_set(named_group("Z3")), zigzag_set()], ids=["idem", "Z3", "zigzag"])
def test_one_block_set_recovers_fusion_set(s):
    assert is_isomorphic_fusion(one_block_fusion_set(build_CS(s))[0], s)


@pytest.mark.parametrize("c", [NC, NC2, builtin("C_gamma0", named_group("Z2"))], ids=["NC", "NC2", "C_gamma0"])
def test_bridge_between_partitions_and_words(c):
    rows = list(bridge_check(c, max_len=2))
    assert rows
    for v, w, lhs, rhs in rows:
        assert lhs == rhs, format_fusion_row(v, w, rhs)


def test_format_fusion_row():
    assert format_fusion_row(("x",), ("x",), Counter({("x", "x"): 1, ("x",): 1, (): 1})) == "x⊗x = xx + x + 1"
