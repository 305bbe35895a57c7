"""Acceptance suite: one test per criterion, each reporting a single pass/fail line.

Run ``pytest tests/test_acceptance.py`` for the summary lines at the end of the
session, or ``python3 tests/test_acceptance.py`` to print them directly.
"""

import itertools
import math
import time
from collections import Counter

import sympy

from pqg.categories import builtin, closure, is_block_stable
from pqg.fusion import (
    FusionTriple,
    appendix_check,
    build_CS,
    classify,
    disjoint_union,
    eq_main_holds,
    group_set,
    idempotent_set,
    is_isomorphic_fusion,
    orthogonal_set,
    realize,
    triples_isomorphic,
    unitary_set,
    word_tensor,
    zigzag_set,
)
from pqg.groups import named_group, small_groups
from pqg.partitions import (
    ColouredPartition,
    ColourSet,
    compose,
    enumerate_coloured,
    enumerate_partitions,
    identity,
    new_partition,
    tensor,
    tensor_all,
)
from pqg.reps import Labeller, bridge_check, fuse_general, fuse_noncrossing, one_block_fusion_set, proj_enumerate, same_decomposition
from pqg.tensor_maps import (
    DiagramElement,
    algebra_multiply,
    averaged_L,
    averaged_M,
    check_functor_laws,
    gram_rank,
    tp_matrix,
    translate,
    translate_blocks,
)

THETA = sympy.Symbol("theta")


def report(n: int, ok: bool, detail: str = "") -> None:
    print(f"criterion {n}: {'pass' if ok else 'fail'}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {n} failed {detail}"


def group_coloured(group, k, l, predicate="all"):
    return list(enumerate_coloured(k, l, ColourSet.self_conjugate(group.names), predicate))


def test_criterion_01_counting():
    bell = [1, 2, 5, 15, 52, 203]
    catalan = [math.comb(2 * n, n) // (n + 1) for n in range(7)]
    ok = [sum(1 for _ in enumerate_partitions(0, n, "all")) for n in range(1, 7)] == bell
    ok &= [sum(1 for _ in enumerate_partitions(0, n, "noncrossing")) for n in range(1, 7)] == catalan[1:]
    ok &= [sum(1 for _ in enumerate_partitions(0, 2 * k, "noncrossing-pair")) for k in range(1, 6)] == catalan[1:6]
    report(1, ok)


def test_criterion_02_functor_laws():
    start = time.perf_counter()
    parts = [p for k in range(4) for l in range(4) for p in enumerate_partitions(k, l, "all")]
    violations = 0
    for N in (1, 2, 3):
        violations += len(check_functor_laws(parts, N).violations)
    elapsed = time.perf_counter() - start
    report(2, violations == 0 and elapsed < 60, f"{violations} violations, {elapsed:.1f}s")


def test_criterion_03_linear_independence():
    nc = builtin("NC")
    bad = []
    for k in range(7):
        for l in range(7 - k):
            ps = nc.members("x" * k, "x" * l)
            for N in (4, 5):
                if gram_rank(ps, N) != len(ps):
                    bad.append((k, l, N))
    report(3, not bad, f"deficient: {bad}" if bad else "")


def test_criterion_04_fusion_rules():
    nc, nc2 = builtin("NC"), builtin("NC2")
    ok = fuse_noncrossing(identity(), identity(), nc2, Labeller(nc2)).words() == Counter({("x", "x"): 1, (): 1})
    ok &= word_tensor(("x", "x"), ("x", "x"), orthogonal_set()) == Counter({("x",) * 4: 1, ("x", "x"): 1, (): 1})
    ok &= fuse_noncrossing(identity(), identity(), nc, Labeller(nc)).words() == Counter({("x", "x"): 1, ("x",): 1, (): 1})
    mismatches = 0
    for c in (nc, nc2, builtin("C_gamma0", named_group("Z2"))):
        mismatches += sum(1 for _, _, lhs, rhs in bridge_check(c, max_len=3) if lhs != rhs)
    report(4, ok and mismatches == 0, f"{mismatches} bridge mismatches")


def test_criterion_05_general_fusion():
    nc = builtin("NC")
    lab = Labeller(nc)
    projs = [p for k in (1, 2, 3) for p in proj_enumerate(nc, "x" * k) if p.through_blocks <= 2]
    bad = 0
    for p, q in itertools.product(projs, repeat=2):
        if not same_decomposition(fuse_noncrossing(p, q, nc, lab), fuse_general(p, q, nc, lab)):
            bad += 1
    report(5, bad == 0, f"{len(projs) ** 2} pairs, {bad} disagreements")


def test_criterion_06_classification_round_trips():
    zoo = [
        orthogonal_set(),
        unitary_set(),
        group_set(named_group("Z2")),
        group_set(named_group("Z3")),
        group_set(named_group("Z2xZ2")),
        zigzag_set(),
        realize(FusionTriple(0, 0, [(named_group("Z2"), 1)])),
        disjoint_union(orthogonal_set("o"), zigzag_set()),
    ]
    zoo_ok = all(is_isomorphic_fusion(realize(classify(s)), s) for s in zoo)
    triples = [FusionTriple(o, u, comps) for o in range(3) for u in range(3) for comps in [[]] + [[(g, n)] for g in small_groups(6) for n in range(3)]]
    bad = [t for t in triples if not triples_isomorphic(classify(realize(t)), t)]
    report(6, zoo_ok and not bad, f"{len(triples)} triples, {len(bad)} failures")


def test_criterion_07_cs_bridge():
    sets = [idempotent_set(), group_set(named_group("Z2")), group_set(named_group("Z3")), zigzag_set()]
    ok = all(is_isomorphic_fusion(one_block_fusion_set(build_CS(s), 8)[0], s) for s in sets)
    report(7, ok)


def test_criterion_08_block_stability():
    stable = all(is_block_stable(c, 6) for c in (builtin("NC"), builtin("NC2"), builtin("C_gamma0", named_group("Z2"))))
    two_singletons = closure([ColouredPartition.parse("|ab")], 4)
    report(8, stable and not is_block_stable(two_singletons, 4))


def test_criterion_09_averaging():
    ok = True
    for name in ("Z2", "Z3"):
        g = named_group(name)
        one_block = [p for k in range(3) for l in range(3) if k + l for p in group_coloured(g, k, l) if p.num_blocks == 1]
        for p, q in itertools.product(one_block, repeat=2):
            rhs = DiagramElement(p.k + q.k, p.l + q.l)
            for k in g.names:
                rhs = rhs + averaged_L(tensor(p, translate(q, g, k)), g)
            ok &= averaged_L(p, g).tensor(averaged_L(q, g)) == rhs
            if q.l == p.k:
                lhs = algebra_multiply(averaged_L(p, g), averaged_L(q, g), THETA)
                ks = [k for k in g.names if translate(q, g, k).lower == p.upper]
                # a non-empty middle row pins down k; an empty one lets every k through
                ok &= len(ks) <= 1 or p.k == 0
                rhs = DiagramElement(q.k, p.l)
                for k in ks:
                    res = compose(p, translate(q, g, k))
                    rhs = rhs + averaged_L(res.result, g).scale(THETA ** res.loops)
                ok &= lhs == rhs
        small = [p for k in range(3) for l in range(3) if 0 < k + l <= 3 for p in group_coloured(g, k, l)]
        for p, q in itertools.product(small[:30], repeat=2):
            ok &= averaged_M(p, g).tensor(averaged_M(q, g)) == averaged_M(tensor(p, q), g)
        for p in small:
            total = DiagramElement(p.k, p.l)
            for gs in itertools.product(g.names, repeat=p.num_blocks):
                total = total + averaged_L(translate_blocks(p, g, gs), g)
            ok &= total.scale(sympy.Rational(1, g.order)) == averaged_M(p, g)
        # M_p o M_q stays in the span of the M's: coefficients are constant on block-translation orbits
        for p, q in itertools.product(small[:12], repeat=2):
            if q.l == p.k:
                product = algebra_multiply(averaged_M(p, g), averaged_M(q, g), THETA)
                for r, c in product.terms.items():
                    ok &= all(product.terms.get(translate_blocks(r, g, gs)) == c for gs in itertools.product(g.names, repeat=r.num_blocks))
    report(9, ok)


def test_criterion_10_word_sets():
    reports = [appendix_check(unitary_set(), max_len=6), appendix_check(zigzag_set(), max_len=6)]
    detector = eq_main_holds(unitary_set()) and eq_main_holds(zigzag_set()) and not eq_main_holds(orthogonal_set())
    report(10, all(r.ok for r in reports) and detector)


def test_criterion_11_diagram_algebra():
    cupcap = new_partition(2, 2, [[1, 2], [3, 4]])
    e = [tensor_all([identity()] * i + [cupcap] + [identity()] * (1 - i)) for i in range(2)]
    x = [DiagramElement.of(p) for p in e]
    ok = all(algebra_multiply(a, a, THETA) == a.scale(THETA) for a in x)
    ok &= algebra_multiply(x[0], algebra_multiply(x[1], x[0], THETA), THETA) == x[0]
    ok &= algebra_multiply(x[1], algebra_multiply(x[0], x[1], THETA), THETA) == x[1]
    basis = list(enumerate_partitions(3, 3, "noncrossing-pair"))
    for N in (2, 3):
        for p, q in itertools.product(basis, repeat=2):
            formal = algebra_multiply(DiagramElement.of(p), DiagramElement.of(q), THETA)
            ok &= formal.evaluate(N, THETA) == tp_matrix(p, N) @ tp_matrix(q, N)
    report(11, ok)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
