"""Partitions, their operations, and the linear maps they define."""

from pqg.partitions import ColouredPartition, adjoint, compose, enumerate_partitions, identity, new_partition, tensor
from pqg.tensor_maps import check_functor_laws, gram_rank, tp_dense

cup = ColouredPartition.parse("|aa")
cap = adjoint(cup)
print("cup:", cup.text(), " cap:", cap.text())

# closing a cup with a cap leaves one loop and the empty partition
res = compose(cap, cup)
print("cap o cup:", repr(res.result.text()), "loops:", res.loops)

# a crossing partition and its witness
p = new_partition(4, 4, [[1, 8], [2, 6], [3, 4], [5, 7]])
print(p.text(), "noncrossing:", p.is_noncrossing())
print("with a strand on the right:", tensor(p, identity()).text())

# how many partitions of each kind live on n points
for n in range(1, 7):
    counts = [sum(1 for _ in enumerate_partitions(0, n, kind)) for kind in ("all", "noncrossing", "noncrossing-pair")]
    print(f"n={n}: all {counts[0]:4d}  noncrossing {counts[1]:4d}  noncrossing pairings {counts[2]:3d}")

# T_p for the cup at N=3 is the vector sum_i e_i (x) e_i
print("T_cup at N=3:", tp_dense(cup, 3)[:, 0].tolist())

# every law on all partitions with at most two points per row
parts = [q for k in range(3) for l in range(3) for q in enumerate_partitions(k, l, "all")]
for N in (1, 2, 3):
    report = check_functor_laws(parts, N)
    print(f"N={N}: {report.tensor_checks} tensor and {report.composition_checks} composition checks, {len(report.violations)} violations")

# noncrossing partitions give independent maps once N is large enough
nc = list(enumerate_partitions(0, 6, "noncrossing"))
for N in (2, 3, 4):
    print(f"rank of the {len(nc)} noncrossing vectors on 6 points at N={N}: {gram_rank(nc, N)}")
