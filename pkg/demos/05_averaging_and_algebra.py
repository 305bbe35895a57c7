"""Group averages of coloured partitions, the diagram algebra, and word-set checks."""

import itertools

import sympy

from pqg.fusion import appendix_check, eq_main_holds, orthogonal_set, unitary_set, zigzag_set
from pqg.groups import named_group
from pqg.partitions import identity, new_partition, one_block, tensor, tensor_all
from pqg.tensor_maps import DiagramElement, algebra_multiply, averaged_L, averaged_M, tp_matrix, translate

theta = sympy.Symbol("theta")
z3 = named_group("Z3")
p = one_block(["e", "g1"], ["g2"])
q = one_block(["g1"], [])
pq = tensor(p, q)
# L moves all colours together, M moves each block on its own
print("for a two-block partition, L has", len(averaged_L(pq, z3)), "terms and M has", len(averaged_M(pq, z3)))

# L_p (x) L_q is the sum of L over p (x) k.q
rhs = DiagramElement(p.k + q.k, p.l + q.l)
for k in z3.names:
    rhs = rhs + averaged_L(tensor(p, translate(q, z3, k)), z3)
print("L_p (x) L_q = sum_k L_{p (x) k.q}:", averaged_L(p, z3).tensor(averaged_L(q, z3)) == rhs)

# Temperley-Lieb relations on three strands, with a formal loop parameter
cupcap = new_partition(2, 2, [[1, 2], [3, 4]])
e1 = DiagramElement.of(tensor(cupcap, identity()))
e2 = DiagramElement.of(tensor(identity(), cupcap))
print("e1 e1 = theta e1:", algebra_multiply(e1, e1, theta) == e1.scale(theta))
print("e1 e2 e1 = e1:", algebra_multiply(e1, algebra_multiply(e2, e1, theta), theta) == e1)
three = [tensor(cupcap, identity()), tensor(identity(), cupcap), tensor_all([identity()] * 3)]
ok = all(
    algebra_multiply(DiagramElement.of(a), DiagramElement.of(b), theta).evaluate(N, theta) == tp_matrix(a, N) @ tp_matrix(b, N)
    for a, b in itertools.product(three, repeat=2)
    for N in (2, 3)
)
print("evaluation at theta = N matches the matrices:", ok)

# word-set checks on the free semiring
for name, s in (("orthogonal", orthogonal_set()), ("unitary", unitary_set()), ("zigzag", zigzag_set())):
    print(f"{name}: main equation holds: {eq_main_holds(s)}")
for name, s in (("unitary", unitary_set()), ("zigzag", zigzag_set())):
    r = appendix_check(s, max_len=6)
    print(f"{name}: partition {r.partition_ok}, F o D misses D {r.f_circ_d_disjoint}, r_i o E disjoint {r.r_circ_e_disjoint}, sizes {r.sizes}")
