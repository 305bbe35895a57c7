"""Categories of partitions: built-in families, generated closures, block stability."""

from pqg.categories import FreeProductCategory, Membership, builtin, closure, is_block_stable
from pqg.groups import named_group
from pqg.partitions import ColouredPartition, ColourSet, one_block

nc, nc2 = builtin("NC"), builtin("NC2")
fork = one_block(["x", "x"], ["x"])
print("fork in NC:", nc.contains(fork).name, " in NC2:", nc2.contains(fork).name)

# a group-coloured family: a block belongs when its colours multiply to the identity
z2 = builtin("C_gamma0", named_group("Z2"))
print("pi(g g | e) in C_gamma0(Z2):", z2.contains(one_block(["g", "g"], ["e"])).name)

# closures are only decided up to the bound; beyond it the answer is UNKNOWN
gen = closure([fork, ColouredPartition.parse("|aa")], 4)
print("closure of fork and cup, sizes on 0..4 lower points:", [len(list(gen.lower_members(n))) for n in range(5)])
print("a 6-point partition:", gen.contains(one_block(["x"] * 3, ["x"] * 3)).name)

# free products keep the two colour families apart
a = builtin("NC2", colours=ColourSet.self_conjugate(["a"]))
b = builtin("NC", colours=ColourSet.self_conjugate(["b"]))
free = FreeProductCategory(a, b)
nested = ColouredPartition.from_labels(0, 4, [0, 1, 1, 0], (), ("a", "b", "b", "a"))
print("a-cap around a b-block in the free product:", free.contains(nested) is Membership.YES)

# block stability: every block of every member is itself a member
for name, c in (("NC", nc), ("NC2", nc2), ("C_gamma0(Z2)", z2)):
    print(f"{name} block stable: {is_block_stable(c, 6)}")
two_singletons = closure([ColouredPartition.parse("|ab")], 4)
print("closure of two singletons block stable:", is_block_stable(two_singletons, 4))
