"""Projective partitions, their tensor products, and the free fusion semiring."""

from pqg.categories import builtin
from pqg.fusion import format_sum, orthogonal_set, word_tensor
from pqg.groups import named_group
from pqg.partitions import identity
from pqg.reps import Labeller, bridge_check, fuse_noncrossing, one_block_fusion_set, proj_enumerate

nc, nc2 = builtin("NC"), builtin("NC2")
for name, c in (("NC", nc), ("NC2", nc2)):
    print(f"{name}: projectives on 1, 2, 3 points:", [len(proj_enumerate(c, "x" * k)) for k in (1, 2, 3)])
    print("   ", fuse_noncrossing(identity(), identity(), c, Labeller(c)).text("u1⊗u1"))

# the same rules, written in the semiring on words
o = orthogonal_set()
print("over the orthogonal set: xx⊗xx =", format_sum(word_tensor(("x", "x"), ("x", "x"), o)))

# the one-block classes of a category form a fusion set
for name, c in (("NC", nc), ("NC2", nc2), ("C_gamma0(Z2)", builtin("C_gamma0", named_group("Z2")))):
    s, _ = one_block_fusion_set(c)
    rows = list(bridge_check(c, max_len=2))
    bad = sum(1 for *_, lhs, rhs in rows if lhs != rhs)
    print(f"{name}: fusion set {s.to_json()['elements']}, {len(rows)} word products checked, {bad} mismatches")
