"""Fusion sets: axioms, classification into triples, and realisation back."""

import json
from pathlib import Path

from pqg.fusion import (
    FusionSet,
    FusionTriple,
    classify,
    disjoint_union,
    group_set,
    is_isomorphic_fusion,
    orthogonal_set,
    realize,
    unitary_set,
)
from pqg.groups import named_group

zset = FusionSet.from_json(json.loads((Path(__file__).parent / "data" / "zset.json").read_text()))
print("zigzag set elements:", zset.elements)
print("axioms:", zset.check_axioms())

zoo = {
    "orthogonal": orthogonal_set(),
    "unitary": unitary_set(),
    "Z3": group_set(named_group("Z3")),
    "zigzag": zset,
    "orthogonal + zigzag": disjoint_union(orthogonal_set("o"), zset),
}
for name, s in zoo.items():
    triple = classify(s)
    back = realize(triple)
    print(f"{name:20s} -> {json.dumps(triple.to_json())}  realised set of {len(back)} is isomorphic: {is_isomorphic_fusion(back, s)}")

# a groupoid with vertex group S3 on three objects
big = realize(FusionTriple(0, 0, [(named_group("S3"), 2)]))
print("S3 on three objects:", len(big), "elements, classifies to", json.dumps(classify(big).to_json()))

# a set that breaks the Frobenius axiom is refused
bad = FusionSet(["x", "y"], {"x": "x", "y": "y"}, {("x", "x"): "y"})
print("broken set axioms:", bad.check_axioms())
