"""Coloured set partitions, categories of partitions, their tensor realisations and free fusion semirings."""

from .categories import Membership, builtin, closure, is_block_stable
from .fusion import FusionSet, FusionTriple, classify, realize, word_tensor
from .groups import FiniteGroup, named_group
from .partitions import ColouredPartition, ColourSet, Partition, adjoint, compose, enumerate_partitions, tensor
from .reps import fuse_general, fuse_noncrossing, is_projective, one_block_fusion_set
from .tensor_maps import DiagramElement, gram_rank, tp_matrix

__all__ = [
    "ColourSet",
    "ColouredPartition",
    "DiagramElement",
    "FiniteGroup",
    "FusionSet",
    "FusionTriple",
    "Membership",
    "Partition",
    "adjoint",
    "builtin",
    "classify",
    "closure",
    "compose",
    "enumerate_partitions",
    "fuse_general",
    "fuse_noncrossing",
    "gram_rank",
    "is_block_stable",
    "is_projective",
    "named_group",
    "one_block_fusion_set",
    "realize",
    "tensor",
    "tp_matrix",
    "word_tensor",
]
