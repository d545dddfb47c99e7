"""Exact classification of unipotently ramified, Frobenius-semisimple
Weil-Deligne pairs (s, N) in classical groups, with tame-monodromy extraction
and the fiber functors of log connections with Frobenius."""

from .conjugacy import (ChainInvariant, chain_invariant, class_defined_over, element_conjugate,
                        g_equivalent, gl_equivalent)
from .errors import WDError
from .field import QQ, NumberField, gaussian_field
from .groups import GroupSpec, build_rep, parse_word, rep_family
from .matrix import Matrix
from .verdict import Verdict
from .wd import WDPair, apply_conjugation, pushforward, rescale_nilpotent, semisimplify, validate_pair

__version__ = "0.1.0"

__all__ = [
    "ChainInvariant",
    "GroupSpec",
    "Matrix",
    "NumberField",
    "QQ",
    "Verdict",
    "WDError",
    "WDPair",
    "apply_conjugation",
    "build_rep",
    "chain_invariant",
    "class_defined_over",
    "element_conjugate",
    "g_equivalent",
    "gaussian_field",
    "gl_equivalent",
    "parse_word",
    "pushforward",
    "rep_family",
    "rescale_nilpotent",
    "semisimplify",
    "validate_pair",
]
