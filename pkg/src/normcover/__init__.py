"""Exact finite checks for bi-invariant norms, conjugate balls and covering conditions."""

from .coverage import CoverageReport, EpsSeq, FiniteGroup, finite
from .groups import CyclicGroup, GroupAdapter, IetGroup, SLGroup, SymmetricGroup
from .iet import IetMap
from .linear import CapabilityError, MatFp
from .perm import ConjProductCert, Perm

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "ConjProductCert",
    "CoverageReport",
    "CyclicGroup",
    "EpsSeq",
    "FiniteGroup",
    "GroupAdapter",
    "IetGroup",
    "IetMap",
    "MatFp",
    "Perm",
    "SLGroup",
    "SymmetricGroup",
    "finite",
]
