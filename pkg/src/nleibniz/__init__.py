"""Generalized metric n-Leibniz algebras, metric Lie algebras and Lie triple data.

Everything is exact over the rationals.  The main entry points:

* :func:`parse_algebra`, :func:`parse_triple` -- JSON input;
* :mod:`nleibniz.axioms` -- exhaustive identity checks with witnesses;
* :func:`lift`, :func:`reconstruct` -- both directions of the correspondence;
* :func:`solve_derivations` and the transfer functions in :mod:`nleibniz.morphisms`.
"""

from .axioms import Report, check_algebra, check_triple
from .correspondence import LiftResult, d_operator, image_of_D, lift, reconstruct
from .kernels import BACKEND
from .linalg import RatMatrix
from .morphisms import (
    DerivationSpace,
    check_automorphism,
    induce_from_triple_automorphism,
    induce_from_triple_derivation,
    induce_lie_automorphism,
    induce_lie_derivation,
    solve_derivations,
)
from .model import (
    LieTripleData,
    MetricLieAlgebra,
    NLeibnizAlgebra,
    SymTensor,
    parse_algebra,
    parse_triple,
    serialize_algebra,
    serialize_triple,
)

__version__ = "0.1.0"
