"""Crossed products of finite-dimensional C*-algebras by partial automorphisms.

A finite-dimensional C*-algebra is a list of full matrix blocks, and a partial
automorphism between ideals is a dimension-preserving partial injection of
blocks.  The package computes the ideals ``D_n``, the orbit structure of the
crossed product, its dual coaction and the resulting duality verdict, and
cross-checks structure claims against an exact matrix *-algebra engine.
"""

from .algebra import BlockAlgebra, IdealSet, ideal_complement_in, ideal_product, ideal_sum
from .coaction import (
    DualityVerdict,
    NotCompletelyNonautomorphicError,
    three_way_decomposition,
    dual_coaction_check,
    duality_verdict,
    inner_crossed_product,
    inner_partition,
    isolated_quotient_check,
)
from .corpus import (
    PiRational,
    SiebenSet,
    enumerate_systems,
    named_system,
    sieben_density_gap,
    sieben_disjointness,
)
from .crossed import (
    GradedElement,
    StructureDescriptor,
    graded_adjoint,
    graded_multiply,
    oracle_check,
    spectral_dims,
    standard_rep,
    structure,
)
from .partial import (
    InvalidSystemError,
    NotInvariantError,
    PartialInjection,
    PartialSystem,
    apply,
    classify,
    power_range,
    ladder_ideal,
    orbits,
    power,
    quotient,
    restrict,
    subquotient_structure,
    tensor_with_block,
    wold,
)
from .star import MatrixStarAlgebra, saturate, wedderburn
from .sysfile import SystemFileError, load_system, parse_system, to_json, to_text

__all__ = [name for name in dir() if not name.startswith("_")]
