"""Exact computation of fundamental-group-scheme decompositions of pinched
varieties: finite fields, local algebras, noncommutative Hopf presentations,
minimal curves and noncommutative Witt algebras, Verschiebung filtrations,
and the pi1 pipeline/CLI."""

__version__ = "0.1.0"

from .fields import (  # noqa: F401
    Field,
    SemilinearMap,
    embed,
    frobenius_elem,
    make_field,
    semilinear_compose,
    semilinear_kernel,
)
from .localalgebra import (  # noqa: F401
    AlgebraElement,
    AlgebraSpec,
    LocalAlgebra,
    build,
    change_basis,
    frobenius_power,
    height,
    multiply,
    validate,
)
from .hopf import (  # noqa: F401
    HopfPresentation,
    NcPoly,
    TensorSquare,
    abelianize,
    antipode,
    check_axioms,
    coproduct,
    counit,
    finite_subcoalgebra,
    free_product,
    make_presentation,
    verschiebung,
)
