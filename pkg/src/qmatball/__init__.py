"""qmatball: exact symbolic engine for q-deformed matrix-ball function algebras.

The package is organized in layers:

* :mod:`qmatball.field`     -- the exact coefficient field (Gaussian rationals
  extended by the deformation root ``s`` with ``s**2 == q``),
* :mod:`qmatball.words`     -- free noncommutative polynomials and confluent
  rewriting presentations,
* :mod:`qmatball.braiding`  -- the Hecke-type braiding tables driving every
  commutation rule,
* :mod:`qmatball.algebras`  -- named algebra presets (coordinate rings, their
  conjugates, differential envelopes, the projector-extended function algebra),
* :mod:`qmatball.uqaction`  -- the quantized-symmetry generators acting as a
  module algebra,
* :mod:`qmatball.qminors`   -- quantum minors, the quantum determinant, and
  the compact-form star operation on the free matrix bialgebra,
* :mod:`qmatball.fockrep`   -- certified ladder-tensor operator
  representations and the cyclic-module comparison,
* :mod:`qmatball.integral`  -- the invariant positive integral,
* :mod:`qmatball.cli`       -- the ``qmb`` command-line front end.
"""

from .field import (
    GaussRat,
    Scalar,
    ZERO,
    ONE,
    I,
    S,
    Q,
    s_pow,
    q_pow,
    from_int,
    from_fraction,
    q_bracket,
    q_factorial,
    q_exp_coeffs,
)
from .words import GeneratorSymbol, NCPoly, Presentation, sym
from .braiding import rhat, rhat_operator, verify_rhat_properties
from .algebras import (
    AlgebraPreset,
    PRESET_NAMES,
    differential,
    make_preset,
    parse_preset,
    star,
)
from .uqaction import E, F, K, Kinv, act, antipode, coproduct, counit
from .qminors import qdet, qminor, volume_element
from .fockrep import (
    TruncatedOperator,
    default_cutoff,
    fock_basis,
    gram_matrix,
    rep_coordinate,
    rep_coordinate_star,
    rep_letter,
    rep_pol_poly,
    rep_projector,
)
from .integral import integral_nu, invariance_defect, modular_exponent

__version__ = "0.1.0"

__all__ = [
    "GaussRat",
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "S",
    "Q",
    "s_pow",
    "q_pow",
    "from_int",
    "from_fraction",
    "q_bracket",
    "q_factorial",
    "q_exp_coeffs",
    "GeneratorSymbol",
    "NCPoly",
    "Presentation",
    "sym",
    "rhat",
    "rhat_operator",
    "verify_rhat_properties",
    "AlgebraPreset",
    "PRESET_NAMES",
    "differential",
    "make_preset",
    "parse_preset",
    "star",
    "E",
    "F",
    "K",
    "Kinv",
    "act",
    "antipode",
    "coproduct",
    "counit",
    "qdet",
    "qminor",
    "volume_element",
    "TruncatedOperator",
    "default_cutoff",
    "fock_basis",
    "gram_matrix",
    "rep_coordinate",
    "rep_coordinate_star",
    "rep_letter",
    "rep_pol_poly",
    "rep_projector",
    "integral_nu",
    "invariance_defect",
    "modular_exponent",
    "__version__",
]
