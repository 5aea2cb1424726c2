"""Representation data and certified Khintchine constants for non-Kac
compact quantum groups.

The public surface groups into:

* :mod:`cqgkhint.rootsys` — root systems, Freudenthal weight multiplicities,
  quantum dimensions and modular-matrix spectra (all exact rationals);
* :mod:`cqgkhint.chebyshev` — the dimension polynomials ``f_k`` / ``g_k`` with
  certified growth envelopes;
* :mod:`cqgkhint.fusion` — the su2/so3-type fusion rings;
* :mod:`cqgkhint.models` — the three model families behind one graded API;
* :mod:`cqgkhint.schur` — exact Schur-orthogonality and modular-automorphism
  identity checks;
* :mod:`cqgkhint.khintchine` — ``K_p`` with certified tail bounds, decay
  rates and norm-equivalence constants;
* :mod:`cqgkhint.cli` — the ``cqgkhint`` command-line tool.
"""

from .chebyshev import ChebEnvelope, chebyshev_f, chebyshev_g, envelope
from .fusion import tensor_decompose, tensor_with_generator, trivial_multiplicity
from .khintchine import (
    ConstantsReport,
    DecayReport,
    KpEvaluator,
    KpReport,
    certified_tail,
    decay_rate,
    kp_constant,
    norm_equivalence_constants,
)
from .models import (
    DrinfeldJimboModel,
    FreeOrthogonalModel,
    IrrData,
    QuantumAutomorphismModel,
    construct_model,
    parse_model_spec,
)
from .rootsys import QSpectrum, RootSystem, build_root_system
from .schur import (
    CentralSeries,
    CoefficientVector,
    apply_modular_automorphism,
    apply_modular_imaginary,
    character_vector,
    l2_khintchine_check,
    l2_norm,
    l2_norm_squared,
    modular_duality_check,
    smoothed_character_norm_check,
    symmetrize_spectrum,
)
from .verify import VerifyReport, verify_model

__version__ = "0.1.0"

__all__ = [
    "ChebEnvelope",
    "chebyshev_f",
    "chebyshev_g",
    "envelope",
    "tensor_decompose",
    "tensor_with_generator",
    "trivial_multiplicity",
    "ConstantsReport",
    "DecayReport",
    "KpEvaluator",
    "KpReport",
    "certified_tail",
    "decay_rate",
    "kp_constant",
    "norm_equivalence_constants",
    "DrinfeldJimboModel",
    "FreeOrthogonalModel",
    "IrrData",
    "QuantumAutomorphismModel",
    "construct_model",
    "parse_model_spec",
    "QSpectrum",
    "RootSystem",
    "build_root_system",
    "CentralSeries",
    "CoefficientVector",
    "apply_modular_automorphism",
    "apply_modular_imaginary",
    "character_vector",
    "l2_khintchine_check",
    "l2_norm",
    "l2_norm_squared",
    "modular_duality_check",
    "smoothed_character_norm_check",
    "symmetrize_spectrum",
    "VerifyReport",
    "verify_model",
    "__version__",
]
