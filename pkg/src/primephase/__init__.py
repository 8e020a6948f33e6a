"""Quantum mechanics on the N x N phase space over the prime field F_N.

The library builds, and verifies against a literal group-algebra model, the
Schrodinger representation of the Heisenberg group H_1(F_N), the Weil
(metaplectic) representation of SL(2, F_N), discrete Wigner and
Fourier-Wigner distributions with their measurement map, the conserved
moment subspaces, and the finite free-particle and oscillator dynamics.
"""

from .fields import (
    FieldError,
    PrimeField,
    QuadExt,
    QuadExtElement,
    ff_inv,
    find_nonsquare,
    legendre,
    lift_symmetric,
)
from .scalars import CycloField, Cyclotomic, gauss_sum, gauss_sum_closed_form, zeta
from .cyclic import (
    derivative,
    derivative_matrix,
    dft,
    ghat,
    idft,
    translate,
)
from .sl2 import SL2Matrix, GeneratorWord, decompose, group_order
from .heisenberg import (
    HeisenbergElement,
    hmul,
    schrodinger_matrix,
    schrodinger_of,
    sl2_automorphism,
)
from .metaplectic import WeilOperator, intertwine_check, parity_operator, weil, weil_generator
from .wigner import (
    FourierWignerTable,
    MomentVector,
    StateVector,
    WignerTable,
    covariance_check,
    expectation_char,
    fourier_wigner,
    moments,
    weyl_ordered,
    weyl_residual_report,
    wigner,
)
from .subspaces import bform, dm_invariant, predict_moments, rho
from .dynamics import (
    OscillatorGenerator,
    discrete_trig,
    evolve_oscillator,
    free_particle,
    oscillator_generator,
)
from .oracle import AlgebraElement, JacobiElement, build_ideal, doubled_checks, ga_mul, verify_generator_action

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
