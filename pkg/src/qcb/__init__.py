"""qcb: exact canonical-basis computations for symmetric quantum groups.

Coefficients live in Z[v,v^-1] or Q(v), always exact.  The package computes
canonical bases of the negative half f, of integrable weight modules and
their tensor products (via the quasi-R-matrix), realizes tensor products
inside a thickened algebra, builds the modified quantum group U-dot, and
verifies positivity of all the resulting structure constants at small rank.
"""

from .coeff import LaurentPoly, RationalFn, v, quantum_int, quantum_factorial, quantum_binomial, lattice_test

__all__ = [
    "LaurentPoly",
    "RationalFn",
    "v",
    "quantum_int",
    "quantum_factorial",
    "quantum_binomial",
    "lattice_test",
]
