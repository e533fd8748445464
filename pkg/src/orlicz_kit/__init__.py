"""Numerical toolkit for classical and noncommutative Orlicz spaces.

Subpackage map:

    young            Young functions, complements, growth checks
    rearrange        simple functions, decreasing profiles, modulars
    classical_space  Luxemburg / Orlicz norms, duality, entropy, regularity
    quantum_space    matrix observables, singular profiles, weighted spaces
    maps             positive maps, majorization, contraction checks
    verification     the acceptance suite driving `orlicz-kit verify`
    cli              the command-line interface

All domain values are immutable; every operation is a pure function, safe
for unsynchronized concurrent use.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    DomainError,
    InconclusiveQuadratureError,
    OrliczKitError,
)

__all__ = [
    "__version__",
    "OrliczKitError",
    "DomainError",
    "DimensionMismatchError",
    "ConvergenceError",
    "InconclusiveQuadratureError",
]
