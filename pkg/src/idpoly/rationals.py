"""Rational arithmetic backend selection.

The solver loops (simplex pivoting, lattice point enumeration) spend nearly
all of their time on rational arithmetic, so the number type matters more
than anything else for speed.  When gmpy2 is importable its mpq type is
used inside those loops; otherwise fractions.Fraction serves as a pure
Python fallback.  Either way the public API of the package only ever
exposes plain Fraction values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable


@dataclass(frozen=True)
class Backend:
    """A rational constructor plus its name, for reporting and benchmarks."""

    name: str
    ratio: Callable[..., Any]


FRACTION_BACKEND = Backend("fractions", Fraction)

try:
    from gmpy2 import mpq as _mpq
except ImportError:
    GMPY2_BACKEND = None
    DEFAULT_BACKEND = FRACTION_BACKEND
else:
    GMPY2_BACKEND = Backend("gmpy2", _mpq)
    DEFAULT_BACKEND = GMPY2_BACKEND


def available_backends() -> tuple[Backend, ...]:
    if GMPY2_BACKEND is None:
        return (FRACTION_BACKEND,)
    return (GMPY2_BACKEND, FRACTION_BACKEND)


def get_backend(name: str | None = None) -> Backend:
    """Look up a backend by name, or return the default when name is None."""
    if name is None:
        return DEFAULT_BACKEND
    for backend in available_backends():
        if backend.name == name:
            return backend
    raise ValueError(f"unknown rational backend {name!r}")


def as_fraction(value: Any) -> Fraction:
    """Convert a backend rational (or int) to a plain Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))
