"""Working-precision helpers shared by every module.

Two arithmetic modes are supported: IEEE double (plain Python floats) and
an extended mode backed by a private mpmath context at ``EXTENDED_DPS``
decimal digits. The context is never mutated after import, so values from
it can be used from any thread.
"""

from __future__ import annotations

import math
from typing import Literal

from mpmath.ctx_mp import MPContext

EXTENDED_DPS = 50

ext = MPContext()
ext.dps = EXTENDED_DPS

Precision = Literal["double", "extended"]

PRECISIONS = ("double", "extended")

# Absolute floor for relative comparisons in the decay regime.
TINY = 1e-300


def is_extended(x) -> bool:
    return isinstance(x, ext.mpf)


def check_precision(precision: str) -> str:
    if precision not in PRECISIONS:
        raise ValueError(f"precision must be one of {PRECISIONS}, got {precision!r}")
    return precision


def to_working(x, precision: str):
    """Convert ``x`` into the number type used by ``precision``."""
    check_precision(precision)
    if precision == "double":
        return float(x)
    if is_extended(x):
        return x
    # floats convert exactly (binary value), strings are parsed at full precision
    return ext.mpf(x)


def precision_of(x) -> str:
    return "extended" if is_extended(x) else "double"


def machine_eps(precision: str) -> float:
    return 2.0**-52 if precision == "double" else 10.0 ** -(EXTENDED_DPS - 2)


def sqrt(x):
    return ext.sqrt(x) if is_extended(x) else math.sqrt(x)


def log(x):
    return ext.log(x) if is_extended(x) else math.log(x)


def exp(x):
    return ext.exp(x) if is_extended(x) else math.exp(x)


def fraction(num: int, den: int, precision: str):
    """Exact ratio ``num/den`` rounded once into the working precision."""
    if check_precision(precision) == "double":
        return num / den
    return ext.mpf(num) / den
