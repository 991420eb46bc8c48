"""Points on the Riemann sphere and the chordal metric."""
from __future__ import annotations

import math
from typing import Union


class _Infinity:
    """The point at infinity. A single shared instance, ``INF``."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("meroimm-INF")


INF = _Infinity()

SpherePoint = Union[complex, _Infinity]


def is_inf(p: SpherePoint) -> bool:
    if isinstance(p, _Infinity):
        return True
    if isinstance(p, complex):
        return not (math.isfinite(p.real) and math.isfinite(p.imag))
    return False


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Chordal distance on the sphere of diameter 2.

    For finite points, 2|p-q| / sqrt((1+|p|^2)(1+|q|^2)); the limits apply
    when an argument is INF.  Values lie in [0, 2]; antipodal points (for
    instance 0 and INF) are at distance exactly 2.
    """
    pi, qi = is_inf(p), is_inf(q)
    if pi and qi:
        return 0.0
    if pi or qi:
        af = abs(complex(q if pi else p))
        if af > 1e140:
            return 2.0 / af
        return min(2.0, 2.0 / math.sqrt(1.0 + af * af))
    p = complex(p)
    q = complex(q)
    ap, aq = abs(p), abs(q)
    # 1+|z|^2 overflows near 1e154; scale through the INF limit instead.
    if ap > 1e140 or aq > 1e140:
        if ap > 1e140 and aq > 1e140:
            # both essentially at infinity in double precision
            return min(2.0, abs(1.0 / p - 1.0 / q) * 2.0)
        finite = q if ap > aq else p
        return min(2.0, 2.0 / math.sqrt(1.0 + abs(finite) ** 2))
    d = 2.0 * abs(p - q) / math.sqrt((1.0 + ap * ap) * (1.0 + aq * aq))
    return min(2.0, d)
