"""Sampled paths in the plane, adaptive contour quadrature, and winding numbers.

Contours are piecewise-linear paths through the stored samples; circles are
built analytically from uniform angular samples so that closure is exact.
Winding numbers come from continuous-argument tracking with adaptive
bisection until every argument step is below pi/2; zero/pole counts come
independently from the argument-principle integral.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .config import CLEARANCE_FACTOR, MIN_MODULUS, QUAD_TOL, SAMPLE_BUDGET
from .errors import (
    InputError,
    InternalConsistencyError,
    PathTooCloseError,
    QuadratureBudgetError,
    RefinementBudgetError,
    ZeroOnContourError,
)
from .rational import RationalMap


@dataclass(frozen=True)
class Disc:
    """Closed disc in the plane."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0):
            raise InputError("disc radius must be positive")

    def contains(self, z: complex, margin: float = 0.0) -> bool:
        return abs(complex(z) - self.center) <= self.radius - margin

    def contains_disc(self, other: "Disc", margin: float = 0.0) -> bool:
        return (
            abs(other.center - self.center) + other.radius
            <= self.radius - margin
        )

    def boundary(self, samples: int = 256) -> "Contour":
        return Contour.circle(self.center, self.radius, samples=samples)

    def boundary_distance(self, z: complex) -> float:
        return abs(abs(complex(z) - self.center) - self.radius)


@dataclass(frozen=True)
class Contour:
    """Piecewise-linear sampled path; closed paths repeat the first sample last."""

    samples: tuple[complex, ...]
    closed: bool
    budget: int = SAMPLE_BUDGET

    def __post_init__(self):
        samples = tuple(complex(s) for s in self.samples)
        object.__setattr__(self, "samples", samples)
        if len(samples) < 2:
            raise InputError("a contour needs at least two samples")
        if self.closed and samples[0] != samples[-1]:
            raise InputError("closed contours must repeat the first sample last")
        for a, b in zip(samples, samples[1:]):
            if a == b:
                raise InputError("consecutive contour samples must be distinct")
        if self.budget < len(samples):
            raise InputError("sample budget below the initial sample count")

    @classmethod
    def circle(
        cls,
        center: complex,
        radius: float,
        samples: int = 256,
        turns: int = 1,
    ) -> "Contour":
        """Uniformly sampled circle; ``turns`` may be negative for clockwise."""
        if radius <= 0:
            raise InputError("circle radius must be positive")
        if turns == 0:
            raise InputError("turns must be nonzero")
        if samples < 8:
            raise InputError("need at least 8 samples per turn")
        n = samples * abs(turns)
        sign = 1 if turns > 0 else -1
        center = complex(center)
        pts = [
            center + radius * cmath.exp(sign * 2j * math.pi * k / samples)
            for k in range(n)
        ]
        pts.append(pts[0])
        return cls(tuple(pts), closed=True)

    @classmethod
    def segment(cls, a: complex, b: complex, samples: int = 2) -> "Contour":
        a, b = complex(a), complex(b)
        pts = [a + (b - a) * k / (samples - 1) for k in range(samples)]
        return cls(tuple(pts), closed=False)

    @classmethod
    def polyline(cls, points: Sequence[complex], closed: bool = False) -> "Contour":
        pts = [complex(p) for p in points]
        if closed and pts[0] != pts[-1]:
            pts.append(pts[0])
        return cls(tuple(pts), closed=closed)

    @property
    def diameter(self) -> float:
        xs = [s.real for s in self.samples]
        ys = [s.imag for s in self.samples]
        return math.hypot(max(xs) - min(xs), max(ys) - min(ys))

    @property
    def length(self) -> float:
        return sum(abs(b - a) for a, b in zip(self.samples, self.samples[1:]))

    def clearance(self) -> float:
        """Default geometric clearance: a small fraction of the diameter."""
        return CLEARANCE_FACTOR * max(self.diameter, 1e-300)

    def distance_to(self, z: complex) -> float:
        """Distance from z to the polyline."""
        z = complex(z)
        best = math.inf
        for a, b in zip(self.samples, self.samples[1:]):
            d = b - a
            t = ((z - a).real * d.real + (z - a).imag * d.imag) / (abs(d) ** 2)
            t = min(1.0, max(0.0, t))
            best = min(best, abs(z - (a + t * d)))
        return best


def _vectorized(f) -> Callable[[np.ndarray], np.ndarray]:
    """Wrap f so that it maps complex arrays to complex arrays."""

    def call(zs: np.ndarray) -> np.ndarray:
        try:
            out = f(zs)
        except TypeError:
            out = None
        if isinstance(out, np.ndarray) and out.shape == zs.shape:
            return out.astype(complex)
        return np.array([complex(f(complex(z))) for z in zs.ravel()]).reshape(zs.shape)

    return call


# -- adaptive quadrature ------------------------------------------------------


def integrate_pieces(
    fz: Callable[[np.ndarray], np.ndarray],
    za: np.ndarray,
    d: np.ndarray,
    tol: float,
    *,
    eval_budget: int = 400_000,
    per_piece: bool = False,
):
    """Adaptive Simpson over a batch of straight pieces za[k] + t d[k], t in [0,1].

    All active intervals across all pieces are refined together, one
    vectorized evaluation per round.  Interval acceptance uses the Richardson
    estimate |S2 - S1| <= 15 * local tol; accepted intervals contribute the
    extrapolated value S2 + (S2 - S1)/15.

    Returns the total integral, or the per-piece integrals when
    ``per_piece`` is set.
    """
    lengths = np.abs(d)
    total_len = float(np.sum(lengths))
    n = len(za)
    totals = np.zeros(n, dtype=complex)
    if total_len == 0.0:
        return totals if per_piece else 0j

    def g(seg: np.ndarray, t: np.ndarray) -> np.ndarray:
        return fz(za[seg] + t * d[seg]) * d[seg]

    seg = np.arange(n)
    t0 = np.zeros(n)
    t2 = np.ones(n)
    f0 = g(seg, t0)
    f2 = g(seg, t2)
    f1 = g(seg, 0.5 * (t0 + t2))
    evals = 3 * n
    S = (t2 - t0) / 6.0 * (f0 + 4.0 * f1 + f2)
    tols = tol * lengths / total_len
    while len(seg):
        for arr in (f0, f1, f2):
            if not np.all(np.isfinite(arr)):
                raise PathTooCloseError(
                    "non-finite integrand: path too close to singularity"
                )
        tm = 0.5 * (t0 + t2)
        tl = 0.5 * (t0 + tm)
        tr = 0.5 * (tm + t2)
        fl = g(seg, tl)
        fr = g(seg, tr)
        evals += 2 * len(seg)
        Sl = (tm - t0) / 6.0 * (f0 + 4.0 * fl + f1)
        Sr = (t2 - tm) / 6.0 * (f1 + 4.0 * fr + f2)
        S2 = Sl + Sr
        done = np.abs(S2 - S) <= 15.0 * tols
        np.add.at(totals, seg[done], S2[done] + (S2[done] - S[done]) / 15.0)
        keep = ~done
        if not keep.any():
            break
        if evals > eval_budget:
            np.add.at(totals, seg[keep], S2[keep])
            raise QuadratureBudgetError(
                "quadrature budget exhausted",
                best=complex(np.sum(totals)),
            )
        half = 0.5 * tols[keep]
        seg = np.concatenate([seg[keep], seg[keep]])
        t0 = np.concatenate([t0[keep], tm[keep]])
        t2 = np.concatenate([tm[keep], t2[keep]])
        f0 = np.concatenate([f0[keep], f1[keep]])
        f2 = np.concatenate([f1[keep], f2[keep]])
        f1 = np.concatenate([fl[keep], fr[keep]])
        S = np.concatenate([Sl[keep], Sr[keep]])
        tols = np.concatenate([half, half])
    return totals if per_piece else complex(np.sum(totals))


def integrate(
    f,
    contour: Contour,
    tol: float = QUAD_TOL,
    *,
    eval_budget: int = 400_000,
) -> complex:
    """Integral of f dz along the contour by adaptive Simpson subdivision.

    ``tol`` is the absolute target for the Richardson error estimate summed
    over the whole path.  f must be finite on the path; a non-finite value
    raises PathTooCloseError, and an exhausted budget raises
    QuadratureBudgetError carrying the best estimate.
    """
    fz = _vectorized(f)
    za = np.array(contour.samples[:-1], dtype=complex)
    zb = np.array(contour.samples[1:], dtype=complex)
    return integrate_pieces(fz, za, zb - za, tol, eval_budget=eval_budget)


# -- winding numbers ----------------------------------------------------------


def winding_number(
    f,
    contour: Contour,
    *,
    min_modulus: float = MIN_MODULUS,
) -> int:
    """Total argument change of f along a closed contour, divided by 2 pi.

    Adaptive bisection inserts midpoints until every argument step is below
    pi/2, so the branch tracking is unambiguous and the result is an exact
    integer.  |f| must stay above ``min_modulus`` on the samples.
    """
    if not contour.closed:
        raise InputError("winding numbers need a closed contour")
    fz = _vectorized(f)
    zs = np.array(contour.samples, dtype=complex)
    vals = fz(zs)
    budget = contour.budget

    def check(vs: np.ndarray):
        if not np.all(np.isfinite(vs)):
            raise PathTooCloseError("non-finite value: singularity on contour")
        if np.min(np.abs(vs)) <= min_modulus:
            raise ZeroOnContourError("|f| below clearance: zero on contour")

    check(vals)
    while True:
        ratios = vals[1:] / vals[:-1]
        steps = np.angle(ratios)
        bad = np.abs(steps) >= 0.5 * math.pi
        if not bad.any():
            total = float(np.sum(steps))
            n = round(total / (2.0 * math.pi))
            if abs(total - 2.0 * math.pi * n) > 0.2:
                raise InternalConsistencyError(
                    "argument tracking did not close up to an integer turn"
                )
            return int(n)
        if len(zs) * 2 > budget:
            raise RefinementBudgetError(
                "cannot bound argument steps below pi/2 within the sample budget"
            )
        mids = 0.5 * (zs[:-1][bad] + zs[1:][bad])
        mvals = fz(mids)
        check(mvals)
        # interleave the new midpoints after their left endpoints
        idx = np.nonzero(bad)[0]
        zs = np.insert(zs, idx + 1, mids)
        vals = np.insert(vals, idx + 1, mvals)


def argument_principle_count(
    f: RationalMap,
    contour: Contour,
    *,
    tol: float = 1e-6,
    clearance: float | None = None,
) -> int:
    """(1/2 pi i) times the contour integral of f'/f, rounded to an integer.

    Counts zeros minus poles enclosed, with multiplicity.  Zeros and poles of
    f must stay off the contour by the geometric clearance.
    """
    if not contour.closed:
        raise InputError("argument principle needs a closed contour")
    if clearance is None:
        clearance = contour.clearance()
    red = f.reduced()
    singular = []
    if red.num.degree >= 1:
        singular += [a for a, _ in red.zero_set()]
    singular += list(red.pole_set().locations)
    for s in singular:
        if contour.distance_to(s) <= clearance:
            raise PathTooCloseError(
                f"zero or pole at {s} within clearance of the contour"
            )
    n, d = red.num, red.den
    dn, dd = n.derivative(), d.derivative()

    def logderiv(z: np.ndarray) -> np.ndarray:
        return (dn(z) * d(z) - n(z) * dd(z)) / (n(z) * d(z))

    val = integrate(logderiv, contour, tol)
    count = val / (2j * math.pi)
    nearest = round(count.real)
    if abs(count - nearest) > 0.25:
        raise InternalConsistencyError(
            f"argument-principle integral {count} is not close to an integer"
        )
    return int(nearest)
