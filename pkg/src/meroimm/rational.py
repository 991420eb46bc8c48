"""Rational maps (quotients of complex polynomials), pole data, and residues.

A RationalMap is stored as given; :meth:`RationalMap.reduced` cancels common
roots of numerator and denominator by root matching and makes the denominator
monic.  Scalar evaluation lands on the Riemann sphere (a pole returns INF);
an indeterminate 0/0 of an unreduced fraction raises.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import COEFF_TOL, ROOT_TOL
from .errors import InputError, UnreducedFractionError
from .poly import ComplexPolynomial, _as_poly, roots, _EPS
from .sphere import INF, SpherePoint


@dataclass(frozen=True)
class PoleSet:
    """Pole locations with orders, sorted by (real, imag).

    Locations must be pairwise distinct beyond the root-separation tolerance.
    """

    entries: tuple[tuple[complex, int], ...]

    def __init__(self, entries, *, root_tol: float = ROOT_TOL):
        es = sorted(
            ((complex(a), int(m)) for a, m in entries),
            key=lambda e: (e[0].real, e[0].imag),
        )
        for i in range(len(es)):
            if es[i][1] < 1:
                raise InputError("pole orders must be positive")
            for j in range(i):
                if abs(es[i][0] - es[j][0]) <= root_tol:
                    raise InputError(
                        f"poles {es[j][0]} and {es[i][0]} coincide within tolerance"
                    )
        object.__setattr__(self, "entries", tuple(es))

    @property
    def locations(self) -> tuple[complex, ...]:
        return tuple(a for a, _ in self.entries)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def filter(self, keep) -> "PoleSet":
        return PoleSet([e for e in self.entries if keep(e[0])])

    def min_separation(self) -> float:
        locs = self.locations
        if len(locs) < 2:
            return math.inf
        return min(
            abs(locs[i] - locs[j]) for i in range(len(locs)) for j in range(i)
        )


def _shift_noise(p: ComplexPolynomial, a: complex) -> float:
    """Rounding floor for the Taylor-shift coefficients of p at a."""
    return 16.0 * max(len(p.coeffs), 1) * _EPS * max(p.horner_scale(abs(a)), 1e-300)


def _vanishing_order(p: ComplexPolynomial, a: complex, max_order: int) -> int:
    """Order of a as a root of p, judged against the Taylor-shift noise floor."""
    if p.is_zero:
        return max_order
    shifted = p.taylor_shift(a)
    noise = _shift_noise(p, a)
    for k, c in enumerate(shifted.coeffs):
        if k >= max_order:
            return max_order
        if abs(c) > noise:
            return k
    return max_order


@dataclass(frozen=True)
class RationalMap:
    """Quotient num/den of two complex polynomials."""

    num: ComplexPolynomial
    den: ComplexPolynomial

    def __init__(self, num, den=(1.0,)):
        num = _as_poly(num) if not isinstance(num, ComplexPolynomial) else num
        den = _as_poly(den) if not isinstance(den, ComplexPolynomial) else den
        if den.is_zero:
            raise InputError("denominator is the zero polynomial")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_polynomial(cls, p) -> "RationalMap":
        return cls(p, ComplexPolynomial.one())

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_polynomial(self) -> ComplexPolynomial:
        if not self.is_polynomial:
            raise InputError("map has a nonconstant denominator")
        c = self.den.coeffs[0]
        return ComplexPolynomial([x / c for x in self.num.coeffs], coeff_tol=0.0)

    # -- evaluation ---------------------------------------------------------

    def __call__(self, z) -> SpherePoint:
        """Evaluate on the sphere.  Arrays evaluate by plain division
        (poles produce non-finite entries); scalars get the full
        pole/indeterminacy treatment."""
        if isinstance(z, np.ndarray):
            with np.errstate(all="ignore"):
                return self.num(z) / self.den(z)
        z = complex(z)
        dval = self.den(z)
        dnoise = 8.0 * max(len(self.den.coeffs), 1) * _EPS * max(
            self.den.horner_scale(abs(z)), 1e-300
        )
        if abs(dval) > dnoise:
            return self.num(z) / dval
        # z sits on a denominator root: compare vanishing orders
        m_den = _vanishing_order(self.den, z, self.den.degree + 1)
        m_num = _vanishing_order(self.num, z, self.num.degree + 1) if not self.num.is_zero else 10**9
        if m_den == 0:
            # small but genuinely nonzero denominator
            return self.num(z) / dval if dval != 0 else INF
        if m_num >= m_den:
            raise UnreducedFractionError(
                f"indeterminate 0/0 at z={z}: unreduced fraction"
            )
        return INF

    # -- structure ----------------------------------------------------------

    def reduced(self, *, root_tol: float = ROOT_TOL) -> "RationalMap":
        """Cancel common roots of num and den; make den monic.

        Common roots are found by matching the two root sets within the
        root-separation tolerance, which is robust to the root solver's own
        accuracy limits at multiple roots.
        """
        num, den = self.num, self.den
        if den.degree >= 1 and num.degree >= 1:
            den_roots = roots(den, root_tol=root_tol)
            num_roots = roots(num, root_tol=root_tol)
            for a, m in den_roots:
                matches = [(b, k) for b, k in num_roots if abs(b - a) <= root_tol]
                k_total = sum(k for _, k in matches)
                t = min(m, k_total)
                if t == 0:
                    continue
                # deflate both at the averaged location of the matched cluster
                pts = [a] * m + [b for b, k in matches for _ in range(k)]
                point = sum(pts) / len(pts)
                for _ in range(t):
                    num = num.deflate(point)
                    den = den.deflate(point)
        lead = den.coeffs[-1]
        num = ComplexPolynomial([c / lead for c in num.coeffs], coeff_tol=0.0)
        den = ComplexPolynomial([c / lead for c in den.coeffs], coeff_tol=0.0)
        return RationalMap(num, den)

    def derivative(self, *, root_tol: float = ROOT_TOL) -> "RationalMap":
        """Quotient rule, with the common pole factors cancelled.

        For a pole of order m the raw quotient (N'D - ND')/D^2 carries a
        common factor (z-a)^(m-1).  Cancelling it against roots of D^2 is
        ill-conditioned (2m-fold clusters), so the result is assembled from
        the pole set of D itself: the numerator is deflated m-1 times at each
        pole and the denominator is rebuilt as the exact product of
        (z-a)^(m+1) factors.
        """
        if self.is_polynomial:
            return RationalMap(self.as_polynomial().derivative())
        red = self.reduced(root_tol=root_tol)
        if red.is_polynomial:
            return RationalMap(red.as_polynomial().derivative())
        n, d = red.num, red.den
        num = n.derivative() * d - n * d.derivative()
        poles = roots(d, root_tol=root_tol)
        for a, m in poles:
            for _ in range(m - 1):
                num = num.deflate(a)
        den = ComplexPolynomial.from_roots(
            [a for a, m in poles for _ in range(m + 1)]
        )
        return RationalMap(num, den)

    def pole_set(self, *, root_tol: float = ROOT_TOL) -> PoleSet:
        """Denominator roots with multiplicities, after reduction."""
        red = self.reduced(root_tol=root_tol)
        if red.den.degree < 1:
            return PoleSet(())
        return PoleSet(roots(red.den, root_tol=root_tol), root_tol=root_tol)

    def zero_set(self, *, root_tol: float = ROOT_TOL) -> list[tuple[complex, int]]:
        """Numerator roots of the reduced map."""
        red = self.reduced(root_tol=root_tol)
        if red.num.degree < 1:
            return []
        return roots(red.num, root_tol=root_tol)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "RationalMap":
        if isinstance(other, RationalMap):
            return other
        if isinstance(other, (int, float, complex, ComplexPolynomial)):
            return RationalMap(_as_poly(other))
        raise TypeError(f"cannot combine RationalMap with {type(other)!r}")

    def __add__(self, other):
        o = self._coerce(other)
        return RationalMap(self.num * o.den + o.num * self.den, self.den * o.den)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        o = self._coerce(other)
        return RationalMap(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o.__sub__(self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return RationalMap(self.num * other, self.den)
        o = self._coerce(other)
        return RationalMap(self.num * o.num, self.den * o.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def reciprocal(self) -> "RationalMap":
        if self.num.is_zero:
            raise InputError("reciprocal of the zero map")
        return RationalMap(self.den, self.num)


def _series_divide(
    num: Sequence[complex], den: Sequence[complex], order: int
) -> list[complex]:
    """First coefficients of the power-series quotient num/den; den[0] != 0."""
    q: list[complex] = []
    d0 = den[0]
    for k in range(order + 1):
        acc = num[k] if k < len(num) else 0j
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * q[k - j]
        q.append(acc / d0)
    return q


def _first_above_noise(p: ComplexPolynomial, a: complex) -> int | None:
    """Index of the first Taylor coefficient of p at a above the noise floor."""
    if p.is_zero:
        return None
    shifted = p.taylor_shift(a)
    noise = _shift_noise(p, a)
    for k, c in enumerate(shifted.coeffs):
        if abs(c) > noise:
            return k
    return None


def residue(f: RationalMap, a: complex, *, root_tol: float = ROOT_TOL) -> complex:
    """Laurent coefficient c_{-1} of f at a, by truncated series division.

    Returns 0 when a is not a pole.  An indeterminate 0/0 (numerator
    vanishing at a to at least the denominator's order) raises
    UnreducedFractionError.  A determinate common factor (numerator vanishing
    to lower order) is deflated at a before the series division; this keeps
    the division away from noise-dominated leading coefficients.
    """
    a = complex(a)
    num, den = f.num, f.den
    m_den = _first_above_noise(den, a)
    if m_den is None:
        raise InputError("denominator is numerically zero at the expansion point")
    if m_den == 0:
        return 0j
    m_num = _first_above_noise(num, a)
    if m_num is None:
        return 0j  # numerator numerically zero near a
    if m_num >= m_den:
        raise UnreducedFractionError(
            f"0/0 at z={a}: reduce the fraction before taking residues"
        )
    for _ in range(m_num):
        num = num.deflate(a)
        den = den.deflate(a)
    m = m_den - m_num
    den_shift = den.taylor_shift(a)
    num_shift = num.taylor_shift(a)
    dtail = den_shift.coeffs[m:]
    if not dtail or abs(dtail[0]) == 0.0:
        raise InputError("pole order detection failed at the expansion point")
    q = _series_divide(num_shift.coeffs, dtail, m - 1)
    return complex(q[m - 1])
