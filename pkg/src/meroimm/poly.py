"""Complex polynomials with double-precision coefficients.

Coefficients are stored in ascending degree order; the zero polynomial is the
empty tuple.  Construction from raw coefficients drops leading coefficients
of modulus <= the coefficient tolerance (1e-12 by default), so a nonzero
polynomial always has |leading| above that tolerance.  Arithmetic on existing
polynomials never discards computed coefficients (only exact zeros).

The root solver runs simultaneous (Aberth-Ehrlich) iteration with a
companion-matrix fallback, merges root clusters into multiple roots, and
polishes each root by Newton steps on the derivative of matching order.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import COEFF_TOL, ROOT_TOL, ROOT_SWEEPS
from .errors import InputError, RootSolveError

_EPS = 2.220446049250313e-16


def _trim(coeffs: Sequence[complex], tol: float) -> tuple[complex, ...]:
    cs = [complex(c) for c in coeffs]
    while cs and abs(cs[-1]) <= tol:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class ComplexPolynomial:
    """Immutable polynomial sum(coeffs[k] * z**k)."""

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Iterable[complex], *, coeff_tol: float = COEFF_TOL):
        object.__setattr__(self, "coeffs", _trim(tuple(coeffs), coeff_tol))

    @classmethod
    def zero(cls) -> "ComplexPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "ComplexPolynomial":
        return cls((1.0,))

    @classmethod
    def identity(cls) -> "ComplexPolynomial":
        """The polynomial z."""
        return cls((0.0, 1.0))

    @classmethod
    def from_roots(cls, roots: Iterable[complex], leading: complex = 1.0) -> "ComplexPolynomial":
        cs = np.array([leading], dtype=complex)
        for r in roots:
            cs = np.convolve(cs, np.array([-complex(r), 1.0]))
        return cls(cs, coeff_tol=0.0)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, z):
        """Horner evaluation; accepts scalars or numpy arrays."""
        if isinstance(z, np.ndarray):
            out = np.zeros(z.shape, dtype=complex)
            for c in reversed(self.coeffs):
                out = out * z + c
            return out
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def horner_scale(self, r: float) -> float:
        """sum |c_k| r^k, the magnitude scale entering backward-error bounds."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * r + abs(c)
        return acc

    # -- arithmetic (no tolerance trimming; exact zeros only) --------------

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0j] * (n - len(other.coeffs))
        return ComplexPolynomial([x + y for x, y in zip(a, b)], coeff_tol=0.0)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return ComplexPolynomial([-c for c in self.coeffs], coeff_tol=0.0)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return ComplexPolynomial([c * other for c in self.coeffs], coeff_tol=0.0)
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return ComplexPolynomial.zero()
        cs = np.convolve(np.array(self.coeffs), np.array(other.coeffs))
        return ComplexPolynomial(cs, coeff_tol=0.0)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        return isinstance(other, ComplexPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- calculus ---------------------------------------------------------

    def derivative(self) -> "ComplexPolynomial":
        return ComplexPolynomial(
            [k * c for k, c in enumerate(self.coeffs)][1:], coeff_tol=0.0
        )

    def antiderivative(self, base_point: complex = 0j) -> "ComplexPolynomial":
        """The antiderivative F with F(base_point) = 0."""
        cs = [0j] + [c / (k + 1) for k, c in enumerate(self.coeffs)]
        F = ComplexPolynomial(cs, coeff_tol=0.0)
        c0 = -F(base_point)
        return ComplexPolynomial([c0] + cs[1:], coeff_tol=0.0)

    def taylor_shift(self, a: complex) -> "ComplexPolynomial":
        """Coefficients of p(a + t) as a polynomial in t."""
        cs = list(self.coeffs)
        n = len(cs)
        a = complex(a)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return ComplexPolynomial(cs, coeff_tol=0.0)

    def deflate(self, root: complex) -> "ComplexPolynomial":
        """Synthetic division by (z - root); the remainder is dropped."""
        if self.is_zero:
            return self
        out = []
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        out.pop()  # the final accumulator is the remainder p(root)
        return ComplexPolynomial(reversed(out), coeff_tol=0.0)


def _as_poly(x) -> ComplexPolynomial:
    if isinstance(x, ComplexPolynomial):
        return x
    if isinstance(x, (int, float, complex)):
        return ComplexPolynomial((complex(x),), coeff_tol=0.0)
    if isinstance(x, (tuple, list)):
        return ComplexPolynomial(x)
    raise TypeError(f"cannot coerce {type(x)!r} to ComplexPolynomial")


# -- root finding -----------------------------------------------------------


def _initial_guesses(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    cn = coeffs[-1]
    cauchy = 1.0 + max(abs(c / cn) for c in coeffs[:-1])
    if abs(coeffs[0]) > 0.0:
        r0 = abs(coeffs[0] / cn) ** (1.0 / n)
    else:
        r0 = 0.25 * cauchy
    r0 = min(max(r0, 1e-3 * cauchy), cauchy)
    k = np.arange(n)
    # spread over several rings to break symmetric stalls
    radii = r0 * (0.55 + 0.9 * (k + 0.5) / n)
    angles = 2.0 * np.pi * k / n + 0.43
    return radii * np.exp(1j * angles)


def _aberth(coeffs: np.ndarray, max_sweeps: int) -> np.ndarray:
    n = len(coeffs) - 1
    dcoeffs = coeffs[1:] * np.arange(1, n + 1)
    z = _initial_guesses(coeffs)
    guesses = z.copy()
    cauchy = 1.0 + max(abs(c / coeffs[-1]) for c in coeffs[:-1])
    with np.errstate(all="ignore"):
        for sweep in range(max_sweeps):
            p = np.zeros(n, dtype=complex)
            for c in coeffs[::-1]:
                p = p * z + c
            dp = np.zeros(n, dtype=complex)
            for c in dcoeffs[::-1]:
                dp = dp * z + c
            dp = np.where(np.abs(dp) < 1e-300, 1e-300, dp)
            newton = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            diff = np.where(np.abs(diff) < 1e-300, 1e-300, diff)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            denom = 1.0 - newton * s
            denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
            w = newton / denom
            z = z - w
            # pull escaped or corrupted iterates back inside the root bound
            bad = ~np.isfinite(z) | (np.abs(z) > 4.0 * cauchy)
            if bad.any():
                jitter = np.exp(1j * (0.7 * sweep + np.arange(n)))[bad]
                z[bad] = guesses[bad] * (0.9 + 0.05 * sweep % 1.0) + 0.1 * jitter
                continue
            if np.max(np.abs(w) / (1.0 + np.abs(z))) < 1e-15:
                break
    return z


def _companion_roots(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    monic = coeffs / coeffs[-1]
    A = np.zeros((n, n), dtype=complex)
    A[1:, :-1] = np.eye(n - 1)
    A[:, -1] = -monic[:-1]
    return np.linalg.eigvals(A)


def _root_accepted(p: ComplexPolynomial, dp: ComplexPolynomial, z: complex) -> bool:
    """Backward-error residual test with a Newton-step fallback.

    Accepts when |p(z)| <= 64 n eps sum|c_k||z|^k, or when the Newton step
    can no longer move z (the forward limit of double precision).
    """
    n = max(p.degree, 1)
    scale = max(p.horner_scale(abs(z)), 1e-300)
    if abs(p(z)) <= 64.0 * n * _EPS * scale:
        return True
    d = abs(dp(z))
    if d > 0.0 and abs(p(z)) / d <= 8.0 * _EPS * (1.0 + abs(z)):
        return True
    return False


def _cluster(p: ComplexPolynomial, approx: np.ndarray, root_tol: float) -> list[list[complex]]:
    """Group approximations whose Newton inclusion discs overlap.

    The disc radius n|p|/|p'| covers the stall distance of simultaneous
    iteration near an m-fold root, so genuine clusters merge while
    well-separated simple roots stay apart.
    """
    n = p.degree
    dp = p.derivative()
    radii = []
    for z in approx:
        z = complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            radii.append(0.0)
            continue
        pz, d = abs(p(z)), abs(dp(z))
        if not (math.isfinite(pz) and math.isfinite(d)):
            radii.append(0.0)
            continue
        # floor the residual at the Horner noise level: at a stalled multiple
        # root the evaluated p(z) is noise and says nothing about the distance
        pz = max(pz, 2.0 * n * _EPS * p.horner_scale(abs(z)))
        if d < 1e-300:
            radii.append(10.0 * root_tol)
        else:
            radii.append(min(0.1, 4.0 * n * pz / d))
    order = sorted(range(len(approx)), key=lambda i: (approx[i].real, approx[i].imag))
    clusters: list[list[int]] = []
    for i in order:
        for cl in clusters:
            if any(
                abs(approx[i] - approx[j]) <= 2.0 * root_tol + radii[i] + radii[j]
                for j in cl
            ):
                cl.append(i)
                break
        else:
            clusters.append([i])
    return [[complex(approx[i]) for i in cl] for cl in clusters]


def _polish(p: ComplexPolynomial, z: complex, multiplicity: int) -> complex:
    """Newton steps on the (m-1)-th derivative, where the root is simple."""
    q = p
    for _ in range(multiplicity - 1):
        q = q.derivative()
    dq = q.derivative()
    for _ in range(6):
        d = dq(z)
        if abs(d) < 1e-300:
            break
        step = q(z) / d
        if not (math.isfinite(step.real) and math.isfinite(step.imag)):
            break
        z = z - step
        if abs(step) < 1e-15 * (1.0 + abs(z)):
            break
    return z


def roots(
    p: ComplexPolynomial,
    *,
    root_tol: float = ROOT_TOL,
    max_sweeps: int = ROOT_SWEEPS,
    companion_fallback: bool = True,
) -> list[tuple[complex, int]]:
    """All complex roots of p with multiplicities, sorted by (real, imag).

    Raises RootSolveError (carrying partial results) when neither the
    simultaneous iteration nor the companion-matrix fallback passes the
    residual acceptance test.
    """
    if p.degree < 1:
        raise InputError("roots requires degree >= 1")
    coeffs = np.array(p.coeffs, dtype=complex)

    if p.degree == 1:
        candidates = [np.array([-coeffs[0] / coeffs[1]])]
    elif p.degree == 2:
        c, b, a = coeffs[0], coeffs[1], coeffs[2]
        disc = cmath.sqrt(b * b - 4.0 * a * c)
        if (b.conjugate() * disc).real >= 0:
            qq = -(b + disc) / 2.0
        else:
            qq = -(b - disc) / 2.0
        if abs(qq) > 1e-300:
            candidates = [np.array([qq / a, c / qq])]
        else:
            candidates = [np.array([0j, -b / a])]
    else:
        candidates = []
        if max_sweeps > 0:
            candidates.append(_aberth(coeffs, max_sweeps))
        if companion_fallback:
            candidates.append(_companion_roots(coeffs))

    dp = p.derivative()
    best: list[tuple[complex, int]] | None = None
    for approx in candidates:
        out: list[tuple[complex, int]] = []
        for cl in _cluster(p, approx, root_tol):
            m = len(cl)
            center = sum(cl) / m
            spread = max((abs(c - center) for c in cl), default=0.0)
            z = _polish(p, center, m)
            if abs(z - center) > 10.0 * max(root_tol, spread):
                z = center  # polish wandered off; keep the cluster centroid
            out.append((z, m))
        out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
        if all(_root_accepted(p, dp, z) for z, _ in out):
            return out
        if best is None:
            best = out
    raise RootSolveError(
        f"root solver did not converge within {max_sweeps} sweeps",
        partial=best or (),
    )
