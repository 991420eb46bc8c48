"""Immersion certificates, winding-number classes, and seed discs.

A meromorphic map immerses a plane domain into the sphere when its poles are
simple and its derivative never vanishes off the poles; into the plane, when
additionally there are no poles at all.  The verdict is assembled from two
independent zero counts of the derivative: direct root filtering and the
argument-principle count of the pole-cleared derivative over the boundary.

Homotopy classes are winding-number vectors of the derivative along a
deterministic basis loop per hole.  The integer vector classifies plane
targets completely; for sphere targets only its parity vector is stable
(crossing a simple pole changes the integer winding by -2), so the integer
classes are reported relative to the chosen loops.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .config import CLEARANCE_FACTOR, ROOT_TOL
from .contours import Contour, Disc, argument_principle_count, winding_number
from .errors import (
    InputError,
    InternalConsistencyError,
    NotAnImmersionError,
    PreconditionError,
    SingularityOnBoundaryError,
)
from .grids import ParamGrid
from .poly import ComplexPolynomial
from .rational import PoleSet, RationalMap
from .sphere import INF, SpherePoint, is_inf

Target = Literal["C", "CP1"]


@dataclass(frozen=True)
class CircularDomain:
    """A disc with finitely many disjoint closed sub-discs removed."""

    outer: Disc
    holes: tuple[Disc, ...] = ()

    def __post_init__(self):
        holes = tuple(self.holes)
        object.__setattr__(self, "holes", holes)
        for h in holes:
            if not self.outer.contains_disc(h, margin=1e-12):
                raise InputError("each hole must lie in the interior of the outer disc")
        for i in range(len(holes)):
            for j in range(i):
                if abs(holes[i].center - holes[j].center) <= holes[i].radius + holes[j].radius:
                    raise InputError("holes must be pairwise disjoint")

    @classmethod
    def annulus(cls, inner_radius: float, outer_radius: float, center: complex = 0j) -> "CircularDomain":
        return cls(Disc(center, outer_radius), (Disc(center, inner_radius),))

    @classmethod
    def disc(cls, d: Disc) -> "CircularDomain":
        return cls(d, ())

    @property
    def hole_count(self) -> int:
        return len(self.holes)

    def contains(self, z: complex, margin: float = 0.0) -> bool:
        z = complex(z)
        if abs(z - self.outer.center) >= self.outer.radius - margin:
            return False
        return all(abs(z - h.center) > h.radius + margin for h in self.holes)

    def boundary_distance(self, z: complex) -> float:
        d = self.outer.boundary_distance(z)
        for h in self.holes:
            d = min(d, h.boundary_distance(z))
        return d


def _as_domain(D) -> CircularDomain:
    if isinstance(D, CircularDomain):
        return D
    if isinstance(D, Disc):
        return CircularDomain.disc(D)
    raise InputError("domain must be a Disc or a CircularDomain")


@dataclass(frozen=True)
class ImmersionCertificate:
    """Verdict plus the evidence it was computed from."""

    valid: bool
    poles_inside: PoleSet
    derivative_zero_count: int
    boundary_clearance: float
    target: Target

    @staticmethod
    def assemble(
        poles_inside: PoleSet,
        derivative_zero_count: int,
        boundary_clearance: float,
        target: Target,
    ) -> "ImmersionCertificate":
        if target == "CP1":
            poles_ok = all(m == 1 for _, m in poles_inside)
        elif target == "C":
            poles_ok = len(poles_inside) == 0
        else:
            raise InputError(f"unknown target {target!r}")
        valid = poles_ok and derivative_zero_count == 0
        return ImmersionCertificate(
            valid, poles_inside, derivative_zero_count, boundary_clearance, target
        )


@dataclass(frozen=True)
class HomotopyClass:
    """Winding classes of the derivative on the basis loops."""

    z_class: tuple[int, ...] | None
    mod2_class: tuple[int, ...]
    target: Target

    def __post_init__(self):
        if self.z_class is not None:
            expected = tuple(w % 2 for w in self.z_class)
            if tuple(self.mod2_class) != expected:
                raise InputError("mod2_class must reduce z_class modulo two")


def lift_derivative(f: RationalMap) -> RationalMap:
    """Fiber component of the tangent lift of f in the plane trivialization.

    With the plane frame fixed, the lift of an immersion evaluates to the
    plain complex derivative; a nonvanishing f' is exactly the statement
    that the lift avoids the zero section.
    """
    return f.derivative()


def _singular_points(f: RationalMap, *, root_tol: float = ROOT_TOL):
    """Poles of f and zeros of f' (locations with multiplicity)."""
    fp = f.derivative(root_tol=root_tol)
    poles = f.pole_set(root_tol=root_tol)
    if fp.num.is_zero:
        raise InputError("constant map: the derivative vanishes identically")
    zeros = fp.zero_set(root_tol=root_tol)
    return fp, poles, zeros


def verify_immersion(
    f: RationalMap,
    D,
    target: Target = "CP1",
    *,
    root_tol: float = ROOT_TOL,
    boundary_samples: int = 256,
) -> ImmersionCertificate:
    """Certify whether f immerses the domain into the chosen target.

    The derivative zero count is computed two independent ways: filtering
    the solved zeros of f' to the domain, and the argument-principle count
    over the boundary of the derivative with its poles cleared by the
    squared-pole polynomial.  Disagreement raises InternalConsistencyError.
    """
    D = _as_domain(D)
    fp, poles, zeros = _singular_points(f, root_tol=root_tol)

    clearance = CLEARANCE_FACTOR * 2.0 * D.outer.radius
    singular = list(poles.locations) + [z for z, _ in zeros]
    bclear = math.inf
    for s in singular:
        bclear = min(bclear, D.boundary_distance(s))
    if bclear <= clearance:
        raise SingularityOnBoundaryError(
            f"pole or derivative zero within {clearance:g} of the boundary"
        )

    poles_inside = poles.filter(lambda a: D.contains(a))
    count_roots = sum(m for z, m in zeros if D.contains(z))

    # independent route: clear the poles of f' with Theta and count zeros of
    # h = f' Theta by the argument principle over the domain boundary
    theta = ComplexPolynomial.from_roots(
        [a for a, m in poles_inside for _ in range(m + 1)]
    )
    h = (fp * theta).reduced(root_tol=root_tol)
    count_ap = argument_principle_count(
        h, D.outer.boundary(boundary_samples), clearance=clearance
    )
    for hole in D.holes:
        count_ap -= argument_principle_count(
            h, hole.boundary(boundary_samples), clearance=clearance
        )
    if count_ap != count_roots:
        raise InternalConsistencyError(
            f"derivative zero counts disagree: roots give {count_roots}, "
            f"argument principle gives {count_ap}"
        )

    return ImmersionCertificate.assemble(poles_inside, count_roots, bclear, target)


def chart_transition_winding(contour: Contour) -> int:
    """Winding of z -> -1/z^2 along the contour.

    This is the frame transition between the plane chart and the chart at
    infinity; it contributes -2 per turn around the origin, which is why only
    parities of derivative windings survive on sphere targets.
    """
    w = RationalMap(ComplexPolynomial([-1.0]), ComplexPolynomial([0, 0, 1.0]))
    return winding_number(w, contour)


def basis_loops(
    M: CircularDomain, *, samples: int = 256
) -> list[Contour]:
    """One deterministic circle per hole, at the mid-radius between the hole
    boundary and the nearest other boundary feature."""
    loops = []
    for i, hole in enumerate(M.holes):
        nearest = M.outer.radius - abs(hole.center - M.outer.center)
        for j, other in enumerate(M.holes):
            if j == i:
                continue
            nearest = min(nearest, abs(hole.center - other.center) - other.radius)
        r = 0.5 * (hole.radius + nearest)
        loops.append(Contour.circle(hole.center, r, samples=samples))
    return loops


def classify(
    f: RationalMap,
    M: CircularDomain,
    target: Target = "CP1",
    *,
    root_tol: float = ROOT_TOL,
    samples: int = 256,
) -> HomotopyClass:
    """Winding classes of f' on the basis loops of the domain.

    Requires a valid immersion for the chosen target.  The integer vector is
    loop-dependent for sphere targets (only its parity is intrinsic there);
    it is the complete invariant for plane targets.
    """
    M = _as_domain(M)
    cert = verify_immersion(f, M, target, root_tol=root_tol)
    if not cert.valid:
        raise NotAnImmersionError("not an immersion: classification undefined")
    fp = f.derivative(root_tol=root_tol)
    poles = f.pole_set(root_tol=root_tol)
    loops = basis_loops(M, samples=samples)
    z_class = []
    for loop in loops:
        clearance = loop.clearance()
        for a in poles.locations:
            if loop.distance_to(a) <= clearance:
                raise PreconditionError(
                    f"basis loop passes through the pole at {a}; "
                    "choose a different domain decomposition"
                )
        z_class.append(winding_number(fp, loop))
    return HomotopyClass(tuple(z_class), tuple(w % 2 for w in z_class), target)


def same_component(
    f: RationalMap,
    g: RationalMap,
    M: CircularDomain,
    target: Target = "CP1",
    *,
    root_tol: float = ROOT_TOL,
) -> bool:
    """Whether f and g can be joined by a path of immersions into the target.

    Plane targets compare the integer winding vectors; sphere targets only
    their parities.
    """
    cf = classify(f, M, target, root_tol=root_tol)
    cg = classify(g, M, target, root_tol=root_tol)
    if target == "C":
        return cf.z_class == cg.z_class
    return cf.mod2_class == cg.mod2_class


# -- seed discs ---------------------------------------------------------------


@dataclass(frozen=True)
class FormalSeed:
    """First-order data for an embedded disc: base point, target value,
    tangent-fiber value, and the frame constant of the trivializing field.

    The fiber value is read in the chart containing the target value: the
    plane chart for finite targets, the reciprocal chart when the target is
    the point at infinity.
    """

    base_point: complex
    target_value: SpherePoint
    fiber_value: complex
    frame_constant: complex

    def __post_init__(self):
        object.__setattr__(self, "base_point", complex(self.base_point))
        object.__setattr__(self, "fiber_value", complex(self.fiber_value))
        object.__setattr__(self, "frame_constant", complex(self.frame_constant))
        if self.fiber_value == 0:
            raise InputError("fiber value must be nonzero")
        if self.frame_constant == 0:
            raise InputError("frame constant must be nonzero")


def seed_disc(seed: FormalSeed) -> RationalMap:
    """The affine disc with the prescribed 1-jet at the base point.

    Finite target a: z -> a + (v/c)(z - x1).  Target at infinity: the affine
    map lives in the reciprocal chart, so the result is the simple-pole map
    z -> c / (v (z - x1)).
    """
    x1, a = seed.base_point, seed.target_value
    v, c = seed.fiber_value, seed.frame_constant
    if is_inf(a):
        num = ComplexPolynomial([c])
        den = ComplexPolynomial([-v * x1, v])
        return RationalMap(num, den)
    a = complex(a)
    slope = v / c
    return RationalMap(ComplexPolynomial([a - slope * x1, slope]))


def _seed_disc_infinity_chart(seed: FormalSeed) -> RationalMap:
    """The seed written in the reciprocal chart, for finite nonzero targets.

    Same 1-jet as the plane-chart seed; differs away from the base point.
    """
    x1, a = seed.base_point, complex(seed.target_value)
    v, c = seed.fiber_value, seed.frame_constant
    if a == 0:
        raise InputError("reciprocal-chart seed needs a nonzero target value")
    # reciprocal chart: w -> 1/w sends the fiber value v to -v/a^2
    num = ComplexPolynomial([a * a * c])
    den = ComplexPolynomial([a * c + v * x1, -v])
    return RationalMap(num, den)


# blending across charts is restricted to targets in this modulus band;
# outside it one chart is degenerate and the cutoff must be 0 or 1
CHART_BAND = (0.01, 100.0)


def seed_disc_family(
    seeds: Sequence[FormalSeed],
    grid: ParamGrid,
    chi,
) -> list[RationalMap]:
    """Blend plane-chart and reciprocal-chart seeds with the cutoff chi.

    chi maps a grid parameter to [0,1]; 1 selects the plane-chart seed, 0 the
    reciprocal-chart seed.  Strictly interior cutoff values require both
    charts, hence target values away from 0 and infinity (within the chart
    band); otherwise a PreconditionError is raised.
    """
    if len(seeds) != grid.npoints:
        raise InputError("one seed per grid point required")
    out: list[RationalMap] = []
    for i, seed in enumerate(seeds):
        p = grid.point(i)
        t = float(chi(p if grid.ndim > 1 else p[0]))
        if not (0.0 <= t <= 1.0):
            raise InputError("chi must take values in [0,1]")
        a = seed.target_value
        if t == 1.0:
            out.append(seed_disc(seed))
            continue
        if t == 0.0:
            if is_inf(a):
                out.append(seed_disc(seed))
            else:
                out.append(_seed_disc_infinity_chart(seed))
            continue
        if is_inf(a) or complex(a) == 0 or not (
            CHART_BAND[0] <= abs(complex(a)) <= CHART_BAND[1]
        ):
            raise PreconditionError(
                f"chi({p}) = {t} is strictly between 0 and 1 but the target "
                "value admits only one chart"
            )
        g = seed_disc(seed)
        h = _seed_disc_infinity_chart(seed)
        out.append(t * g + (1.0 - t) * h)
    return out
