"""Residue-constrained extension of sphere immersions from a small disc to a
larger one.

The pipeline: clear the poles of f' with the squared pole polynomial Theta,
take the logarithmic derivative of the cleared function h = f' Theta, replace
it by a polynomial that (i) approximates it on the small disc and (ii) takes
the prescribed logarithmic-residue values at every pole of the big disc, then
integrate back.  Condition (ii) makes every residue of the reconstructed
derivative vanish, so the primitive is single-valued and the result is a
sphere immersion on the whole big disc, no matter how far the approximation
drifts outside the small one.

The disc approximation realizes polynomial (Runge-type) approximation as
Taylor truncation at a base point, with coefficients recovered by FFT from
samples on a circle between the small disc and the nearest singularity.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .config import (
    DEGREE_BUDGET,
    DEGREE_SCHEDULE,
    QUAD_TOL,
    RESIDUE_TOL,
    ROOT_TOL,
)
from .contours import Contour, Disc, integrate_pieces, _vectorized
from .errors import (
    DegreeBudgetError,
    InputError,
    InternalConsistencyError,
    NotAnImmersionError,
    PathTooCloseError,
    PoleCollisionError,
    PreconditionError,
)
from .grids import ParamGrid
from .immersions import ImmersionCertificate, verify_immersion
from .poly import ComplexPolynomial, roots
from .rational import PoleSet, RationalMap
from .sphere import INF, SpherePoint, chordal_distance, is_inf


def residue_targets(A: PoleSet) -> list[complex]:
    """Logarithmic-residue targets g'(a)/g(a), g = prod over the other poles
    of (z-b)^2.

    A nonvanishing function h admits a single-valued primitive of h/Theta
    exactly when h'/h hits these values at the poles.
    """
    if any(m != 1 for _, m in A):
        raise PreconditionError("residue targets require simple poles")
    locs = A.locations
    out = []
    for i, a in enumerate(locs):
        others = [b for j, b in enumerate(locs) if j != i]
        if not others:
            out.append(0j)
            continue
        g = ComplexPolynomial.from_roots([b for b in others for _ in range(2)])
        out.append(g.derivative()(a) / g(a))
    return out


def _lagrange_basis(locs: Sequence[complex]) -> list[ComplexPolynomial]:
    basis = []
    for i, a in enumerate(locs):
        others = [b for j, b in enumerate(locs) if j != i]
        denom = 1.0 + 0j
        for b in others:
            denom *= a - b
        basis.append(ComplexPolynomial.from_roots(others, leading=1.0 / denom))
    return basis


@dataclass(frozen=True)
class ConstrainedEta:
    """Polynomial log-derivative replacement, kept in structured form.

    expanded = lagrange + sigma * node_product, where node_product is the
    monic product of (z - a) over the interpolation nodes.  The structured
    parts evaluate the interpolation conditions exactly (the node product
    vanishes by construction), which the expanded coefficients only do to
    rounding.
    """

    lagrange: ComplexPolynomial
    sigma: ComplexPolynomial
    nodes: tuple[complex, ...]
    expanded: ComplexPolynomial

    def value_at_node(self, i: int) -> complex:
        # node_product(node) = 0 exactly in the factored form
        return self.lagrange(self.nodes[i])


def constrained_eta(
    eta: RationalMap,
    poles: PoleSet,
    targets: Sequence[complex],
    eps_eta: float,
    *,
    disc: Disc,
    center: complex,
    degree_budget: int = DEGREE_BUDGET,
    check_samples: int = 256,
    interp_tol: float = 1e-6,
) -> ConstrainedEta:
    """Polynomial eta-tilde with eta-tilde(a) = c_a exactly at every pole and
    sampled sup |eta-tilde - eta| < eps_eta on the disc.

    eta must be holomorphic on a neighborhood of the disc (its denominator
    roots are its singularities); poles of the map being extended that lie in
    the disc must already satisfy eta(a) = c_a, or the input was not an
    immersion there.  The residual after removing the Lagrange interpolant is
    Taylor-truncated at ``center``, with the degree raised along the doubling
    schedule until the sampled bound holds.
    """
    center = complex(center)
    locs = list(poles.locations)
    if len(targets) != len(locs):
        raise InputError("one target per pole required")

    # singularities of the residual: eta's own poles, plus interpolation
    # nodes outside the disc (no cancellation is guaranteed there)
    singular: list[complex] = []
    if eta.den.degree >= 1:
        singular += [s for s, _ in roots(eta.den)]
    margin = 1e-9 * max(1.0, disc.radius)
    for a, c in zip(locs, targets):
        if disc.contains(a):
            val = eta(a)
            if is_inf(val) or abs(complex(val) - c) > interp_tol * (1.0 + abs(c)):
                raise NotAnImmersionError(
                    f"log-derivative misses its residue target at the pole {a}; "
                    "the input is not an immersion with simple poles there"
                )
        else:
            singular.append(a)

    r_eff = disc.radius + abs(center - disc.center)
    R = min((abs(s - center) for s in singular), default=math.inf)
    if R <= r_eff * (1.0 + 1e-9):
        raise NotAnImmersionError(
            "the log-derivative residual is singular on the closed disc; "
            "the map fails to immerse a neighborhood of it"
        )

    if locs:
        lag_basis = _lagrange_basis(locs)
        lagrange = ComplexPolynomial.zero()
        for c, phi in zip(targets, lag_basis):
            lagrange = lagrange + c * phi
        node_product = ComplexPolynomial.from_roots(locs)
    else:
        lagrange = ComplexPolynomial.zero()
        node_product = ComplexPolynomial.one()

    rho = 0.5 * (r_eff + R) if math.isfinite(R) else 2.0 * r_eff
    rho = min(rho, 4.0 * r_eff)

    K = max(2048, 8 * degree_budget)
    angles = 2.0 * math.pi * np.arange(K) / K
    ring = center + rho * np.exp(1j * angles)
    with np.errstate(all="ignore"):
        eta_vals = eta.num(ring) / eta.den(ring)
        resid_vals = (eta_vals - lagrange(ring)) / node_product(ring)
    if not np.all(np.isfinite(resid_vals)):
        raise InternalConsistencyError("residual sampling hit a singularity")
    coeffs_ring = np.fft.fft(resid_vals) / K  # sigma_k * rho^k

    # sampled error check on the disc boundary (max principle: the difference
    # is holomorphic on the disc, so the boundary sup bounds the interior)
    thetas = 2.0 * math.pi * np.arange(check_samples) / check_samples
    bdry = disc.center + disc.radius * np.exp(1j * thetas)
    with np.errstate(all="ignore"):
        eta_bdry = eta.num(bdry) / eta.den(bdry)
    if not np.all(np.isfinite(eta_bdry)):
        raise InternalConsistencyError("eta is singular on the disc boundary")

    best_err = math.inf
    schedule = [n for n in DEGREE_SCHEDULE if n <= degree_budget]
    if not schedule or schedule[-1] < degree_budget:
        schedule = list(schedule) + [degree_budget]
    for N in schedule:
        k = np.arange(N + 1)
        sig_coeffs = coeffs_ring[: N + 1] / rho ** k
        sigma_t = ComplexPolynomial(sig_coeffs, coeff_tol=0.0)
        sigma = sigma_t.taylor_shift(-center)
        expanded = lagrange + sigma * node_product
        err = float(np.max(np.abs(expanded(bdry) - eta_bdry)))
        if err < eps_eta:
            return ConstrainedEta(lagrange, sigma, tuple(locs), expanded)
        best_err = min(best_err, err)
    raise DegreeBudgetError(
        f"degree schedule exhausted at sampled error {best_err:.3e} "
        f"(target {eps_eta:.3e})",
        achieved=best_err,
    )


# -- reconstructed immersions -------------------------------------------------


@dataclass(frozen=True)
class IntegralImmersion:
    """Extension in integral form: f0 + integral of h0 exp(xi)/Theta.

    Theta is the exact squared product over the pole set, and the
    interpolation conditions hold exactly in the structured form carried by
    ``eta_parts``, so every residue of the integrand vanishes analytically;
    the derivative h0 exp(xi)/Theta never vanishes away from the poles.
    """

    base_point: complex
    base_value: complex
    scale: complex
    xi: ComplexPolynomial
    poles: PoleSet
    domain: Disc
    eta_parts: ConstrainedEta
    theta: ComplexPolynomial = field(init=False)

    def __post_init__(self):
        if any(m != 1 for _, m in self.poles):
            raise InputError("integral immersions carry only simple poles")
        if self.scale == 0:
            raise InputError("the derivative scale h0 must be nonzero")
        theta = ComplexPolynomial.from_roots(
            [a for a, _ in self.poles for _ in range(2)]
        )
        object.__setattr__(self, "theta", theta)

    # -- integrand ----------------------------------------------------------

    @property
    def detour_radius(self) -> float:
        sep = self.poles.min_separation()
        r = 0.02 * self.domain.radius
        if math.isfinite(sep):
            r = min(r, 0.5 * sep)
        return r

    def _integrand(self, z: np.ndarray) -> np.ndarray:
        w = self.xi(z)
        with np.errstate(all="ignore"):
            return self.scale * np.exp(w) / self.theta(z)

    def log_abs_derivative(self, z) -> float | np.ndarray:
        """log |derivative|, computable even where exp overflows doubles."""
        zs = np.atleast_1d(np.asarray(z, dtype=complex))
        re = np.real(self.xi(zs)) + math.log(abs(self.scale))
        with np.errstate(divide="ignore"):
            for a, _ in self.poles:
                re = re - 2.0 * np.log(np.abs(zs - a))
        return re if isinstance(z, np.ndarray) else float(re[0])

    # -- residues (structured evaluation; exact interpolation) ---------------

    def residues(self) -> list[complex]:
        """Numerical residues of the integrand at the poles.

        Res = h(a) (eta(a) - c_a) / g(a) with g = Theta/(z-a)^2; the
        structured eta evaluation makes eta(a) - c_a pure rounding.
        """
        out = []
        targets = residue_targets(self.poles)
        locs = self.poles.locations
        for i, a in enumerate(locs):
            g = 1.0 + 0j
            for j, b in enumerate(locs):
                if j != i:
                    g *= (a - b) ** 2
            h_at = self.scale * cmath.exp(self.xi(a))
            eta_at = self.eta_parts.value_at_node(i)
            out.append(h_at * (eta_at - targets[i]) / g)
        return out

    # -- evaluation -----------------------------------------------------------

    def _detour_path(self, z: complex, side: int) -> tuple[np.ndarray, np.ndarray]:
        """Polyline from the base point to z avoiding poles by arc detours.

        Returns (piece starts, piece deltas).  side +1 bends one way, -1 the
        other; the two agree because the integrand has no residues.
        """
        z0 = self.base_point
        d = z - z0
        L = abs(d)
        pts = [z0]
        if L == 0:
            return np.array([], dtype=complex), np.array([], dtype=complex)
        u = d / L
        events = []
        for a, _ in self.poles:
            delta = self.detour_radius
            # shrink the bubble if an endpoint sits inside it
            for endpoint in (z0, z):
                dist = abs(endpoint - a)
                if dist < delta:
                    delta = max(0.5 * dist, 1e-12)
            s = ((a - z0) * u.conjugate()).real
            hdist = abs(a - (z0 + s * u))
            if hdist >= delta or s < -delta or s > L + delta:
                continue
            dt = math.sqrt(max(delta * delta - hdist * hdist, 0.0))
            events.append((s, dt, a, delta))
        events.sort(key=lambda e: e[0])
        cursor = 0.0
        for s, dt, a, delta in events:
            t1 = max(s - dt, cursor)
            t2 = min(s + dt, L)
            if t2 <= t1:
                continue
            p1 = z0 + t1 * u
            p2 = z0 + t2 * u
            # walk the circle |w - a| = delta from p1's angle to p2's angle
            th1 = cmath.phase(p1 - a)
            th2 = cmath.phase(p2 - a)
            sweep = (th2 - th1) % (2.0 * math.pi)
            if side < 0:
                sweep = sweep - 2.0 * math.pi
            n_arc = max(8, int(abs(sweep) / (math.pi / 16.0)))
            q1 = a + delta * cmath.exp(1j * th1)
            pts.append(q1)
            for k in range(1, n_arc + 1):
                pts.append(a + delta * cmath.exp(1j * (th1 + sweep * k / n_arc)))
            cursor = t2
        pts.append(z)
        arr = np.array(pts, dtype=complex)
        starts = arr[:-1]
        deltas = arr[1:] - arr[:-1]
        keep = deltas != 0
        return starts[keep], deltas[keep]

    def evaluate(
        self,
        z: complex,
        *,
        side: int = 1,
        quad_tol: float = QUAD_TOL,
        root_tol: float = ROOT_TOL,
    ) -> SpherePoint:
        """Value at z by path integration from the base point.

        Pole locations return INF exactly; a value too large for double
        precision (the integrand overflows) is reported as INF as well,
        since it is chordally indistinguishable from the point at infinity.
        """
        z = complex(z)
        for a, _ in self.poles:
            if abs(z - a) <= root_tol:
                return INF
        starts, deltas = self._detour_path(z, side)
        if len(starts) == 0:
            return self.base_value
        try:
            val = integrate_pieces(self._integrand, starts, deltas, quad_tol)
        except PathTooCloseError:
            return INF  # integrand overflow: the value has left double range
        return self.base_value + val

    def __call__(self, z: complex) -> SpherePoint:
        return self.evaluate(z)

    def values_on_circle(
        self,
        center: complex,
        radius: float,
        n: int,
        *,
        quad_tol: float = QUAD_TOL,
    ) -> np.ndarray:
        """Values at n uniform samples of a circle, by one cumulative sweep.

        The radial leg runs to the sample farthest from the pole set; the
        sweep then accumulates chord integrals around the circle.  Falls back
        to pointwise evaluation when a pole sits within a detour radius of
        the circle.
        """
        center = complex(center)
        angles = 2.0 * math.pi * np.arange(n) / n
        ring = center + radius * np.exp(1j * angles)
        clearance = self.detour_radius
        if any(
            abs(abs(a - center) - radius) <= clearance for a, _ in self.poles
        ):
            return np.array([complex(self.evaluate(z)) for z in ring])
        # entry sample: farthest from the poles (any sample works; this keeps
        # the radial leg short of detours when possible)
        if len(self.poles):
            dists = [min(abs(z - a) for a, _ in self.poles) for z in ring]
            k0 = int(np.argmax(dists))
        else:
            k0 = 0
        entry = complex(ring[k0])
        base = self.evaluate(entry, quad_tol=quad_tol)
        if is_inf(base):
            return np.array([complex(self.evaluate(z)) for z in ring])
        starts = np.roll(ring, -k0)
        chords = np.roll(ring, -k0 - 1) - starts  # n chords closing the loop
        per = integrate_pieces(
            self._integrand, starts, chords, quad_tol, per_piece=True
        )
        vals = np.empty(n, dtype=complex)
        acc = complex(base)
        for j in range(n):
            vals[(k0 + j) % n] = acc
            acc += per[j]
        closure = abs(acc - complex(base))
        allowance = 1e4 * quad_tol + 1e-10 * float(np.sum(np.abs(per)))
        if closure > allowance:
            raise InternalConsistencyError(
                f"cumulative sweep failed to close (defect {closure:.2e}); "
                "a residue of the integrand is nonzero"
            )
        return vals

    def certificate(self, *, samples: int = 1024) -> ImmersionCertificate:
        """Sphere-immersion certificate on the extension disc.

        The derivative h0 exp(xi)/Theta is nonvanishing by its form; the
        sampled check confirms its log-modulus is finite at deterministic
        sunflower points of the disc (evaluated in log space, so exponent
        overflow cannot fake a zero).
        """
        golden = math.pi * (3.0 - math.sqrt(5.0))
        ks = np.arange(samples)
        r = self.domain.radius * np.sqrt((ks + 0.5) / samples)
        th = golden * ks
        pts = self.domain.center + r * np.exp(1j * th)
        keep = np.ones(len(pts), dtype=bool)
        for a, _ in self.poles:
            keep &= np.abs(pts - a) > 1e-9
        logs = self.log_abs_derivative(pts[keep])
        if not np.all(logs > -math.inf) or np.any(np.isnan(logs)):
            raise InternalConsistencyError(
                "sampled log-derivative check found a vanishing derivative"
            )
        poles_inside = self.poles.filter(
            lambda a: abs(a - self.domain.center) < self.domain.radius
        )
        bclear = math.inf
        for a, _ in poles_inside:
            bclear = min(bclear, self.domain.boundary_distance(a))
        return ImmersionCertificate.assemble(poles_inside, 0, bclear, "CP1")


# -- the extension pipeline ---------------------------------------------------


def _pipeline_data(f: RationalMap, d1: Disc, *, root_tol: float):
    """Pole set in the big disc, cleared derivative h, and its log-derivative."""
    all_poles = f.pole_set(root_tol=root_tol)
    inside = all_poles.filter(lambda a: abs(a - d1.center) <= d1.radius)
    if any(m != 1 for _, m in inside):
        raise PreconditionError(
            "extension requires simple, pairwise distinct poles in the big disc"
        )
    theta = ComplexPolynomial.from_roots([a for a, _ in inside for _ in range(2)])
    fp = f.derivative(root_tol=root_tol)
    h = (fp * theta).reduced(root_tol=root_tol)
    # logarithmic derivative of h as an (unreduced) rational map: the
    # denominator's roots are exactly the zeros and poles of h
    eta = RationalMap(
        h.num.derivative() * h.den - h.num * h.den.derivative(),
        h.num * h.den,
    )
    return inside, theta, h, eta


def _choose_base_point(d0: Disc, poles: PoleSet) -> complex:
    """Center of the small disc, nudged off any too-close pole."""
    z0 = d0.center
    if not len(poles):
        return z0
    nearest = min(poles.locations, key=lambda a: abs(a - z0))
    if abs(nearest - z0) >= 0.05 * d0.radius:
        return z0
    if abs(nearest - z0) == 0:
        direction = 1.0 + 0j
    else:
        direction = (z0 - nearest) / abs(z0 - nearest)
    return z0 + 0.1 * d0.radius * direction


def extend_immersion(
    f: RationalMap,
    d0: Disc,
    d1: Disc,
    eps: float,
    *,
    root_tol: float = ROOT_TOL,
    residue_tol: float = RESIDUE_TOL,
    quad_tol: float = QUAD_TOL,
    degree_budget: int = DEGREE_BUDGET,
    boundary_samples: int = 256,
    approx_disc: Disc | None = None,
) -> IntegralImmersion:
    """Extend a sphere immersion from the small disc to the big one.

    The output is an immersion on the whole big disc by construction, with
    the same simple poles f has there, and its sampled chordal distance to f
    on the small disc's boundary stays below eps (which bounds the interior
    difference where both maps are finite, by the maximum principle).

    ``approx_disc`` widens the disc on which the log-derivative is matched
    (used by the relative parametric extension to reproduce maps that are
    already immersions on the big disc).
    """
    if eps <= 0:
        raise InputError("eps must be positive")
    if not d1.contains_disc(d0, margin=1e-12):
        raise PreconditionError("the small disc must lie inside the big disc")
    cert = verify_immersion(f, approx_disc or d0, "CP1", root_tol=root_tol)
    if not cert.valid:
        raise NotAnImmersionError(
            "the map does not immerse the small disc into the sphere"
        )
    poles, theta, h, eta = _pipeline_data(f, d1, root_tol=root_tol)
    z0 = _choose_base_point(d0, poles)
    targets = residue_targets(poles)
    f0 = f(z0)
    h0 = h(z0)
    if is_inf(f0) or is_inf(h0) or complex(h0) == 0:
        raise PreconditionError("base point landed on a singular value")

    disc = approx_disc or d0
    eps_eta = eps / (64.0 * max(1.0, d1.radius))
    last_err = math.inf
    for _ in range(4):
        parts = constrained_eta(
            eta,
            poles,
            targets,
            eps_eta,
            disc=disc,
            center=z0,
            degree_budget=degree_budget,
        )
        xi = parts.expanded.antiderivative(z0)
        out = IntegralImmersion(
            base_point=z0,
            base_value=complex(f0),
            scale=complex(h0),
            xi=xi,
            poles=poles,
            domain=d1,
            eta_parts=parts,
        )
        worst_res = max((abs(r) for r in out.residues()), default=0.0)
        if worst_res > residue_tol:
            raise InternalConsistencyError(
                f"constructed integrand has residue {worst_res:.2e}"
            )
        sup = extension_boundary_error(
            f, out, d0, samples=boundary_samples, quad_tol=quad_tol
        )
        if sup < eps:
            return out
        last_err = min(last_err, sup)
        eps_eta /= 32.0
    raise DegreeBudgetError(
        f"chordal target {eps} not reached (best {last_err:.3e})",
        achieved=last_err,
    )


def extension_boundary_error(
    f: RationalMap,
    F: IntegralImmersion,
    d0: Disc,
    *,
    samples: int = 256,
    quad_tol: float = QUAD_TOL,
) -> float:
    """Sampled sup of the chordal distance between f and F on the disc boundary."""
    vals = F.values_on_circle(d0.center, d0.radius, samples, quad_tol=quad_tol)
    angles = 2.0 * math.pi * np.arange(samples) / samples
    ring = d0.center + d0.radius * np.exp(1j * angles)
    worst = 0.0
    for z, v in zip(ring, vals):
        worst = max(worst, chordal_distance(f(complex(z)), v))
    return worst


# -- parametric families ------------------------------------------------------


def _check_pole_continuity(grid: ParamGrid, pole_sets: list[PoleSet]):
    for i, j in grid.adjacent_pairs():
        if len(pole_sets[i]) != len(pole_sets[j]):
            raise PoleCollisionError(
                f"pole count changes across the grid cell ({i}, {j}): "
                f"{len(pole_sets[i])} vs {len(pole_sets[j])}"
            )


def extend_family(
    maps: Sequence[RationalMap],
    grid: ParamGrid,
    d0: Disc,
    d1: Disc,
    eps: float,
    *,
    root_tol: float = ROOT_TOL,
    residue_tol: float = RESIDUE_TOL,
    quad_tol: float = QUAD_TOL,
    degree_budget: int = DEGREE_BUDGET,
    q_eps: float = 1e-8,
) -> list[IntegralImmersion]:
    """Extend a sampled family, reproducing the members marked by the grid's Q.

    Every member must immerse the small disc; Q members must immerse the big
    disc, and their outputs match them there (the log-derivative is fitted on
    the big disc with tolerance ``q_eps``).  Pole count must stay constant
    across grid cells; a jump raises PoleCollisionError naming the cell.

    Solutions blend at the log-derivative level with the grid's Q-cutoff
    weights; since hat weights are 0/1 at the nodes, each node output is the
    big-disc fit at Q nodes and the small-disc fit elsewhere.
    """
    if len(maps) != grid.npoints:
        raise InputError("one map per grid point required")
    pole_sets = [f.pole_set(root_tol=root_tol).filter(
        lambda a: abs(a - d1.center) <= d1.radius
    ) for f in maps]
    _check_pole_continuity(grid, pole_sets)
    out: list[IntegralImmersion] = []
    for i, f in enumerate(maps):
        chi = grid.q_cutoff(grid.point(i))
        if grid.q_mask[i]:
            cert = verify_immersion(f, d1, "CP1", root_tol=root_tol)
            if not cert.valid:
                raise NotAnImmersionError(
                    f"map at Q node {i} does not immerse the big disc"
                )
            F = extend_immersion(
                f, d0, d1, min(eps, q_eps),
                root_tol=root_tol, residue_tol=residue_tol, quad_tol=quad_tol,
                degree_budget=degree_budget, approx_disc=d1,
            )
        elif chi > 0.0:
            # inside the Q-cutoff band but not on Q: blend the big-disc fit
            # (if available) with the small-disc fit at the eta level
            F = _blended_node(
                f, d0, d1, eps, chi,
                root_tol=root_tol, residue_tol=residue_tol,
                quad_tol=quad_tol, degree_budget=degree_budget, q_eps=q_eps,
            )
        else:
            F = extend_immersion(
                f, d0, d1, eps,
                root_tol=root_tol, residue_tol=residue_tol, quad_tol=quad_tol,
                degree_budget=degree_budget,
            )
        out.append(F)
    return out


def _blended_node(
    f: RationalMap,
    d0: Disc,
    d1: Disc,
    eps: float,
    chi: float,
    *,
    root_tol: float,
    residue_tol: float,
    quad_tol: float,
    degree_budget: int,
    q_eps: float,
) -> IntegralImmersion:
    """Convex combination of big-disc and small-disc solutions at the eta level.

    Both summands satisfy the same linear interpolation conditions, so the
    combination does too and the reconstruction stays an immersion.
    """
    small = extend_immersion(
        f, d0, d1, eps,
        root_tol=root_tol, residue_tol=residue_tol, quad_tol=quad_tol,
        degree_budget=degree_budget,
    )
    try:
        big = extend_immersion(
            f, d0, d1, min(eps, q_eps),
            root_tol=root_tol, residue_tol=residue_tol, quad_tol=quad_tol,
            degree_budget=degree_budget, approx_disc=d1,
        )
    except (NotAnImmersionError, PreconditionError):
        return small  # only the small-disc chart exists here
    parts = ConstrainedEta(
        lagrange=chi * big.eta_parts.lagrange + (1.0 - chi) * small.eta_parts.lagrange,
        sigma=chi * big.eta_parts.sigma + (1.0 - chi) * small.eta_parts.sigma,
        nodes=small.eta_parts.nodes,
        expanded=chi * big.eta_parts.expanded + (1.0 - chi) * small.eta_parts.expanded,
    )
    xi = parts.expanded.antiderivative(small.base_point)
    return IntegralImmersion(
        base_point=small.base_point,
        base_value=small.base_value,
        scale=small.scale,
        xi=xi,
        poles=small.poles,
        domain=d1,
        eta_parts=parts,
    )
