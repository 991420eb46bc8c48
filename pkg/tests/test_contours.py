import itertools
import math

import numpy as np
import pytest

from meroimm import (
    ComplexPolynomial,
    Contour,
    Disc,
    InputError,
    PathTooCloseError,
    QuadratureBudgetError,
    RationalMap,
    RefinementBudgetError,
    ZeroOnContourError,
    argument_principle_count,
    integrate,
    winding_number,
)

P = ComplexPolynomial
R = RationalMap


def test_contour_validation():
    with pytest.raises(InputError):
        Contour((0j, 0j), closed=False)
    with pytest.raises(InputError):
        Contour((0j, 1j), closed=True)
    c = Contour.circle(0, 1.0, samples=64)
    assert c.samples[0] == c.samples[-1]
    assert c.closed
    assert c.diameter == pytest.approx(2 * math.hypot(1, 1), rel=0.5)


def test_circle_turns_and_polyline():
    c2 = Contour.circle(0, 1.0, samples=32, turns=2)
    assert len(c2.samples) == 65
    p = Contour.polyline([0, 1, 1 + 1j], closed=True)
    assert p.samples[-1] == p.samples[0]
    assert Contour.segment(0, 1).length == pytest.approx(1.0)


def test_distance_to():
    c = Contour.segment(0, 2)
    assert c.distance_to(1 + 1j) == pytest.approx(1.0)
    assert c.distance_to(-1.0) == pytest.approx(1.0)


def test_integrate_constant_segment():
    assert integrate(lambda z: np.ones_like(z), Contour.segment(0, 1), 1e-12) == pytest.approx(1.0)


def test_integrate_cauchy():
    v = integrate(lambda z: 1.0 / z, Contour.circle(0, 1.0), 1e-12)
    assert v == pytest.approx(2j * math.pi, abs=1e-10)


def test_integrate_double_pole_no_residue():
    f = R(P([1]), P.from_roots([0.3, 0.3]))
    v = integrate(f, Contour.circle(0, 1.0), 1e-12)
    assert abs(v) < 1e-10


def test_integrate_pole_on_path():
    f = R(P([1]), P.from_roots([1.0]))
    with pytest.raises(PathTooCloseError):
        integrate(f, Contour.circle(0, 1.0, samples=64), 1e-10)


def test_integrate_budget():
    # a needle the subdivision cannot resolve with a handful of evaluations
    f = lambda z: 1.0 / (z - (1.0 + 1e-7j))
    with pytest.raises(QuadratureBudgetError) as exc:
        integrate(f, Contour.segment(0, 2, samples=2), 1e-14, eval_budget=40)
    assert exc.value.best is not None


def test_winding_examples():
    circ = Contour.circle(0, 1.0)
    assert winding_number(lambda z: z, circ) == 1
    assert winding_number(P([0, 0, 3]), circ) == 2  # derivative of z^3
    assert winding_number(R(P([-1]), P([0, 0, 1])), circ) == -2  # -1/z^2
    assert winding_number(lambda z: z, Contour.circle(0, 1.0, turns=2)) == 2
    assert winding_number(lambda z: z, Contour.circle(0, 1.0, turns=-1)) == -1


def test_winding_zero_on_contour():
    with pytest.raises(ZeroOnContourError):
        winding_number(P.from_roots([1.0]), Contour.circle(0, 1.0, samples=64))


def test_winding_needs_closed():
    with pytest.raises(InputError):
        winding_number(lambda z: z, Contour.segment(1, 2))


def test_winding_refinement_budget():
    # f = z^5 on a 8-sample circle needs refinement; a tiny budget trips it
    c = Contour(Contour.circle(0, 1.0, samples=8).samples, closed=True, budget=10)
    with pytest.raises(RefinementBudgetError):
        winding_number(P([0, 0, 0, 0, 0, 1]), c)


def test_winding_resampling_invariance():
    f = R(P.from_roots([0.2 + 0.1j, -0.4]), P.from_roots([1.9]))
    ws = {
        winding_number(f, Contour.circle(0, 1.0, samples=n))
        for n in (64, 256, 777)
    }
    assert ws == {2}


def test_winding_radial_perturbation_invariance(rng):
    f = R(P.from_roots([0.3, -0.2j]), P.from_roots([2.5]))
    base = winding_number(f, Contour.circle(0, 1.0))
    th = np.linspace(0, 2 * math.pi, 257)
    r = 1.0 + 0.08 * np.sin(3 * th) + 0.05 * np.cos(5 * th)
    wobble = Contour(tuple(r * np.exp(1j * th)), closed=False)
    wobble = Contour(tuple(list(r[:-1] * np.exp(1j * th[:-1])) + [r[0]]), closed=True)
    assert winding_number(f, wobble) == base


def test_winding_multiplicativity(rng):
    circ = Contour.circle(0, 1.0)
    for _ in range(20):
        inner = [0.5 * np.exp(2j * math.pi * rng.random()) for _ in range(int(rng.integers(0, 3)))]
        outer = [2.2 * np.exp(2j * math.pi * rng.random()) for _ in range(int(rng.integers(1, 3)))]
        f = R(P.from_roots(inner) if inner else P([1.0]), P.from_roots(outer))
        g = R(P.from_roots(outer), P.from_roots(inner) if inner else P([1.0]))
        assert winding_number(f * g, circ) == winding_number(f, circ) + winding_number(g, circ)


def test_argument_principle_examples():
    circ = Contour.circle(0, 1.0)
    assert argument_principle_count(R(P([0, 0, 0, 1])), circ) == 3
    assert argument_principle_count(R(P([1]), P.from_roots([0.3])), circ) == -1
    assert argument_principle_count(R(P([1, 0, 0, 0, 0.5])), Contour.circle(0, 2.0)) == 4


def test_argument_principle_clearance():
    f = R(P.from_roots([1.0 + 1e-9]), P([1]))
    with pytest.raises(PathTooCloseError):
        argument_principle_count(f, Contour.circle(0, 1.0))


def test_winding_argument_principle_oracle_exhaustive():
    # products of <= 4 linear factors, each root inside or outside the unit
    # circle and placed in numerator or denominator; expected count comes
    # from the construction itself
    circ = Contour.circle(0, 1.0)
    pool = [0.3 + 0.2j, -0.5 + 0.1j, 0.45j, 1.6 + 0j, 1.2 + 1.1j, -1.8 + 0.4j]
    for k in range(1, 5):
        for combo in itertools.combinations(range(len(pool)), k):
            for signs in itertools.product([1, -1], repeat=k):
                nr = [pool[i] for i, s in zip(combo, signs) if s > 0]
                dr = [pool[i] for i, s in zip(combo, signs) if s < 0]
                f = R(
                    P.from_roots(nr) if nr else P([1.0]),
                    P.from_roots(dr) if dr else P([1.0]),
                )
                expected = sum(1 for r in nr if abs(r) < 1) - sum(
                    1 for r in dr if abs(r) < 1
                )
                assert winding_number(f, circ) == expected
                assert argument_principle_count(f, circ) == expected


def test_disc_geometry():
    d = Disc(1 + 0j, 2.0)
    assert d.contains(2.5)
    assert not d.contains(3.5)
    assert d.boundary_distance(1 + 0j) == pytest.approx(2.0)
    assert Disc(0, 3.0).contains_disc(d)
    with pytest.raises(InputError):
        Disc(0, 0.0)
