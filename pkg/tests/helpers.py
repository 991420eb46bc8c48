"""Shared generators and independent oracles for the test suite."""
import numpy as np

from meroimm import ComplexPolynomial, RationalMap


def separated_points(rng, k, *, box=1.5, min_sep=0.5, tries=200):
    """k random complex points with pairwise separation at least min_sep."""
    for _ in range(tries):
        pts = rng.uniform(-box, box, k) + 1j * rng.uniform(-box, box, k)
        if all(
            abs(pts[i] - pts[j]) > min_sep for i in range(k) for j in range(i)
        ):
            return [complex(p) for p in pts]
    raise RuntimeError("could not place separated points")


def random_rational(rng, *, max_poles=3, max_order=2, max_num_degree=2,
                    box=1.5, min_sep=0.5):
    """Random rational map with well-separated poles; degree stays <= 6."""
    k = int(rng.integers(1, max_poles + 1))
    poles = separated_points(rng, k, box=box, min_sep=min_sep)
    orders = [int(m) for m in rng.integers(1, max_order + 1, k)]
    while sum(orders) > 6 - max_num_degree:
        orders[int(np.argmax(orders))] -= 1
        if all(o == 1 for o in orders):
            break
    den = ComplexPolynomial.from_roots(
        [p for p, m in zip(poles, orders) for _ in range(m)]
    )
    ncoef = rng.normal(size=max_num_degree + 1) + 1j * rng.normal(size=max_num_degree + 1)
    num = ComplexPolynomial(ncoef)
    return RationalMap(num, den), poles, orders


def cauchy_residue(f, a, radius, n=4096):
    """Independent residue oracle: trapezoid Cauchy integral on a circle.

    The trapezoid rule is spectrally exact on the Laurent modes here; the
    radius should sit well away from the pole and its neighbors so double
    precision does not drown the answer.
    """
    th = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    ring = a + radius * np.exp(1j * th)
    vals = f(ring) * (ring - a)
    return complex(np.mean(vals))


def numpy_rational_data(f):
    """Descending-order numpy coefficient arrays for an independent oracle."""
    num = np.array(list(reversed(f.num.coeffs)), dtype=complex)
    den = np.array(list(reversed(f.den.coeffs)), dtype=complex)
    return num, den


def numpy_derivative_zeros_and_poles(f):
    """Zeros of f' and poles of f via numpy.roots (quotient rule), an
    implementation-independent route for certificate checks."""
    num, den = numpy_rational_data(f)
    dnum = np.polyder(num) if len(num) > 1 else np.array([0j])
    dden = np.polyder(den) if len(den) > 1 else np.array([0j])
    top = np.polysub(np.polymul(dnum, den), np.polymul(num, dden))
    zeros = np.roots(top) if len(top) > 1 else np.array([])
    poles = np.roots(den) if len(den) > 1 else np.array([])
    # remove derivative "zeros" that are actually pole locations (the raw
    # quotient-rule numerator keeps a factor there for higher-order poles)
    keep = [z for z in zeros if not (len(poles) and np.min(np.abs(z - poles)) < 1e-6)]
    return np.array(keep), poles
