"""JSON and CSV encodings for every value the library exchanges.

Complex numbers are [re, im] pairs; the point at infinity is the string
"inf".  Polynomials are arrays of pairs in ascending degree; rational maps
are {"num": ..., "den": ...}.  Encoders and decoders round-trip exactly
(floats pass through repr-faithful JSON).
"""
from __future__ import annotations

import csv
import json
import math
from typing import Any, Sequence

from .contours import Contour, Disc
from .errors import InputError
from .extension import ConstrainedEta, IntegralImmersion
from .grids import ParamGrid
from .immersions import CircularDomain, FormalSeed, HomotopyClass, ImmersionCertificate
from .poly import ComplexPolynomial
from .rational import PoleSet, RationalMap
from .sphere import INF, SpherePoint, is_inf


# -- scalars ------------------------------------------------------------------


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(data) -> complex:
    if (
        not isinstance(data, (list, tuple))
        or len(data) != 2
        or not all(isinstance(x, (int, float)) for x in data)
    ):
        raise InputError(f"expected [re, im], got {data!r}")
    return complex(data[0], data[1])


def sphere_point_to_json(p: SpherePoint):
    if is_inf(p):
        return "inf"
    return complex_to_json(complex(p))


def sphere_point_from_json(data) -> SpherePoint:
    if data == "inf":
        return INF
    return complex_from_json(data)


def real_to_json(x: float):
    return "inf" if math.isinf(x) else float(x)


# -- polynomials and rational maps ---------------------------------------------


def poly_to_json(p: ComplexPolynomial) -> list[list[float]]:
    return [complex_to_json(c) for c in p.coeffs]


def poly_from_json(data) -> ComplexPolynomial:
    if not isinstance(data, list):
        raise InputError("polynomial must be an array of [re, im] pairs")
    return ComplexPolynomial([complex_from_json(c) for c in data])


def rational_to_json(f: RationalMap) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def rational_from_json(data) -> RationalMap:
    if isinstance(data, list):  # bare polynomial
        return RationalMap(poly_from_json(data))
    if not isinstance(data, dict) or "num" not in data:
        raise InputError('rational map must be {"num": [...], "den": [...]}')
    num = poly_from_json(data["num"])
    den = poly_from_json(data.get("den", [[1.0, 0.0]]))
    return RationalMap(num, den)


# -- geometry -------------------------------------------------------------------


def disc_to_json(d: Disc) -> dict:
    return {"center": complex_to_json(d.center), "radius": d.radius}


def disc_from_json(data) -> Disc:
    if not isinstance(data, dict) or "center" not in data or "radius" not in data:
        raise InputError('disc must be {"center": [re, im], "radius": r}')
    return Disc(complex_from_json(data["center"]), float(data["radius"]))


def domain_to_json(D: CircularDomain) -> dict:
    return {
        "outer": disc_to_json(D.outer),
        "holes": [disc_to_json(h) for h in D.holes],
    }


def domain_from_json(data) -> CircularDomain:
    if not isinstance(data, dict) or "outer" not in data:
        raise InputError('domain must be {"outer": disc, "holes": [disc, ...]}')
    holes = tuple(disc_from_json(h) for h in data.get("holes", []))
    return CircularDomain(disc_from_json(data["outer"]), holes)


def contour_to_json(c: Contour) -> dict:
    return {
        "kind": "polyline",
        "points": [complex_to_json(z) for z in c.samples],
        "closed": c.closed,
    }


def contour_from_json(data) -> Contour:
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("contour must have a 'kind' field")
    kind = data["kind"]
    if kind == "circle":
        return Contour.circle(
            complex_from_json(data["center"]),
            float(data["radius"]),
            samples=int(data.get("samples", 256)),
            turns=int(data.get("turns", 1)),
        )
    if kind == "polyline":
        pts = [complex_from_json(p) for p in data["points"]]
        return Contour.polyline(pts, closed=bool(data.get("closed", False)))
    raise InputError(f"unknown contour kind {kind!r}")


# -- results --------------------------------------------------------------------


def pole_set_to_json(ps: PoleSet) -> list[dict]:
    return [
        {"location": complex_to_json(a), "order": m} for a, m in ps.entries
    ]


def pole_set_from_json(data) -> PoleSet:
    return PoleSet(
        [(complex_from_json(e["location"]), int(e["order"])) for e in data]
    )


def certificate_to_json(c: ImmersionCertificate) -> dict:
    return {
        "valid": c.valid,
        "poles_inside": pole_set_to_json(c.poles_inside),
        "derivative_zero_count": c.derivative_zero_count,
        "boundary_clearance": real_to_json(c.boundary_clearance),
        "target": c.target,
    }


def homotopy_class_to_json(h: HomotopyClass) -> dict:
    return {
        "z_class": list(h.z_class) if h.z_class is not None else None,
        "mod2_class": list(h.mod2_class),
        "target": h.target,
    }


def seed_from_json(data) -> FormalSeed:
    if not isinstance(data, dict):
        raise InputError("seed must be an object")
    return FormalSeed(
        complex_from_json(data["base_point"]),
        sphere_point_from_json(data["target"]),
        complex_from_json(data["fiber"]),
        complex_from_json(data["frame"]),
    )


def grid_from_json(data) -> ParamGrid:
    if not isinstance(data, dict) or "shape" not in data:
        raise InputError('grid must be {"shape": [...], "q": [...]}')
    shape = [int(s) for s in data["shape"]]
    q = [int(i) for i in data.get("q", [])]
    if len(shape) == 1:
        return ParamGrid.line(shape[0], q_nodes=q)
    if len(shape) == 2:
        return ParamGrid.box(shape[0], shape[1], q_nodes=q)
    raise InputError("grid shape must have 1 or 2 axes")


def grid_to_json(g: ParamGrid) -> dict:
    return {"shape": list(g.shape), "q": g.q_indices}


def immersion_to_json(F: IntegralImmersion) -> dict:
    return {
        "base_point": complex_to_json(F.base_point),
        "base_value": complex_to_json(F.base_value),
        "scale": complex_to_json(F.scale),
        "xi": poly_to_json(F.xi),
        "theta": poly_to_json(F.theta),
        "poles": pole_set_to_json(F.poles),
        "domain": disc_to_json(F.domain),
        "eta": {
            "lagrange": poly_to_json(F.eta_parts.lagrange),
            "sigma": poly_to_json(F.eta_parts.sigma),
            "nodes": [complex_to_json(a) for a in F.eta_parts.nodes],
            "expanded": poly_to_json(F.eta_parts.expanded),
        },
    }


def immersion_from_json(data) -> IntegralImmersion:
    eta = data["eta"]
    parts = ConstrainedEta(
        lagrange=poly_from_json(eta["lagrange"]),
        sigma=poly_from_json(eta["sigma"]),
        nodes=tuple(complex_from_json(a) for a in eta["nodes"]),
        expanded=poly_from_json(eta["expanded"]),
    )
    return IntegralImmersion(
        base_point=complex_from_json(data["base_point"]),
        base_value=complex_from_json(data["base_value"]),
        scale=complex_from_json(data["scale"]),
        xi=poly_from_json(data["xi"]),
        poles=pole_set_from_json(data["poles"]),
        domain=disc_from_json(data["domain"]),
        eta_parts=parts,
    )


# -- files ----------------------------------------------------------------------


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, repr-faithful floats, newline end."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_curve_csv(path, ts: Sequence[float], zs: Sequence[complex]) -> None:
    """Curve trace rows t, re, im."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "re", "im"])
        for t, z in zip(ts, zs):
            z = complex(z)
            w.writerow([repr(float(t)), repr(z.real), repr(z.imag)])


def write_map_samples_csv(path, zs: Sequence[complex], fs: Sequence[SpherePoint]) -> None:
    """Map sample rows z_re, z_im, f_re, f_im; infinities print as inf."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["z_re", "z_im", "f_re", "f_im"])
        for z, f in zip(zs, fs):
            z = complex(z)
            if is_inf(f):
                fre = fim = "inf"
            else:
                f = complex(f)
                fre, fim = repr(f.real), repr(f.imag)
            w.writerow([repr(z.real), repr(z.imag), fre, fim])
