"""Default tolerances and run configuration.

All tolerances are keyword-overridable in the functions that use them; the
values here are the desk-scale defaults (degree <= 64 polynomials, domains of
diameter a few units).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, asdict

# Coefficient magnitudes below COEFF_TOL * max(1, |coeffs|) are treated as zero.
COEFF_TOL = 1e-12

# Roots closer than this are merged into a single multiple root; pole sets and
# interpolation nodes must be separated by more than this.
ROOT_TOL = 1e-8

# Simultaneous-iteration budget for the polynomial root solver.
ROOT_SWEEPS = 200

# Absolute tolerance for adaptive contour quadrature.
QUAD_TOL = 1e-10

# Numerical residues of constructed integrands must stay below this.
RESIDUE_TOL = 1e-9

# "On the boundary" clearance, as a fraction of the contour diameter.
CLEARANCE_FACTOR = 1e-6

# Smallest |f| that continuous-argument tracking accepts on a contour.
MIN_MODULUS = 1e-12

# Maximum number of contour samples after adaptive refinement.
SAMPLE_BUDGET = 2**20

# Truncation degrees tried by the disc approximation routines.
DEGREE_SCHEDULE = (8, 16, 32, 64, 128, 256)
DEGREE_BUDGET = 256

ENV_PREFIX = "MEROIMM_"


@dataclass(frozen=True)
class RunConfig:
    """Tolerances and budgets for a CLI run.

    Values are resolved flag > environment (``MEROIMM_*``) > default.
    """

    eps: float = 1e-3
    tol_residue: float = RESIDUE_TOL
    tol_root: float = ROOT_TOL
    tol_quad: float = QUAD_TOL
    clearance_factor: float = CLEARANCE_FACTOR
    degree_budget: int = DEGREE_BUDGET
    grid: int = 11
    out: str | None = None
    json_stdout: bool = False

    def __post_init__(self):
        for name in ("eps", "tol_residue", "tol_root", "tol_quad", "clearance_factor"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.degree_budget < 1 or self.grid < 1:
            raise ValueError("budgets must be >= 1")

    def tolerances(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("json_stdout")
        return d


_ENV_FIELDS = {
    "eps": float,
    "tol_residue": float,
    "tol_root": float,
    "tol_quad": float,
    "degree_budget": int,
    "grid": int,
}


def config_from_env(overrides: dict | None = None) -> RunConfig:
    """Build a RunConfig from MEROIMM_* environment variables plus overrides."""
    values: dict = {}
    for name, cast in _ENV_FIELDS.items():
        raw = os.environ.get(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = cast(raw)
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)
