"""Scene configuration: geometry, wavenumber, potential model, validation.

A scene is two disjoint balls: the scatterer ball (radius ``a``, centered at
the origin) carrying a radial piecewise-constant refraction profile, and the
source ball (radius ``rho``, centered at ``center``) whose boundary sphere S
carries the source densities and receivers.
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np

try:
    import tomllib as _toml
except ModuleNotFoundError:  # Python < 3.11
    import tomli as _toml

from . import specfun
from .errors import GeometryError, PoleError, SceneFileError

__all__ = [
    "RadialPotential",
    "SceneConfig",
    "ValidationCheck",
    "ValidationReport",
    "validate_scene",
    "load_scene",
    "parse_scene_toml",
    "scene_sha256",
]

#: proximity margin (in units of k*a) below which the energy counts as a
#: Dirichlet eigenvalue of a ball
DEFAULT_EIG_MARGIN = 1e-6


@dataclass(frozen=True)
class RadialPotential:
    """Radial piecewise-constant refraction profile n(r).

    ``breakpoints = (r_1, ..., r_J)`` split [0, inf) into regions
    [0, r_1), [r_1, r_2), ..., [r_J, inf); ``values`` holds n on the first J
    regions and n = 1 outside r_J. Intervals are closed on the left, so the
    profile is right-continuous at each breakpoint.
    """

    breakpoints: tuple = ()
    values: tuple = ()

    def __post_init__(self):
        bp = tuple(float(r) for r in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        if len(bp) != len(vals):
            raise ValueError("breakpoints and values must have equal length")
        if any(not np.isfinite(v) for v in vals):
            raise ValueError("potential values must be finite")
        if any(v <= 0.0 for v in vals):
            raise ValueError("potential values must be positive")
        if len(bp) > 0:
            if bp[0] <= 0.0 or any(b >= c for b, c in zip(bp, bp[1:])):
                raise ValueError("breakpoints must be strictly increasing and positive")

    @property
    def n_shells(self):
        return len(self.breakpoints)

    @property
    def support_radius(self):
        """Outer radius of the support of n - 1 (0 for the free profile)."""
        r = 0.0
        for b, v in zip(self.breakpoints, self.values):
            if v != 1.0:
                r = b
        return r

    @property
    def is_free(self):
        return all(v == 1.0 for v in self.values)

    def __call__(self, r):
        """Evaluate n(r); right-continuous at breakpoints, 1 beyond the last."""
        r = np.asarray(r, dtype=float)
        if self.n_shells == 0:
            out = np.ones_like(r)
            return out[()] if out.ndim == 0 else out
        idx = np.searchsorted(np.array(self.breakpoints), r, side="right")
        vals = np.array(self.values + (1.0,))
        out = vals[idx]
        return out[()] if np.ndim(r) == 0 else out


@dataclass(frozen=True)
class SceneConfig:
    """Geometry, wavenumber and discretization parameters.

    eps_ball is the a-priori localization parameter: the scatterer is known to
    sit inside the ball |x| < 1/eps_ball. Defaults to 1/(2(|center| + rho)).
    """

    k: float
    a: float
    rho: float
    center: tuple
    l_max: int = 25
    n_quad_s: int = 600
    eps_ball: float = None
    eig_margin: float = DEFAULT_EIG_MARGIN

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        if len(self.center) != 3:
            raise ValueError("center must be a 3-vector")
        for name in ("k", "a", "rho"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.l_max < 0 or self.n_quad_s < 8:
            raise ValueError("l_max must be >= 0 and n_quad_s >= 8")
        if self.eps_ball is None:
            object.__setattr__(
                self, "eps_ball", 1.0 / (2.0 * (self.center_distance + self.rho)))
        if self.eps_ball <= 0.0:
            raise ValueError("eps_ball must be positive")

    @property
    def center_distance(self):
        return float(np.linalg.norm(self.center))

    @property
    def ball_radius(self):
        """Radius 1/eps of the a-priori bounding ball."""
        return 1.0 / self.eps_ball


@dataclass
class ValidationCheck:
    name: str
    passed: bool
    margin: float
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, margin, detail=""):
        self.checks.append(ValidationCheck(name, bool(passed), float(margin), detail))

    def as_dict(self):
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "margin": c.margin,
                 "detail": c.detail}
                for c in self.checks
            ],
        }

    def __str__(self):
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            lines.append(f"[{status}] {c.name}: margin={c.margin:.3e}"
                         + (f" ({c.detail})" if c.detail else ""))
        lines.append("=> " + ("all checks passed" if self.passed else "validation FAILED"))
        return "\n".join(lines)


def validate_scene(scene, potential=None, deep=True):
    """Check the standing assumptions; report pass/fail with numerical margins.

    Raises GeometryError when the balls overlap (hard failure). Eigenvalue
    proximity is measured as the distance of k*a and k*rho to the nearest
    spherical Bessel zero, and — when `deep` — via the pole margin of the
    radial solve with the potential.
    """
    report = ValidationReport()

    sep = scene.center_distance - (scene.a + scene.rho)
    if sep <= 0.0:
        raise GeometryError(
            f"source ball overlaps the scatterer ball (separation {sep:.3e})")
    report.add("balls_disjoint", True, sep)

    margin_a = specfun.jl_zero_distance(scene.k * scene.a, scene.l_max)
    report.add("ka_not_dirichlet_eigenvalue", margin_a > scene.eig_margin,
               margin_a, "distance of k*a to nearest j_l zero")

    margin_rho = specfun.jl_zero_distance(scene.k * scene.rho, scene.l_max)
    report.add("krho_not_dirichlet_eigenvalue", margin_rho > scene.eig_margin,
               margin_rho, "distance of k*rho to nearest j_l zero")

    if potential is not None:
        rj = max(potential.breakpoints) if potential.n_shells else 0.0
        report.add("potential_support_inside", rj < scene.a, scene.a - rj,
                   "a - outermost breakpoint")

        if deep:
            from . import dtn  # deferred: dtn builds on scene types

            try:
                sol = dtn.solve_regular_radial(
                    potential, scene.k, scene.a, np.arange(scene.l_max + 1))
                margin = float(np.min(sol.pole_margins()))
                report.add("lambda_not_interior_eigenvalue",
                           margin > dtn.POLE_THRESHOLD, margin,
                           "min_l |w(a)| relative to run maximum")
            except PoleError as exc:
                report.add("lambda_not_interior_eigenvalue", False, 0.0, str(exc))

    return report


# ----------------------------------------------------------------------------
# scene files
# ----------------------------------------------------------------------------

_SCENE_KEYS = {"k", "a", "rho", "center", "l_max", "n_quad_s"}
_SCENE_OPTIONAL = {"eps_ball"}
_POTENTIAL_KEYS = {"breakpoints", "values"}


def parse_scene_toml(text):
    """Parse a scene document; strict about tables and keys."""
    try:
        doc = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise SceneFileError(f"TOML parse error: {exc}") from exc

    unknown_tables = set(doc) - {"scene", "potential"}
    if unknown_tables:
        raise SceneFileError(f"unknown tables: {sorted(unknown_tables)}")
    if "scene" not in doc or "potential" not in doc:
        raise SceneFileError("scene file must contain [scene] and [potential] tables")

    sc = doc["scene"]
    unknown = set(sc) - _SCENE_KEYS - _SCENE_OPTIONAL
    if unknown:
        raise SceneFileError(f"unknown [scene] keys: {sorted(unknown)}")
    missing = _SCENE_KEYS - set(sc)
    if missing:
        raise SceneFileError(f"missing [scene] keys: {sorted(missing)}")

    pot = doc["potential"]
    unknown = set(pot) - _POTENTIAL_KEYS
    if unknown:
        raise SceneFileError(f"unknown [potential] keys: {sorted(unknown)}")
    missing = _POTENTIAL_KEYS - set(pot)
    if missing:
        raise SceneFileError(f"missing [potential] keys: {sorted(missing)}")

    try:
        scene = SceneConfig(
            k=float(sc["k"]), a=float(sc["a"]), rho=float(sc["rho"]),
            center=tuple(sc["center"]), l_max=int(sc["l_max"]),
            n_quad_s=int(sc["n_quad_s"]),
            eps_ball=float(sc["eps_ball"]) if "eps_ball" in sc else None)
        potential = RadialPotential(tuple(pot["breakpoints"]), tuple(pot["values"]))
    except (TypeError, ValueError) as exc:
        raise SceneFileError(f"invalid scene value: {exc}") from exc
    return scene, potential


def load_scene(path):
    with open(path, "rb") as fh:
        return parse_scene_toml(fh.read().decode("utf-8"))


def scene_sha256(path):
    """Content hash of a scene file, for run manifests."""
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()
