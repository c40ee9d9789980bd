"""Ray-wise disintegration on rotationally symmetric model spaces.

A radial model carries a quotient measure of total mass theta over ray
directions and one weight w(t) along each ray, so m = theta * w(t) dt in
polar form.  For a centred ball E = B_r inside the larger ball B_R all rays
coincide by symmetry, which makes the truncated, normalized ray
decomposition exact and testable: each ray gets the probability density
w / int_0^R w on [0, R] and the quotient carries mass m(B_R).

The dimension-reduction chain lower-bounds the boundary content of B_r by
ray-wise profile values and, in the large-R limit, by the volume-growth
bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .density import Density, check_mcp_density, density_from_dict
from .errors import DomainError, PreconditionError
from .numerics import DEFAULT_TOLERANCE, Tolerance, require_dimension
from .profile import avr_lower_bound, profile_mcp
from .space import IntervalUnion, WeightedInterval, avr, minkowski_content

__all__ = [
    "RadialModel",
    "TruncatedNeedle",
    "ChainReport",
    "disintegrate_ball",
    "verify_disintegration",
    "dimension_reduction_chain",
    "model_from_dict",
]


@dataclass(frozen=True)
class RadialModel:
    total_angle: float
    radial_weight: Density
    N: float
    ray_length: float  # math.inf for complete rays

    def __post_init__(self):
        if not self.total_angle > 0.0:
            raise DomainError(f"total_angle must be positive, got {self.total_angle}")
        require_dimension(self.N)
        if not self.ray_length > 0.0:
            raise DomainError(f"ray_length must be positive, got {self.ray_length}")
        verdict = check_mcp_density(self.radial_weight, self.ray_length, self.N)
        if not verdict.passed:
            raise DomainError(
                f"radial weight fails the dimension-{self.N} ratio bounds: "
                f"witness {verdict.witness}"
            )

    def ball_mass(self, r: float) -> float:
        return self.total_angle * self.radial_weight.integral(0.0, r)

    def one_dimensional_space(self) -> WeightedInterval:
        """The model collapsed to [0, ray_length] with density theta * w."""
        return WeightedInterval(self.ray_length, self.radial_weight.scaled(self.total_angle))

    def to_dict(self) -> dict:
        return {
            "theta": self.total_angle,
            "weight": self.radial_weight.to_dict(),
            "N": self.N,
            "ray_length": "inf" if math.isinf(self.ray_length) else self.ray_length,
        }


def model_from_dict(data: dict) -> RadialModel:
    try:
        theta = float(data["theta"])
        weight = density_from_dict(data["weight"])
        N = float(data["N"])
        raw_len = data["ray_length"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"model descriptor is missing field {exc}")
    ray_length = math.inf if raw_len == "inf" else float(raw_len)
    return RadialModel(theta, weight, N, ray_length)


@dataclass(frozen=True)
class TruncatedNeedle:
    """One ray of the decomposition, truncated to [0, T] and normalized."""

    T: float
    normalized_density: Density

    def __post_init__(self):
        if not (math.isfinite(self.T) and self.T > 0.0):
            raise DomainError(f"truncation length must be positive and finite, got {self.T}")
        mass = self.normalized_density.integral(0.0, self.T)
        if abs(mass - 1.0) > 1e-10:
            raise DomainError(f"normalized ray density has mass {mass}, expected 1")

    def as_space(self) -> WeightedInterval:
        return WeightedInterval(self.T, self.normalized_density)


def _validate_radii(model: RadialModel, r: float, R: float) -> None:
    if not (0.0 < r and math.isfinite(R) and R > 0.0):
        raise DomainError(f"need finite positive radii, got r={r}, R={R}")
    if r > R / 4.0:
        raise PreconditionError(f"decomposition requires r <= R/4, got r={r}, R={R}")
    if R > model.ray_length:
        raise PreconditionError(f"R={R} exceeds the ray length {model.ray_length}")


def disintegrate_ball(
    model: RadialModel, r: float, R: float
) -> tuple[TruncatedNeedle, float]:
    """Truncated normalized ray decomposition for E = B_r inside B_R.

    By symmetry all rays coincide: T = R, the ray density is w / int_0^R w,
    and the quotient measure has total mass m(B_R).  The per-ray mass of E
    is then m(E) / m(B_R) by construction.
    """
    _validate_radii(model, r, R)
    ray_mass = model.radial_weight.integral(0.0, R)
    needle = TruncatedNeedle(R, model.radial_weight.scaled(1.0 / ray_mass))
    return needle, model.total_angle * ray_mass


def verify_disintegration(
    model: RadialModel, r: float, R: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> float:
    """|m(B_r) - quotient_mass * per-ray mass of B_r|; zero up to rounding."""
    needle, quotient_mass = disintegrate_ball(model, r, R)
    per_ray = needle.normalized_density.integral(0.0, r)
    return abs(model.ball_mass(r) - quotient_mass * per_ray)


@dataclass(frozen=True)
class ChainReport:
    r: float
    R: float
    m_plus: float
    needle_integral: float
    scaled_profile_bound: float
    avr_bound: float
    avr_value: float
    avr_certified: bool

    def ordered(self, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        """Chain inequalities hold: m_plus >= needle_integral >=
        scaled_profile_bound, and m_plus dominates the limit bound."""
        eps = tol.abs_tol
        return (
            self.m_plus >= self.needle_integral - eps
            and self.needle_integral >= self.scaled_profile_bound - eps
            and self.m_plus >= self.avr_bound - eps
        )


def dimension_reduction_chain(
    model: RadialModel, r: float, R: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> ChainReport:
    """Evaluate the boundary-content chain for E = B_r.

    m_plus:               theta * w(r), the exact boundary term of the ball;
    needle_integral:      quotient-integrated per-ray boundary content of E;
    scaled_profile_bound: m(B_R) * profile(N, R + diam E, m(E)/m(B_R)) with
                          diam E = 2r (a safe upper bound on the diameter);
    avr_bound:            the volume-growth comparison bound, the R -> inf
                          limit of the scaled profile term.
    """
    _validate_radii(model, r, R)
    needle, quotient_mass = disintegrate_ball(model, r, R)
    m_e = model.ball_mass(r)
    m_ball = model.ball_mass(R)
    m_plus = model.total_angle * model.radial_weight(r)

    ray_content = minkowski_content(needle.as_space(), IntervalUnion.of([(0.0, r)]))
    needle_integral = quotient_mass * ray_content

    fraction = m_e / m_ball
    scaled = m_ball * profile_mcp(model.N, R + 2.0 * r, fraction, tol).profile

    avr_value, certified = avr(model.one_dimensional_space(), model.N)
    bound = avr_lower_bound(model.N, avr_value, m_e) if math.isfinite(avr_value) else math.inf

    return ChainReport(
        r=r,
        R=R,
        m_plus=m_plus,
        needle_integral=needle_integral,
        scaled_profile_bound=scaled,
        avr_bound=bound,
        avr_value=avr_value,
        avr_certified=certified,
    )
