"""One-dimensional weight functions and the curvature-dimension ratio checks.

A weight h on [0, D] (D possibly infinite) is admissible for dimension
parameter N > 1 when, for every pair x0 <= x1 in the domain,

    ((D - x1)/(D - x0))^(N-1)  <=  h(x1)/h(x0)  <=  (x1/x0)^(N-1)

on a bounded domain, and 1 <= h(x1)/h(x0) <= (x1/x0)^(N-1) on the half line.
All checks below use the cross-multiplied (division-free) form so that zeros
of h at the left endpoint are handled without special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .numerics import DEFAULT_TOLERANCE, Tolerance, require_dimension, unit_ball_volume

__all__ = [
    "Density",
    "ConstantDensity",
    "MonomialDensity",
    "PiecewiseMonomialDensity",
    "SharpDensity",
    "TabulatedDensity",
    "Witness",
    "Verdict",
    "check_mcp_density",
    "minimal_mcp_dimension",
    "density_from_dict",
]

PASS_EXACT = "pass_exact"
PASS_SAMPLED = "pass_sampled"
FAIL = "fail"

_CONTINUITY_RTOL = 1e-12


class Density:
    """Base class for the supported weight-function families."""

    kind: str = "abstract"

    def __call__(self, x: float) -> float:
        raise NotImplementedError

    def integral(self, s: float, t: float) -> float:
        """Exact integral of the weight over [s, t]."""
        raise NotImplementedError

    def scaled(self, factor: float) -> "Density":
        """The weight multiplied by a positive constant."""
        raise NotImplementedError

    def tail(self) -> Optional[tuple[float, float]]:
        """(c, p) such that h(x) = c * x^p for all large x, or None."""
        raise NotImplementedError

    def breakpoints(self) -> tuple[float, ...]:
        """Interior junction points (sampling grids must include these)."""
        return ()

    # Domain actually covered by the definition of h.
    support_start: float = 0.0
    support_end: float = math.inf

    def to_dict(self) -> dict:
        raise NotImplementedError


def _require_positive(name: str, value: float) -> float:
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be positive and finite, got {value}")
    return float(value)


@dataclass(frozen=True)
class ConstantDensity(Density):
    c: float
    kind = "constant"

    def __post_init__(self):
        _require_positive("constant level c", self.c)

    def __call__(self, x: float) -> float:
        return self.c

    def integral(self, s: float, t: float) -> float:
        return self.c * (t - s)

    def scaled(self, factor: float) -> "ConstantDensity":
        return ConstantDensity(self.c * factor)

    def tail(self):
        return (self.c, 0.0)

    def to_dict(self) -> dict:
        return {"type": "constant", "c": self.c}


@dataclass(frozen=True)
class MonomialDensity(Density):
    """h(x) = c * x^p with c > 0 and p >= 0 (continuity at the origin)."""

    c: float
    p: float
    kind = "monomial"

    def __post_init__(self):
        _require_positive("monomial coefficient c", self.c)
        if not (math.isfinite(self.p) and self.p >= 0.0):
            raise DomainError(f"monomial exponent must be >= 0, got {self.p}")

    def __call__(self, x: float) -> float:
        if self.p == 0.0:
            return self.c
        return self.c * x ** self.p

    def integral(self, s: float, t: float) -> float:
        q = self.p + 1.0
        return self.c * (t ** q - s ** q) / q

    def scaled(self, factor: float) -> "MonomialDensity":
        return MonomialDensity(self.c * factor, self.p)

    def tail(self):
        return (self.c, self.p)

    def to_dict(self) -> dict:
        return {"type": "monomial", "c": self.c, "p": self.p}


@dataclass(frozen=True)
class PiecewiseMonomialDensity(Density):
    """Monomial pieces glued continuously at increasing breakpoints.

    pieces[i] = (c, p) applies on [b_{i-1}, b_i] with b_0 = 0 and the last
    piece extending to infinity.  The first exponent must be >= 0 so the
    weight stays continuous at the origin; later pieces may decrease.
    """

    break_values: tuple[float, ...]
    pieces: tuple[tuple[float, float], ...]
    kind = "piecewise_monomial"

    def __post_init__(self):
        bps = tuple(float(b) for b in self.break_values)
        pcs = tuple((float(c), float(p)) for c, p in self.pieces)
        object.__setattr__(self, "break_values", bps)
        object.__setattr__(self, "pieces", pcs)
        if len(pcs) != len(bps) + 1:
            raise DomainError(
                f"need exactly one more piece than breakpoints, got "
                f"{len(pcs)} pieces for {len(bps)} breakpoints"
            )
        if any(b <= 0 or not math.isfinite(b) for b in bps):
            raise DomainError("breakpoints must be positive and finite")
        if any(b1 <= b0 for b0, b1 in zip(bps, bps[1:])):
            raise DomainError("breakpoints must be strictly increasing")
        for c, p in pcs:
            _require_positive("piece coefficient", c)
        if pcs[0][1] < 0.0:
            raise DomainError("first piece exponent must be >= 0 (continuity at 0)")
        for b, (c0, p0), (c1, p1) in zip(bps, pcs, pcs[1:]):
            left = c0 * b ** p0
            right = c1 * b ** p1
            if abs(left - right) > _CONTINUITY_RTOL * max(abs(left), abs(right), 1.0):
                raise DomainError(f"pieces disagree at breakpoint {b}: {left} vs {right}")

    def _piece_at(self, x: float) -> tuple[float, float]:
        k = 0
        for b in self.break_values:
            if x <= b:
                break
            k += 1
        return self.pieces[k]

    def __call__(self, x: float) -> float:
        c, p = self._piece_at(x)
        if p == 0.0:
            return c
        return c * x ** p

    def integral(self, s: float, t: float) -> float:
        bounds = (0.0,) + self.break_values + (math.inf,)
        total = 0.0
        for (c, p), lo, hi in zip(self.pieces, bounds, bounds[1:]):
            a = max(s, lo)
            b = min(t, hi)
            if b > a:
                q = p + 1.0
                total += c * (b ** q - a ** q) / q
        return total

    def scaled(self, factor: float) -> "PiecewiseMonomialDensity":
        return PiecewiseMonomialDensity(
            self.break_values, tuple((c * factor, p) for c, p in self.pieces)
        )

    def tail(self):
        return self.pieces[-1]

    def breakpoints(self) -> tuple[float, ...]:
        return self.break_values

    def to_dict(self) -> dict:
        return {
            "type": "piecewise_monomial",
            "breakpoints": list(self.break_values),
            "pieces": [{"c": c, "p": p} for c, p in self.pieces],
        }


@dataclass(frozen=True)
class SharpDensity(Density):
    """The extremal half-line weight attaining equality in the volume-growth
    isoperimetric bound: constant up to x_star, then a pure power.

    For parameters (avr, mass, N) the flat level and the switch point are
    chosen so the flat part carries exactly ``mass`` and the tail gives the
    space asymptotic volume ratio ``avr``.
    """

    avr: float
    mass: float
    N: float
    kind = "paper_sharp"

    def __post_init__(self):
        _require_positive("avr", self.avr)
        _require_positive("mass", self.mass)
        require_dimension(self.N)

    @property
    def tail_coefficient(self) -> float:
        return self.N * unit_ball_volume(self.N) * self.avr

    @property
    def x_star(self) -> float:
        return (self.mass / self.tail_coefficient) ** (1.0 / self.N)

    @property
    def level(self) -> float:
        return self.tail_coefficient ** (1.0 / self.N) * self.mass ** (
            (self.N - 1.0) / self.N
        )

    def __call__(self, x: float) -> float:
        if x <= self.x_star:
            return self.level
        return self.tail_coefficient * x ** (self.N - 1.0)

    def integral(self, s: float, t: float) -> float:
        xs = self.x_star
        total = 0.0
        a, b = max(s, 0.0), min(t, xs)
        if b > a:
            total += self.level * (b - a)
        a, b = max(s, xs), t
        if b > a:
            c = self.tail_coefficient
            total += c * (b ** self.N - a ** self.N) / self.N
        return total

    def scaled(self, factor: float) -> "SharpDensity":
        # Scaling stays in the family: both avr and mass pick up the factor
        # while the switch point is unchanged.
        return SharpDensity(self.avr * factor, self.mass * factor, self.N)

    def tail(self):
        return (self.tail_coefficient, self.N - 1.0)

    def breakpoints(self) -> tuple[float, ...]:
        return (self.x_star,)

    def to_dict(self) -> dict:
        return {"type": "paper_sharp", "avr": self.avr, "mass": self.mass, "N": self.N}


@dataclass(frozen=True)
class TabulatedDensity(Density):
    """Linear interpolation of sampled non-negative values on a finite grid."""

    grid: tuple[float, ...]
    values: tuple[float, ...]
    kind = "tabulated"

    def __post_init__(self):
        g = tuple(float(x) for x in self.grid)
        v = tuple(float(x) for x in self.values)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)
        if len(g) < 2 or len(g) != len(v):
            raise DomainError("tabulated density needs matching grid/values, length >= 2")
        if any(b <= a for a, b in zip(g, g[1:])):
            raise DomainError("tabulated grid must be strictly increasing")
        if g[0] < 0.0:
            raise DomainError("tabulated grid must start at x >= 0")
        if any(x < 0.0 for x in v):
            raise DomainError("tabulated values must be non-negative")
        if any(a == 0.0 and b == 0.0 for a, b in zip(v, v[1:])):
            raise DomainError("tabulated density vanishes on a whole segment")

    @property
    def support_start(self) -> float:  # type: ignore[override]
        return self.grid[0]

    @property
    def support_end(self) -> float:  # type: ignore[override]
        return self.grid[-1]

    def __call__(self, x: float) -> float:
        if x < self.grid[0] or x > self.grid[-1]:
            raise DomainError(f"tabulated density not defined at {x}")
        return float(np.interp(x, self.grid, self.values))

    def integral(self, s: float, t: float) -> float:
        # Exact for the piecewise-linear interpolant.
        if s < self.grid[0] or t > self.grid[-1]:
            raise DomainError("integration range escapes the tabulated grid")
        if t <= s:
            return 0.0
        xs = [s] + [g for g in self.grid if s < g < t] + [t]
        vals = [self(x) for x in xs]
        total = 0.0
        for (x0, x1), (v0, v1) in zip(zip(xs, xs[1:]), zip(vals, vals[1:])):
            total += 0.5 * (v0 + v1) * (x1 - x0)
        return total

    def scaled(self, factor: float) -> "TabulatedDensity":
        return TabulatedDensity(self.grid, tuple(v * factor for v in self.values))

    def tail(self):
        return None

    def breakpoints(self) -> tuple[float, ...]:
        return self.grid[1:-1]

    def to_dict(self) -> dict:
        return {"type": "tabulated", "grid": list(self.grid), "values": list(self.values)}


def density_from_dict(data: dict) -> Density:
    """Build a density from its JSON dictionary form."""
    try:
        kind = data["type"]
    except (KeyError, TypeError):
        raise DomainError("density descriptor must be an object with a 'type' field")
    try:
        if kind == "constant":
            return ConstantDensity(float(data["c"]))
        if kind == "monomial":
            return MonomialDensity(float(data["c"]), float(data["p"]))
        if kind == "piecewise_monomial":
            return PiecewiseMonomialDensity(
                tuple(float(b) for b in data["breakpoints"]),
                tuple((float(p["c"]), float(p["p"])) for p in data["pieces"]),
            )
        if kind == "paper_sharp":
            return SharpDensity(float(data["avr"]), float(data["mass"]), float(data["N"]))
        if kind == "tabulated":
            return TabulatedDensity(tuple(data["grid"]), tuple(data["values"]))
    except KeyError as exc:
        raise DomainError(f"density descriptor of type '{kind}' is missing field {exc}")
    raise DomainError(f"unknown density type '{kind}'")


@dataclass(frozen=True)
class Witness:
    """A pair (x0, x1) violating one side of the ratio bounds.

    lhs and rhs are the two sides of the cross-multiplied inequality:
    upper side, violation means lhs > rhs; lower side, violation lhs < rhs.
    """

    x0: float
    x1: float
    side: str  # "lower" | "upper"
    lhs: float
    rhs: float

    def __post_init__(self):
        if not self.x0 < self.x1:
            raise DomainError(f"witness pair must satisfy x0 < x1, got {self.x0}, {self.x1}")
        if self.side not in ("lower", "upper"):
            raise DomainError(f"witness side must be 'lower' or 'upper', got {self.side}")


@dataclass(frozen=True)
class Verdict:
    status: str  # PASS_EXACT | PASS_SAMPLED | FAIL
    witness: Optional[Witness] = None
    samples_used: int = 0

    def __post_init__(self):
        if (self.status == FAIL) != (self.witness is not None):
            raise DomainError("verdict carries a witness exactly when it fails")

    @property
    def passed(self) -> bool:
        return self.status != FAIL


def _validate_domain(D: float) -> float:
    D = float(D)
    if not D > 0.0:
        raise DomainError(f"domain right endpoint must be positive, got {D}")
    return D


def _power_excess_fails(exponent_gap: float, ratio: float, rel_tol: float) -> bool:
    # The worst violation factor of a power-vs-power comparison at a pair
    # with x1/x0 = ratio; below rel_tol it is floating-point dust, not a fail.
    return ratio ** exponent_gap > 1.0 + rel_tol


def _monomial_verdict(h: MonomialDensity, D: float, N: float, tol: Tolerance) -> Verdict:
    gap = h.p - (N - 1.0)
    if gap <= 0.0 or not _power_excess_fails(gap, 2.0, tol.rel_tol):
        return Verdict(PASS_EXACT)
    if math.isinf(D):
        x0, x1 = 1.0, 2.0
    else:
        x0, x1 = D / 4.0, D / 2.0
    lhs = h(x1) * x0 ** (N - 1.0)
    rhs = h(x0) * x1 ** (N - 1.0)
    return Verdict(FAIL, Witness(x0, x1, "upper", lhs, rhs))


def _sharp_verdict(h: SharpDensity, D: float, N: float, tol: Tolerance) -> Verdict:
    xs = h.x_star
    if D <= xs:
        # Restriction to [0, D] is constant.
        return Verdict(PASS_EXACT)
    # The violation factor grows with x1/x0, so the worst in-domain pair
    # anchors at the switch point: (x_star, D), or ratio 2 on the half line.
    x0 = xs
    x1 = 2.0 * xs if math.isinf(D) else D
    gap = h.N - N
    if gap <= 0.0 or not _power_excess_fails(gap, x1 / x0, tol.rel_tol):
        return Verdict(PASS_EXACT)
    lhs = h(x1) * x0 ** (N - 1.0)
    rhs = h(x0) * x1 ** (N - 1.0)
    return Verdict(FAIL, Witness(x0, x1, "upper", lhs, rhs))


def _sample_grid(h: Density, D: float, grid_points: int) -> np.ndarray:
    lo = max(0.0, h.support_start)
    if math.isinf(D):
        hi = h.support_end
        if math.isinf(hi):
            bps = h.breakpoints()
            hi = max(bps) if bps else 1.0
    else:
        hi = min(D, h.support_end)
    if not hi > lo:
        raise DomainError(f"density support [{h.support_start}, {h.support_end}] "
                          f"does not overlap the domain [0, {D}]")
    pts = np.linspace(lo, hi, grid_points)
    extra = [b for b in h.breakpoints() if lo < b < hi]
    if extra:
        pts = np.unique(np.concatenate([pts, np.asarray(extra)]))
    return pts


def _sampled_witness(
    xs: np.ndarray, hv: np.ndarray, D: float, N: float, rel_tol: float
) -> Optional[Witness]:
    """Scan all sampled pairs; return the lexicographically smallest violation."""
    i_idx, j_idx = np.triu_indices(len(xs), k=1)
    xw = xs ** (N - 1.0)
    up_lhs = hv[j_idx] * xw[i_idx]
    up_rhs = hv[i_idx] * xw[j_idx]
    viol_up = up_lhs > up_rhs + rel_tol * np.maximum(up_lhs, up_rhs)
    if math.isinf(D):
        lo_lhs = hv[j_idx]
        lo_rhs = hv[i_idx]
    else:
        dw = (D - xs) ** (N - 1.0)
        lo_lhs = hv[j_idx] * dw[i_idx]
        lo_rhs = hv[i_idx] * dw[j_idx]
    viol_lo = lo_lhs < lo_rhs - rel_tol * np.maximum(lo_lhs, lo_rhs)
    viol = viol_up | viol_lo
    if not bool(viol.any()):
        return None
    k = int(np.argmax(viol))
    if viol_up[k]:
        return Witness(float(xs[i_idx[k]]), float(xs[j_idx[k]]), "upper",
                       float(up_lhs[k]), float(up_rhs[k]))
    return Witness(float(xs[i_idx[k]]), float(xs[j_idx[k]]), "lower",
                   float(lo_lhs[k]), float(lo_rhs[k]))


def _tail_witness(h: PiecewiseMonomialDensity, N: float, tol: Tolerance) -> Optional[Witness]:
    """Exact check of the final monomial piece on the half line.

    Pairs with both points in the tail reduce to a power comparison; pairs
    straddling the last breakpoint are monotone in x1 once the tail exponent
    conditions hold, so the sampled window covers them.
    """
    c, p = h.pieces[-1]
    anchor = max(h.break_values) if h.break_values else 1.0
    x0, x1 = anchor, 2.0 * anchor
    if p > N - 1.0 and _power_excess_fails(p - (N - 1.0), 2.0, tol.rel_tol):
        lhs = h(x1) * x0 ** (N - 1.0)
        rhs = h(x0) * x1 ** (N - 1.0)
        return Witness(x0, x1, "upper", lhs, rhs)
    if p < 0.0 and 2.0 ** p < 1.0 - tol.rel_tol:
        return Witness(x0, x1, "lower", h(x1), h(x0))
    return None


def _check_impl(
    h: Density,
    D: float,
    N: float,
    tol: Tolerance,
    grid_points: int,
    allow_uncertified_tail: bool,
) -> Verdict:
    if isinstance(h, ConstantDensity):
        return Verdict(PASS_EXACT)
    if isinstance(h, MonomialDensity):
        return _monomial_verdict(h, D, N, tol)
    if isinstance(h, SharpDensity):
        return _sharp_verdict(h, D, N, tol)

    xs = _sample_grid(h, D, grid_points)
    hv = np.asarray([h(float(x)) for x in xs])
    witness = _sampled_witness(xs, hv, D, N, tol.rel_tol)
    if witness is not None:
        return Verdict(FAIL, witness, samples_used=len(xs))

    if math.isinf(D):
        if isinstance(h, PiecewiseMonomialDensity):
            tail_witness = _tail_witness(h, N, tol)
            if tail_witness is not None:
                return Verdict(FAIL, tail_witness, samples_used=len(xs))
        elif not allow_uncertified_tail:
            raise DomainError(
                "a tabulated density has no defined tail; it cannot certify "
                f"behaviour on [0, inf) beyond its grid end {h.support_end}"
            )
    return Verdict(PASS_SAMPLED, samples_used=len(xs))


def check_mcp_density(
    h: Density,
    D: float,
    N: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
    grid_points: int = 512,
) -> Verdict:
    """Check the dimension-N ratio bounds for h on [0, D] (D may be inf).

    Constant, monomial and sharp densities are decided algebraically
    (pass_exact / fail); piecewise and tabulated ones by a deterministic
    dense pair sweep (pass_sampled / fail with the smallest violating pair).
    A tabulated density on the half line can fail (a violation inside its
    grid disproves the bounds) but never pass: with no defined tail the
    positive case raises a DomainError.
    """
    D = _validate_domain(D)
    N = require_dimension(N)
    if grid_points < 2:
        raise DomainError(f"grid_points must be >= 2, got {grid_points}")
    return _check_impl(h, D, N, tol, grid_points, allow_uncertified_tail=False)


def minimal_mcp_dimension(
    h: Density,
    D: float,
    n_lo: float,
    n_hi: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
    grid_points: int = 512,
) -> Optional[float]:
    """Smallest dimension parameter in [n_lo, n_hi] for which h passes.

    Bisection over the check; valid because both bound exponents are N - 1,
    so the passing set is upward closed in N.  Returns None when even n_hi
    fails.  For a tabulated density on the half line the result certifies
    the sampled grid only (the tail stays unverified).
    """
    D = _validate_domain(D)
    if not n_lo > 1.0:
        raise DomainError(f"n_lo must exceed 1, got {n_lo}")
    if not n_hi > n_lo:
        raise DomainError(f"need n_lo < n_hi, got [{n_lo}, {n_hi}]")

    def passes(n: float) -> bool:
        verdict = _check_impl(h, D, n, tol, grid_points, allow_uncertified_tail=True)
        return verdict.status != FAIL

    if not passes(n_hi):
        return None
    if passes(n_lo):
        return float(n_lo)
    lo, hi = float(n_lo), float(n_hi)
    while hi - lo > tol.abs_tol:
        mid = 0.5 * (lo + hi)
        if passes(mid):
            hi = mid
        else:
            lo = mid
    return hi
