"""The affine stretch h, the quadratic map H = h^2, and parameter conversions.

Parameters are the stretch factor K > 1 and the stretch direction theta,
normalized to (-pi/2, pi/2].  The equivalent description is the constant
complex dilatation mu = e^{2 i theta} (K-1)/(K+1) of h.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import InvalidParameter

TAU = 2.0 * math.pi


def normalize_angle(x: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    a = x % TAU
    if a > math.pi:
        a -= TAU
    return a


def circle_dist(a: float, b: float) -> float:
    """Distance between two angles on the circle, always <= pi."""
    return abs(normalize_angle(a - b))


def normalize_theta(theta: float) -> float:
    """Reduce a direction angle to (-pi/2, pi/2] by adding multiples of pi."""
    t = theta % math.pi
    if t > math.pi / 2:
        t -= math.pi
    return t


@dataclass(frozen=True)
class MapParams:
    """The pair (K, theta) defining h and H, with the derived dilatation mu."""

    K: float
    theta: float
    mu: complex


def make_params(K: float, theta: float) -> MapParams:
    if not (math.isfinite(K) and math.isfinite(theta)):
        raise InvalidParameter("K and theta must be finite")
    if K <= 1.0:
        raise InvalidParameter(f"need K > 1, got K={K} (K=1 is the identity stretch)")
    t = normalize_theta(theta)
    mu = cmath.exp(2j * t) * (K - 1.0) / (K + 1.0)
    return MapParams(K=float(K), theta=t, mu=mu)


def mu_of_params(p: MapParams) -> complex:
    return p.mu


def params_of_mu(mu: complex) -> MapParams:
    """Invert mu = e^{2 i theta}(K-1)/(K+1); requires 0 < |mu| < 1."""
    m = abs(mu)
    if m == 0.0:
        raise InvalidParameter("mu = 0 is the holomorphic case z^2, excluded")
    if m >= 1.0:
        raise InvalidParameter(f"|mu| must be < 1, got {m}")
    K = (1.0 + m) / (1.0 - m)
    theta = cmath.phase(mu) / 2.0
    return make_params(K, theta)


def eval_h(p: MapParams, z: complex) -> complex:
    """The affine stretch by K in direction e^{i theta}."""
    return 0.5 * (p.K + 1.0) * z + p.mu * 0.5 * (p.K + 1.0) * z.conjugate()


def eval_H(p: MapParams, z: complex) -> complex:
    """The degree-two map H(z) = h(z)^2."""
    w = eval_h(p, z)
    return w * w


def radial_stretch(p: MapParams, phi: float) -> float:
    """The factor alpha(phi) with |H(r e^{i phi})| = alpha r^2."""
    c = math.cos(phi - p.theta)
    return 1.0 + (p.K * p.K - 1.0) * c * c


def arg_h(p: MapParams, phi: float) -> float:
    """Argument of h(r e^{i phi}) for any r > 0 (half the circle map)."""
    x = phi - p.theta
    return p.theta + math.atan2(math.sin(x), p.K * math.cos(x))


def eval_H_polar(p: MapParams, r: float, phi: float) -> tuple[float, float]:
    """Polar form of H: (r, phi) -> (alpha r^2, 2 arg_h(phi)) with the
    branch of the doubled angle continued through phi - theta = +-pi/2."""
    if r < 0.0:
        raise InvalidParameter("need r >= 0")
    return radial_stretch(p, phi) * r * r, normalize_angle(2.0 * arg_h(p, phi))
