"""The degree-two Blaschke product realizing the circle map on S^1."""

from __future__ import annotations

import cmath
import enum
import math
import random
from dataclasses import dataclass

from .core import MapParams
from .circle import circle_preimages
from .rays import Regime, RegimeReport, Stability, fixed_rays
from .errors import InvalidParameter, NoBasin

SAMPLE_BURN_IN = 30


@dataclass(frozen=True)
class BlaschkeMap:
    mu: complex
    zero: complex  # B vanishes at +-zero


def blaschke_of_params(p: MapParams) -> BlaschkeMap:
    a = cmath.exp(1j * (p.theta - math.pi / 2)) * math.sqrt((p.K - 1.0) / (p.K + 1.0))
    return BlaschkeMap(mu=p.mu, zero=a)


def blaschke_apply(B: BlaschkeMap, z: complex) -> complex:
    if abs(z) > 1.0 + 1e-9:
        raise InvalidParameter("blaschke_apply expects |z| <= 1")
    z2 = z * z
    return (z2 + B.mu) / (1.0 + B.mu.conjugate() * z2)


class JuliaKind(enum.Enum):
    FULL_CIRCLE = "full_circle"
    CANTOR_ON_CIRCLE = "cantor_on_circle"


@dataclass(frozen=True)
class JuliaClassification:
    kind: JuliaKind
    regime: Regime


def julia_classification(p: MapParams, report: RegimeReport | None = None) -> JuliaClassification:
    """Julia set of B: the whole circle in the one-ray regimes, a Cantor
    subset of the circle once a non-repelling ray exists."""
    if report is None:
        report = fixed_rays(p)
    if report.regime in (Regime.ONE_REPELLING, Regime.ONE_PARABOLIC):
        kind = JuliaKind.FULL_CIRCLE
    else:
        kind = JuliaKind.CANTOR_ON_CIRCLE
    return JuliaClassification(kind=kind, regime=report.regime)


def julia_sample(p: MapParams, count: int, seed: int,
                 depth: int = SAMPLE_BURN_IN) -> list[float]:
    """Inverse-iteration sample of the Julia set on S^1.

    Random-branch backward orbit of a repelling fixed angle; the first
    `depth` iterates are discarded as burn-in.  Deterministic for a given
    seed.
    """
    if count < 1:
        raise InvalidParameter("need count >= 1")
    report = fixed_rays(p)
    repellers = [r for r in report.rays if r.stability is Stability.REPELLING]
    if not repellers:  # parabolic circle: the neutral angle lies in J too
        repellers = list(report.rays)
    rng = random.Random(seed)
    x = repellers[0].angle
    out = []
    for i in range(count + depth):
        pre = circle_preimages(p, x)
        x = pre[rng.getrandbits(1)]
        if i >= depth:
            out.append(x)
    return out


@dataclass(frozen=True)
class BasinInterval:
    """Immediate basin of the non-repelling fixed angle, as an interval.

    The neutral endpoint belongs to the basin in the two-ray case; that is
    recorded in closed_lo/closed_hi but numeric membership tests treat both
    ends as open.
    """

    lo: float
    hi: float
    closed_lo: bool
    closed_hi: bool

    def contains(self, angle: float, margin: float = 1e-9) -> bool:
        return self.lo + margin < angle < self.hi - margin


def immediate_basin(p: MapParams, report: RegimeReport | None = None) -> BasinInterval:
    if report is None:
        report = fixed_rays(p)
    if report.regime in (Regime.ONE_REPELLING, Regime.ONE_PARABOLIC):
        raise NoBasin("no non-repelling fixed ray in this regime")
    if report.regime is Regime.THREE:
        angles = [r.angle for r in report.rays]
        return BasinInterval(lo=min(angles), hi=max(angles),
                             closed_lo=False, closed_hi=False)
    # two rays: interval bounded by the repelling and the neutral angle,
    # closed at the neutral end
    rep = next(r for r in report.rays if r.stability is Stability.REPELLING)
    neu = next(r for r in report.rays if r.stability is not Stability.REPELLING)
    lo, hi = sorted((rep.angle, neu.angle))
    return BasinInterval(lo=lo, hi=hi,
                         closed_lo=(lo == neu.angle), closed_hi=(hi == neu.angle))
