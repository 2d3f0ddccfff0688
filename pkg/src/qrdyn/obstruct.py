"""Obstructions to quasiconformal equivalence near infinity.

Two maps can only be conjugate near infinity if they have the same number
of fixed rays and matching Mobius trace invariants on them; for a common
direction theta, different stretches are never equivalent.  The converse
is not decided here: absent an obstruction the verdict is Inconclusive,
never "equivalent".
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import MapParams
from .rays import RegimeReport, fixed_rays, k_theta

TRACE_TOL = 1e-8          # relative tolerance for trace comparison
BIFURCATION_BAND = 1e-10  # relative K-distance to K_theta treated as ambiguous


class Verdict(enum.Enum):
    OBSTRUCTED = "obstructed"
    INCONCLUSIVE = "inconclusive"


class Reason(enum.Enum):
    RAY_COUNT_MISMATCH = "ray_count_mismatch"
    TRACE_MISMATCH = "trace_mismatch"
    COROLLARY_FIXED_THETA = "corollary_fixed_theta"


@dataclass(frozen=True)
class ObstructionVerdict:
    verdict: Verdict
    reason: Reason | None
    traces_1: tuple[float, ...]  # sorted descending
    traces_2: tuple[float, ...]
    k_theta_1: float | None
    k_theta_2: float | None
    diagnostic: str

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason.value if self.reason else None,
            "traces_1": list(self.traces_1),
            "traces_2": list(self.traces_2),
            "k_theta_1": self.k_theta_1,
            "k_theta_2": self.k_theta_2,
            "diagnostic": self.diagnostic,
        }


def _near_bifurcation(p: MapParams, report: RegimeReport) -> bool:
    """True when K sits so close to K_theta that the regime call is
    numerically ambiguous (and no neutral ray was actually detected)."""
    if report.k_theta is None:
        return False
    rel = abs(p.K - report.k_theta) / report.k_theta
    if rel == 0.0 or rel > BIFURCATION_BAND:
        return False
    return all(r.stability.value != "neutral" for r in report.rays)


def obstruction_report(p1: MapParams, p2: MapParams,
                       tol: float = TRACE_TOL) -> ObstructionVerdict:
    """Compare two parameter pairs for a provable non-equivalence."""
    rep1 = fixed_rays(p1)
    rep2 = fixed_rays(p2)
    t1 = tuple(sorted((r.trace_sq for r in rep1.rays), reverse=True))
    t2 = tuple(sorted((r.trace_sq for r in rep2.rays), reverse=True))
    kt1, kt2 = rep1.k_theta, rep2.k_theta

    def result(verdict, reason, diag):
        return ObstructionVerdict(verdict=verdict, reason=reason,
                                  traces_1=t1, traces_2=t2,
                                  k_theta_1=kt1, k_theta_2=kt2,
                                  diagnostic=diag)

    if _near_bifurcation(p1, rep1) or _near_bifurcation(p2, rep2):
        return result(Verdict.INCONCLUSIVE, None,
                      "stretch within bifurcation band of K_theta; "
                      "ray count numerically ambiguous")

    if len(rep1.rays) != len(rep2.rays):
        return result(Verdict.OBSTRUCTED, Reason.RAY_COUNT_MISMATCH,
                      f"{len(rep1.rays)} fixed rays vs {len(rep2.rays)}")

    # trace invariants must match as a multiset (descending lists)
    for a, b in zip(t1, t2):
        if abs(a - b) > tol * max(abs(a), abs(b)):
            return result(Verdict.OBSTRUCTED, Reason.TRACE_MISMATCH,
                          f"trace^2 {a:.12g} vs {b:.12g}")

    if (p1.theta == p2.theta and 0.0 <= p1.theta < math.pi / 2
            and p1.K != p2.K):
        return result(Verdict.OBSTRUCTED, Reason.COROLLARY_FIXED_THETA,
                      f"same direction theta={p1.theta}, K {p1.K} vs {p2.K}")

    return result(Verdict.INCONCLUSIVE, None, "no obstruction found")
