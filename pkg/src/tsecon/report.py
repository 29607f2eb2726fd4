"""Common hypothesis-test report type.

Every test in the package (unit root, break, Granger, cointegration)
produces a :class:`TestReport`: the statistic, a distribution descriptor,
the critical values actually used with their provenance, and one decision
per significance level.  Decisions are a pure function of
(statistic, critical value, tail), so an independent checker can recompute
them; tests do exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = ["TestReport", "decide", "p_bracket", "make_test_report"]

DEFAULT_LEVELS = (0.10, 0.05, 0.01)


def decide(statistic: float, critical_value: float, tail: str) -> str:
    """Reject when the statistic falls beyond the critical value in the tail."""
    if tail == "left":
        return "reject" if statistic < critical_value else "fail_to_reject"
    if tail == "right":
        return "reject" if statistic > critical_value else "fail_to_reject"
    raise DomainError(f"tail must be 'left' or 'right', got {tail!r}")


def p_bracket(decision: dict) -> str:
    """Interval statement for the p-value implied by the decision ladder."""
    levels = sorted(decision)  # ascending: 0.01, 0.05, 0.10
    rejected = [lv for lv in levels if decision[lv] == "reject"]
    if rejected:
        tightest = rejected[0]
        below = [lv for lv in levels if lv < tightest]
        if below:
            return f"{below[-1]:g} <= p < {tightest:g}"
        return f"p < {tightest:g}"
    return f"p >= {levels[-1]:g}"


@dataclass(frozen=True)
class TestReport:
    """Outcome of one hypothesis test."""

    name: str
    statistic: float
    family: dict
    tail: str
    critical_values: dict  # significance level -> critical value
    decision: dict  # significance level -> "reject" | "fail_to_reject"
    cv_provenance: dict
    nuisance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tail not in ("left", "right"):
            raise DomainError("tail must be 'left' or 'right'")
        if not np.isfinite(self.statistic):
            raise DomainError("test statistic must be finite")
        levels = sorted(self.critical_values)
        if not levels:
            raise DomainError("at least one significance level is required")
        for lv in levels:
            if not (0.0 < lv < 1.0):
                raise DomainError("significance levels must lie in (0, 1)")
        cvs = [self.critical_values[lv] for lv in levels]
        # smaller level = deeper tail: left-tail cvs decrease, right-tail increase
        for a, b in zip(cvs, cvs[1:]):
            if self.tail == "left" and not a < b:
                raise DomainError("left-tail critical values must increase with the level")
            if self.tail == "right" and not a > b:
                raise DomainError("right-tail critical values must decrease with the level")

    def to_dict(self) -> dict:
        def level_key(lv: float) -> str:
            return f"{100 * lv:g}%"

        return {
            "name": self.name,
            "statistic": self.statistic,
            "family": dict(self.family),
            "tail": self.tail,
            "critical_values": {level_key(lv): cv for lv, cv in sorted(self.critical_values.items())},
            "decision": {level_key(lv): d for lv, d in sorted(self.decision.items())},
            "cv_provenance": dict(self.cv_provenance),
            "nuisance": dict(self.nuisance),
        }


def make_test_report(
    name: str,
    statistic: float,
    family: dict,
    tail: str,
    critical_values: dict,
    cv_provenance: dict,
    nuisance: dict | None = None,
) -> TestReport:
    """Assemble a report, deriving decisions and the p-value bracket."""
    statistic = float(statistic)
    critical_values = {float(lv): float(cv) for lv, cv in critical_values.items()}
    decision = {lv: decide(statistic, cv, tail) for lv, cv in critical_values.items()}
    nuisance = dict(nuisance or {})
    nuisance.setdefault("p_bracket", p_bracket(decision))
    return TestReport(
        name=name,
        statistic=statistic,
        family=family,
        tail=tail,
        critical_values=critical_values,
        decision=decision,
        cv_provenance=cv_provenance,
        nuisance=nuisance,
    )
