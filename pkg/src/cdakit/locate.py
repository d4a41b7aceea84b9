"""Use a (d, t) consecutive detecting array as a test plan.

Fault model: a test (row) fails exactly when it covers at least one
faulty consecutive interaction.  Outcomes that no set of at most d
faults explains are reported as inconsistent rather than guessed at.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import ParameterError
from .model import (
    Array,
    ConsecutiveInteraction,
    InteractionIndex,
    rho_union,
    rows_to_bits,
)
from .verify import is_cda_direct


class Verdict(str, Enum):
    EXACT = "exact"
    EXCEEDS_BUDGET = "exceeds-budget"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class OutcomeVector:
    """Per-row outcomes; ``failed[r-1]`` is True when test r failed."""

    failed: tuple[bool, ...]

    @classmethod
    def from_failing_rows(cls, n: int, rows: Iterable[int]) -> "OutcomeVector":
        rows = set(rows)
        bad = [r for r in rows if not 1 <= r <= n]
        if bad:
            raise ParameterError(f"failing rows {sorted(bad)} outside 1..{n}")
        return cls(tuple(r in rows for r in range(1, n + 1)))

    @property
    def N(self) -> int:
        return len(self.failed)

    @property
    def failing_rows(self) -> frozenset[int]:
        return frozenset(r for r, f in enumerate(self.failed, 1) if f)

    def to_text(self) -> str:
        return "".join(f"{r} {'fail' if f else 'pass'}\n" for r, f in enumerate(self.failed, 1))

    @classmethod
    def parse(cls, text: str) -> "OutcomeVector":
        """Parse lines of ``row_index pass|fail``; rows must be exactly 1..N."""
        seen: dict[int, bool] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                index, word = line.split()
                row = int(index)
            except ValueError:
                raise ParameterError(f"line {lineno}: expected 'row_index pass|fail', got {line!r}") from None
            if word not in ("pass", "fail"):
                raise ParameterError(f"line {lineno}: outcome must be 'pass' or 'fail', got {word!r}")
            if row in seen:
                raise ParameterError(f"line {lineno}: row {row} listed twice")
            seen[row] = word == "fail"
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise ParameterError("outcome rows must be exactly 1..N")
        return cls(tuple(seen[r] for r in range(1, len(seen) + 1)))


@dataclass
class FaultLocationReport:
    verdict: Verdict
    d: int
    t: int
    faults: list[ConsecutiveInteraction] | None
    candidate_count: int
    failing_rows: list[int]
    candidates: list[ConsecutiveInteraction] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "d": self.d,
            "t": self.t,
            "candidate_count": self.candidate_count,
            "failing_rows": self.failing_rows,
        }
        if self.faults is not None:
            out["faults"] = [f.to_dict() for f in self.faults]
        return out


def simulate_outcomes(plan: Array, faults: Iterable[ConsecutiveInteraction]) -> OutcomeVector:
    return OutcomeVector.from_failing_rows(plan.N, rho_union(plan, faults))


class Locator:
    """Precomputed decoder for one plan; reuse it across many outcome vectors."""

    def __init__(self, plan: Array, d: int, t: int, verify: bool = False):
        if d < 1:
            raise ParameterError(f"d must be positive, got {d}")
        if verify:
            report = is_cda_direct(plan, d, t)
            if not report:
                raise ParameterError(f"plan is not a ({d},{t}) detecting array: {report.witness}")
        self.plan = plan
        self.d = d
        self.t = t
        self.index = InteractionIndex(plan, t)

    def locate(self, outcomes: OutcomeVector) -> FaultLocationReport:
        if outcomes.N != self.plan.N:
            raise ParameterError(f"{outcomes.N} outcomes for a plan with {self.plan.N} rows")
        failing = rows_to_bits(outcomes.failing_rows)
        outside = ~failing
        hits = [p for p, m in enumerate(self.index.masks) if m & outside == 0]
        candidates = [self.index.interactions[p] for p in hits]
        covered = 0
        for p in hits:
            covered |= self.index.masks[p]
        rows = sorted(outcomes.failing_rows)
        if len(hits) > self.d:
            verdict, faults = Verdict.EXCEEDS_BUDGET, None
        elif covered == failing:
            verdict, faults = Verdict.EXACT, candidates
        else:
            verdict, faults = Verdict.INCONSISTENT, None
        return FaultLocationReport(verdict, self.d, self.t, faults, len(hits), rows, candidates)


def locate_faults(plan: Array, d: int, t: int, outcomes: OutcomeVector, verify: bool = False) -> FaultLocationReport:
    """Recover the faulty consecutive t-way interactions behind ``outcomes``.

    The candidate set holds every interaction whose rows all failed; it
    always contains the true faults.  At most d candidates that explain
    every failure give an exact answer; more than d means the budget was
    exceeded; anything else is inconsistent with the fault model.
    """
    return Locator(plan, d, t, verify=verify).locate(outcomes)


@dataclass
class TrialResult:
    seed: int
    faults: list[ConsecutiveInteraction]
    report: FaultLocationReport
    passed: bool


def localization_roundtrip_trial(
    plan: Array,
    d: int,
    t: int,
    seed: int,
    locator: Locator | None = None,
) -> TrialResult:
    """Inject a random fault set of size uniform in 0..d, then locate it."""
    locator = locator or Locator(plan, d, t)
    rng = random.Random(seed)
    size = rng.randint(0, d)
    faults = sorted(rng.sample(locator.index.interactions, size))
    report = locator.locate(simulate_outcomes(plan, faults))
    passed = report.verdict is Verdict.EXACT and sorted(report.faults) == faults
    return TrialResult(seed, faults, report, passed)


def random_fault_set(interactions: Sequence[ConsecutiveInteraction], size: int, seed: int) -> list[ConsecutiveInteraction]:
    return sorted(random.Random(seed).sample(list(interactions), size))

