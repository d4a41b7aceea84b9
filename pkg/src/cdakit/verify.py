"""Brute-force checkers for every array property cdakit constructs.

Each checker returns a :class:`VerificationReport`.  A failing report
carries a witness (columns, tuple, rows or interactions) that can be
re-checked with :func:`cdakit.model.rho` and :func:`cdakit.model.window`
alone.  Witnesses are the first offender in enumeration order.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from .errors import InfeasibleCheck, InvalidStrength, InvalidWindow, ParameterError
from .model import (
    Array,
    ConsecutiveInteraction,
    InteractionIndex,
    RowDivisibleArray,
    bits_to_rows,
    stack,
)

MAX_TUPLE_WIDTH = 12
DEFAULT_WORK_BUDGET = 10**7
BUDGET_ENV = "CDAKIT_WORK_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_WORK_BUDGET


@dataclass
class VerificationReport:
    property: str
    passed: bool
    params: dict = field(default_factory=dict)
    witness: dict | None = None
    optimum: bool | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        out = {"property": self.property, "passed": self.passed, "params": self.params}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.optimum is not None:
            out["optimum"] = self.optimum
        if self.message:
            out["message"] = self.message
        return out

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{self.property}: {verdict} ({params})"
        if self.optimum:
            line += " optimum"
        if self.message:
            line += f" - {self.message}"
        return line


def _params(array: Array, **extra) -> dict:
    return {"N": array.N, "k": array.k, "v": array.v, **extra}


def _cols0(array: Array, cols: Sequence[int]) -> list[int]:
    if len(cols) > MAX_TUPLE_WIDTH:
        raise InfeasibleCheck(f"{len(cols)} columns exceed the tuple-space guard of {MAX_TUPLE_WIDTH}")
    for c in cols:
        if not 1 <= c <= array.k:
            raise InvalidWindow(f"column {c} outside 1..{array.k}")
    return [c - 1 for c in cols]


def _unique(array: Array, cols: Sequence[int]):
    sub = array.cells[:, _cols0(array, cols)]
    return np.unique(sub, axis=0, return_counts=True)


def _rows_with(array: Array, cols: Sequence[int], tup: Sequence[int]) -> list[int]:
    sub = array.cells[:, [c - 1 for c in cols]]
    return [int(r) + 1 for r in np.flatnonzero(np.all(sub == np.asarray(tup), axis=1))]


def coverage_count(array: Array, cols: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Multiset of row projections onto the 1-based ``cols``."""
    uniq, counts = _unique(array, cols)
    return {tuple(int(x) for x in u): int(c) for u, c in zip(uniq, counts)}


def _count_offender(array: Array, cols: Sequence[int], lam: int, exact: bool) -> dict | None:
    """First tuple (lexicographic) whose count is below lam, or != lam if exact."""
    uniq, counts = _unique(array, cols)
    width = len(cols)
    total = array.v**width
    ok = (counts == lam) if exact else (counts >= lam)
    if len(uniq) == total and ok.all():
        return None
    observed = {tuple(int(x) for x in u): int(c) for u, c in zip(uniq, counts)}
    for tup in itertools.product(range(array.v), repeat=width):
        c = observed.get(tup, 0)
        if c < lam or (exact and c != lam):
            return {
                "kind": "coverage",
                "columns": list(cols),
                "tuple": list(tup),
                "count": c,
                "expected": lam if exact else f">={lam}",
                "rows": _rows_with(array, cols, tup),
            }
    # a tuple outside the product space cannot occur for a valid Array
    raise AssertionError("unreachable")


def _duplicate_offender(array: Array, cols: Sequence[int]) -> dict | None:
    uniq, counts = _unique(array, cols)
    if (counts <= 1).all():
        return None
    first = int(np.argmax(counts > 1))
    tup = [int(x) for x in uniq[first]]
    return {
        "kind": "repeated-tuple",
        "columns": list(cols),
        "tuple": tup,
        "count": int(counts[first]),
        "rows": _rows_with(array, cols, tup),
    }


def _windows(k: int, t: int) -> list[list[int]]:
    return [list(range(i, i + t)) for i in range(1, k - t + 2)]


def _check_t(array: Array, t: int) -> None:
    if not 1 <= t <= array.k:
        raise InvalidStrength(f"strength t={t} invalid for k={array.k}")


def _coverage(array: Array, t: int, lam: int, name: str, exact: bool, consecutive: bool) -> VerificationReport:
    _check_t(array, t)
    params = _params(array, t=t, **{"lambda": lam})
    column_sets = _windows(array.k, t) if consecutive else itertools.combinations(range(1, array.k + 1), t)
    for cols in column_sets:
        witness = _count_offender(array, list(cols), lam, exact)
        if witness:
            return VerificationReport(name, False, params, witness)
    return VerificationReport(name, True, params)


def is_ca(array: Array, t: int, lam: int = 1) -> VerificationReport:
    return _coverage(array, t, lam, "ca", exact=False, consecutive=False)


def is_cca(array: Array, t: int, lam: int = 1) -> VerificationReport:
    return _coverage(array, t, lam, "cca", exact=False, consecutive=True)


def is_oa(array: Array, t: int, lam: int = 1) -> VerificationReport:
    return _coverage(array, t, lam, "oa", exact=True, consecutive=False)


def is_coa(array: Array, t: int, lam: int = 1) -> VerificationReport:
    return _coverage(array, t, lam, "coa", exact=True, consecutive=True)


def window_pairs(k: int, t: int) -> list[list[int]]:
    """Merged column lists of every pair of distinct consecutive t-windows."""
    merged = []
    for i in range(1, k - t + 2):
        for j in range(i + 1, k - t + 2):
            cols = list(range(i, i + t)) + [c for c in range(j, j + t) if c >= i + t]
            merged.append(cols)
    return merged


def has_simple_property(array: Array, t: int) -> VerificationReport:
    """Any two distinct consecutive t-windows jointly carry each tuple at most once."""
    _check_t(array, t)
    params = _params(array, t=t)
    for cols in window_pairs(array.k, t):
        witness = _duplicate_offender(array, cols)
        if witness:
            return VerificationReport("simple-property", False, params, witness)
    return VerificationReport("simple-property", True, params)


def _budget_fail(name: str, params: dict, lam: int, v: int) -> VerificationReport:
    return VerificationReport(
        name,
        False,
        params,
        {"kind": "lambda-exceeds-v", "lambda": lam, "v": v},
        message="a simple array of index lambda needs lambda <= v",
    )


def is_simple_coa(array: Array, t: int, lam: int) -> VerificationReport:
    _check_t(array, t)
    params = _params(array, t=t, **{"lambda": lam})
    if lam > array.v:
        return _budget_fail("simple-coa", params, lam, array.v)
    for sub in (is_coa(array, t, lam), has_simple_property(array, t)):
        if not sub:
            return VerificationReport("simple-coa", False, params, sub.witness)
    return VerificationReport("simple-coa", True, params)


def is_super_simple_oa(array: Array, t: int, lam: int) -> VerificationReport:
    params = _params(array, t=t, **{"lambda": lam})
    base = is_oa(array, t, lam)
    if not base:
        return VerificationReport("super-simple-oa", False, params, base.witness)
    if t + 1 <= array.k:
        for cols in itertools.combinations(range(1, array.k + 1), t + 1):
            witness = _duplicate_offender(array, list(cols))
            if witness:
                return VerificationReport("super-simple-oa", False, params, witness)
    return VerificationReport("super-simple-oa", True, params)


def _index_of(array: Array, t: int) -> int | None:
    block = array.v**t
    return array.N // block if array.N % block == 0 else None


def is_compatible(a: Array, b: Array, t: int) -> VerificationReport:
    if a.k != b.k or a.v != b.v:
        raise ParameterError(f"cannot compare {a!r} with {b!r}: shapes differ")
    both = stack([a, b])
    params = {"k": a.k, "v": a.v, "t": t, "N_a": a.N, "N_b": b.N}
    la, lb = _index_of(a, t), _index_of(b, t)
    if la is None or lb is None:
        return VerificationReport(
            "compatible", False, params, {"kind": "row-count", "N_a": a.N, "N_b": b.N, "block": a.v**t}
        )
    params["lambda"] = la + lb
    sub = is_simple_coa(both, t, la + lb)
    return VerificationReport("compatible", sub.passed, params, sub.witness)


def is_row_divisible_coa(rda: RowDivisibleArray, t: int, lam: int) -> VerificationReport:
    """COA of index lam whose every part has the simple property."""
    params = _params(rda.array, t=t, mu=rda.mu, **{"lambda": lam})
    whole = is_coa(rda.array, t, lam)
    if not whole:
        return VerificationReport("row-divisible-coa", False, params, whole.witness)
    for i, part in enumerate(rda.part_arrays()):
        sub = has_simple_property(part, t)
        if not sub:
            witness = dict(sub.witness, part=i + 1, part_rows=list(rda.parts[i]))
            return VerificationReport("row-divisible-coa", False, params, witness)
    return VerificationReport("row-divisible-coa", True, params)


def _interaction_dicts(index: InteractionIndex, positions) -> list[dict]:
    return [index.interactions[p].to_dict() for p in positions]


def is_cda_direct(array: Array, d: int, t: int, budget: int | None = None) -> VerificationReport:
    """Definitional (d, t) consecutive-detecting check.

    For every d-set S of consecutive t-way interactions and every T not
    in S, rho(T) must not be contained in the union of rho over S.
    """
    _check_t(array, t)
    if d < 1:
        raise ParameterError(f"d must be positive, got {d}")
    budget = default_budget() if budget is None else budget
    params = _params(array, d=d, t=t)
    cover = is_cca(array, t)
    if not cover:
        return VerificationReport("cda", False, params, cover.witness, message="not a covering array")
    index = InteractionIndex(array, t)
    m = len(index)
    if d >= m:
        raise ParameterError(f"d={d} must be below the {m} consecutive interactions")
    work = comb(m, d) * (m - d)
    if work > budget:
        raise InfeasibleCheck(
            f"{work} subset-interaction pairs exceed the work budget {budget}; "
            f"when N = (d+1)v^t use is_simple_coa(t, d+1) instead"
        )
    params["work"] = work
    masks = index.masks
    for combo in itertools.combinations(range(m), d):
        union = 0
        for p in combo:
            union |= masks[p]
        outside = ~union
        chosen = set(combo)
        for p in range(m):
            if p not in chosen and masks[p] & outside == 0:
                witness = {
                    "kind": "masked-interaction",
                    "interaction_set": _interaction_dicts(index, combo),
                    "interaction": index.interactions[p].to_dict(),
                    "rows": sorted(bits_to_rows(masks[p])),
                    "set_rows": sorted(bits_to_rows(union)),
                }
                return VerificationReport("cda", False, params, witness)
    return VerificationReport("cda", True, params)


def necessary_condition_witness(array: Array, d: int, t: int) -> dict:
    """An explicit d-set hiding another interaction, valid whenever d >= v.

    Every row covering ((2,x2),...,(t+1,x_{t+1})) also covers
    ((1,i),(2,x2),...,(t,xt)) for its own column-1 symbol i.
    """
    row = [int(x) for x in array.cells[0]]
    target = ConsecutiveInteraction(2, tuple(row[1 : t + 1]))
    hiding = [ConsecutiveInteraction(1, (i, *row[1:t])) for i in range(array.v)]
    if len(hiding) < d:
        chosen = set(hiding) | {target}
        for start in range(1, array.k - t + 2):
            for values in itertools.product(range(array.v), repeat=t):
                extra = ConsecutiveInteraction(start, values)
                if len(hiding) >= d:
                    break
                if extra not in chosen:
                    hiding.append(extra)
                    chosen.add(extra)
    return {
        "kind": "necessary-condition",
        "interaction_set": [x.to_dict() for x in hiding],
        "interaction": target.to_dict(),
    }


def cdan_bound_report(array: Array, d: int, t: int) -> VerificationReport:
    """Size against the (d+1)v^t lower bound, plus the per-interaction |rho| >= d+1 test."""
    if not 1 <= t < array.k:
        raise InvalidStrength(f"the bound needs 1 <= t < k, got t={t}, k={array.k}")
    bound = (d + 1) * array.v**t
    params = _params(array, d=d, t=t, bound=bound)
    if d >= array.v:
        return VerificationReport(
            "cdan-bound",
            False,
            params,
            necessary_condition_witness(array, d, t),
            message=f"no (d,t) detecting array exists with d >= v (d={d}, v={array.v})",
        )
    index = InteractionIndex(array, t)
    sizes = [m.bit_count() for m in index.masks]
    smallest = min(range(len(sizes)), key=sizes.__getitem__)
    params["min_rho"] = sizes[smallest]
    optimum = array.N == bound
    if array.N < bound:
        witness = {"kind": "row-count", "N": array.N, "bound": bound}
        return VerificationReport("cdan-bound", False, params, witness, optimum=optimum)
    if sizes[smallest] < d + 1:
        witness = {
            "kind": "thin-interaction",
            "interaction": index.interactions[smallest].to_dict(),
            "rows": sorted(bits_to_rows(index.masks[smallest])),
            "needed": d + 1,
        }
        return VerificationReport("cdan-bound", False, params, witness, optimum=optimum)
    return VerificationReport("cdan-bound", True, params, optimum=optimum)


def equivalence_crosscheck(array: Array, d: int, t: int, budget: int | None = None) -> VerificationReport:
    """Run the simple-COA test and the definitional detecting test side by side.

    Passes when both verdicts agree, whichever way they go.
    """
    bound = (d + 1) * array.v**t
    if array.N != bound:
        raise ParameterError(f"cross-check needs N = (d+1)v^t = {bound}, got N={array.N}")
    simple = is_simple_coa(array, t, d + 1)
    direct = is_cda_direct(array, d, t, budget)
    params = _params(array, d=d, t=t, simple_coa=simple.passed, cda=direct.passed)
    if simple.passed == direct.passed:
        return VerificationReport("equivalence", True, params, optimum=simple.passed)
    witness = {"simple_coa": simple.to_dict(), "cda": direct.to_dict()}
    return VerificationReport("equivalence", False, params, witness, message="verdicts disagree")
