"""Array-building recipes.

Every construction re-verifies its output with the matching checker from
:mod:`cdakit.verify` and raises :class:`ConstructionVerificationError`
instead of returning an array that lacks its claimed property.  Inputs
are verified too; a bad ingredient raises :class:`IngredientError`.

Row order is deterministic: generators are enumerated lexicographically
and products list, for each row of the first factor, every row of the
second.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gf
from .catalog import catalog_seed
from .errors import (
    ConstructionVerificationError,
    IngredientError,
    InvalidArray,
    ParameterError,
    RecipeError,
)
from .model import Array, RowDivisibleArray, select_columns, stack
from .verify import (
    VerificationReport,
    has_simple_property,
    is_compatible,
    is_oa,
    is_row_divisible_coa,
    is_simple_coa,
    is_super_simple_oa,
)


@dataclass(frozen=True)
class Recipe:
    """Provenance of a constructed array: a family tag plus its parameters."""

    family: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"family": self.family, **self.params}


def _finish(cells, v: int, recipe: Recipe, t: int | None, lam: int | None) -> Array:
    return Array(cells, v, t=t, lam=lam, family=recipe.family, provenance=dict(recipe.params))


def _require(report: VerificationReport, what: str) -> None:
    if not report:
        raise ConstructionVerificationError(f"{what} failed {report.property}: {report.witness}", report)


def _ingredient(report: VerificationReport, what: str) -> None:
    if not report:
        raise IngredientError(f"{what} is not a valid ingredient ({report.property} failed: {report.witness})")


def _index(array: Array, t: int) -> int:
    block = array.v**t
    if array.N % block:
        raise IngredientError(f"{array!r} has {array.N} rows, not a multiple of v^t = {block}")
    return array.N // block


def _strength_of(array: Array) -> int:
    """t such that N = v^t, for index-one orthogonal arrays."""
    t, n = 0, 1
    while n < array.N:
        n *= array.v
        t += 1
    if n != array.N:
        raise IngredientError(f"{array!r}: N={array.N} is not a power of v={array.v}")
    return t


# orthogonal arrays


def zero_sum_oa(t: int, v: int) -> Array:
    """OA(t, t+1, v): every t-tuple over Z_v followed by minus its sum mod v."""
    if t < 2 or v < 2:
        raise ParameterError(f"zero-sum construction needs t >= 2 and v >= 2, got t={t}, v={v}")
    head = np.array(list(itertools.product(range(v), repeat=t)), dtype=np.int64)
    last = (-head.sum(axis=1)) % v
    out = _finish(np.column_stack([head, last]), v, Recipe("zero-sum", {"t": t, "v": v}), t, 1)
    _require(is_oa(out, t, 1), "zero-sum OA")
    return out


def _coefficients(q: int, degree_bound: int) -> np.ndarray:
    return np.array(list(itertools.product(range(q), repeat=degree_bound)), dtype=np.int64)


def bush_oa(t: int, q: int) -> Array:
    """OA(t, q+1, q) from the polynomials of degree < t over GF(q).

    Column gamma (in label order) holds f(gamma); the last column holds
    the coefficient of x^(t-1).
    """
    field_ = gf.make_field(q)
    if not 1 <= t < q:
        raise ParameterError(f"Bush construction needs 1 <= t < q, got t={t}, q={q}")
    coeffs = _coefficients(q, t)
    values = gf.eval_poly_vec(field_, coeffs, np.arange(q))
    out = _finish(np.column_stack([values, coeffs[:, 0]]), q, Recipe("bush", {"t": t, "q": q}), t, 1)
    _require(is_oa(out, t, 1), "Bush OA")
    return out


def bush_oa_even(q: int) -> Array:
    """OA(3, q+2, q) for q = 2^m >= 4: quadratic evaluations plus the a2 and a1 columns."""
    p, _ = gf.prime_power(q)
    if p != 2 or q < 4:
        raise ParameterError(f"the even Bush construction needs q a power of 2 with q >= 4, got {q}")
    field_ = gf.make_field(q)
    coeffs = _coefficients(q, 3)
    values = gf.eval_poly_vec(field_, coeffs, np.arange(q))
    cells = np.column_stack([values, coeffs[:, 0], coeffs[:, 1]])
    out = _finish(cells, q, Recipe("bush-even", {"t": 3, "q": q}), 3, 1)
    _require(is_oa(out, 3, 1), "even Bush OA")
    return out


def _pair_product(first: np.ndarray, second: np.ndarray, v2: int) -> np.ndarray:
    """Every (row of first, row of second) pair, symbols paired as x*v2 + y."""
    n1, k = first.shape
    n2 = second.shape[0]
    return (first[:, None, :] * v2 + second[None, :, :]).reshape(n1 * n2, k)


def macneish_product(a: Array, b: Array, t: int) -> Array:
    """OA(t, k, v1*v2) from OA(t, k, v1) and OA(t, k, v2)."""
    if a.k != b.k:
        raise IngredientError(f"factors have different column counts: {a.k} and {b.k}")
    _ingredient(is_oa(a, t, 1), "first factor")
    _ingredient(is_oa(b, t, 1), "second factor")
    v = a.v * b.v
    recipe = Recipe("macneish", {"t": t, "v1": a.v, "v2": b.v})
    out = _finish(_pair_product(a.cells, b.cells, b.v), v, recipe, t, 1)
    _require(is_oa(out, t, 1), "MacNeish product")
    return out


def oa3_6(v: int) -> Array:
    """An OA(3, 6, v) assembled from Bush arrays over the prime-power factors of v.

    Needs every prime-power factor q of v to satisfy q >= 4.
    """
    factors = []
    n, p = v, 2
    while n > 1:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            factors.append(q)
        p += 1
    pieces = []
    for q in factors:
        if q == 4:
            pieces.append(bush_oa_even(4))
        elif q >= 5:
            pieces.append(select_columns(bush_oa(3, q), range(1, 7)))
        else:
            raise RecipeError(f"no OA(3,6,{q}) construction available (needed for v={v})")
    out = pieces[0]
    for piece in pieces[1:]:
        out = macneish_product(out, piece, 3)
    return out.with_meta(t=3, lam=1, family="oa3-6", provenance={"v": v, "factors": factors})


# derived arrays and column rearrangements


def derived_array(a: Array, col: int, symbol: int) -> Array:
    """Rows with ``symbol`` in column ``col`` (1-based), that column deleted."""
    if not 1 <= col <= a.k:
        raise ParameterError(f"column {col} outside 1..{a.k}")
    keep = [j for j in range(a.k) if j != col - 1]
    rows = a.cells[a.cells[:, col - 1] == symbol]
    if len(rows) == 0:
        raise IngredientError(f"no row carries symbol {symbol} in column {col}")
    return Array(rows[:, keep], a.v)


def derive_stack_ssoa(
    a: Array,
    t_plus_1: int,
    col: int | None = None,
    lam: int = 1,
    symbols: Sequence[int] | None = None,
) -> Array:
    """SSOA_lam(t, k, v) from an index-one OA(t+1, k+1, v).

    Stacks the derived arrays of ``col`` (default: the last column) for
    ``symbols`` (default 0..lam-1).
    """
    col = a.k if col is None else col
    symbols = list(range(lam)) if symbols is None else list(symbols)
    if len(symbols) != lam or len(set(symbols)) != lam:
        raise ParameterError(f"need {lam} distinct symbols, got {symbols}")
    if lam > a.v:
        raise ParameterError(f"lambda={lam} exceeds v={a.v}; a super-simple array needs lambda <= v")
    _ingredient(is_oa(a, t_plus_1, 1), f"OA({t_plus_1},{a.k},{a.v})")
    t = t_plus_1 - 1
    blocks = [derived_array(a, col, s) for s in symbols]
    recipe = Recipe("derive-stack", {"t": t, "lambda": lam, "column": col, "symbols": symbols})
    out = _finish(stack(blocks).cells, a.v, recipe, t, lam)
    _require(is_super_simple_oa(out, t, lam), "derived stack")
    return out


def _checked_select(a: Array, sequence: Sequence[int], t: int, lam: int, recipe: Recipe) -> Array:
    out = select_columns(a, list(sequence))
    out = _finish(out.cells, a.v, recipe, t, lam)
    _require(is_simple_coa(out, t, lam), f"column sequence {list(sequence)}")
    return out


def wraparound_coa(a: Array, t: int) -> Array:
    """Simple COA_lam(t, k+t-1, v) from SSOA_lam(t, k, v): append columns 1..t-1."""
    lam = _index(a, t)
    _ingredient(is_super_simple_oa(a, t, lam), f"SSOA_{lam}({t},{a.k},{a.v})")
    sequence = list(range(1, a.k + 1)) + list(range(1, t))
    return _checked_select(a, sequence, t, lam, Recipe("wraparound", {"t": t, "lambda": lam, "sequence": sequence}))


def double_wrap_sequence(k: int) -> list[int]:
    """Column order giving 2k+1 columns; every adjacent pair is a distinct column pair."""
    if k <= 4:
        raise ParameterError(f"double wrap needs k > 4, got k={k}")
    odd = list(range(1, k + 1, 2))
    even = list(range(2, k + 1, 2))
    head = list(range(1, k + 1))
    if k % 2:
        return head + odd + even + [1]
    return head + odd + even + [2]


def double_wrap_coa(a: Array) -> Array:
    """Simple COA_lam(2, 2k+1, v) from SSOA_lam(2, k, v) with k > 4."""
    sequence = double_wrap_sequence(a.k)
    lam = _index(a, 2)
    _ingredient(is_super_simple_oa(a, 2, lam), f"SSOA_{lam}(2,{a.k},{a.v})")
    return _checked_select(a, sequence, 2, lam, Recipe("double-wrap", {"t": 2, "lambda": lam, "sequence": sequence}))


def column_select_coa(a: Array, sequence: Sequence[int], t: int, lam: int) -> Array:
    """Rearrange columns of ``a`` and verify the result is a simple COA_lam(t, ., v)."""
    recipe = Recipe("column-select", {"t": t, "lambda": lam, "sequence": list(sequence)})
    return _checked_select(a, sequence, t, lam, recipe)


def simple_coa_2_5_full_index(v: int) -> Array:
    """Simple COA_v(2, 5, v): columns (1,2,3,4,1) of the zero-sum OA(3, 4, v)."""
    return column_select_coa(zero_sum_oa(3, v), (1, 2, 3, 4, 1), 2, v)


def coa_2_5_index_one(v: int) -> Array:
    """COA(2, 5, v): columns (1,2,3,1,3) of the zero-sum OA(2, 3, v)."""
    return column_select_coa(zero_sum_oa(2, v), (1, 2, 3, 1, 3), 2, 1)


# row-divisible arrays and products


def juxtapose(parts: Sequence[Array], t: int) -> RowDivisibleArray:
    """Stack simple COAs into a row-divisible COA whose index is the sum of theirs."""
    if not parts:
        raise ParameterError("nothing to juxtapose")
    lams = []
    for i, part in enumerate(parts):
        if part.k != parts[0].k or part.v != parts[0].v:
            raise InvalidArray(f"part {i + 1} has shape k={part.k}, v={part.v}; expected k={parts[0].k}, v={parts[0].v}")
        lam = _index(part, t)
        _ingredient(is_simple_coa(part, t, lam), f"part {i + 1}")
        lams.append(lam)
    recipe = Recipe("juxtapose", {"t": t, "lambda": sum(lams), "part_lambdas": lams})
    whole = _finish(stack(parts).cells, parts[0].v, recipe, t, sum(lams))
    out = RowDivisibleArray.from_sizes(whole, [p.N for p in parts])
    _require(is_row_divisible_coa(out, t, sum(lams)), "juxtaposition")
    return out


def _as_row_divisible(a: Array | RowDivisibleArray) -> RowDivisibleArray:
    return a if isinstance(a, RowDivisibleArray) else RowDivisibleArray.single(a)


def _strength(a: Array | RowDivisibleArray, t: int | None) -> int:
    arr = a.array if isinstance(a, RowDivisibleArray) else a
    t = arr.t if t is None else t
    if t is None:
        raise ParameterError("strength t is neither given nor recorded on the array")
    return t


def _check_family(bs: Sequence[Array], t: int) -> None:
    for x, y in itertools.combinations(range(len(bs)), 2):
        _ingredient(is_compatible(bs[x], bs[y], t), f"pair ({x + 1},{y + 1}) of the compatible family")


def inflate_product(
    a: Array | RowDivisibleArray, bs: Sequence[Array], t: int | None = None
) -> Array | RowDivisibleArray:
    """Pair each part of ``a`` (over v1) with a simple COA over v2.

    With at least mu members in ``bs`` the first mu must be pairwise
    compatible and the result is a simple COA_(lam*eta)(t, k, v1*v2).
    With a single member it is reused for every part and the result is a
    mu-row-divisible COA (simple when mu = 1).
    """
    t = _strength(a, t)
    rda = _as_row_divisible(a)
    if not bs:
        raise ParameterError("no second factor given")
    v1, k = rda.array.v, rda.array.k
    v2, eta_rows = bs[0].v, bs[0].N
    for b in bs:
        if b.k != k or b.v != v2 or b.N != eta_rows:
            raise IngredientError(f"second factors must share k={k}, v={v2}, N={eta_rows}; got {b!r}")
    lam = _index(rda.array, t)
    eta = _index(bs[0], t)
    _ingredient(is_row_divisible_coa(rda, t, lam), f"{rda.mu}-row-divisible COA_{lam}")
    shared = len(bs) == 1
    if shared:
        _ingredient(is_simple_coa(bs[0], t, eta), f"simple COA_{eta}")
        pairing = [bs[0]] * rda.mu
    elif len(bs) >= rda.mu:
        pairing = list(bs[: rda.mu])
        for b in pairing:
            _ingredient(is_simple_coa(b, t, eta), f"simple COA_{eta}")
        _check_family(pairing, t)
    else:
        raise IngredientError(f"{rda.mu} parts need {rda.mu} compatible arrays, got {len(bs)}")

    blocks = [_pair_product(part.cells, b.cells, v2) for part, b in zip(rda.part_arrays(), pairing)]
    recipe = Recipe(
        "inflate",
        {"t": t, "lambda": lam * eta, "v1": v1, "v2": v2, "mu": rda.mu, "shared_factor": shared},
    )
    whole = _finish(np.vstack(blocks), v1 * v2, recipe, t, lam * eta)
    if shared and rda.mu > 1:
        out = RowDivisibleArray.from_sizes(whole, [len(b) for b in blocks])
        _require(is_row_divisible_coa(out, t, lam * eta), "inflated row-divisible COA")
        return out
    _require(is_simple_coa(whole, t, lam * eta), "inflated product")
    return whole


def weighting_combine(
    ingredients: Sequence[tuple[Array | RowDivisibleArray, int]],
    bs: Sequence[Array],
    t: int | None = None,
) -> Array:
    """Replicate ingredient i m_i times, stack, and inflate against a compatible family.

    Needs sum(m_i * mu_i) <= len(bs).  The result is a simple
    COA_(eta * sum(m_i * lam_i))(t, k, v1*v2).
    """
    used = [(_as_row_divisible(x), m) for x, m in ingredients if m > 0]
    if not used:
        raise RecipeError("all multiplicities are zero")
    for _, m in ingredients:
        if m < 0:
            raise RecipeError(f"negative multiplicity {m}")
    t = _strength(used[0][0], t) if t is None else t
    total_parts = sum(m * rda.mu for rda, m in used)
    if total_parts > len(bs):
        raise RecipeError(f"sum of m_i * mu_i = {total_parts} exceeds the {len(bs)} compatible arrays")
    arrays, sizes, lams = [], [], []
    for rda, m in used:
        lam = _index(rda.array, t)
        _ingredient(is_row_divisible_coa(rda, t, lam), f"{rda.mu}-row-divisible COA_{lam}")
        for _ in range(m):
            arrays.append(rda.array)
            sizes.extend(rda.sizes)
            lams.append(lam)
    combined = RowDivisibleArray.from_sizes(stack(arrays).with_meta(t=t), sizes)
    out = inflate_product(combined, list(bs[:total_parts]), t)
    eta = _index(bs[0], t)
    recipe = Recipe(
        "weighting",
        {
            "t": t,
            "lambda": eta * sum(lams),
            "multiplicities": [m for _, m in used],
            "ingredient_mu": [rda.mu for rda, _ in used],
            "ingredient_lambda": [_index(rda.array, t) for rda, _ in used],
            "v1": combined.array.v,
            "v2": bs[0].v,
        },
    )
    return _finish(out.cells, out.v, recipe, t, eta * sum(lams))


def compatible_family_from_oa(a: Array, col: int = 1, t: int | None = None) -> list[Array]:
    """The v derived arrays of an index-one OA(t+1, k+1, v) on ``col``; pairwise compatible."""
    t = _strength_of(a) - 1 if t is None else t
    _ingredient(is_oa(a, t + 1, 1), f"OA({t + 1},{a.k},{a.v})")
    family = []
    for s in range(a.v):
        d = derived_array(a, col, s)
        recipe = Recipe("compatible-family", {"t": t, "column": col, "symbol": s})
        family.append(_finish(d.cells, a.v, recipe, t, 1))
    for x, y in itertools.combinations(range(len(family)), 2):
        _require(is_compatible(family[x], family[y], t), f"derived arrays {x} and {y}")
    return family


def rowdiv_coa9_2_5_6() -> RowDivisibleArray:
    """2-row-divisible COA_9(2, 5, 6): the 12-row binary seed inflated by simple COA_3(2, 5, 3)."""
    seed = catalog_seed("rowdiv2-coa3-2-5-2")
    return inflate_product(seed, [simple_coa_2_5_full_index(3)], t=2)


def has_simple_parts(rda: RowDivisibleArray, t: int) -> bool:
    return all(has_simple_property(p, t) for p in rda.part_arrays())
