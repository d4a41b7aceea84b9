"""Integer recipes for simple COA_lam(2, 5, v) when v = 4s+2 or v = 6u.

Both cases inflate small row-divisible COAs over v1 symbols against a
family of compatible COA(2, 5, v2) taken from an OA(3, 6, v2):

* ``4t+2``: v1 = 2, v2 = 2s+1, parts (mu, lam) = (1, 2) and (2, 3),
  solving 2*m1 + 3*m2 = lam with m1 + 2*m2 <= 2s+1; lam = 1 uses a
  single index-one part (1, 1).
* ``6u``: v1 = 6, v2 = u, parts (1, 6) and one (mu2, lam2) picked by
  lam mod 6, solving 6*m1 + lam2*m2 = lam with m1 + mu2*m2 <= u.
  lam = v-1 has no recipe; lam = v-3 uses the (2, 9) part.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping

from .catalog import catalog_seed
from .constructions import (
    Recipe,
    coa_2_5_index_one,
    compatible_family_from_oa,
    oa3_6,
    rowdiv_coa9_2_5_6,
    simple_coa_2_5_full_index,
    weighting_combine,
)
from .errors import RecipeError
from .model import Array, RowDivisibleArray

CASES = ("4t+2", "6u")

# (mu2, lam2) by lam mod 6 in the 6u case
SIX_U_PARTS = {1: (1, 1), 2: (1, 2), 3: (2, 3), 4: (1, 4), 5: (2, 5)}


@dataclass(frozen=True)
class Part:
    mu: int
    lam: int
    multiplicity: int


@dataclass(frozen=True)
class WeightingRecipe:
    case: str
    v: int
    lam: int
    v1: int
    v2: int
    parts: tuple[Part, ...]
    t: int = 2
    k: int = 5

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(p.multiplicity for p in self.parts)

    @property
    def budget(self) -> int:
        """Compatible COAs available over v2 symbols."""
        return self.v2

    def lhs(self) -> int:
        return sum(p.multiplicity * p.lam for p in self.parts)

    def parts_used(self) -> int:
        return sum(p.multiplicity * p.mu for p in self.parts)

    def check(self) -> None:
        if any(p.multiplicity < 0 for p in self.parts):
            raise RecipeError(f"negative multiplicity in {self}")
        if self.lhs() != self.lam:
            raise RecipeError(f"sum m_i*lam_i = {self.lhs()} != {self.lam}")
        if self.parts_used() > self.budget:
            raise RecipeError(f"sum m_i*mu_i = {self.parts_used()} exceeds {self.budget}")

    def as_recipe(self) -> Recipe:
        return Recipe(
            "weighting",
            {
                "case": self.case,
                "t": self.t,
                "k": self.k,
                "v": self.v,
                "lambda": self.lam,
                "v1": self.v1,
                "v2": self.v2,
                "parts": [[p.mu, p.lam, p.multiplicity] for p in self.parts],
            },
        )


def _four_s_plus_two(lam: int, v: int) -> WeightingRecipe:
    if v % 4 != 2 or v < 10:
        raise RecipeError(f"case 4t+2 needs v = 4s+2 with s >= 2, got v={v}")
    w = v // 2
    if w % 3 == 0 and gcd(w // 3, 6) == 1:
        raise RecipeError(f"case 4t+2 excludes v/2 = 3u with gcd(u,6) = 1 (v={v})")
    if lam == 1:
        # the odd closed form would need m1 = -1; one index-one binary COA suffices
        return WeightingRecipe("4t+2", v, lam, 2, w, (Part(1, 1, 1),))
    if lam % 2 == 0:
        m1, m2 = lam // 2, 0
    else:
        m1, m2 = (lam - 3) // 2, 1
    return WeightingRecipe("4t+2", v, lam, 2, w, (Part(1, 2, m1), Part(2, 3, m2)))


def _six_u(lam: int, v: int) -> WeightingRecipe:
    u = v // 6
    if v % 6 or u == 1 or gcd(u, 6) != 1:
        raise RecipeError(f"case 6u needs v = 6u with u != 1 and gcd(u,6) = 1, got v={v}")
    if lam == v - 1:
        raise RecipeError(f"no recipe for lambda = v-1 = {lam} when v = 6u")
    if lam == v - 3:
        parts = (Part(1, 6, u - 2), Part(2, 9, 1))
    else:
        h, eps = divmod(lam, 6)
        if eps == 0:
            parts = (Part(1, 6, h),)
        else:
            mu2, lam2 = SIX_U_PARTS[eps]
            parts = (Part(1, 6, h), Part(mu2, lam2, 1))
    return WeightingRecipe("6u", v, lam, 6, u, parts)


def default_case(v: int) -> str:
    if v % 4 == 2 and v >= 10:
        w = v // 2
        if not (w % 3 == 0 and gcd(w // 3, 6) == 1):
            return "4t+2"
    return "6u"


def recipe_solver(target_lambda: int, v: int, case: str | None = None) -> WeightingRecipe:
    """Closed-form multiplicities for a simple COA_lambda(2, 5, v)."""
    case = default_case(v) if case is None else case
    if case not in CASES:
        raise RecipeError(f"unknown case {case!r}; expected one of {CASES}")
    if not 1 <= target_lambda <= v:
        raise RecipeError(f"lambda={target_lambda} outside the supported range for v={v}")
    build = _four_s_plus_two if case == "4t+2" else _six_u
    recipe = build(target_lambda, v)
    recipe.check()
    return recipe


def _standard_ingredient(v1: int, mu: int, lam: int) -> Array | RowDivisibleArray | None:
    if v1 == 2:
        if (mu, lam) == (1, 1):
            return coa_2_5_index_one(2)
        if (mu, lam) == (1, 2):
            return simple_coa_2_5_full_index(2)
        if (mu, lam) == (2, 3):
            return catalog_seed("rowdiv2-coa3-2-5-2")
    if v1 == 6:
        if (mu, lam) == (1, 6):
            return simple_coa_2_5_full_index(6)
        if (mu, lam) == (1, 1):
            return coa_2_5_index_one(6)
        if (mu, lam) == (2, 9):
            return rowdiv_coa9_2_5_6()
    return None


def build_recipe(
    recipe: WeightingRecipe,
    ingredients: Mapping[tuple[int, int], Array | RowDivisibleArray] | None = None,
) -> Array:
    """Construct and verify the simple COA a recipe describes.

    ``ingredients`` maps (mu, lam) to externally supplied row-divisible
    COAs over v1 symbols, for parts with no built-in construction.
    """
    supplied = dict(ingredients or {})
    chosen = []
    for part in recipe.parts:
        if part.multiplicity == 0:
            continue
        array = supplied.get((part.mu, part.lam)) or _standard_ingredient(recipe.v1, part.mu, part.lam)
        if array is None:
            raise RecipeError(
                f"no built-in {part.mu}-row-divisible COA_{part.lam}(2,5,{recipe.v1}); supply it via ingredients"
            )
        if not isinstance(array, RowDivisibleArray) and part.mu > 1:
            raise RecipeError(f"ingredient for (mu={part.mu}, lam={part.lam}) must carry its row partition")
        chosen.append((array, part.multiplicity))
    family = compatible_family_from_oa(oa3_6(recipe.v2), col=1, t=2)
    out = weighting_combine(chosen, family, t=2)
    r = recipe.as_recipe()
    return out.with_meta(family=r.family, provenance=dict(r.params))
