"""Seed arrays shipped with the package.

Each seed is a text file under ``cdakit/data`` in the array file format,
pinned by SHA-256 so a corrupted or edited file is refused on load.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources

from .arrayfile import parse_array
from .errors import CDAError, UnknownSeed
from .model import Array, RowDivisibleArray


@dataclass(frozen=True)
class Seed:
    name: str
    sha256: str
    claim: str
    description: str


SEEDS = {
    s.name: s
    for s in [
        Seed(
            "cca-9-2-21-3",
            "a9882cf9f30eb111c08f0d53348d126ee31b160c5074135f7809d0d84a89cacd",
            "cca",
            "9 x 21 consecutive covering array of strength 2 over Z_3 (not a covering array)",
        ),
        Seed(
            "coa3-2-6-3",
            "9132e5b3ccd792779427f55129ae31f1cc0a28ef2937e261efde20a28ec0a603",
            "simple-coa",
            "27 x 6 simple consecutive orthogonal array of index 3, strength 2, over Z_3",
        ),
        Seed(
            "coa4-6-2",
            "f8f36f48617171d779f6bab2ee3b091aadf4bd05d0e7e6c10d4cf110fbb97968",
            "coa",
            "16 x 6 consecutive orthogonal array of strength 4 over Z_2",
        ),
        Seed(
            "rowdiv2-coa3-2-5-2",
            "a408ad8f6226842033b8a6332e4d005b8d69a22d7b5cf8c8c23bcddd2a72c306",
            "row-divisible-coa",
            "12 x 5 index-3 strength-2 COA over Z_2 split into two simple halves",
        ),
        Seed(
            "oa-3-4-2",
            "1d364b6e05bdbde873db80ff91d191d544041cf309f6b4895dbd1ad044aa3bd0",
            "oa",
            "8 x 4 orthogonal array of strength 3 over Z_2",
        ),
        Seed(
            "ssoa2-2-3-2",
            "6830829bb2c3b92dbf45fb4db62b75ab02edad6186d559e9e1380f2f90569adf",
            "super-simple-oa",
            "8 x 3 super-simple OA of index 2: the two derived blocks of oa-3-4-2 on column 1, stacked",
        ),
        Seed(
            "coa2-2-4-2",
            "42c393d01b8ebff348a1dcd352d3840a41f929d4a0dd619533481f7093d8cb10",
            "simple-coa",
            "8 x 4 simple COA of index 2 over Z_2: ssoa2-2-3-2 with column 1 appended",
        ),
        Seed(
            "coa4-6-2-derived-0",
            "493a27fceb9bd73b64b86043070cb9e60c06a93c3f2cc34c5c29c4cbeb2d8c4d",
            "not-coa",
            "rows of coa4-6-2 with symbol 0 in column 1, column deleted; fails COA of strength 3",
        ),
        Seed(
            "coa4-6-2-derived-1",
            "8c305084dda7a79341ff978c483a6c4bcc1d0b183edbc88a841d767d7e9d5ec0",
            "not-coa",
            "rows of coa4-6-2 with symbol 1 in column 1, column deleted; fails COA of strength 3",
        ),
    ]
}


def seed_text(name: str) -> str:
    if name not in SEEDS:
        raise UnknownSeed(f"unknown seed {name!r}; known: {', '.join(SEEDS)}")
    raw = resources.files("cdakit").joinpath("data").joinpath(f"{name}.txt").read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != SEEDS[name].sha256:
        raise CDAError(f"seed {name!r} failed its checksum ({digest})")
    return raw.decode("utf-8")


def catalog_seed(name: str) -> Array | RowDivisibleArray:
    obj = parse_array(seed_text(name))
    array = obj.array if isinstance(obj, RowDivisibleArray) else obj
    provenance = dict(array.provenance, seed=name)
    array = array.with_meta(provenance=provenance)
    if isinstance(obj, RowDivisibleArray):
        return RowDivisibleArray(array, obj.parts)
    return array


def seed_array(name: str) -> Array:
    """The seed as a plain array, dropping any row partition."""
    obj = catalog_seed(name)
    return obj.array if isinstance(obj, RowDivisibleArray) else obj


def list_seeds() -> list[dict]:
    out = []
    for name, seed in SEEDS.items():
        array = seed_array(name)
        out.append(
            {
                "name": name,
                "N": array.N,
                "k": array.k,
                "v": array.v,
                "t": array.t,
                "lambda": array.lam,
                "claim": seed.claim,
                "description": seed.description,
            }
        )
    return out
