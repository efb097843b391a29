"""Worked example over GF(9): three (8, 9^3, 6) codes and how they differ.

Items:

1. the two linear codes and the additive one are MDS with d = 6, size 729;
2. the columns of the second linear code lie on x1x2 + e^3 x1x3 + x2x3,
   while no conic contains the columns of the first;
3. exhaustive semi-linear search finds no equivalence between the linear codes;
4. the additive code is not closed under multiplication by e;
5. planted witnesses (structured map plus a codeword shift) are reduced back
   to a semi-linear witness on the first code and an additive one on the third.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .additive import AdditiveCode, extract_additive
from .codes import Conic, LinearCode, conic_space, is_mds, minimum_distance
from .equivalence.extract import extract_semilinear
from .equivalence.search import search_semilinear
from .equivalence.witnesses import is_equivalence
from .io import read_code
from .planted import planted_general, random_additive_witness, random_semilinear

DEMO_SEED = 20211


@dataclass
class Item:
    number: int
    title: str
    passed: bool
    detail: str


def data_path(name: str, data_dir=None) -> Path:
    if data_dir is not None:
        return Path(data_dir) / name
    return Path(str(resources.files("codequiv") / "data" / name))


def load_example_codes(data_dir=None) -> tuple[LinearCode, LinearCode, AdditiveCode]:
    c1 = read_code(data_path("g1.code", data_dir))
    c2 = read_code(data_path("g2.code", data_dir))
    c3 = read_code(data_path("c3.code", data_dir))
    if not (isinstance(c1, LinearCode) and isinstance(c2, LinearCode) and isinstance(c3, AdditiveCode)):
        raise ValueError("g1/g2 must be linear code files and c3 an additive one")
    return c1, c2, c3


def _item_mds(codes) -> Item:
    parts, ok = [], True
    for name, c in zip(("C1", "C2", "C3"), codes):
        d = minimum_distance(c)
        good = d == 6 and c.size == 729 and c.n == 8 and is_mds(c.size, c.n, d, c.field.q)
        ok &= good
        parts.append(f"{name} d={d} size={c.size}")
    return Item(1, "MDS (8, 9^3, 6)", ok, ", ".join(parts))


def _item_conic(c1: LinearCode, c2: LinearCode) -> Item:
    f = c2.field
    if c1.k != 3 or c2.k != 3:
        return Item(2, "conic separation", False, "codes must have dimension 3")
    target = Conic(f, (0, 0, 0, 1, f.power(f.e, 3), 1)).normalized()
    s2 = conic_space(f, c2.generator.T)
    s1 = conic_space(f, c1.generator.T)
    ok = len(s2) == 1 and s2[0] == target and len(s1) == 0
    shown = "; ".join(str(c) for c in s2) or "none"
    return Item(2, "conic separation", ok, f"G2 conics: {shown}; G1 conic space dim={len(s1)}")


def _item_search(c1: LinearCode, c2: LinearCode) -> Item:
    w = search_semilinear(c1, c2)
    return Item(3, "C1, C2 not semi-linearly equivalent", w is None, "exhaustive search: " + ("not found" if w is None else "found"))


def _item_nonlinear(c3: AdditiveCode) -> Item:
    rows = c3.non_linear_rows()
    detail = "e*g outside the code for generators " + " ".join(str(r + 1) for r in rows)
    return Item(4, "C3 not GF(9)-linear", len(rows) > 0, detail if len(rows) else "closed under e")


def _item_roundtrip(c1: LinearCode, c3: AdditiveCode) -> Item:
    rng = np.random.default_rng(DEMO_SEED)
    planted = random_semilinear(c1.field, c1.n, rng, t=1)
    b1, g1 = planted_general(planted, c1, rng)
    s = extract_semilinear(g1, c1, b1)
    ok1 = is_equivalence(s, c1, b1) and s.t == 1
    planted_add = random_additive_witness(c3.field, c3.n, rng)
    b3, g3 = planted_general(planted_add, c3, rng)
    a = extract_additive(g3, c3, b3)
    ok3 = is_equivalence(a, c3, b3)
    detail = f"C1: t={s.t} {'verified' if ok1 else 'FAILED'}; C3: additive {'verified' if ok3 else 'FAILED'}"
    return Item(5, "planted extraction roundtrips", ok1 and ok3, detail)


def paper_demo(skip_search: bool = False, data_dir=None) -> list[Item]:
    c1, c2, c3 = load_example_codes(data_dir)
    items = [_item_mds((c1, c2, c3)), _item_conic(c1, c2)]
    if not skip_search:
        items.append(_item_search(c1, c2))
    items.append(_item_nonlinear(c3))
    try:
        items.append(_item_roundtrip(c1, c3))
    except Exception as exc:  # any failure here is a failed item, not a crash
        items.append(Item(5, "planted extraction roundtrips", False, f"{type(exc).__name__}: {exc}"))
    return items
