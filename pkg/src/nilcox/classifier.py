"""Finite-dimensionality of NC(M) for generalized Coxeter matrices.

NC(M) has finite rank exactly when either every order is 2 and the Coxeter
diagram is of finite type, or the diagram is a type-A path with a single
order ``d > 2`` sitting on an end node. Every other matrix gets an infinite
verdict tagged with the first argument that applies, together with the node
roles needed to build a witness module.

>>> from nilcox.presentations import type_a_matrix
>>> classify(type_a_matrix(2, [3, 3])).case
'Case2/Fig3.1'
>>> classify(type_a_matrix(3, [2, 2, 4])).dimension
60
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from nilcox.nca import dimension as nca_dimension
from nilcox.presentations import (
    INF, GeneralizedCoxeterMatrix, components, coxeter_group_order, finite_type, require_valid,
)
from nilcox.witness import find_walk

__all__ = [
    "ClassificationResult", "classify", "group_order_comparison",
    "USUAL", "NCA", "PRODUCT",
]

USUAL = "usual nil-Coxeter"
NCA = "NC_A(n,d)"
PRODUCT = "product"


@dataclass(frozen=True)
class ClassificationResult:
    finite: bool
    dimension: Optional[int] = None
    family: Optional[str] = None
    case: Optional[str] = None
    witness_recipe: Optional[dict] = None
    components: tuple = field(default=())

    @property
    def verdict(self) -> str:
        return "finite" if self.finite else "infinite"

    def to_json_dict(self) -> dict:
        out = {"verdict": self.verdict}
        if self.finite:
            out["dimension"] = self.dimension
        else:
            out["case"] = self.case
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _heavy(M: GeneralizedCoxeterMatrix) -> list[int]:
    return [i for i in M.nodes() if M.bond(i, i) >= 3]


def _linked(m) -> bool:
    return m is INF or m >= 3


def _bond_at_least_4(m) -> bool:
    return m is INF or m >= 4


def _shortest_path(M: GeneralizedCoxeterMatrix, a: int, b: int) -> list[int]:
    """Node list from ``a`` to ``b``, preferring small labels on ties."""
    back = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for u in sorted(M.neighbors(v)):
            if u not in back:
                back[u] = v
                queue.append(u)
    path = [b]
    while path[-1] != a:
        path.append(back[path[-1]])
    return path[::-1]


def _infinite(case: str, recipe: Optional[dict]) -> ClassificationResult:
    return ClassificationResult(False, case=case, witness_recipe=recipe)


def _four_cycle(M: GeneralizedCoxeterMatrix) -> Optional[list[int]]:
    if M.size != 4 or any(len(M.neighbors(v)) != 2 for v in M.nodes()):
        return None
    if any(m != 3 for _, _, m in M.edges()) or len(M.edges()) != 4:
        return None
    cyc = [1]
    while len(cyc) < 4:
        cyc.append(min(u for u in M.neighbors(cyc[-1]) if u not in cyc))
    return cyc


def _non_finite(M: GeneralizedCoxeterMatrix) -> ClassificationResult:
    for i, j, m in M.edges():
        if m is INF:
            return _infinite("InfiniteBond", {"i": i, "j": j})
    cyc = _four_cycle(M)
    if cyc is not None:
        return _infinite("NotFiniteCoxeterDiagram", {"cycle": cyc})
    walk = find_walk(M)
    return _infinite("NotFiniteCoxeterDiagram", {"walk": walk} if walk else {})


def _classify_connected(M: GeneralizedCoxeterMatrix) -> ClassificationResult:
    heavy = _heavy(M)
    if not heavy:
        t = finite_type(M)
        if t is not None:
            return ClassificationResult(True, coxeter_group_order(t), USUAL)
        return _non_finite(M)

    for a in heavy:
        for c in heavy:
            if a < c and _linked(M.bond(a, c)):
                return _infinite("Case2/Fig3.1", {"alpha": a, "gamma": c})

    if len(heavy) >= 2:
        best = None
        for a in heavy:
            for c in heavy:
                if a < c:
                    p = _shortest_path(M, a, c)
                    if best is None or len(p) < len(best):
                        best = p
        return _infinite("Case3/Fig3.2", {"alpha": best[0], "path": best[1:-1], "gamma": best[-1]})

    alpha = heavy[0]
    nbrs = sorted(M.neighbors(alpha))
    for c in nbrs:
        if _bond_at_least_4(M.bond(alpha, c)):
            return _infinite("Case4/Fig3.3", {"s": alpha, "t": alpha, "u": c})
    if len(nbrs) >= 2:
        return _infinite("Case5/Fig3.4", {"alpha": alpha, "path": [], "gamma": nbrs[0], "delta": nbrs[1]})

    t = finite_type(M)
    if t is None:
        return _non_finite(M)
    n, d = M.size, M.bond(alpha, alpha)
    family = t[0]
    if family == "A":
        return ClassificationResult(True, nca_dimension(n, d), NCA)
    if family in "BHF":
        # walk from alpha until the first bond of label >= 4
        path = [alpha]
        while True:
            nxt = [u for u in M.neighbors(path[-1]) if u not in path][0]
            path.append(nxt)
            if M.bond(path[-2], nxt) >= 4:
                break
        tag = "Case9-F" if family == "F" else "Case6/Fig3.5"
        return _infinite(tag, {"alpha": alpha, "path": path[1:-1], "gamma": path[-1]})
    if family in "DE":
        branch = next(v for v in M.nodes() if len(M.neighbors(v)) == 3)
        path = _shortest_path(M, alpha, branch)
        others = sorted(u for u in M.neighbors(branch) if u not in path)
        tag = "Case7-D" if family == "D" else "Case8-E"
        return _infinite(tag, {"alpha": alpha, "path": path[1:], "gamma": others[0], "delta": others[1]})
    raise AssertionError(f"unhandled finite type {t}")  # dihedral types fall under Case 4


def _relabel_recipe(recipe: Optional[dict], nodes: list[int]) -> Optional[dict]:
    if recipe is None:
        return None
    out = {}
    for key, val in recipe.items():
        if isinstance(val, list):
            out[key] = [nodes[v - 1] for v in val]
        else:
            out[key] = nodes[val - 1]
    return out


def classify(M: GeneralizedCoxeterMatrix) -> ClassificationResult:
    require_valid(M)
    comps = components(M)
    if len(comps) == 1:
        return _classify_connected(M)
    parts = []
    for nodes in comps:
        r = _classify_connected(M.submatrix(nodes))
        parts.append(ClassificationResult(r.finite, r.dimension, r.family, r.case,
                                          _relabel_recipe(r.witness_recipe, nodes)))
    for r in parts:
        if not r.finite:
            return ClassificationResult(False, case=r.case, witness_recipe=r.witness_recipe,
                                        components=tuple(parts))
    dim = math.prod(r.dimension for r in parts)
    fams = {r.family for r in parts}
    return ClassificationResult(True, dim, fams.pop() if len(fams) == 1 else PRODUCT,
                                components=tuple(parts))


def group_order_comparison(n: int, d: int) -> tuple[int, int]:
    """Rank of NC_A(n, d) against the order of the group with the same braid relations and ``s_n^d = 1``."""
    if d <= 2:
        raise ValueError("the comparison is stated for d > 2")
    return nca_dimension(n, d), (math.factorial(n + 1) if d % 2 == 0 else 1)
