"""Generalized Coxeter matrices and recognition of their Coxeter diagrams.

Nodes are 1-based. The diagonal holds the nilpotency orders ``d_i``; an
off-diagonal entry is a bond label ``m_ij >= 2`` or :data:`INF`.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "INF", "Infinity", "Bond", "GeneralizedCoxeterMatrix", "DiagramShape",
    "InvalidMatrixError", "validate", "shape", "components",
    "coxeter_group_order", "finite_type", "type_a_matrix",
]


class Infinity(enum.Enum):
    INF = "inf"

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = Infinity.INF
Bond = Union[int, Infinity]


class InvalidMatrixError(ValueError):
    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _bond_at_least(m: Bond, k: int) -> bool:
    return m is INF or m >= k


@dataclass(frozen=True)
class GeneralizedCoxeterMatrix:
    """A square matrix ``entries`` with the orders on the diagonal.

    The stored matrix may be asymmetric or carry out-of-range values; call
    :func:`validate` before computing with it.
    """
    entries: tuple[tuple[Bond, ...], ...]

    @classmethod
    def from_data(cls, orders: Sequence[int], bonds: Mapping[tuple[int, int], Bond] | Iterable = ()) -> GeneralizedCoxeterMatrix:
        """Build from orders and a bond listing; unlisted pairs default to 2.

        A bond given only as ``(i, j)`` is mirrored to ``(j, i)``; giving both
        with different labels yields an asymmetric matrix.
        """
        size = len(orders)
        rows: list[list[Bond]] = [[2] * size for _ in range(size)]
        for i, d in enumerate(orders):
            rows[i][i] = d
        items = bonds.items() if isinstance(bonds, Mapping) else (((i, j), m) for i, j, m in bonds)
        listed = {}
        for (i, j), m in items:
            if not (1 <= i <= size and 1 <= j <= size) or i == j:
                raise InvalidMatrixError([f"bond ({i}, {j}) out of range for size {size}"])
            listed[(i, j)] = _parse_bond(m)
        for (i, j), m in listed.items():
            rows[i - 1][j - 1] = m
            if (j, i) not in listed:
                rows[j - 1][i - 1] = m
        return cls(tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(self.size))

    def bond(self, i: int, j: int) -> Bond:
        return self.entries[i - 1][j - 1]

    def nodes(self) -> range:
        return range(1, self.size + 1)

    def edges(self) -> list[tuple[int, int, Bond]]:
        """Pairs ``i < j`` with ``m_ij != 2``."""
        return [(i, j, self.bond(i, j)) for i in self.nodes() for j in self.nodes()
                if i < j and self.bond(i, j) != 2]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in self.nodes() if j != i and self.bond(i, j) != 2]

    def with_orders(self, orders: Sequence[int]) -> GeneralizedCoxeterMatrix:
        rows = [list(r) for r in self.entries]
        for i, d in enumerate(orders):
            rows[i][i] = d
        return GeneralizedCoxeterMatrix(tuple(tuple(r) for r in rows))

    def relabel(self, perm: Sequence[int]) -> GeneralizedCoxeterMatrix:
        """Node ``i`` of the result is node ``perm[i-1]`` of ``self``."""
        return GeneralizedCoxeterMatrix(tuple(
            tuple(self.bond(perm[a], perm[b]) for b in range(self.size)) for a in range(self.size)))

    def submatrix(self, nodes: Sequence[int]) -> GeneralizedCoxeterMatrix:
        return GeneralizedCoxeterMatrix(tuple(
            tuple(self.bond(a, b) for b in nodes) for a in nodes))

    def canonical_key(self) -> tuple:
        """A relabeling-invariant key (lexicographic minimum over node orders)."""
        best = None
        for perm in itertools.permutations(self.nodes()):
            key = tuple(tuple(_bond_key(x) for x in row) for row in self.relabel(perm).entries)
            if best is None or key < best:
                best = key
        return best

    # -- JSON -------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "size": self.size,
            "bonds": [[i, j, _bond_json(m)] for i, j, m in self.edges()],
            "orders": list(self.orders),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: Mapping) -> GeneralizedCoxeterMatrix:
        try:
            size = int(data["size"])
            orders = [int(d) for d in data["orders"]]
            bonds = [(int(i), int(j), m) for i, j, m in data.get("bonds", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidMatrixError([f"malformed matrix JSON: {exc}"]) from exc
        if len(orders) != size:
            raise InvalidMatrixError([f"expected {size} orders, got {len(orders)}"])
        return cls.from_data(orders, bonds)

    @classmethod
    def from_json(cls, text: str) -> GeneralizedCoxeterMatrix:
        return cls.from_json_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> GeneralizedCoxeterMatrix:
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def _parse_bond(m) -> Bond:
    if m is INF or (isinstance(m, str) and m.strip().lower() in ("inf", "infinity", "∞")):
        return INF
    if isinstance(m, bool) or not isinstance(m, int):
        if isinstance(m, float) and m == math.inf:
            return INF
        raise InvalidMatrixError([f"bond label {m!r} is neither an integer nor 'inf'"])
    return m


def _bond_json(m: Bond):
    return "inf" if m is INF else m


def _bond_key(m: Bond) -> int:
    return 10 ** 9 if m is INF else m


def type_a_matrix(n: int, orders: Sequence[int] | None = None) -> GeneralizedCoxeterMatrix:
    """The ``A_n`` path ``1 - 2 - ... - n``; orders default to all 2."""
    orders = list(orders) if orders is not None else [2] * n
    return GeneralizedCoxeterMatrix.from_data(orders, {(i, i + 1): 3 for i in range(1, n)})


def validate(M: GeneralizedCoxeterMatrix) -> list[str]:
    """All invariant violations of ``M``; an empty list means the matrix is valid."""
    errors = []
    n = M.size
    if n < 1:
        errors.append("empty index set")
    if any(len(row) != n for row in M.entries):
        return errors + ["matrix is not square"]
    for i in M.nodes():
        d = M.bond(i, i)
        if d is INF or not isinstance(d, int):
            errors.append(f"order d_{i} must be a finite integer")
        elif d < 2:
            errors.append(f"order below 2 at node {i} (d_{i} = {d})")
    for i in M.nodes():
        for j in M.nodes():
            if i >= j:
                continue
            a, b = M.bond(i, j), M.bond(j, i)
            if a != b:
                errors.append(f"asymmetric bond: m_{i}{j} = {a} but m_{j}{i} = {b}")
            for m, (x, y) in ((a, (i, j)), (b, (j, i))):
                if m is not INF and (not isinstance(m, int) or m < 2):
                    errors.append(f"bond below 2: m_{x}{y} = {m}")
    return errors


def require_valid(M: GeneralizedCoxeterMatrix) -> None:
    errors = validate(M)
    if errors:
        raise InvalidMatrixError(errors)


def components(M: GeneralizedCoxeterMatrix) -> list[list[int]]:
    """Connected components of the Coxeter graph, each sorted, in order of least node."""
    seen: set[int] = set()
    comps = []
    for start in M.nodes():
        if start in seen:
            continue
        comp, queue = [], deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in M.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


# -- finite type recognition ---------------------------------------------------

def _path_order(M: GeneralizedCoxeterMatrix, nodes: Sequence[int]) -> list[int] | None:
    """Nodes of a connected component listed along a simple path, or None."""
    if len(nodes) == 1:
        return list(nodes)
    deg = {v: len(M.neighbors(v)) for v in nodes}
    ends = [v for v in nodes if deg[v] == 1]
    if len(ends) != 2 or any(d > 2 for d in deg.values()):
        return None
    path, prev = [min(ends)], None
    while len(path) < len(nodes):
        nxt = [u for u in M.neighbors(path[-1]) if u != prev]
        if len(nxt) != 1:
            return None
        prev = path[-1]
        path.append(nxt[0])
    return path


def _component_type(M: GeneralizedCoxeterMatrix, nodes: Sequence[int]) -> str | None:
    """Finite Coxeter type name of a connected component, or None if infinite."""
    k = len(nodes)
    bonds = [M.bond(i, j) for i in nodes for j in nodes if i < j and M.bond(i, j) != 2]
    if any(m is INF for m in bonds):
        return None
    if k == 1:
        return "A1"
    if k == 2:
        m = bonds[0]
        return {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
    if len(bonds) != k - 1:
        return None  # contains a cycle
    path = _path_order(M, nodes)
    if path is not None:
        labels = [M.bond(a, b) for a, b in zip(path, path[1:])]
        if labels[-1] != 3 and labels[0] == 3:
            labels.reverse()
        heavy = [m for m in labels if m != 3]
        if not heavy:
            return f"A{k}"
        if len(heavy) == 1 and labels[0] == 4:
            return f"B{k}"
        if labels[0] == 5 and len(heavy) == 1 and k in (3, 4):
            return f"H{k}"
        if k == 4 and labels == [3, 4, 3]:
            return "F4"
        return None
    if any(m != 3 for m in bonds):
        return None
    deg = {v: len(M.neighbors(v)) for v in nodes}
    branch = [v for v in nodes if deg[v] >= 3]
    if len(branch) != 1 or deg[branch[0]] != 3:
        return None
    b = branch[0]
    arms = []
    for start in M.neighbors(b):
        length, prev, cur = 1, b, start
        while deg[cur] == 2:
            nxt = [u for u in M.neighbors(cur) if u != prev][0]
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{k}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{k}"
    return None


def coxeter_group_order(type_name: str) -> int:
    """Order of the finite Coxeter group of an irreducible type such as ``"B3"`` or ``"I2(5)"``."""
    if type_name.startswith("I2("):
        return 2 * int(type_name[3:-1])
    family, rank = type_name[0], int(type_name[1:])
    f = math.factorial
    table = {
        "A": lambda r: f(r + 1),
        "B": lambda r: 2 ** r * f(r),
        "D": lambda r: 2 ** (r - 1) * f(r),
        "G": lambda r: 12,
        "F": lambda r: 1152,
        "H": lambda r: {2: 10, 3: 120, 4: 14400}[r],
        "E": lambda r: {6: 51840, 7: 2903040, 8: 696729600}[r],
    }
    return table[family](rank)


@dataclass(frozen=True)
class DiagramShape:
    kind: str  # "type-A-path" | "finite-coxeter" | "not-finite-coxeter"
    coxeter_type: str | None
    pendant_nodes: tuple[int, ...]
    component_count: int
    component_types: tuple[str | None, ...] = field(default=())

    TYPE_A_PATH = "type-A-path"
    FINITE = "finite-coxeter"
    NOT_FINITE = "not-finite-coxeter"


def finite_type(M: GeneralizedCoxeterMatrix) -> str | None:
    """Finite Coxeter type of the whole diagram (components joined with ``+``), or None."""
    types = [_component_type(M, c) for c in components(M)]
    if any(t is None for t in types):
        return None
    return "+".join(types)


def shape(M: GeneralizedCoxeterMatrix) -> DiagramShape:
    comps = components(M)
    types = tuple(_component_type(M, c) for c in comps)
    if M.size == 1:
        pendant = (1,)
    else:
        pendant = tuple(v for v in M.nodes() if len(M.neighbors(v)) == 1)
    if any(t is None for t in types):
        return DiagramShape(DiagramShape.NOT_FINITE, None, pendant, len(comps), types)
    name = "+".join(types)
    kind = DiagramShape.TYPE_A_PATH if len(comps) == 1 and types[0].startswith("A") else DiagramShape.FINITE
    return DiagramShape(kind, name, pendant, len(comps), types)
