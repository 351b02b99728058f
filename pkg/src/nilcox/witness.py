"""Truncated infinite-dimensional modules certifying that NC(M) has infinite rank.

A module has basis labels ``(family, r)`` for ``r = 1..R``. Each arrow sends
``(src, r)`` to ``(dst, r + inc)`` under one generator; everything else is
killed. An arrow that would leave replica ``R`` lands on a boundary marker,
and relation checks that meet the boundary are skipped rather than trusted.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from nilcox.presentations import INF, GeneralizedCoxeterMatrix

__all__ = [
    "Arrow", "WitnessModule", "WitnessReport", "WitnessViolation", "NoWitnessError",
    "build_witness", "verify_witness", "find_walk", "CASE_TAGS",
]

CASE_TAGS = (
    "Case2/Fig3.1", "Case3/Fig3.2", "Case4/Fig3.3", "Case5/Fig3.4", "Case6/Fig3.5",
    "Case7-D", "Case8-E", "Case9-F", "InfiniteBond", "NotFiniteCoxeterDiagram",
)

BOUNDARY = "boundary"


class WitnessViolation(AssertionError):
    """A defining relation fails on the module; this is a bug, never expected."""


class NoWitnessError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    src: str
    gen: int
    dst: str
    inc: int = 0


@dataclass
class WitnessModule:
    case: str
    families: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    depth: int
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for a in self.arrows:
            if (a.src, a.gen) in seen:
                raise ValueError(f"two arrows leave {a.src} under T_{a.gen}")
            seen.add((a.src, a.gen))
        self._act = {(a.gen, a.src): (a.dst, a.inc) for a in self.arrows}

    @property
    def labels(self) -> list[tuple[str, int]]:
        return [(f, r) for r in range(1, self.depth + 1) for f in self.families]

    @property
    def start(self) -> tuple[str, int]:
        return (self.families[0], 1)

    @property
    def generators(self) -> set[int]:
        return {a.gen for a in self.arrows}

    def act(self, gen: int, label):
        """Image of ``label`` under ``T_gen``: a label, None for zero, or ``BOUNDARY``."""
        if label is None or label == BOUNDARY:
            return label
        hit = self._act.get((gen, label[0]))
        if hit is None:
            return None
        r = label[1] + hit[1]
        return (hit[0], r) if r <= self.depth else BOUNDARY

    def apply(self, word: Sequence[int], label):
        """``T_{w1} ... T_{wk}`` applied to ``label`` (rightmost letter first)."""
        for g in reversed(word):
            label = self.act(g, label)
            if label is None or label == BOUNDARY:
                break
        return label

    def cycle_word(self) -> list[int]:
        """A shortest word carrying ``(A, r)`` to ``(A, r + 1)``, as a product left to right."""
        a0 = self.families[0]
        queue = deque([(a0, 0)])
        back = {(a0, 0): None}
        while queue:
            state = queue.popleft()
            if state == (a0, 1):
                letters = []
                while back[state] is not None:
                    prev, g = back[state]
                    letters.append(g)
                    state = prev
                return letters
            fam, inc = state
            for a in sorted(self.arrows, key=lambda a: (a.gen, a.dst)):
                if a.src == fam and inc + a.inc <= 1:
                    nxt = (a.dst, inc + a.inc)
                    if nxt not in back:
                        back[nxt] = (state, a.gen)
                        queue.append(nxt)
        raise NoWitnessError("module has no cycle through its first family")


@dataclass
class WitnessReport:
    case: str
    depth: int
    checks: int
    skipped: int
    words: dict[int, list[int]]


def _alternating(a: int, b: int, m: int) -> list[int]:
    return [a if t % 2 == 0 else b for t in range(m)]


def verify_witness(M: GeneralizedCoxeterMatrix, module: WitnessModule) -> WitnessReport:
    """Check every defining relation of NC(M) on every label, skipping checks that reach the boundary.

    Raises :class:`WitnessViolation` on failure. Also certifies, for each ``r``,
    a word sending ``A_1`` to ``A_r``.
    """
    bad = [g for g in module.generators if not 1 <= g <= M.size]
    if bad:
        raise ValueError(f"module uses generators {bad} outside 1..{M.size}")
    relations = []
    for i in M.nodes():
        relations.append(([i] * M.bond(i, i), None))
    for i in M.nodes():
        for j in M.nodes():
            m = M.bond(i, j)
            if i < j and m is not INF:
                relations.append((_alternating(i, j, m), _alternating(j, i, m)))
    checks = skipped = 0
    for label in module.labels:
        for lhs, rhs in relations:
            x = module.apply(lhs, label)
            y = None if rhs is None else module.apply(rhs, label)
            if x == BOUNDARY or y == BOUNDARY:
                skipped += 1
                continue
            checks += 1
            if x != y:
                right = "0" if rhs is None else f"T{rhs}"
                raise WitnessViolation(
                    f"{module.case}: T{lhs} and {right} differ on {label}: {x} vs {y}")
    cycle = module.cycle_word()
    words = {}
    for r in range(1, module.depth + 1):
        word = cycle * (r - 1)
        target = (module.families[0], r)
        if module.apply(word, module.start) != target:
            raise WitnessViolation(f"{module.case}: cycle word does not reach {target}")
        words[r] = word
    return WitnessReport(module.case, module.depth, checks, skipped, words)


# -- figure builders -------------------------------------------------------------

def _loop(alpha: int, path: Sequence[int], middle: list[Arrow]) -> list[Arrow]:
    """Arrows A -alpha-> B1 -b1-> ... -> Bm, the given middle part, then back Bm' -> ... -> B1' -alpha-> A+."""
    m = len(path) + 1
    arrows = [Arrow("A", alpha, "B1")]
    arrows += [Arrow(f"B{j}", path[j - 1], f"B{j + 1}") for j in range(1, m)]
    arrows += middle
    arrows += [Arrow(f"B'{j + 1}", path[j - 1], f"B'{j}") for j in range(m - 1, 0, -1)]
    arrows.append(Arrow("B'1", alpha, "A", 1))
    return arrows


def _fig32(alpha, path, gamma):
    m = len(path) + 1
    middle = [Arrow(f"B{m}", gamma, "C"), Arrow("C", gamma, f"B'{m}")]
    fams = ["A"] + [f"B{j}" for j in range(1, m + 1)] + ["C"] + [f"B'{j}" for j in range(m, 0, -1)]
    return fams, _loop(alpha, path, middle)


def _fig34(alpha, path, gamma, delta):
    m = len(path) + 1
    middle = [Arrow(f"B{m}", gamma, "D"), Arrow(f"B{m}", delta, "C"),
              Arrow("D", delta, f"B'{m}"), Arrow("C", gamma, f"B'{m}")]
    fams = ["A"] + [f"B{j}" for j in range(1, m + 1)] + ["C", "D"] + [f"B'{j}" for j in range(m, 0, -1)]
    return fams, _loop(alpha, path, middle)


def _fig35(alpha, path, gamma):
    m = len(path) + 1
    middle = [Arrow(f"B{m}", gamma, f"B'{m}")]
    fams = ["A"] + [f"B{j}" for j in range(1, m + 1)] + [f"B'{j}" for j in range(m, 0, -1)]
    return fams, _loop(alpha, path, middle)


def build_witness(case_tag: str, parameters: Mapping, depth: int) -> WitnessModule:
    """Build the truncated module for ``case_tag`` from the node roles in ``parameters``."""
    if depth < 2:
        raise ValueError("truncation depth must be at least 2")
    p = dict(parameters)
    if case_tag == "Case2/Fig3.1":
        a, c = p["alpha"], p["gamma"]
        fams = ["A", "B", "C", "D"]
        arrows = [Arrow("A", a, "B"), Arrow("B", c, "C"), Arrow("C", c, "D"), Arrow("D", a, "A", 1)]
    elif case_tag == "Case3/Fig3.2":
        fams, arrows = _fig32(p["alpha"], p["path"], p["gamma"])
    elif case_tag == "Case4/Fig3.3":
        s, t, u = p["s"], p["t"], p["u"]
        fams = ["A", "B", "C"]
        arrows = [Arrow("A", s, "B"), Arrow("B", u, "C"), Arrow("C", t, "A", 1)]
    elif case_tag in ("Case5/Fig3.4", "Case7-D", "Case8-E"):
        fams, arrows = _fig34(p["alpha"], p["path"], p["gamma"], p["delta"])
    elif case_tag in ("Case6/Fig3.5", "Case9-F"):
        fams, arrows = _fig35(p["alpha"], p["path"], p["gamma"])
    elif case_tag == "InfiniteBond":
        i, j = p["i"], p["j"]
        fams = ["a", "b"]
        arrows = [Arrow("a", i, "b"), Arrow("b", j, "a", 1)]
    elif case_tag == "NotFiniteCoxeterDiagram":
        if "cycle" in p:
            a1, a2, a3, a4 = p["cycle"]
            fams = ["A", "B1", "B2", "B3", "B4", "C"]
            arrows = [Arrow("A", a2, "B2"), Arrow("A", a4, "B4"),
                      Arrow("B2", a4, "C"), Arrow("B4", a2, "C"),
                      Arrow("C", a3, "B3"), Arrow("C", a1, "B1"),
                      Arrow("B1", a3, "A", 1), Arrow("B3", a1, "A", 1)]
        elif p.get("walk"):
            word = list(p["walk"])
            k = len(word)
            fams = [f"W{t}" for t in range(k)]
            # the walk is read as a product, so its last letter acts first
            order = word[::-1]
            arrows = [Arrow(f"W{t}", order[t], f"W{t + 1}") for t in range(k - 1)]
            arrows.append(Arrow(f"W{k - 1}", order[k - 1], "W0", 1))
        else:
            raise NoWitnessError("no witness construction is known for this diagram")
    else:
        raise ValueError(f"unknown case tag {case_tag!r}")
    return WitnessModule(case_tag, tuple(fams), tuple(arrows), depth, p)


def find_walk(M: GeneralizedCoxeterMatrix, max_period: int = 8) -> Optional[list[int]]:
    """A periodic word whose cyclic module satisfies every relation of NC(M), or None.

    Consecutive letters must be joined by a bond (a commuting pair would have to
    act equally in both orders), so candidates are cycles in the Coxeter graph,
    possibly with repeated letters where ``d_i >= 3``.
    """
    nodes = list(M.nodes())

    def linked(a, b):
        return (a == b and M.bond(a, a) >= 3) or (a != b and M.bond(a, b) != 2)

    for period in range(2, max_period + 1):
        for word in itertools.product(nodes, repeat=period):
            if any(not linked(word[t], word[(t + 1) % period]) for t in range(period)):
                continue
            module = build_witness("NotFiniteCoxeterDiagram", {"walk": list(word)}, 4)
            try:
                verify_witness(M, module)
            except WitnessViolation:
                continue
            return list(word)
    return None
