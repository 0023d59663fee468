"""Kripke semantics over finite frames.

Three evaluators live here:

* :func:`extension` computes the set of points where a formula holds under
  one valuation (bitmask arithmetic, one pass over the formula).
* :func:`frame_valid` / :func:`point_valid` with ``strategy="enumerate"``
  evaluate whole batches of valuations at once with numpy.
* ``strategy="search"`` walks partial valuations depth first and evaluates
  in three-valued (Kleene) logic, cutting every branch whose truth value
  at the target points is already settled.  It visits the same valuation
  space and is exact; it is the only practical route for frames with
  ten or more points.

Unassigned variables denote the empty set.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import BudgetExceeded, FrameError, UnknownPoint
from .formula import And, Bottom, Box, Diamond, Formula, Implies, Not, Or, Var, subformulas, variables
from .frame import Frame, _bits

Valuation = Mapping[str, frozenset]

DEFAULT_BUDGET = 2 ** 24
DEFAULT_SEARCH_BUDGET = 10 ** 7
_CHUNK = 1 << 13


def default_budget() -> int:
    env = os.environ.get("TRANSFRAME_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# -- single-valuation evaluation ------------------------------------------

def _valuation_masks(F: Frame, V: Valuation) -> dict[str, int]:
    masks = {}
    for name, pts in V.items():
        m = 0
        for x in pts:
            if x not in F:
                raise UnknownPoint(x)
            m |= 1 << F.index(x)
        masks[name] = m
    return masks


def _box_mask(F: Frame, m: int) -> int:
    out = 0
    for w, s in enumerate(F.succ):
        if not s & ~m:
            out |= 1 << w
    return out


def _dia_mask(F: Frame, m: int) -> int:
    out = 0
    for w, s in enumerate(F.succ):
        if s & m:
            out |= 1 << w
    return out


def extension_mask(F: Frame, masks: Mapping[str, int], phi: Formula) -> int:
    full = F.full_mask
    val: dict[Formula, int] = {}
    for node in subformulas(phi):
        if isinstance(node, Var):
            v = masks.get(node.name, 0)
        elif isinstance(node, Bottom):
            v = 0
        elif isinstance(node, Not):
            v = full & ~val[node.arg]
        elif isinstance(node, And):
            v = full
            for a in node.args:
                v &= val[a]
        elif isinstance(node, Or):
            v = 0
            for a in node.args:
                v |= val[a]
        elif isinstance(node, Implies):
            v = (full & ~val[node.left]) | val[node.right]
        elif isinstance(node, Box):
            v = _box_mask(F, val[node.arg])
        elif isinstance(node, Diamond):
            v = _dia_mask(F, val[node.arg])
        else:
            raise TypeError(f"unknown formula node {node!r}")
        val[node] = v
    return val[phi]


def extension(F: Frame, V: Valuation, phi: Formula) -> frozenset:
    """Points of ``F`` where ``phi`` holds under ``V``."""
    return frozenset(F.points_of(extension_mask(F, _valuation_masks(F, V), phi)))


def satisfies(F: Frame, V: Valuation, w, phi: Formula) -> bool:
    i = F.index(w)
    return bool(extension_mask(F, _valuation_masks(F, V), phi) >> i & 1)


# -- validity --------------------------------------------------------------

@dataclass(frozen=True)
class ValidityResult:
    """Verdict of a validity check.

    When ``valid`` is false, ``valuation`` and ``point`` form a countermodel.
    ``checked`` counts valuations (enumerate) or search nodes (search).
    """

    valid: bool
    valuation: dict | None = None
    point: object = None
    checked: int = 0
    strategy: str = "enumerate"
    variables: tuple = field(default=())

    def __bool__(self) -> bool:
        return self.valid


def _batch_eval(phi: Formula, assign: dict, rel_t: np.ndarray, batch: int, n: int) -> np.ndarray:
    val: dict[Formula, np.ndarray] = {}
    for node in subformulas(phi):
        if isinstance(node, Var):
            v = assign.get(node.name)
            if v is None:
                v = np.zeros((batch, n), dtype=bool)
        elif isinstance(node, Bottom):
            v = np.zeros((batch, n), dtype=bool)
        elif isinstance(node, Not):
            v = ~val[node.arg]
        elif isinstance(node, And):
            v = val[node.args[0]].copy()
            for a in node.args[1:]:
                v &= val[a]
        elif isinstance(node, Or):
            v = val[node.args[0]].copy()
            for a in node.args[1:]:
                v |= val[a]
        elif isinstance(node, Implies):
            v = ~val[node.left] | val[node.right]
        elif isinstance(node, Box):
            # w fails []x iff some successor fails x
            v = (~val[node.arg]).astype(np.float32) @ rel_t < 0.5
        elif isinstance(node, Diamond):
            v = val[node.arg].astype(np.float32) @ rel_t > 0.5
        else:
            raise TypeError(f"unknown formula node {node!r}")
        val[node] = v
    return val[phi]


def _enumerate(F: Frame, phi: Formula, targets: int, budget: int | None) -> ValidityResult:
    """Exhaustive enumeration over valuations of ``phi``'s variables.

    A valuation is a bit string over (variable, point) pairs taken in
    lexicographic order; strings are visited in increasing order and the
    first falsifying one is reported, with the first failing target point.
    """
    names = variables(phi)
    n = len(F)
    nbits = n * len(names)
    required = 1 << nbits
    budget = default_budget() if budget is None else budget
    if required > budget:
        raise BudgetExceeded(required, budget)
    rel = np.zeros((n, n), dtype=np.float32)
    for i, s in enumerate(F.succ):
        for j in _bits(s):
            rel[i, j] = 1.0
    rel_t = np.ascontiguousarray(rel.T)
    target_idx = np.array(list(_bits(targets)), dtype=np.int64)
    chunk = min(required, _CHUNK)
    for start in range(0, required, chunk):
        idx = np.arange(start, min(start + chunk, required), dtype=np.int64)
        assign = {}
        for vi, name in enumerate(names):
            shifts = np.array([nbits - 1 - (vi * n + j) for j in range(n)], dtype=np.int64)
            assign[name] = ((idx[:, None] >> shifts[None, :]) & 1).astype(bool)
        truth = _batch_eval(phi, assign, rel_t, len(idx), n)[:, target_idx]
        bad = ~truth.all(axis=1)
        if bad.any():
            row = int(np.argmax(bad))
            col = int(np.argmax(~truth[row]))
            point = F.points[int(target_idx[col])]
            valuation = {name: frozenset(F.points[j] for j in range(n) if assign[name][row, j])
                         for name in names}
            return ValidityResult(False, valuation, point, start + row + 1, "enumerate", tuple(names))
    return ValidityResult(True, checked=required, strategy="enumerate", variables=tuple(names))


def _tv_eval(F: Frame, phi: Formula, nodes: list, known_t: dict, known_f: dict) -> tuple[int, int]:
    """Three-valued evaluation; returns (definitely true, definitely false) masks."""
    full = F.full_mask
    succ = F.succ
    val: dict[Formula, tuple[int, int]] = {}
    for node in nodes:
        if isinstance(node, Var):
            v = (known_t.get(node.name, 0), known_f.get(node.name, full))
        elif isinstance(node, Bottom):
            v = (0, full)
        elif isinstance(node, Not):
            t, f = val[node.arg]
            v = (f, t)
        elif isinstance(node, And):
            t, f = full, 0
            for a in node.args:
                at, af = val[a]
                t &= at
                f |= af
            v = (t, f)
        elif isinstance(node, Or):
            t, f = 0, full
            for a in node.args:
                at, af = val[a]
                t |= at
                f &= af
            v = (t, f)
        elif isinstance(node, Implies):
            lt, lf = val[node.left]
            rt, rf = val[node.right]
            v = (lf | rt, lt & rf)
        elif isinstance(node, Box):
            at, af = val[node.arg]
            t = f = 0
            for w, s in enumerate(succ):
                if not s & ~at:
                    t |= 1 << w
                if s & af:
                    f |= 1 << w
            v = (t, f)
        elif isinstance(node, Diamond):
            at, af = val[node.arg]
            t = f = 0
            for w, s in enumerate(succ):
                if s & at:
                    t |= 1 << w
                if not s & ~af:
                    f |= 1 << w
            v = (t, f)
        else:
            raise TypeError(f"unknown formula node {node!r}")
        val[node] = v
    return val[phi]


def _search(F: Frame, phi: Formula, targets: int, budget: int | None) -> ValidityResult:
    """Depth-first search over partial valuations with three-valued pruning.

    Bits are assigned point by point, points of lower rank first (their
    modal subformulas settle earliest), variables in natural order, value
    0 before 1.  The first countermodel in this order is returned; its
    unassigned bits are left empty.
    """
    names = variables(phi)
    budget = DEFAULT_SEARCH_BUDGET if budget is None else budget
    nodes = subformulas(phi)
    order = sorted(range(len(F)), key=lambda i: (F.ranks[i], i))
    slots = [(name, i) for i in order for name in names]
    full = F.full_mask
    known_t = {name: 0 for name in names}
    known_f = {name: 0 for name in names}
    count = 0

    def status() -> int:
        # 1: settled true at every target, -1: settled false somewhere, 0: open
        t, f = _tv_eval(F, phi, nodes, known_t, known_f)
        if f & targets:
            return -1
        if targets & ~t == 0:
            return 1
        return 0

    def dfs(k: int):
        nonlocal count
        count += 1
        if count > budget:
            raise BudgetExceeded(count, budget, what="valuation search")
        st = status()
        if st == 1:
            return None
        if st == -1 or k == len(slots):
            return st == -1 or None
        name, i = slots[k]
        bit = 1 << i
        for value in (0, 1):
            if value:
                known_t[name] |= bit
            else:
                known_f[name] |= bit
            found = dfs(k + 1)
            if found:
                return True
            if value:
                known_t[name] &= ~bit
            else:
                known_f[name] &= ~bit
        return None

    if dfs(0):
        t, f = _tv_eval(F, phi, nodes, known_t, {n: full & ~known_t[n] for n in names})
        point = F.points[next(_bits(f & targets))]
        valuation = {name: frozenset(F.points_of(known_t[name])) for name in names}
        return ValidityResult(False, valuation, point, count, "search", tuple(names))
    return ValidityResult(True, checked=count, strategy="search", variables=tuple(names))


def _run(F: Frame, phi: Formula, targets: int, budget, strategy: str) -> ValidityResult:
    if strategy == "enumerate":
        return _enumerate(F, phi, targets, budget)
    if strategy == "search":
        return _search(F, phi, targets, budget)
    raise ValueError(f"unknown strategy {strategy!r}")


def frame_valid(F: Frame, phi: Formula, budget: int | None = None,
                strategy: str = "enumerate") -> ValidityResult:
    """Is ``phi`` true at every point under every valuation?

    ``budget`` bounds the number of valuations (enumerate) or search nodes
    (search); :class:`BudgetExceeded` is raised rather than guessing.
    """
    return _run(F, phi, F.full_mask, budget, strategy)


def point_valid(F: Frame, w, phi: Formula, budget: int | None = None,
                strategy: str = "enumerate") -> ValidityResult:
    """Is ``phi`` true at ``w`` under every valuation?

    Truth at ``w`` depends only on the subframe generated by ``w``, so the
    valuations range over that subframe.  Countermodel points refer to ``F``.
    """
    from .frame import generated_subframe

    G = generated_subframe(F, [w])
    return _run(G, phi, 1 << G.index(w), budget, strategy)


def satisfiable_at(F: Frame, w, phi: Formula, budget: int | None = None,
                   strategy: str = "enumerate") -> dict | None:
    """A valuation making ``phi`` true at ``w``, or None if there is none."""
    res = point_valid(F, w, Not(phi), budget, strategy)
    if res.valid:
        return None
    return res.valuation


def check_valuation(F: Frame, V: Valuation) -> None:
    for name, pts in V.items():
        for x in pts:
            if x not in F:
                raise FrameError(f"valuation of {name!r} mentions unknown point {x!r}")
