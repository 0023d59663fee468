"""Reductions (p-morphisms onto) between finite transitive frames.

A map ``f`` from ``F`` onto ``G`` is a reduction when it is surjective and

* forth: ``Rwu`` implies ``S f(w) f(u)``;
* back: ``S f(w) v`` implies ``v = f(u)`` for some ``u`` with ``Rwu``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import BudgetExceeded
from .frame import Frame, Verdict, _bits, generated_subframe

DEFAULT_SEARCH_BUDGET = 10 ** 8


def default_search_budget() -> int:
    env = os.environ.get("TRANSFRAME_BUDGET")
    return int(env) if env else DEFAULT_SEARCH_BUDGET


@dataclass(frozen=True, eq=False)
class ReductionMap:
    source: Frame
    target: Frame
    mapping: Mapping

    def __call__(self, w):
        return self.mapping[w]

    def to_json(self) -> dict:
        return {"map": {str(k): str(v) for k, v in self.mapping.items()}}


def is_reduction(m: ReductionMap) -> Verdict:
    """Check totality, surjectivity, forth and back in that order.

    The witness of a failure is a tuple naming the condition and the
    points involved, e.g. ``("back", w, v)``.
    """
    F, G, f = m.source, m.target, m.mapping
    for w in F.points:
        if w not in f:
            return Verdict(False, ("total", w))
        if f[w] not in G:
            return Verdict(False, ("codomain", w))
    image = {f[w] for w in F.points}
    for v in G.points:
        if v not in image:
            return Verdict(False, ("surjective", v))
    for w, u in F.edges():
        if not G.sees(f[w], f[u]):
            return Verdict(False, ("forth", w, u))
    for w in F.points:
        reached = {f[u] for u in F.points_of(F.succ[F.index(w)])}
        for v in G.points_of(G.succ[G.index(f[w])]):
            if v not in reached:
                return Verdict(False, ("back", w, v))
    return Verdict(True)


def compose(f: ReductionMap, g: ReductionMap) -> ReductionMap:
    """``g`` after ``f``."""
    return ReductionMap(f.source, g.target, {w: g.mapping[f.mapping[w]] for w in f.source.points})


def identity(F: Frame) -> ReductionMap:
    return ReductionMap(F, F, {w: w for w in F.points})


class _Search:
    """Backtracking with forward checking over per-point target domains.

    Domains start from the necessary conditions a reduction imposes
    pointwise: rank never increases, dead-ends map exactly to dead-ends,
    reflexive points map to reflexive points.  Assigning ``w -> x``
    narrows the domains of ``w``'s successors to ``x``'s successors and of
    its predecessors to ``x``'s predecessors.  A branch is cut when some
    domain empties, when the domains can no longer cover the target, or
    when some point's possible successor images cannot cover the
    successors of any image it may still take (the back condition).
    """

    def __init__(self, source: Frame, target: Frame, budget: int):
        self.F, self.G = source, target
        self.budget = budget
        self.nodes = 0
        n = len(source)
        s_rank, t_rank = source.ranks, target.ranks
        self.full = target.full_mask
        domains = []
        for w in range(n):
            dead = source.succ[w] == 0
            refl = bool(source.succ[w] >> w & 1)
            d = 0
            for x in range(len(target)):
                if t_rank[x] > s_rank[w]:
                    continue
                if (target.succ[x] == 0) != dead:
                    continue
                if refl and not target.succ[x] >> x & 1:
                    continue
                d |= 1 << x
            domains.append(d)
        self.domains = domains
        self.order = sorted(range(n), key=lambda w: (-s_rank[w], w))

    def _prune(self, dom: list) -> bool:
        F, G = self.F, self.G
        union = 0
        for d in dom:
            if not d:
                return False
            union |= d
        if union != self.full:
            return False
        changed = True
        while changed:
            changed = False
            for w, d in enumerate(dom):
                reach = 0
                for u in _bits(F.succ[w]):
                    reach |= dom[u]
                keep = 0
                for x in _bits(d):
                    if not G.succ[x] & ~reach:
                        keep |= 1 << x
                if keep != d:
                    if not keep:
                        return False
                    dom[w] = keep
                    changed = True
        return True

    def run(self):
        dom = list(self.domains)
        if not self._prune(dom):
            return None
        return self._dfs(0, dom)

    def _dfs(self, k: int, dom: list):
        F, G = self.F, self.G
        if k == len(self.order):
            return {F.points[w]: G.points[(d & -d).bit_length() - 1] for w, d in enumerate(dom)}
        w = self.order[k]
        for x in _bits(dom[w]):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(self.nodes, self.budget, what="reduction search")
            nd = list(dom)
            nd[w] = 1 << x
            for u in _bits(F.succ[w]):
                if u != w:
                    nd[u] &= G.succ[x]
            for u in _bits(F.pred[w]):
                if u != w:
                    nd[u] &= G.pred[x]
            if not self._prune(nd):
                continue
            found = self._dfs(k + 1, nd)
            if found is not None:
                return found
        return None


def find_reduction(source: Frame, target: Frame, budget: int | None = None) -> ReductionMap | None:
    """A reduction of ``source`` onto ``target`` or None.

    Deterministic: source points are tried by decreasing rank, targets in
    frame order.  Exceeding ``budget`` node expansions raises
    :class:`BudgetExceeded`; that is never reported as "no reduction".
    """
    if len(target) > len(source):
        return None
    budget = default_search_budget() if budget is None else budget
    found = _Search(source, target, budget).run()
    if found is None:
        return None
    m = ReductionMap(source, target, found)
    assert is_reduction(m), "search produced a non-reduction"
    return m


# -- reducibility between sequences of frames ----------------------------

@dataclass(frozen=True)
class MatrixEntry:
    """Whether some point-generated subframe of frame ``j`` reduces to frame ``i``.

    ``verdict`` is ``"yes"``, ``"no"`` or ``"budget"``.
    """

    verdict: str
    generator: object = None
    reduction: ReductionMap | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.reduction is not None:
            out["generator"] = str(self.generator)
            out.update(self.reduction.to_json())
        return out


def generators(G: Frame) -> list:
    """One generating point per cluster (the generated subframes coincide)."""
    sk = G.skeleton
    return [c.members[0] for c in sk.clusters]


def generated_reducibility(G: Frame, F: Frame, budget: int | None = None) -> MatrixEntry:
    """Search the point-generated subframes of ``G`` for one reducible to ``F``."""
    over_budget = False
    for u in generators(G):
        i = G.index(u)
        if bin(G.succ[i] | 1 << i).count("1") < len(F):
            continue
        sub = generated_subframe(G, [u])
        try:
            m = find_reduction(sub, F, budget)
        except BudgetExceeded:
            over_budget = True
            continue
        if m is not None:
            return MatrixEntry("yes", u, m)
    return MatrixEntry("budget" if over_budget else "no")


def _entry_task(args):
    G, F, budget = args
    return generated_reducibility(G, F, budget)


def reducibility_matrix(frames: Sequence[Frame], budget: int | None = None,
                        jobs: int = 1, pairs=None) -> list[list[MatrixEntry | None]]:
    """``matrix[i][j]``: is some point-generated subframe of ``frames[j]``
    reducible to ``frames[i]``?  ``pairs`` restricts which entries are
    computed (others stay None)."""
    if not frames:
        raise ValueError("reducibility_matrix needs at least one frame")
    k = len(frames)
    todo = list(pairs) if pairs is not None else [(i, j) for i in range(k) for j in range(k)]
    tasks = [(frames[j], frames[i], budget) for i, j in todo]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_entry_task, tasks))
    else:
        results = [_entry_task(t) for t in tasks]
    matrix: list[list[MatrixEntry | None]] = [[None] * k for _ in range(k)]
    for (i, j), r in zip(todo, results):
        matrix[i][j] = r
    return matrix


@dataclass(frozen=True)
class AuditWitness:
    i: int
    j: int
    generator: object
    reduction: ReductionMap

    def to_json(self) -> dict:
        out = {"i": self.i, "j": self.j, "generator": str(self.generator)}
        out.update(self.reduction.to_json())
        return out

    def replay(self, frames: Sequence[Frame]) -> bool:
        sub = generated_subframe(frames[self.j], [self.generator])
        m = ReductionMap(sub, frames[self.i], dict(self.reduction.mapping))
        return bool(is_reduction(m))


@dataclass(frozen=True)
class SequenceAudit:
    frames: tuple
    mode: str
    verdict: str  # "pass", "fail" or "unknown"
    witness: AuditWitness | None = None
    inconclusive: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "verdict": self.verdict,
            "frames": len(self.frames),
            "witness": self.witness.to_json() if self.witness else None,
            "inconclusive": [list(p) for p in self.inconclusive],
        }


def audit_sequence(frames: Sequence[Frame], mode: str = "backward",
                   budget: int | None = None, jobs: int = 1) -> SequenceAudit:
    """Check a finite prefix for (backward) irreducibility.

    ``backward`` inspects pairs ``i < j``, ``full`` all pairs ``i != j``:
    no point-generated subframe of ``frames[j]`` may reduce to ``frames[i]``.
    """
    if mode not in ("backward", "full"):
        raise ValueError(f"mode must be 'backward' or 'full', not {mode!r}")
    if not frames:
        raise ValueError("audit needs at least one frame")
    k = len(frames)
    pairs = [(i, j) for j in range(k) for i in range(k)
             if (i < j if mode == "backward" else i != j)]
    matrix = reducibility_matrix(frames, budget, jobs, pairs)
    inconclusive = []
    for i, j in pairs:
        e = matrix[i][j]
        if e.verdict == "yes":
            return SequenceAudit(tuple(frames), mode, "fail", AuditWitness(i, j, e.generator, e.reduction))
        if e.verdict == "budget":
            inconclusive.append((i, j))
    verdict = "unknown" if inconclusive else "pass"
    return SequenceAudit(tuple(frames), mode, verdict, None, tuple(inconclusive))


def crosscheck_frame_formula(F: Frame, G: Frame, u, budget: int | None = None) -> tuple[bool, bool]:
    """Decide both sides of the frame-formula duality independently.

    Returns ``(satisfiable, reducible)``: whether the canonical frame
    formula of ``F`` is satisfiable at ``u`` in ``G`` (by valuation
    enumeration), and whether ``G`` generated by ``u`` reduces to ``F``
    (by search).
    """
    from .jankov import frame_formula
    from .semantics import satisfiable_at

    phi = frame_formula(F)
    sat = satisfiable_at(G, u, phi, budget) is not None
    red = find_reduction(generated_subframe(G, [u]), F) is not None
    return sat, red
