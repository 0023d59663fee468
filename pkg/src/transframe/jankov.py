"""Frame formulas (Jankov-Fine formulas) of finite rooted transitive frames."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotRooted, OrderingMismatch
from .formula import Box, Diamond, Formula, Implies, Not, conj, disj, p
from .frame import Frame


@dataclass(frozen=True)
class FrameFormulaSpec:
    """A frame together with an ordering of its points whose head is a root.

    Variable ``p_i`` names the ``i``-th point of the ordering.
    """

    frame: Frame
    ordering: tuple

    def __post_init__(self):
        object.__setattr__(self, "ordering", tuple(self.ordering))
        pts = self.frame.points
        if len(self.ordering) != len(pts) or set(self.ordering) != set(pts):
            raise OrderingMismatch("ordering must list every point exactly once")
        if self.ordering[0] not in self.frame.roots:
            raise NotRooted(f"first point {self.ordering[0]!r} of the ordering is not a root")


def canonical_ordering(F: Frame) -> tuple:
    """Least root first, then the remaining points in frame order."""
    if not F.roots:
        raise NotRooted("frame has no root")
    root = F.roots[0]
    return (root,) + tuple(x for x in F.points if x != root)


def canonical_spec(F: Frame) -> FrameFormulaSpec:
    return FrameFormulaSpec(F, canonical_ordering(F))


def _both(phi: Formula) -> tuple:
    return (phi, Box(phi))


def frame_formula(spec: FrameFormulaSpec | Frame) -> Formula:
    """Flat conjunction of the five groups: ``p0``; ``[](p0 | ... | pn)``;
    pairwise exclusion; ``<>`` for every related pair; ``~<>`` for every
    unrelated pair.  Each of the last three groups contributes ``χ & []χ``.
    """
    if isinstance(spec, Frame):
        spec = canonical_spec(spec)
    F, order = spec.frame, spec.ordering
    n = len(order)
    conjuncts = [p(0), Box(disj(*(p(i) for i in range(n))))]
    for i in range(n):
        for j in range(n):
            if i != j:
                conjuncts.extend(_both(Implies(p(i), Not(p(j)))))
    related = [(i, j) for i in range(n) for j in range(n) if F.sees(order[i], order[j])]
    unrelated = [(i, j) for i in range(n) for j in range(n) if not F.sees(order[i], order[j])]
    for i, j in related:
        conjuncts.extend(_both(Implies(p(i), Diamond(p(j)))))
    for i, j in unrelated:
        conjuncts.extend(_both(Implies(p(i), Not(Diamond(p(j))))))
    return conj(*conjuncts)


def canonical_valuation(spec: FrameFormulaSpec) -> dict:
    """``p_i`` true exactly at the ``i``-th point of the ordering."""
    return {f"p{i}": frozenset([w]) for i, w in enumerate(spec.ordering)}
