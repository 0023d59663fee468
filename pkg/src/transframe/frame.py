"""Finite transitive frames and their structural analysis.

A :class:`Frame` stores its relation as one successor bitmask per point
(bit ``j`` of ``succ[i]`` is set iff point ``i`` sees point ``j``).  The
point order given at construction is kept and used for every
deterministic tie-break in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Hashable, Iterable, Sequence

from .errors import (
    DanglingEdge,
    DuplicatePoint,
    EmptyGenerator,
    FrameError,
    NonTransitive,
    NotRooted,
    UnknownPoint,
)

PointId = Hashable


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Frame:
    """A finite set of points with a transitive relation.

    Frames are immutable; analyses such as the skeleton and point ranks
    are computed lazily and cached on the instance.
    """

    def __init__(self, points: Sequence[PointId], edges: Iterable[tuple[PointId, PointId]]):
        pts = tuple(points)
        if not pts:
            raise FrameError("a frame needs at least one point")
        index: dict[PointId, int] = {}
        for p in pts:
            if p in index:
                raise DuplicatePoint(p)
            index[p] = len(index)
        succ = [0] * len(pts)
        for edge in edges:
            u, v = edge
            if u not in index or v not in index:
                raise DanglingEdge(edge)
            succ[index[u]] |= 1 << index[v]
        for i, s in enumerate(succ):
            for j in _bits(s):
                missing = succ[j] & ~s
                if missing:
                    k = (missing & -missing).bit_length() - 1
                    raise NonTransitive((pts[i], pts[j], pts[k]))
        self._points = pts
        self._index = index
        self._succ = tuple(succ)

    @classmethod
    def _from_masks(cls, points: tuple, succ: Sequence[int]) -> "Frame":
        # Trusted constructor: caller guarantees transitivity.
        f = cls.__new__(cls)
        f._points = points
        f._index = {p: i for i, p in enumerate(points)}
        f._succ = tuple(succ)
        return f

    # -- basic accessors -------------------------------------------------

    @property
    def points(self) -> tuple:
        return self._points

    @property
    def succ(self) -> tuple[int, ...]:
        return self._succ

    @cached_property
    def pred(self) -> tuple[int, ...]:
        pred = [0] * len(self._points)
        for i, s in enumerate(self._succ):
            for j in _bits(s):
                pred[j] |= 1 << i
        return tuple(pred)

    @cached_property
    def relation(self) -> frozenset:
        pts = self._points
        return frozenset((pts[i], pts[j]) for i, s in enumerate(self._succ) for j in _bits(s))

    @property
    def full_mask(self) -> int:
        return (1 << len(self._points)) - 1

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self):
        return iter(self._points)

    def __contains__(self, point) -> bool:
        return point in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Frame):
            return NotImplemented
        return self._points == other._points and self._succ == other._succ

    def __hash__(self) -> int:
        return hash((self._points, self._succ))

    def __repr__(self) -> str:
        edges = sorted(self.edges(), key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return f"Frame(points={list(self._points)!r}, edges={edges!r})"

    def __getstate__(self):
        return {"_points": self._points, "_succ": self._succ}

    def __setstate__(self, state):
        self._points = state["_points"]
        self._succ = state["_succ"]
        self._index = {p: i for i, p in enumerate(self._points)}

    def index(self, point) -> int:
        try:
            return self._index[point]
        except (KeyError, TypeError):
            raise UnknownPoint(point) from None

    def mask(self, points: Iterable) -> int:
        m = 0
        for p in points:
            m |= 1 << self.index(p)
        return m

    def points_of(self, mask: int) -> tuple:
        """Points in ``mask``, in frame order."""
        return tuple(self._points[i] for i in _bits(mask))

    def edges(self) -> list[tuple]:
        pts = self._points
        return [(pts[i], pts[j]) for i, s in enumerate(self._succ) for j in _bits(s)]

    def sees(self, u, v) -> bool:
        return bool(self._succ[self.index(u)] >> self.index(v) & 1)

    def is_reflexive(self, w) -> bool:
        i = self.index(w)
        return bool(self._succ[i] >> i & 1)

    @cached_property
    def reflexive_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self._succ) if s >> i & 1)

    # -- cached analyses -------------------------------------------------

    @cached_property
    def skeleton(self) -> "Skeleton":
        return _build_skeleton(self)

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        sk = self.skeleton
        return tuple(sk.ranks[sk.cluster_of[i]] for i in range(len(self._points)))

    @cached_property
    def roots(self) -> tuple:
        full = self.full_mask
        return tuple(p for i, p in enumerate(self._points) if (self._succ[i] | 1 << i) == full)


def transitive_closure(n: int, succ: Sequence[int]) -> list[int]:
    """Warshall's algorithm over successor bitmasks."""
    out = list(succ)
    for k in range(n):
        bit = 1 << k
        sk = out[k]
        for i in range(n):
            if out[i] & bit:
                out[i] |= sk
    return out


def build_frame(points: Sequence[PointId], edges: Iterable[tuple[PointId, PointId]] = (),
                auto_close: bool = False) -> Frame:
    """Build a frame, optionally closing ``edges`` under transitivity.

    With ``auto_close`` off the edges must already be transitive, otherwise
    :class:`NonTransitive` reports the first violating triple.
    """
    if not auto_close:
        return Frame(points, edges)
    pts = tuple(points)
    # validate ids and endpoints through the checked constructor
    base = Frame(pts, ())
    succ = [0] * len(pts)
    for edge in edges:
        u, v = edge
        if u not in base or v not in base:
            raise DanglingEdge(edge)
        succ[base.index(u)] |= 1 << base.index(v)
    return Frame._from_masks(pts, transitive_closure(len(pts), succ))


# -- up/down sets ------------------------------------------------------

def _check_subset(F: Frame, X) -> int:
    return F.mask(X)


def upset_mask(F: Frame, mask: int) -> int:
    out = 0
    for i in _bits(mask):
        out |= F.succ[i]
    return out


def downset_mask(F: Frame, mask: int) -> int:
    out = 0
    pred = F.pred
    for i in _bits(mask):
        out |= pred[i]
    return out


def upset(F: Frame, X) -> frozenset:
    """``{v : Ruv for some u in X}``."""
    return frozenset(F.points_of(upset_mask(F, _check_subset(F, X))))


def downset(F: Frame, X) -> frozenset:
    return frozenset(F.points_of(downset_mask(F, _check_subset(F, X))))


def upset_strict(F: Frame, X) -> frozenset:
    m = _check_subset(F, X)
    return frozenset(F.points_of(upset_mask(F, m) & ~m))


def downset_strict(F: Frame, X) -> frozenset:
    m = _check_subset(F, X)
    return frozenset(F.points_of(downset_mask(F, m) & ~m))


def restrict_mask(F: Frame, mask: int) -> Frame:
    """Restriction of ``F`` to the points in ``mask`` (frame order kept)."""
    if not mask:
        raise EmptyGenerator("cannot restrict a frame to the empty set")
    idx = list(_bits(mask))
    new = {old: k for k, old in enumerate(idx)}
    succ = []
    for old in idx:
        s = 0
        for j in _bits(F.succ[old] & mask):
            s |= 1 << new[j]
        succ.append(s)
    return Frame._from_masks(tuple(F.points[i] for i in idx), succ)


def restrict(F: Frame, X) -> Frame:
    return restrict_mask(F, _check_subset(F, X))


def generated_subframe(F: Frame, X) -> Frame:
    """The subframe generated by ``X``: ``X`` together with everything it sees."""
    if isinstance(X, (str, int)) and X in F:
        X = (X,)
    m = _check_subset(F, X)
    if not m:
        raise EmptyGenerator("generator set is empty")
    return restrict_mask(F, m | upset_mask(F, m))


# -- clusters and skeleton ----------------------------------------------

@dataclass(frozen=True)
class Cluster:
    members: tuple
    degenerate: bool

    def __len__(self) -> int:
        return len(self.members)

    @property
    def label(self) -> int:
        """Cluster size, or 0 when degenerate."""
        return 0 if self.degenerate else len(self.members)


@dataclass(frozen=True, eq=False)
class Skeleton:
    """Quotient of a frame by mutual reachability.

    ``order`` holds pairs ``(i, j)`` of distinct cluster indices with
    cluster ``i`` seeing cluster ``j``; it is a strict partial order.
    Clusters are listed by their first member in frame order.
    """

    clusters: tuple
    order: frozenset
    cluster_of: tuple  # point index -> cluster index
    succ: tuple  # cluster index -> bitmask of strictly higher clusters
    ranks: tuple  # cluster index -> rank

    def __len__(self) -> int:
        return len(self.clusters)

    def cluster_containing(self, F: Frame, w) -> Cluster:
        return self.clusters[self.cluster_of[F.index(w)]]

    @cached_property
    def pred(self) -> tuple:
        pred = [0] * len(self.clusters)
        for c, s in enumerate(self.succ):
            for d in _bits(s):
                pred[d] |= 1 << c
        return tuple(pred)

    def reflexive_order(self) -> frozenset:
        return self.order | {(c, c) for c in range(len(self.clusters))}

    def inverse_order(self) -> frozenset:
        return frozenset((d, c) for c, d in self.reflexive_order())


def _build_skeleton(F: Frame) -> Skeleton:
    n = len(F)
    succ = F.succ
    cluster_of = [-1] * n
    members: list[list[int]] = []
    for i in range(n):
        if cluster_of[i] >= 0:
            continue
        c = len(members)
        group = [i]
        cluster_of[i] = c
        for j in _bits(succ[i]):
            if j != i and cluster_of[j] < 0 and succ[j] >> i & 1:
                cluster_of[j] = c
                group.append(j)
        members.append(sorted(group))
    clusters = []
    for group in members:
        w = group[0]
        degenerate = len(group) == 1 and not succ[w] >> w & 1
        clusters.append(Cluster(tuple(F.points[i] for i in group), degenerate))
    csucc = []
    for c, group in enumerate(members):
        s = 0
        for j in _bits(succ[group[0]]):
            d = cluster_of[j]
            if d != c:
                s |= 1 << d
        csucc.append(s)
    order = frozenset((c, d) for c, s in enumerate(csucc) for d in _bits(s))

    ranks = [0] * len(members)

    def rank(c: int) -> int:
        if ranks[c]:
            return ranks[c]
        r = 1 + max((rank(d) for d in _bits(csucc[c])), default=0)
        ranks[c] = r
        return r

    # iterate from clusters with the fewest successors so recursion stays shallow
    for c in sorted(range(len(members)), key=lambda c: popcount(csucc[c])):
        rank(c)
    return Skeleton(tuple(clusters), order, tuple(cluster_of), tuple(csucc), tuple(ranks))


def clusters(F: Frame) -> Skeleton:
    return F.skeleton


def rank_of_point(F: Frame, w) -> int:
    """Number of points on the longest strict-successor chain starting at ``w``."""
    return F.ranks[F.index(w)]


def rank_of_frame(F: Frame) -> int:
    return max(F.ranks)


def longest_chain(F: Frame, w=None) -> tuple:
    """A strict chain of maximal length, starting at ``w`` (or at the first
    point of maximal rank)."""
    sk = F.skeleton
    if w is None:
        i = max(range(len(F)), key=lambda i: (F.ranks[i], -i))
    else:
        i = F.index(w)
    c = sk.cluster_of[i]
    chain = [F.points[i]]
    while sk.succ[c]:
        c = next(d for d in sorted(_bits(sk.succ[c])) if sk.ranks[d] == sk.ranks[c] - 1)
        chain.append(sk.clusters[c].members[0])
    return tuple(chain)


# -- antichains --------------------------------------------------------

@dataclass(frozen=True)
class AntichainWitness:
    points: tuple
    irreflexive_only: bool = False

    def __len__(self) -> int:
        return len(self.points)


def _max_independent(comp: Sequence[int], candidates: int) -> list[int]:
    """Lexicographically least maximum set of pairwise non-adjacent indices.

    Include-first depth-first search visits equal-size sets in
    lexicographic order, so the first strictly-better leaf wins ties.
    """
    best: list[int] = []

    def dfs(chosen: list[int], cand: int) -> None:
        nonlocal best
        if len(chosen) + popcount(cand) <= len(best):
            return
        if not cand:
            best = list(chosen)
            return
        low = cand & -cand
        i = low.bit_length() - 1
        rest = cand ^ low
        chosen.append(i)
        dfs(chosen, rest & ~comp[i])
        chosen.pop()
        dfs(chosen, rest)

    dfs([], candidates)
    return best


def _max_antichain_mask(F: Frame, within: int, irreflexive_only: bool) -> int:
    comp = [F.succ[i] | F.pred[i] for i in range(len(F))]
    cand = within & ~F.reflexive_mask if irreflexive_only else within
    best = _max_independent(comp, cand)
    return sum(1 << i for i in best)


def max_antichain(F: Frame, irreflexive_only: bool = False) -> AntichainWitness:
    """A maximum antichain (optionally of irreflexive points only).

    Exact branch and bound over the comparability graph; ties go to the
    lexicographically least set of point positions.
    """
    m = _max_antichain_mask(F, F.full_mask, irreflexive_only)
    return AntichainWitness(F.points_of(m), irreflexive_only)


def width(F: Frame) -> int:
    return len(max_antichain(F))


# -- frame-condition deciders -------------------------------------------

@dataclass(frozen=True)
class Verdict:
    """Outcome of a structural check; ``witness`` certifies a failure."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


def _require_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"bound must be at least 1, got {n}")


def check_rank_at_most(F: Frame, n: int) -> Verdict:
    _require_n(n)
    if rank_of_frame(F) <= n:
        return Verdict(True)
    return Verdict(False, longest_chain(F)[: n + 1])


def check_width_at_most(F: Frame, n: int) -> Verdict:
    """Width bound; defined here for rooted frames only."""
    _require_n(n)
    if not F.roots:
        raise NotRooted("width check requires a rooted frame")
    w = max_antichain(F)
    if len(w) <= n:
        return Verdict(True)
    return Verdict(False, w)


def check_weak_width_at_most(F: Frame, w, n: int) -> Verdict:
    """Every subframe generated by a proper successor of ``w`` has width <= n.

    On failure the witness is ``(u, antichain)``.
    """
    _require_n(n)
    i = F.index(w)
    proper = F.succ[i] & ~F.pred[i]
    sk = F.skeleton
    seen_clusters = set()
    for u in _bits(proper):
        c = sk.cluster_of[u]
        if c in seen_clusters:
            continue
        seen_clusters.add(c)
        gen = F.succ[u] | 1 << u
        m = _max_antichain_mask(F, gen, False)
        if popcount(m) > n:
            return Verdict(False, (F.points[u], AntichainWitness(F.points_of(m))))
    return Verdict(True)


def check_irr_antichain_at_most(F: Frame, w, n: int) -> Verdict:
    """Every irreflexive antichain inside the subframe generated by ``w`` has size <= n."""
    _require_n(n)
    i = F.index(w)
    m = _max_antichain_mask(F, F.succ[i] | 1 << i, True)
    if popcount(m) <= n:
        return Verdict(True)
    return Verdict(False, AntichainWitness(F.points_of(m), True))


def weak_width_at(F: Frame, w) -> int:
    """Largest width of a subframe generated by a proper successor of ``w`` (0 if none)."""
    i = F.index(w)
    proper = F.succ[i] & ~F.pred[i]
    best = 0
    for u in _bits(proper):
        best = max(best, popcount(_max_antichain_mask(F, F.succ[u] | 1 << u, False)))
    return best


def irr_antichain_max(F: Frame) -> int:
    return popcount(_max_antichain_mask(F, F.full_mask, True))


def is_rooted(F: Frame) -> list:
    """All points that see every other point; empty when unrooted."""
    return list(F.roots)


def disjoint_union(frames: Sequence[Frame]) -> Frame:
    """Disjoint union; point ``p`` of ``frames[i]`` becomes ``"i:p"``."""
    if not frames:
        raise FrameError("disjoint union of an empty list")
    points = []
    succ = []
    offset = 0
    for k, G in enumerate(frames):
        points.extend(f"{k}:{p}" for p in G.points)
        succ.extend(s << offset for s in G.succ)
        offset += len(G)
    return Frame._from_masks(tuple(points), succ)
