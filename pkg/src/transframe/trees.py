"""Finite ω-trees, the embedding orders on them, and the tree encodings of frames.

Orders implemented here:

* ``nat_leq``: ``m ≼ n`` iff ``m = n = 0`` or ``0 < m <= n``.
* ``seq_pointwise``: same length, elementwise comparison.
* ``seq_embed``: ``t ≪ s`` for the longer ``t``; last elements related and
  ``s`` embeds pointwise into a subsequence of ``t``.
* ``tree_embed`` (``⊑``): recursive comparison of standard triples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .errors import NotRooted, SkeletonNotTree, WeakWidthViolation
from .frame import Frame, _bits, restrict_mask


def nat_leq(m: int, n: int) -> bool:
    return (m == 0 and n == 0) or 0 < m <= n


def seq_pointwise(cmp: Callable, s: Sequence, t: Sequence) -> bool:
    """``s ⊴ t``."""
    return len(s) == len(t) and all(cmp(a, b) for a, b in zip(s, t))


def _inject_in_order(cmp: Callable, s: Sequence, t: Sequence) -> bool:
    # greedy leftmost matching decides order-preserving injections exactly
    j = 0
    for a in s:
        while j < len(t) and not cmp(a, t[j]):
            j += 1
        if j == len(t):
            return False
        j += 1
    return True


def seq_embed(cmp: Callable, t: Sequence, s: Sequence) -> bool:
    """``t ≪ s``: either both empty, or ``len(t) >= len(s) > 0``, the last
    element of ``s`` relates to the last of ``t``, and ``s ⊴ t'`` for some
    subsequence ``t'`` of ``t``."""
    if not t and not s:
        return True
    if not (len(t) >= len(s) > 0):
        return False
    return cmp(s[-1], t[-1]) and _inject_in_order(cmp, s, t)


# -- trees ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OmegaTree:
    """A finite rooted tree labeled by naturals, stored recursively.

    Child order carries no meaning: equality and hashing go through the
    canonical encoding.
    """

    label: int
    children: tuple = ()

    def __post_init__(self):
        if not isinstance(self.label, int) or self.label < 0:
            raise ValueError(f"tree labels are naturals, got {self.label!r}")
        object.__setattr__(self, "children", tuple(self.children))

    @cached_property
    def encoding(self) -> str:
        """Canonical bracket text ``label(child,...)``."""
        tri = std_triple(self)
        kids = tri.zero_children + tri.pos_children
        if not kids:
            return str(self.label)
        return f"{self.label}(" + ",".join(k.encoding for k in kids) + ")"

    def __eq__(self, other) -> bool:
        return isinstance(other, OmegaTree) and self.encoding == other.encoding

    def __hash__(self) -> int:
        return hash(self.encoding)

    def __repr__(self) -> str:
        return f"OmegaTree({self.encoding!r})"

    def __str__(self) -> str:
        return self.encoding

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def nodes(self) -> list["OmegaTree"]:
        out, stack = [], [self]
        while stack:
            t = stack.pop()
            out.append(t)
            stack.extend(reversed(t.children))
        return out

    def __len__(self) -> int:
        return len(self.nodes())

    @cached_property
    def height(self) -> int:
        """Number of levels (a one-node tree has height 1)."""
        return 1 + max((c.height for c in self.children), default=0)

    def count_label(self, label: int) -> int:
        return sum(1 for t in self.nodes() if t.label == label)

    @property
    def zero_count(self) -> int:
        return self.count_label(0)

    def to_json(self) -> dict:
        tri = std_triple(self)
        return {"label": self.label,
                "children": [c.to_json() for c in tri.zero_children + tri.pos_children]}


def tree_from_json(data) -> OmegaTree:
    if isinstance(data, str):
        data = json.loads(data)
    return OmegaTree(int(data["label"]), tuple(tree_from_json(c) for c in data.get("children", ())))


def tree_from_parents(labels: dict, parent: dict) -> OmegaTree:
    """Build from a node -> label map and a child -> parent map (root absent)."""
    roots = [v for v in labels if v not in parent]
    if len(roots) != 1:
        raise ValueError(f"a tree needs exactly one root, found {len(roots)}")
    kids: dict = {v: [] for v in labels}
    for c, par in parent.items():
        if par not in kids:
            raise ValueError(f"parent {par!r} of {c!r} is not a node")
        kids[par].append(c)

    seen = set()

    def build(v):
        if v in seen:
            raise ValueError(f"cycle through {v!r}")
        seen.add(v)
        return OmegaTree(labels[v], tuple(build(c) for c in kids[v]))

    t = build(roots[0])
    if len(seen) != len(labels):
        raise ValueError("parent map does not connect every node to the root")
    return t


def parse_tree(text: str) -> OmegaTree:
    """Parse bracket text such as ``0(1,2(0))``."""
    pos = 0
    s = text.replace(" ", "")

    def node() -> OmegaTree:
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"expected a label at position {pos + 1} in {text!r}")
        label = int(s[start:pos])
        kids = []
        if pos < len(s) and s[pos] == "(":
            pos += 1
            kids.append(node())
            while pos < len(s) and s[pos] == ",":
                pos += 1
                kids.append(node())
            if pos >= len(s) or s[pos] != ")":
                raise ValueError(f"expected ')' at position {pos + 1} in {text!r}")
            pos += 1
        return OmegaTree(label, tuple(kids))

    t = node()
    if pos != len(s):
        raise ValueError(f"trailing input at position {pos + 1} in {text!r}")
    return t


@dataclass(frozen=True)
class StdTriple:
    """Root label, zero-labeled children, positive-labeled children.

    Within each group children are sorted by (root label, encoding); the
    canonically least positive child of minimal label is moved last.
    """

    root_label: int
    zero_children: tuple
    pos_children: tuple

    def reassemble(self) -> OmegaTree:
        return OmegaTree(self.root_label, self.zero_children + self.pos_children)


def _child_key(t: OmegaTree):
    return (t.label, t.encoding)


def std_triple(t: OmegaTree) -> StdTriple:
    zero = tuple(sorted((c for c in t.children if c.label == 0), key=_child_key))
    pos = sorted((c for c in t.children if c.label > 0), key=_child_key)
    if pos:
        pos = pos[1:] + pos[:1]
    return StdTriple(t.label, zero, tuple(pos))


@dataclass(frozen=True)
class TreeClass:
    """Trees of height at most ``m`` with fewer than ``n`` zero labels."""

    m: int
    n: int

    def __contains__(self, t: OmegaTree) -> bool:
        return t.height <= self.m and t.zero_count < self.n


def _perfect_matching(rows: int, ok) -> bool:
    match: list[int] = [-1] * rows

    def augment(i: int, seen: list) -> bool:
        for j in range(rows):
            if ok(i, j) and not seen[j]:
                seen[j] = True
                if match[j] < 0 or augment(match[j], seen):
                    match[j] = i
                    return True
        return False

    return all(augment(i, [False] * rows) for i in range(rows))


def tree_embed(t: OmegaTree, u: OmegaTree) -> bool:
    """``t ⊑ u``.

    Zero-labeled children must correspond one-to-one (some bijection);
    positive children embed order-preservingly with last mapped to last.
    """
    memo: dict = {}
    keep = []

    def emb(a: OmegaTree, b: OmegaTree) -> bool:
        key = (id(a), id(b))
        if key in memo:
            return memo[key]
        keep.append((a, b))
        memo[key] = r = _emb(a, b)
        return r

    def _emb(a: OmegaTree, b: OmegaTree) -> bool:
        if a.is_leaf:
            return b.is_leaf and nat_leq(a.label, b.label)
        if not nat_leq(a.label, b.label):
            return False
        ta, tb = std_triple(a), std_triple(b)
        za, zb = ta.zero_children, tb.zero_children
        if len(za) != len(zb):
            return False
        pa, pb = ta.pos_children, tb.pos_children
        if not pa:
            if pb:
                return False
        elif len(pb) < len(pa) or not emb(pa[-1], pb[-1]) or not _inject_in_order(emb, pa, pb):
            return False
        return _perfect_matching(len(za), lambda i, j: emb(za[i], zb[j]))

    return emb(t, u)


# -- trees of frames -----------------------------------------------------

def _tree_check(F: Frame, mask: int) -> tuple[dict, int]:
    """Parent map over the clusters inside ``mask`` (a union of clusters).

    Returns ``(parent, final)``; raises :class:`SkeletonNotTree` unless there
    is a unique final cluster and every cluster's strict upset is a chain.
    """
    sk = F.skeleton
    inside = {sk.cluster_of[i] for i in _bits(mask)}
    cmask = sum(1 << c for c in inside)
    finals = sorted(c for c in inside if not sk.succ[c] & cmask)
    if len(finals) != 1:
        raise SkeletonNotTree(
            f"inverse skeleton is disconnected: {len(finals)} final clusters",
            [sk.clusters[c] for c in finals],
        )
    parent = {}
    for c in sorted(inside):
        up = sk.succ[c] & cmask
        if not up:
            continue
        # the strict upset must be a chain: ranks all distinct and comparable
        ups = sorted(_bits(up), key=lambda d: -sk.ranks[d])
        for x, y in zip(ups, ups[1:]):
            if not sk.succ[x] >> y & 1:
                raise SkeletonNotTree(
                    f"cluster of {sk.clusters[c].members[0]!r} sees incomparable clusters",
                    [sk.clusters[c], sk.clusters[x], sk.clusters[y]],
                )
        parent[c] = ups[0]
    return parent, finals[0]


def _tree_of(F: Frame, mask: int) -> OmegaTree:
    sk = F.skeleton
    parent, final = _tree_check(F, mask)
    labels = {c: sk.clusters[c].label for c in {sk.cluster_of[i] for i in _bits(mask)}}
    return tree_from_parents(labels, parent)


def rt(F: Frame) -> OmegaTree:
    """Representation tree: the inverse skeleton labeled by cluster size
    (0 for degenerate clusters), rooted at the final cluster."""
    return _tree_of(F, F.full_mask)


def _initial_cluster(F: Frame) -> int:
    if not F.roots:
        raise NotRooted("frame has no root, so no initial cluster")
    return F.skeleton.cluster_of[F.index(F.roots[0])]


def _components(F: Frame, mask: int) -> list[int]:
    """Weakly connected components of the restriction to ``mask``."""
    comps = []
    left = mask
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            i = frontier.bit_length() - 1
            frontier &= ~(1 << i)
            nb = (F.succ[i] | F.pred[i]) & mask & ~comp
            comp |= nb
            frontier |= nb
        comps.append(comp)
        left &= ~comp
    return comps


def decompose_upset(F: Frame) -> list[Frame]:
    """Components of the part strictly above the initial cluster."""
    return [restrict_mask(F, m) for m in _upset_components(F)]


def _upset_components(F: Frame) -> list[int]:
    c = _initial_cluster(F)
    sk = F.skeleton
    root = F.index(sk.clusters[c].members[0])
    above = F.succ[root] & ~F.pred[root]
    comps = _components(F, above)
    for m in comps:
        try:
            _tree_check(F, m)
        except SkeletonNotTree as e:
            raise WeakWidthViolation(
                f"component above the root is not a tree: {e}", F.points_of(m)
            ) from e
    return comps


def srt(F: Frame) -> OmegaTree:
    """Standard representation tree: the initial cluster over the
    representation trees of the components above it."""
    c = _initial_cluster(F)
    label = F.skeleton.clusters[c].label
    return OmegaTree(label, tuple(_tree_of(F, m) for m in _upset_components(F)))


def degenerate_count(F: Frame) -> int:
    return sum(1 for c in F.skeleton.clusters if c.degenerate)


__all__ = [
    "OmegaTree", "StdTriple", "TreeClass", "nat_leq", "seq_pointwise", "seq_embed",
    "tree_embed", "std_triple", "rt", "srt", "decompose_upset", "parse_tree",
    "tree_from_json", "tree_from_parents", "degenerate_count",
]
