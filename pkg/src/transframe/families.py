"""Witness frames and frame corpora.

* :func:`make_H` builds the rank-3 strict partial orders ``H_n``: a root
  ``a`` seeing every two-element subset ``b{i,j}`` of ``{c0..c(n+1)}`` and
  every ``c``; each ``b`` sees its two members.
* :func:`generate_corpus` samples constrained random frames.
* :func:`enumerate_frames` lists all transitive frames up to isomorphism.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import BudgetExceeded, RejectionBudgetExceeded
from .formula import mk_B, mk_Wid_plus
from .frame import (
    Frame, _bits, check_irr_antichain_at_most, check_rank_at_most,
    check_weak_width_at_most, max_antichain, rank_of_frame, transitive_closure,
)

FORMULA_LEVEL_MAX_N = 2


def h_point_names(n: int) -> tuple[list[str], list[str]]:
    cs = [f"c{k}" for k in range(n + 2)]
    bs = [f"b{{{i},{j}}}" for i, j in itertools.combinations(range(n + 2), 2)]
    return bs, cs


def make_H(n: int) -> Frame:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"H_n needs n >= 0, got {n!r}")
    bs, cs = h_point_names(n)
    edges = [("a", u) for u in bs + cs]
    for (i, j), b in zip(itertools.combinations(range(n + 2), 2), bs):
        edges += [(b, f"c{i}"), (b, f"c{j}")]
    return Frame(["a"] + bs + cs, edges)


def h_size(n: int) -> int:
    return 1 + math.comb(n + 2, 2) + (n + 2)


@dataclass
class HReport:
    n: int
    points: int
    strict_partial_order: bool
    rank: int
    b3_valid: bool
    wid2_plus_valid: bool
    wid1_plus_valid: bool
    irr_antichain_max: int
    formula_level: bool
    wid1_plus_witness: object = None
    search_nodes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.strict_partial_order and self.rank == 3 and self.points == h_size(self.n)
                and self.b3_valid and self.wid2_plus_valid and not self.wid1_plus_valid)


def verify_H_properties(n: int, formula_level: bool | None = None, budget: int | None = None) -> HReport:
    """Check the structural facts about ``H_n``.

    With ``formula_level`` (default for ``n <= 2``) validity of ``B_3``,
    ``Wid_2⁺`` and ``Wid_1⁺`` is additionally decided over all valuations
    by pruned search, and must agree with the structural checkers.
    """
    from .semantics import frame_valid

    H = make_H(n)
    spo = all(not H.is_reflexive(w) for w in H.points)
    b3 = bool(check_rank_at_most(H, 3))
    wid2 = all(check_weak_width_at_most(H, w, 2) for w in H.points)
    wid1_checks = [(w, check_weak_width_at_most(H, w, 1)) for w in H.points]
    bad = [(w, v.witness) for w, v in wid1_checks if not v]
    wid1 = not bad
    if formula_level is None:
        formula_level = n <= FORMULA_LEVEL_MAX_N
    nodes = {}
    if formula_level:
        for name, phi, expect in (("B3", mk_B(3), b3), ("Wid2+", mk_Wid_plus(2), wid2),
                                  ("Wid1+", mk_Wid_plus(1), wid1)):
            res = frame_valid(H, phi, budget=budget, strategy="search")
            nodes[name] = res.checked
            if res.valid != expect:
                raise AssertionError(f"H_{n}: {name} structural={expect} but formula-level={res.valid}")
    return HReport(
        n=n, points=len(H), strict_partial_order=spo, rank=rank_of_frame(H),
        b3_valid=b3, wid2_plus_valid=wid2, wid1_plus_valid=wid1,
        irr_antichain_max=len(max_antichain(H, irreflexive_only=True)),
        formula_level=formula_level, wid1_plus_witness=bad[0] if bad else None,
        search_nodes=nodes,
    )


# -- random corpora --------------------------------------------------------

@dataclass(frozen=True)
class CorpusSpec:
    max_points: int
    rank_bound: int | None = None
    require_weak_width_1: bool = False
    require_wid_bullet: int | None = None
    seed: int = 0
    count: int = 1
    rooted: bool = True
    max_attempts: int = 200_000

    def __post_init__(self):
        if self.max_points < 1:
            raise ValueError("max_points must be at least 1")
        if self.count < 0:
            raise ValueError("count must be non-negative")

    @classmethod
    def from_json(cls, data) -> "CorpusSpec":
        if isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown corpus spec fields: {sorted(extra)}")
        return cls(**data)


def random_frame(rng: np.random.Generator, max_points: int, rooted: bool = True) -> Frame:
    """Random partial order of clusters, some inflated into reflexive clusters.

    A skeleton of ``s`` nodes gets DAG edges ``i -> j`` (``i < j``) with a
    density drawn per frame, node 0 sees everything when ``rooted``; each
    node is degenerate with probability 1/2, otherwise a reflexive cluster
    absorbing some of the remaining point budget.
    """
    s = int(rng.integers(1, max_points + 1))
    density = float(rng.random())
    succ = [0] * s
    for i in range(s):
        for j in range(i + 1, s):
            if (rooted and i == 0) or rng.random() < density:
                succ[i] |= 1 << j
    succ = transitive_closure(s, succ)
    degenerate = rng.random(s) < 0.5
    sizes = [1] * s
    spare = max_points - s
    for i in rng.permutation(s):
        if not degenerate[i] and spare > 0:
            extra = int(rng.integers(0, spare + 1))
            sizes[i] += extra
            spare -= extra
    points, owner = [], []
    for i, k in enumerate(sizes):
        for _ in range(k):
            owner.append(i)
            points.append(f"w{len(points)}")
    edges = []
    for x, ox in enumerate(owner):
        for y, oy in enumerate(owner):
            if ox == oy:
                if not degenerate[ox]:
                    edges.append((points[x], points[y]))
            elif succ[ox] >> oy & 1:
                edges.append((points[x], points[y]))
    return Frame(points, edges)


def constraint_log(F: Frame, spec: CorpusSpec) -> dict:
    """Which requested constraints ``F`` satisfies (checked at every point)."""
    log = {}
    if spec.rooted:
        log["rooted"] = bool(F.roots)
    if spec.rank_bound is not None:
        log["rank_bound"] = bool(check_rank_at_most(F, spec.rank_bound))
    if spec.require_weak_width_1:
        log["weak_width_1"] = all(check_weak_width_at_most(F, w, 1) for w in F.points)
    if spec.require_wid_bullet is not None:
        k = spec.require_wid_bullet
        log["wid_bullet"] = all(check_irr_antichain_at_most(F, w, k) for w in F.points)
    return log


def generate_corpus(spec: CorpusSpec, with_log: bool = False):
    """``spec.count`` frames meeting every constraint, deterministic in ``spec.seed``."""
    rng = np.random.default_rng(spec.seed)
    frames, logs = [], []
    attempts = 0
    while len(frames) < spec.count:
        if attempts >= spec.max_attempts:
            raise RejectionBudgetExceeded(attempts, len(frames), spec.count)
        attempts += 1
        F = random_frame(rng, spec.max_points, spec.rooted)
        log = constraint_log(F, spec)
        if all(log.values()):
            frames.append(F)
            logs.append(log)
    return (frames, logs, attempts) if with_log else frames


def write_corpus(spec: CorpusSpec, out_dir) -> Path:
    """Write frame JSON files plus ``manifest.json``; returns the manifest path."""
    from .io import dump_frame

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    frames, logs, attempts = generate_corpus(spec, with_log=True)
    names = []
    for i, F in enumerate(frames):
        name = f"frame_{i:04d}.json"
        (out / name).write_text(dump_frame(F))
        names.append(name)
    manifest = {
        "spec": asdict(spec),
        "seed": spec.seed,
        "attempts": attempts,
        "frames": names,
        "checks": [dict(frame=n, **log) for n, log in zip(names, logs)],
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


# -- exhaustive catalog ------------------------------------------------------

def _is_transitive(n: int, succ) -> bool:
    for i in range(n):
        for j in _bits(succ[i]):
            if succ[j] & ~succ[i]:
                return False
    return True


def _invariant(n: int, succ, pred, i: int):
    return (bool(succ[i] >> i & 1), bin(succ[i]).count("1"), bin(pred[i]).count("1"))


def canonical_form(n: int, succ) -> tuple:
    """Least relabeling of the relation, as a tuple of successor masks.

    Only permutations that respect a cheap vertex invariant are tried, so
    the result is a complete isomorphism invariant.
    """
    pred = [0] * n
    for i in range(n):
        for j in _bits(succ[i]):
            pred[j] |= 1 << i
    inv = [_invariant(n, succ, pred, i) for i in range(n)]
    classes = {}
    for i in range(n):
        classes.setdefault(inv[i], []).append(i)
    keys = sorted(classes)
    best = None
    for combo in itertools.product(*(itertools.permutations(classes[k]) for k in keys)):
        order = [i for group in combo for i in group]
        pos = {old: new for new, old in enumerate(order)}
        code = tuple(sum(1 << pos[j] for j in _bits(succ[old])) for old in order)
        if best is None or code < best:
            best = code
    return (tuple(k for k in keys for _ in classes[k]), best)


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple:
    """Canonical forms of all transitive relations on ``n`` points."""
    if n == 0:
        return ((),)
    out = set()
    for prev in _classes(n - 1):
        succ_prev = list(prev[1]) if prev else []
        m = n - 1
        for refl in (0, 1):
            for S in range(1 << m):
                for P in range(1 << m):
                    succ = [s | (1 << m if P >> i & 1 else 0) for i, s in enumerate(succ_prev)]
                    succ.append(S | (refl << m))
                    if _is_transitive(n, succ):
                        out.add(canonical_form(n, succ))
    return tuple(sorted(out))


def _frame_of(code) -> Frame:
    succ = code[1]
    n = len(succ)
    return Frame._from_masks(tuple(str(i) for i in range(n)), succ)


def enumerate_frames(max_points: int, rooted: bool = False, exact: bool = False) -> list[Frame]:
    """One frame per isomorphism class with at most (or, with ``exact``,
    exactly) ``max_points`` points; points are named ``"0"``, ``"1"``, ..."""
    if max_points > 5:
        raise BudgetExceeded(max_points, 5, what="exhaustive frame enumeration (points)")
    sizes = [max_points] if exact else range(1, max_points + 1)
    out = []
    for n in sizes:
        for code in _classes(n):
            F = _frame_of(code)
            if not rooted or F.roots:
                out.append(F)
    return out
