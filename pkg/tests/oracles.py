"""Independent brute-force oracles used by the tests.

Nothing here calls into the search or checker code under test; frames
are only read through their point list and relation.
"""

import itertools

from transframe.formula import BOT, And, Bottom, Box, Diamond, Implies, Not, Or, Var, p
from transframe.frame import Frame, transitive_closure
from transframe.trees import OmegaTree


def relation(F):
    return {(a, b) for a, b in F.edges()}


def random_frame_py(rng, n, density=None):
    density = rng.random() if density is None else density
    succ = [0] * n
    for i in range(n):
        for j in range(n):
            if rng.random() < density * (0.5 if i == j else 1.0):
                succ[i] |= 1 << j
    succ = transitive_closure(n, succ)
    pts = [f"x{i}" for i in range(n)]
    return Frame(pts, [(pts[i], pts[j]) for i in range(n) for j in range(n) if succ[i] >> j & 1])


def brute_force_reductions(S, T, first_only=False):
    """Every map S -> T that is onto, forth and back (plain definitions)."""
    rs, rt_ = relation(S), relation(T)
    s_succ = {w: {u for (v, u) in rs if v == w} for w in S.points}
    t_succ = {x: {y for (v, y) in rt_ if v == x} for x in T.points}
    found = []
    for images in itertools.product(T.points, repeat=len(S)):
        f = dict(zip(S.points, images))
        if set(images) != set(T.points):
            continue
        if any((f[a], f[b]) not in rt_ for a, b in rs):
            continue
        if any(not t_succ[f[w]] <= {f[u] for u in s_succ[w]} for w in S.points):
            continue
        found.append(f)
        if first_only:
            break
    return found


def evaluate(F, V, w, phi):
    """Textbook recursive truth definition."""
    rel = relation(F)
    if isinstance(phi, Var):
        return w in V.get(phi.name, ())
    if isinstance(phi, Bottom):
        return False
    if isinstance(phi, Not):
        return not evaluate(F, V, w, phi.arg)
    if isinstance(phi, And):
        return all(evaluate(F, V, w, a) for a in phi.args)
    if isinstance(phi, Or):
        return any(evaluate(F, V, w, a) for a in phi.args)
    if isinstance(phi, Implies):
        return (not evaluate(F, V, w, phi.left)) or evaluate(F, V, w, phi.right)
    if isinstance(phi, Box):
        return all(evaluate(F, V, u, phi.arg) for u in F.points if (w, u) in rel)
    if isinstance(phi, Diamond):
        return any(evaluate(F, V, u, phi.arg) for u in F.points if (w, u) in rel)
    raise TypeError(phi)


def all_valuations(points, names):
    cells = [(n, p) for n in names for p in points]
    for bits in itertools.product((False, True), repeat=len(cells)):
        V = {n: set() for n in names}
        for (n, p), b in zip(cells, bits):
            if b:
                V[n].add(p)
        yield V


def max_antichain_size(F, within=None, irreflexive=False):
    rel = relation(F)
    pts = [p for p in (within if within is not None else F.points)
           if not irreflexive or (p, p) not in rel]
    for k in range(len(pts), 0, -1):
        for combo in itertools.combinations(pts, k):
            if all((a, b) not in rel and (b, a) not in rel for a, b in itertools.combinations(combo, 2)):
                return k
    return 0


def longest_strict_chain(F):
    rel = relation(F)
    strict = {(a, b) for a, b in rel if (b, a) not in rel}
    best = {}

    def depth(w):
        if w not in best:
            best[w] = 1 + max((depth(u) for (v, u) in strict if v == w), default=0)
        return best[w]

    return max(depth(w) for w in F.points)


def random_tree(rng, max_nodes=6, max_label=3):
    n = rng.randrange(1, max_nodes + 1)
    labels = [rng.randrange(0, max_label + 1) for _ in range(n)]
    kids = [[] for _ in range(n)]
    for i in range(1, n):
        kids[rng.randrange(0, i)].append(i)

    def build(i):
        return OmegaTree(labels[i], tuple(build(c) for c in kids[i]))

    return build(0)


def inflate(rng, T, max_points):
    """A frame that projects onto ``T``: every point becomes 1+ copies.

    Copies of a reflexive point form a cluster; copies of an irreflexive
    point stay pairwise unrelated.  Point order is shuffled.
    """
    rel = relation(T)
    copies = {x: 1 for x in T.points}
    while sum(copies.values()) < max_points and rng.random() < 0.8:
        copies[rng.choice(T.points)] += 1
    pts = [(x, k) for x in T.points for k in range(copies[x])]
    rng.shuffle(pts)
    names = {p: f"{p[0]}_{p[1]}" for p in pts}
    edges = [(names[p], names[q]) for p in pts for q in pts if (p[0], q[0]) in rel]
    return Frame([names[p] for p in pts], edges)


def random_formula(rng, depth):
    if depth == 0 or rng.random() < 0.2:
        return rng.choice([p(0), p(1), Var("q"), BOT])
    kind = rng.randrange(6)
    if kind == 0:
        return Not(random_formula(rng, depth - 1))
    if kind == 1:
        return Box(random_formula(rng, depth - 1))
    if kind == 2:
        return Diamond(random_formula(rng, depth - 1))
    if kind == 3:
        return Implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    args = tuple(random_formula(rng, depth - 1) for _ in range(rng.randrange(2, 4)))
    return And(args) if kind == 4 else Or(args)
