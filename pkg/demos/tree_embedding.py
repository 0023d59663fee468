"""Representation trees and the embedding order: an embedding between
trees yields a reduction between the frames, in the opposite direction."""

from transframe import Frame, find_reduction, parse_tree, srt, std_triple, tree_embed


def chain_of_clusters(sizes):
    pts = [(i, k) for i, s in enumerate(sizes) for k in range(s)]
    names = {p: f"c{p[0]}_{p[1]}" for p in pts}
    return Frame([names[p] for p in pts],
                 [(names[p], names[q]) for p in pts for q in pts if p[0] <= q[0]])


def main():
    t = parse_tree("3(0,2,1(0))")
    tri = std_triple(t)
    print("tree", t, "zero children", [str(c) for c in tri.zero_children],
          "positive children", [str(c) for c in tri.pos_children])

    F = chain_of_clusters([1, 1])
    G = chain_of_clusters([2, 3])
    a, b = srt(F), srt(G)
    print(f"srt(F) = {a}, srt(G) = {b}, srt(F) below srt(G): {tree_embed(a, b)}")
    m = find_reduction(G, F)
    print("reduction G -> F:", None if m is None else m.mapping)


if __name__ == "__main__":
    main()
