"""Frames of rank at most m, weak width 1, and irreflexive antichains of
size at most k have at most m*k degenerate clusters."""

from transframe import CorpusSpec, generate_corpus
from transframe.trees import degenerate_count


def main():
    for m in (1, 2, 3):
        for k in (1, 2, 3):
            spec = CorpusSpec(max_points=m * k + 3, rank_bound=m, require_weak_width_1=True,
                              require_wid_bullet=k, seed=1000 * m + k, count=200)
            worst = max(degenerate_count(F) for F in generate_corpus(spec))
            print(f"m={m} k={k}: most degenerate clusters seen {worst}, bound {m * k}")


if __name__ == "__main__":
    main()
