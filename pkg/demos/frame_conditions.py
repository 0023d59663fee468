"""Structural checkers against formula validity on a few small frames.

For each frame the rank/width/weak-width/antichain checkers are compared
with brute-force validity of the matching formula family.
"""

from transframe import (
    Frame, check_irr_antichain_at_most, check_rank_at_most, check_weak_width_at_most,
    check_width_at_most, frame_valid, make_H, mk_B, mk_Wid, mk_Wid_bullet, mk_Wid_plus, point_valid,
)

FRAMES = {
    "reflexive point": Frame(["w"], [("w", "w")]),
    "fork": Frame(["r", "u", "v"], [("r", "u"), ("r", "v")]),
    "3-chain": Frame(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]),
    "H_0": make_H(0),
}


def main():
    for name, F in FRAMES.items():
        root = F.roots[0]
        print(f"{name}: {len(F)} points, root {root}")
        for n in (1, 2, 3):
            print(f"  B_{n}: checker={bool(check_rank_at_most(F, n))} formula={frame_valid(F, mk_B(n)).valid}")
        for n in (1, 2):
            print(f"  Wid_{n}: checker={bool(check_width_at_most(F, n))} "
                  f"formula={frame_valid(F, mk_Wid(n)).valid}")
            print(f"  Wid_{n}+ at {root}: checker={bool(check_weak_width_at_most(F, root, n))} "
                  f"formula={point_valid(F, root, mk_Wid_plus(n)).valid}")
            print(f"  Wid_{n}* at {root}: checker={bool(check_irr_antichain_at_most(F, root, n))} "
                  f"formula={point_valid(F, root, mk_Wid_bullet(n)).valid}")


if __name__ == "__main__":
    main()
