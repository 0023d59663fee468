"""The frames H_n: weak width 2 everywhere, weak width 1 fails, and no
member reduces onto another (generated subframes included)."""

import time

from transframe import audit_sequence, make_H, verify_H_properties


def main():
    for n in range(4):
        rep = verify_H_properties(n)
        print(f"H_{n}: {rep.points} points, rank {rep.rank}, Wid_2+ {rep.wid2_plus_valid}, "
              f"Wid_1+ {rep.wid1_plus_valid}, irreflexive antichain {rep.irr_antichain_max}, "
              f"formula-level {rep.formula_level}")
    t = time.perf_counter()
    audit = audit_sequence([make_H(n) for n in range(4)], mode="full")
    print(f"full audit of H_0..H_3: {audit.verdict} ({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()
