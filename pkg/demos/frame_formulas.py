"""Frame formulas: satisfiable under a valuation exactly when the
generated subframe reduces onto the frame."""

from transframe import Frame, canonical_spec, canonical_valuation, crosscheck_frame_formula, frame_formula, make_H, satisfies, to_text

CHAIN2 = Frame(["a", "b"], [("a", "b")])
FORK = Frame(["r", "u", "v"], [("r", "u"), ("r", "v")])


def main():
    spec = canonical_spec(CHAIN2)
    phi = frame_formula(spec)
    print("frame formula of the 2-chain:")
    print(" ", to_text(phi))
    V = canonical_valuation(spec)
    print("true at its root under the canonical valuation:", satisfies(CHAIN2, V, "a", phi))

    H = make_H(1)
    for u in ("a", "b{0,1}", "c0"):
        sat, red = crosscheck_frame_formula(FORK, H, u)
        print(f"H_1 at {u}: fork formula satisfiable={sat}, H_1|{u} reduces onto fork={red}")


if __name__ == "__main__":
    main()
