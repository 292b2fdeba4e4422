"""Walkthrough: the normal-form language of Thompson's group F.

Over the generators x0, x1 the normal-form words are recognized by a
counter automaton (a one-stack machine tracking x0-exponent) intersected
with a forbidden-subword check.  The language is not regular: the counter
is essential.
"""

from stackings import expsum_x0, thompson_alphabet, thompson_f_in_C


def main() -> None:
    al = thompson_alphabet()

    print("== recognizer on sample words ==")
    for text in ["", "X0 x1", "X0 x1 x0", "x0", "x1 x0", "x1 X1", "X0 X0 x1 x0 x0"]:
        w = al.word(text)
        verdict = "accepted" if thompson_f_in_C(w) else "rejected"
        print(f"  {text!r:20} {verdict}  (x0-exponent sum {expsum_x0(w)})")

    print("\n== the counter at work ==")
    print("  X0^n x1 x0^n is accepted for every n, but bump the tail once")
    print("  past the counter and it fails:")
    for n in range(1, 4):
        good = al.word(" ".join(["X0"] * n + ["x1"] + ["x0"] * n))
        bad = al.word(" ".join(["X0"] * n + ["x1"] + ["x0"] * (n + 1)))
        print(f"    n={n}: balanced {thompson_f_in_C(good)}, "
              f"overdrawn {thompson_f_in_C(bad)}")


if __name__ == "__main__":
    main()
