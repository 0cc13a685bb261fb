"""Number of states of e_0 in the Z^(omega) machine against the budget,
for a few seeded etas and for eta = 6. Closure never happens."""

import argparse

from selfsim import Vect, make_eta, states, zomega_machine


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--seeds", type=lambda s: [int(x, 0) for x in s.split(",")], default=[0xC0FFEE, 1, 2])
    p.add_argument("--budgets", type=lambda s: [int(x) for x in s.split(",")], default=[25, 50, 100, 200, 400])
    args = p.parse_args()

    etas = [make_eta("int:6")] + [make_eta(f"seed:{s:#x}:512") for s in args.seeds]
    print("eta".ljust(24) + "".join(f"{b:>8}" for b in args.budgets))
    for eta in etas:
        Z = zomega_machine(eta)
        row = []
        for b in args.budgets:
            s = states(Z, Vect.basis(0), b)
            deepest = max(v.max_index for v in s.elements)
            row.append(f"{len(s):>5}/{deepest:<2}")
        print(str(eta).ljust(24) + "".join(f"{r:>8}" for r in row))


if __name__ == "__main__":
    main()
