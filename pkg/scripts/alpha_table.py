"""Print alpha_1..alpha_n and the first values p_k(1/eta) for several etas."""

import sys

from selfsim import alpha_stream, make_eta

n = int(sys.argv[1]) if len(sys.argv) > 1 else 24
for spec in ["int:2", "int:6", "int:-2", "rat:2/3", "int:-10", "seed:0xC0FFEE:128"]:
    alphas, ps = alpha_stream(make_eta(spec), n)
    print(f"{spec:<20} {''.join(map(str, alphas))}")
    if make_eta(spec).is_exact:
        print(" " * 21 + "  ".join(str(p) for p in ps[:5]))
