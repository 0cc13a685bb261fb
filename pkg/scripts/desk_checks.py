"""Run the desk-scale checks on every construction over the adding machine
and the Z^(omega) machine; one PASS/FAIL line per check."""

import sys

from selfsim import adding_machine, c2_extension, direct_product, economical_power, lamplighter, zomega_machine
from selfsim.verification import Check, check_action_axioms, check_corefree_desk, level_transitivity_check

A = adding_machine()
machines = [
    A,
    zomega_machine("int:6", 4),
    zomega_machine("seed:0xC0FFEE:128", 4),
    direct_product(A, A),
    economical_power(A, 3),
    c2_extension(A),
    lamplighter(A, 2),
    lamplighter(A, 3),
    lamplighter(zomega_machine("seed:0xC0FFEE:128", 2), 2),
]
failed = False
for M in machines:
    checks = check_action_axioms(M, trials=200, depth=8, seed=0)
    checks.append(Check("corefree", not check_corefree_desk(M, 3, 10), M.name))
    if M.degree == 2:
        checks.append(Check("transitivity", level_transitivity_check(M, 8), M.name))
    for c in checks:
        print(c.line())
        failed |= not c.ok
sys.exit(int(failed))
