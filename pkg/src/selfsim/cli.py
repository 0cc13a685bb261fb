"""Command-line workbench.

    selfsim alpha --eta int:6 -n 4
    selfsim digits --eta int:6 --value 2 -n 5
    selfsim act --machine adding --element 1 --vertex 011
    selfsim portrait --machine '{"type": "zomega", "eta": "int:6"}' --element '{"0": 1}' --depth 3
    selfsim states --machine adding --element 5 --budget 20
    selfsim verify --machine adding --suite action-axioms --trials 100 --seed 7

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions as C
from . import machines as Mc
from . import verification as V
from .engine import MalformedMachine, act_vertex, is_finite_state_gens, perm_cycles, portrait, states
from .padic import (
    InvalidEta,
    OddArgument,
    Padic2,
    PrecisionExhausted,
    alpha_stream,
    eta_digits,
    eta_value,
    make_eta,
    p2_div_eta,
    parse_word,
    v2,
    word_str,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3


class SpecError(ValueError):
    pass


# ------------------------------------------------------------- parsing


def load_json(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text  # bare word such as "adding" or "identity"


def build_machine(spec):
    if isinstance(spec, str):
        spec = {"type": spec}
    if not isinstance(spec, dict) or "type" not in spec:
        raise SpecError(f"machine spec needs a 'type': {spec!r}")
    kind = spec["type"]
    if kind == "adding":
        return Mc.adding_machine()
    if kind == "dyadic":
        return Mc.dyadic_machine(make_eta(spec.get("eta", "int:2")))
    if kind == "zomega":
        return Mc.zomega_machine(make_eta(spec.get("eta", "int:6")), int(spec.get("max_index", 8)))
    if kind == "product":
        return C.direct_product(build_machine(spec["left"]), build_machine(spec["right"]))
    if kind == "economical":
        return C.economical_power(build_machine(spec["base"]), int(spec.get("d", 2)))
    if kind == "c2":
        return C.c2_extension(build_machine(spec["base"]), int(spec.get("coords", 4)))
    if kind == "lamplighter":
        return C.lamplighter(build_machine(spec["base"]), int(spec.get("k", 2)))
    raise SpecError(f"unknown machine type {kind!r}")


def parse_rational(text) -> Fraction:
    try:
        value = Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"bad rational {text!r}") from exc
    if value.denominator % 2 == 0:
        raise SpecError(f"{text} has an even denominator")
    return value


def parse_element(M, expr):
    """Turn an element expression into a canonical element of ``M``."""
    if expr in ("identity", None):
        return M.identity()
    if isinstance(M, Mc.AddingMachine):
        return int(expr)
    if isinstance(M, Mc.DyadicMachine):
        if isinstance(expr, dict) and "digits" in expr:
            return Padic2.from_digits([int(x) for x in expr["digits"]])
        if isinstance(expr, dict):
            expr = expr["rational"]
        return Padic2.exact(parse_rational(expr))
    if isinstance(M, Mc.ZOmegaMachine):
        return Mc.Vect.of({int(k): int(v) for k, v in expr.items()})
    if isinstance(M, C.DirectProduct):
        return (parse_element(M.left, expr["left"]), parse_element(M.right, expr["right"]))
    if isinstance(M, C.EconomicalPower):
        if len(expr) != M.d:
            raise SpecError(f"expected {M.d} entries")
        return tuple(parse_element(M.base, e) for e in expr)
    if isinstance(M, C.C2Extension):
        vec = {int(k): parse_element(M.base, e) for k, e in expr.get("vec", {}).items()}
        return M._make(vec, int(expr.get("sigma", 0)) % 2)
    if isinstance(M, C.Lamplighter):
        lamps = {}
        for lamp in expr.get("lamps", []):
            p = parse_element(M.base, lamp["pos"])
            lamps[p] = lamps.get(p, 0) + int(lamp["val"])
        return M._make(lamps, parse_element(M.base, expr.get("base")))
    raise SpecError(f"cannot parse elements of {M.name}")


# ------------------------------------------------------------ commands


def cmd_alpha(args, out):
    eta = make_eta(args.eta)
    alphas, ps = alpha_stream(eta, args.n)
    print(" ".join(map(str, alphas)), file=out)
    if args.verbose:
        for k, p in enumerate(ps):
            print(f"p{k}\t{p}", file=out)
    return EXIT_OK


def cmd_digits(args, out):
    eta = make_eta(args.eta)
    if args.eval is not None:
        print(eta_value(parse_word(args.eval), eta), file=out)
        return EXIT_OK
    value = parse_rational(args.value)
    print(word_str(eta_digits(value, eta, args.n)), file=out)
    return EXIT_OK


def _machine_and_element(args):
    M = build_machine(load_json(args.machine))
    return M, parse_element(M, load_json(args.element))


def cmd_act(args, out):
    M, g = _machine_and_element(args)
    v = parse_word(args.vertex)
    if any(not 0 <= x < M.degree for x in v):
        raise SpecError(f"vertex letters must lie in 0..{M.degree - 1}")
    print(word_str(act_vertex(M, v, g)), file=out)
    return EXIT_OK


def cmd_portrait(args, out):
    M, g = _machine_and_element(args)
    labels = portrait(M, g, args.depth)
    for v in sorted(labels, key=lambda w: (len(w), w)):
        print(f"{word_str(v) or 'ε'}\t{perm_cycles(labels[v])}", file=out)
    return EXIT_OK


def cmd_states(args, out):
    M, g = _machine_and_element(args)
    s = states(M, g, args.budget)
    print(f"count {len(s)}", file=out)
    print(f"status {s.status}", file=out)
    for r in sorted(M.render(x) for x in s.elements):
        print(r, file=out)
    return EXIT_OK


def _suite_checks(M, args):
    suite = args.suite
    if suite == "action-axioms":
        return V.check_action_axioms(M, args.trials, args.depth, args.seed)
    if suite == "corefree":
        bad = V.check_corefree_desk(M, args.length, args.depth)
        return [V.Check("corefree", not bad, f"{M.name} L={args.length} d={args.depth} trivial={len(bad)}")]
    if suite == "transitivity":
        ok = V.level_transitivity_check(M, args.depth)
        return [V.Check("transitivity", ok, f"{M.name} depth {args.depth}")]
    if suite == "finite-state":
        return [
            V.Check(f"finite-state[{name}]", s.closed, f"{len(s)} states {s.status}")
            for name, s in is_finite_state_gens(M, args.budget).items()
        ]
    if suite == "digits-roundtrip":
        eta = getattr(M, "eta", None) or make_eta(args.eta)
        n = args.depth
        bad = 0
        for i in range(args.trials):
            rng = random.Random(args.seed + i)
            a = Fraction(rng.randint(-(10**6), 10**6), 2 * rng.randint(0, 10**4) + 1)
            back = eta_value(eta_digits(a, eta, n), eta)
            if eta.is_exact:
                bad += v2(back.value - a) < n
            else:
                bad += not back.agrees(a, n)
        return [V.Check("digits-roundtrip", bad == 0, f"{eta} n={n} {bad}/{args.trials} mismatches")]
    if suite == "intertwining":
        if not isinstance(M, Mc.ZOmegaMachine):
            raise SpecError("intertwining needs a zomega machine")
        bad = 0
        for i in range(args.trials):
            h = M.random_H_element(random.Random(args.seed + i), 8)
            lhs, rhs = M.iota(M.apply_f(h)), M.iota(h)
            rhs = p2_div_eta(rhs, M.eta)
            bad += lhs != rhs if M.eta.is_exact else not lhs.agrees(rhs, min(lhs.precision, rhs.precision))
        return [V.Check("intertwining", bad == 0, f"{M.name} {bad}/{args.trials} mismatches")]
    if suite == "block-identity":
        bad = 0
        for i in range(args.trials):
            ok, step = V.block_chi_check(*V.random_block_instance(random.Random(args.seed + i)), details=True)
            bad += not (ok and step)
        return [V.Check("block-identity", bad == 0, f"{bad}/{args.trials} failures")]
    raise SpecError(f"unknown suite {suite!r}")


SUITES = (
    "action-axioms",
    "corefree",
    "transitivity",
    "finite-state",
    "digits-roundtrip",
    "intertwining",
    "block-identity",
)


def cmd_verify(args, out):
    M = build_machine(load_json(args.machine))
    checks = _suite_checks(M, args)
    for c in checks:
        print(c.line(), file=out)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="selfsim", description="self-similar group workbench")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("alpha", help="alpha_1..alpha_n for a base eta")
    a.add_argument("--eta", required=True)
    a.add_argument("-n", type=int, required=True)
    a.add_argument("--verbose", action="store_true")
    a.set_defaults(func=cmd_alpha)

    d = sub.add_parser("digits", help="base-eta digits of an exact rational")
    d.add_argument("--eta", required=True)
    d.add_argument("--value", default="0")
    d.add_argument("-n", type=int, default=16)
    d.add_argument("--eval", metavar="WORD", help="print the value of a digit word instead")
    d.set_defaults(func=cmd_digits)

    for name, func, extra in (
        ("act", cmd_act, ("--vertex", dict(required=True))),
        ("portrait", cmd_portrait, ("--depth", dict(type=int, default=3))),
        ("states", cmd_states, ("--budget", dict(type=int, default=100))),
    ):
        s = sub.add_parser(name)
        s.add_argument("--machine", required=True, help="JSON spec, @file, or a bare type name")
        s.add_argument("--element", default="identity", help="JSON element expression")
        s.add_argument(extra[0], **extra[1])
        s.set_defaults(func=func)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--machine", required=True)
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--depth", type=int, default=8)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--length", type=int, default=3)
    v.add_argument("--budget", type=int, default=100)
    v.add_argument("--eta", default="int:6")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except PrecisionExhausted as exc:
        print(f"error: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (InvalidEta, OddArgument, SpecError, MalformedMachine, C.ParabolicRequired,
            KeyError, TypeError, ValueError, AttributeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
