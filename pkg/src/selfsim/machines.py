"""Concrete machines: the binary adding machine, translations of Z_2, and
the self-similar action of the restricted power Z^(omega)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .engine import Machine
from .padic import (
    ZERO,
    AlphaStream,
    Eta,
    OddArgument,
    Padic2,
    make_eta,
    p2_div_eta,
)


class AddingMachine(Machine):
    """Z = <a> with H = 2Z and f(2n) = n; elements are plain ints."""

    name = "adding"
    degree = 2
    transversal = (0, 1)
    generators = {"a": 1}
    parabolic_trivial = True
    abelian = True

    def identity(self):
        return 0

    def mul(self, g, h):
        return g + h

    def inv(self, g):
        return -g

    def in_H(self, g):
        return g % 2 == 0

    def apply_f(self, h):
        if h % 2:
            raise OddArgument(f"{h} is not in H")
        return h // 2

    def render(self, g):
        return f"{g:+d}" if g else "0"

    def random_element(self, rng, size=3):
        return rng.randint(-(1 << size), 1 << size)


def adding_machine() -> AddingMachine:
    return AddingMachine()


class DyadicMachine(Machine):
    """Z_2 acting on itself by translation, written in base eta."""

    degree = 2
    parabolic_trivial = True
    abelian = True

    def __init__(self, eta):
        self.eta = make_eta(eta)
        self.name = f"dyadic[{self.eta}]"
        self.transversal = (ZERO, Padic2.exact(1))
        self.generators = {"one": Padic2.exact(1)}

    def identity(self):
        return ZERO

    def mul(self, g, h):
        return g + h

    def inv(self, g):
        return -g

    def in_H(self, g):
        return g.parity() == 0

    def apply_f(self, h):
        return p2_div_eta(h, self.eta)

    def render(self, g):
        return str(g)

    def random_element(self, rng, size=3):
        q = 2 * rng.randint(0, 1 << size) + 1
        return Padic2.exact(Fraction(rng.randint(-(1 << (2 * size)), 1 << (2 * size)), q))


def dyadic_machine(eta) -> DyadicMachine:
    return DyadicMachine(eta)


# ----------------------------------------------------------------- Vect


@dataclass(frozen=True)
class Vect:
    """Finitely supported integer vector, stored as sorted (index, coeff)
    pairs with no zero coefficients."""

    items: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def of(cls, coeffs) -> "Vect":
        if not isinstance(coeffs, dict):
            coeffs = dict(enumerate(coeffs))
        return cls(tuple(sorted((int(i), int(c)) for i, c in coeffs.items() if c)))

    @classmethod
    def basis(cls, n: int, c: int = 1) -> "Vect":
        return cls.of({n: c})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.items)

    def __getitem__(self, n):
        return self.as_dict().get(n, 0)

    @property
    def max_index(self) -> int:
        return self.items[-1][0] if self.items else -1

    def __add__(self, other):
        d = self.as_dict()
        for i, c in other.items:
            d[i] = d.get(i, 0) + c
        return Vect.of(d)

    def __neg__(self):
        return Vect(tuple((i, -c) for i, c in self.items))

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self.items)

    def __str__(self):
        if not self.items:
            return "0"
        return " ".join(f"{c:+d}e{i}" for i, c in self.items)


class ZOmegaMachine(Machine):
    """Z^(omega) with basis e_0 -> 1, e_n -> p_n(1/eta), H = {a_0 even}.

    f is the transport of division by eta. Writing h' = (h_0/2, h_1, ...),

        f(h)_0     = sum_k alpha_{k+1} h'_k
        f(h)_{n+1} = h'_n

    which follows from 2 = p_0 and p_k/eta = p_{k+1} + alpha_{k+1}.
    """

    degree = 2
    abelian = True

    def __init__(self, eta, max_index: int = 8):
        self.eta = make_eta(eta)
        self.stream = AlphaStream(self.eta)
        self.max_index = max_index
        self.name = f"zomega[{self.eta}]"
        self.transversal = (Vect(), Vect.basis(0))
        self.generators = {f"e{n}": Vect.basis(n) for n in range(max_index + 1)}
        # eta = 2 sends every e_n, n >= 1, to 0 in Z_2
        self.degenerate = self.eta.degenerate
        # a rational eta puts every p_n(1/eta) in Q, so iota has a kernel
        # (eta = 6: 2e0 + 3e1 -> 0); only the seeded stream stands in for a
        # transcendental eta
        self.parabolic_trivial = self.eta.kind == "seeded"

    def identity(self):
        return Vect()

    def mul(self, g, h):
        return g + h

    def inv(self, g):
        return -g

    def in_H(self, g):
        return g[0] % 2 == 0

    def apply_f(self, h):
        d = h.as_dict()
        a0 = d.pop(0, 0)
        if a0 % 2:
            raise OddArgument(f"{h} is not in H")
        d[0] = a0 // 2
        out = {n + 1: c for n, c in d.items()}
        out[0] = sum(self.stream.alpha(n + 1) * c for n, c in d.items())
        return Vect.of(out)

    def iota(self, v: Vect) -> Padic2:
        return iota(v, self.eta, self.stream)

    def random_element(self, rng, size=3):
        support = rng.sample(range(self.max_index + 1), min(size, self.max_index + 1))
        return Vect.of({i: rng.randint(-9, 9) for i in support})

    def random_H_element(self, rng, size=3):
        g = self.random_element(rng, size)
        return g - Vect.basis(0, g[0] % 2)


def zomega_machine(eta, max_index: int = 8) -> ZOmegaMachine:
    return ZOmegaMachine(eta, max_index)


def iota(v: Vect, eta: Eta, stream: AlphaStream = None) -> Padic2:
    """The 2-adic translation amount v_0 + sum_{n>=1} v_n p_n(1/eta)."""
    stream = stream or AlphaStream(eta)
    acc = ZERO
    for n, c in v.items:
        acc = acc + (Padic2.exact(c) if n == 0 else stream.p(n) * c)
    return acc
