"""Machine combinators: direct products, economical powers, the C_2
extension of a restricted power, and lamplighter wreath products."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, FrozenSet, Tuple

from .engine import Machine, act_vertex, ball, transversal_index


class FiberViolation(RuntimeError):
    """Two lit positions of H map to the same position under f."""


class ParabolicRequired(ValueError):
    pass


class DirectProduct(Machine):
    """G_1 x G_2 with H_1 x H_2 and (f_1, f_2); elements are pairs."""

    def __init__(self, left: Machine, right: Machine):
        self.left, self.right = left, right
        self.name = f"({left.name} x {right.name})"
        self.degree = left.degree * right.degree
        self.transversal = tuple((a, b) for a in left.transversal for b in right.transversal)
        e1, e2 = left.identity(), right.identity()
        self.generators = {f"L.{k}": (g, e2) for k, g in left.generators.items()}
        self.generators.update({f"R.{k}": (e1, g) for k, g in right.generators.items()})
        self.parabolic_trivial = left.parabolic_trivial and right.parabolic_trivial
        self.abelian = left.abelian and right.abelian

    def identity(self):
        return (self.left.identity(), self.right.identity())

    def mul(self, g, h):
        return (self.left.mul(g[0], h[0]), self.right.mul(g[1], h[1]))

    def inv(self, g):
        return (self.left.inv(g[0]), self.right.inv(g[1]))

    def in_H(self, g):
        return self.left.in_H(g[0]) and self.right.in_H(g[1])

    def apply_f(self, h):
        return (self.left.apply_f(h[0]), self.right.apply_f(h[1]))

    def render(self, g):
        return f"({self.left.render(g[0])}, {self.right.render(g[1])})"

    def random_element(self, rng, size=3):
        return (self.left.random_element(rng, size), self.right.random_element(rng, size))


def direct_product(left: Machine, right: Machine) -> DirectProduct:
    return DirectProduct(left, right)


class EconomicalPower(Machine):
    """G^d with H x G^(d-1) and (h_1, g_2, ..., g_d) -> (g_2, ..., g_d, f(h_1)).

    Same degree as the base machine.
    """

    def __init__(self, base: Machine, d: int):
        if d < 1:
            raise ValueError("power must be at least 1")
        self.base, self.d = base, d
        self.name = f"{base.name}^{d}"
        self.degree = base.degree
        e = base.identity()
        self.transversal = tuple((t,) + (e,) * (d - 1) for t in base.transversal)
        self.generators = {}
        for i in range(d):
            for k, g in base.generators.items():
                self.generators[f"{k}[{i}]"] = tuple(g if j == i else e for j in range(d))
        self.parabolic_trivial = base.parabolic_trivial
        self.abelian = base.abelian

    def identity(self):
        return (self.base.identity(),) * self.d

    def mul(self, g, h):
        return tuple(self.base.mul(a, b) for a, b in zip(g, h))

    def inv(self, g):
        return tuple(self.base.inv(a) for a in g)

    def in_H(self, g):
        return self.base.in_H(g[0])

    def apply_f(self, h):
        return h[1:] + (self.base.apply_f(h[0]),)

    def render(self, g):
        return "(" + ", ".join(self.base.render(a) for a in g) + ")"

    def random_element(self, rng, size=3):
        return tuple(self.base.random_element(rng, size) for _ in range(self.d))


def economical_power(base: Machine, d: int) -> Machine:
    return base if d == 1 else EconomicalPower(base, d)


# ------------------------------------------------------------ C_2 extension


@dataclass(frozen=True)
class C2Element:
    """(g_0, g_1, ...) . sigma^eps; ``vec`` holds sorted non-identity entries."""

    vec: Tuple[Tuple[int, Any], ...] = ()
    sigma: int = 0


def _swap(i: int) -> int:
    return i ^ 1


class C2Extension(Machine):
    """G^(N) x| <sigma> with sigma swapping coordinates 2n <-> 2n+1.

    Group law (g, e)(h, d) = (g . s^e(h), e xor d); H-dot = {e = 0, g_0 in H};
    f-dot(a_0, a_1, a_2, a_3, ...) = (f(a_0), a_2, a_1, a_4, a_3, ...).
    """

    def __init__(self, base: Machine, generator_coords: int = 4):
        self.base = base
        self.name = f"c2[{base.name}]"
        self.degree = 2 * base.degree
        self.transversal = tuple(
            self._make({0: t}, eps) for eps in (0, 1) for t in base.transversal
        )
        self.generators = {"sigma": C2Element((), 1)}
        for i in range(generator_coords):
            for k, g in base.generators.items():
                self.generators[f"{k}[{i}]"] = self._make({i: g}, 0)

    def _make(self, entries, sigma):
        e = self.base.identity()
        return C2Element(tuple(sorted((i, g) for i, g in entries.items() if g != e)), sigma)

    def identity(self):
        return C2Element()

    def mul(self, g, h):
        out = dict(g.vec)
        for i, b in h.vec:
            j = _swap(i) if g.sigma else i
            out[j] = self.base.mul(out[j], b) if j in out else b
        return self._make(out, g.sigma ^ h.sigma)

    def inv(self, g):
        return self._make(
            {(_swap(i) if g.sigma else i): self.base.inv(a) for i, a in g.vec}, g.sigma
        )

    def in_H(self, g):
        if g.sigma:
            return False
        return self.base.in_H(dict(g.vec).get(0, self.base.identity()))

    def apply_f(self, h):
        out = {}
        for i, a in h.vec:
            if i == 0:
                out[0] = self.base.apply_f(a)
            else:
                out[i + 1 if i % 2 else i - 1] = a
        return self._make(out, 0)

    def render(self, g):
        body = ", ".join(f"{i}:{self.base.render(a)}" for i, a in g.vec)
        return "{" + body + "}" + ("s" if g.sigma else "")

    def random_element(self, rng, size=3):
        entries = {i: self.base.random_element(rng, size) for i in rng.sample(range(6), 3)}
        return self._make(entries, rng.randrange(2))


def c2_extension(base: Machine, generator_coords: int = 4) -> C2Extension:
    return C2Extension(base, generator_coords)


# --------------------------------------------------------------- lamplighter


@dataclass(frozen=True)
class LampElement:
    """(phi, g): lamps ``phi`` (position -> nonzero residue mod k) then ``g``.

    Positions are base-machine elements (cosets of a trivial parabolic
    subgroup).
    """

    lamps: FrozenSet[Tuple[Any, int]] = frozenset()
    base: Any = None


class Lamplighter(Machine):
    """C_k^(G) x| G over a base machine with trivial parabolic subgroup.

    Group law (phi_1, g_1)(phi_2, g_2) = (phi_1 + g_1.phi_2, g_1 g_2) with
    (g.phi)(p) = phi(p g). H-dot = {sum(phi) = 0, g in H} and
    f-dot(phi, h) = (f(b) -> phi(b) for lit b in H, f(h)).

    Transversal lamps sit at the base transversal's t_1, which lies outside
    H, so f-dot discards them. With that choice a base element keeps its
    base state set and the lamp generator has states {lamp, 1}.
    """

    def __init__(self, base: Machine, k: int = 2):
        if not base.parabolic_trivial:
            raise ParabolicRequired(f"{base.name} does not declare a trivial parabolic subgroup")
        if k < 2:
            raise ValueError("lamp group order must be at least 2")
        self.base, self.k = base, k
        self.name = f"lamplighter[{base.name}, C{k}]"
        self.degree = k * base.degree
        self.parabolic_trivial = False
        self.lamp_position = base.transversal[1]
        e = base.identity()
        self.transversal = tuple(
            self._make({self.lamp_position: a}, t)
            for a in range(k)
            for t in base.transversal
        )
        self.generators = {"lamp": self._make({e: 1}, e)}
        self.generators.update({k_: self._make({}, g) for k_, g in base.generators.items()})
        self.fiber_checks = 0

    def _make(self, lamps, g):
        return LampElement(frozenset((p, v % self.k) for p, v in lamps.items() if v % self.k), g)

    def lamp(self, value: int = 1, position=None) -> LampElement:
        pos = self.base.identity() if position is None else position
        return self._make({pos: value}, self.base.identity())

    def embed(self, g) -> LampElement:
        return self._make({}, g)

    def identity(self):
        return LampElement(frozenset(), self.base.identity())

    def _shift(self, lamps, g):
        # support of g.phi is supp(phi) g^{-1}
        gi = self.base.inv(g)
        return {self.base.mul(p, gi): v for p, v in lamps}

    def mul(self, x, y):
        out = dict(x.lamps)
        for p, v in self._shift(y.lamps, x.base).items():
            out[p] = out.get(p, 0) + v
        return self._make(out, self.base.mul(x.base, y.base))

    def inv(self, x):
        gi = self.base.inv(x.base)
        neg = frozenset((p, -v) for p, v in x.lamps)
        return self._make(self._shift(neg, gi), gi)

    def in_H(self, x):
        return sum(v for _, v in x.lamps) % self.k == 0 and self.base.in_H(x.base)

    def apply_f(self, x):
        out = {}
        for p, v in x.lamps:
            if not self.base.in_H(p):
                continue
            q = self.base.apply_f(p)
            self.fiber_checks += 1
            if q in out:
                raise FiberViolation(
                    f"two lit positions map to {self.base.render(q)} under f"
                )
            out[q] = v
        return self._make(out, self.base.apply_f(x.base))

    def render(self, x):
        lamps = sorted((self.base.render(p), v) for p, v in x.lamps)
        body = ", ".join(f"{p}:{v}" for p, v in lamps)
        return "[" + body + "]" + self.base.render(x.base)

    def random_element(self, rng, size=3):
        lamps = {self.base.random_element(rng, size): rng.randrange(1, self.k) for _ in range(3)}
        return self._make(lamps, self.base.random_element(rng, size))

    def random_H_element(self, rng, size=3):
        x = self.random_element(rng, size)
        x = self.mul(x, self.lamp(-sum(v for _, v in x.lamps)))
        b = self.base.transversal[transversal_index(self.base, x.base)]
        return self.mul(x, self.embed(self.base.inv(b)))


def lamplighter(base: Machine, k: int = 2) -> Lamplighter:
    return Lamplighter(base, k)


def parabolic_trivial_probe(M: Machine, depth: int, length: int):
    """Non-identity elements of word length <= ``length`` fixing the all-zeros
    vertex of depth ``depth``. Empty output supports ``H_omega = 1``."""
    zero = (0,) * depth
    e = M.identity()
    return [g for g in ball(M, length) if g != e and act_vertex(M, zero, g) == zero]
