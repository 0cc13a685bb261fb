"""Desk-scale probes: faithfulness, level transitivity, state growth, the
block-matrix derivation identity, and randomized action-axiom suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .engine import (
    Machine,
    act_vertex,
    ball,
    decompose,
    is_trivial_to_depth,
    states,
)


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name} {self.detail}".rstrip()


@dataclass
class SuiteConfig:
    trials: int = 500
    depth: int = 8
    seed: int = 0
    length: int = 3
    corefree_depth: int = 10


def check_corefree_desk(M: Machine, length: int, depth: int) -> list:
    """Non-identity elements of word length <= ``length`` acting trivially
    to ``depth``. Empty means no desk-scale evidence against faithfulness."""
    e = M.identity()
    return [g for g in ball(M, length) if g != e and is_trivial_to_depth(M, g, depth)]


def level_transitivity_check(M: Machine, n: int) -> bool:
    start = (0,) * n
    letters = []
    for g in M.generators.values():
        letters += [g, M.inv(g)]
    seen, frontier = {start}, [start]
    while frontier:
        nxt = []
        for v in frontier:
            for s in letters:
                w = act_vertex(M, v, s)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen) == M.degree ** n


def state_growth_probe(M: Machine, g, budget: int) -> Tuple[int, str]:
    s = states(M, g, budget)
    return len(s), s.status


def check_transversal(M: Machine) -> bool:
    """Transversal elements lie in pairwise distinct H-cosets."""
    T = M.transversal
    return len(T) == M.degree and all(
        M.in_H(M.mul(a, M.inv(b))) == (i == j)
        for i, a in enumerate(T)
        for j, b in enumerate(T)
    )


def random_word(rng, m: int, depth: int):
    return tuple(rng.randrange(m) for _ in range(depth))


def check_action_axioms(M: Machine, trials: int = 500, depth: int = 8, seed: int = 0) -> List[Check]:
    """Right action, decomposition consistency, prefix compatibility and
    associativity on ``trials`` random samples; trial i uses seed + i."""
    bad = {"right-action": 0, "decomposition": 0, "prefix": 0, "associativity": 0}
    for i in range(trials):
        rng = random.Random(seed + i)
        g, h, k = (M.random_element(rng) for _ in range(3))
        v = random_word(rng, M.degree, depth)
        gh = M.mul(g, h)
        if act_vertex(M, v, gh) != act_vertex(M, act_vertex(M, v, g), h):
            bad["right-action"] += 1
        d = decompose(M, g)
        if act_vertex(M, v, g) != (d.perm[v[0]],) + act_vertex(M, v[1:], d.restrictions[v[0]]):
            bad["decomposition"] += 1
        if act_vertex(M, v, g)[: depth // 2] != act_vertex(M, v[: depth // 2], g):
            bad["prefix"] += 1
        left, right = M.mul(gh, k), M.mul(g, M.mul(h, k))
        if left != right or act_vertex(M, v, left) != act_vertex(M, v, right):
            bad["associativity"] += 1
    checks = [Check(name, n == 0, f"{M.name} {n}/{trials} mismatches") for name, n in bad.items()]
    checks.append(Check("transversal", check_transversal(M), f"{M.name} degree {M.degree}"))
    return checks


# ------------------------------------------------------ integer matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    @classmethod
    def of(cls, data: Sequence[Sequence[int]], cols: int = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in data)
        c = len(data[0]) if data else (cols or 0)
        if any(len(row) != c for row in data):
            raise ShapeMismatch("ragged rows")
        return cls(len(data), c, data)

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls(r, c, tuple((0,) * c for _ in range(r)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch(f"{self.rows}x{self.cols} + {other.rows}x{other.cols}")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) or [()] * other.cols
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries),
        )

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def __pow__(self, n: int):
        out = IntMatrix.identity(self.rows)
        for _ in range(n):
            out = out @ self
        return out

    def block(self, top_right, bottom_left, bottom_right) -> "IntMatrix":
        """[[self, top_right], [bottom_left, bottom_right]]."""
        top = tuple(a + b for a, b in zip(self.entries, top_right.entries))
        bottom = tuple(a + b for a, b in zip(bottom_left.entries, bottom_right.entries))
        return IntMatrix.of(top + bottom, self.cols + top_right.cols)


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial c_0 + c_1 t + ... + c_deg t^deg."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, m: IntMatrix) -> IntMatrix:
        acc = IntMatrix.zeros(m.rows, m.cols)
        for c in reversed(self.coeffs):
            acc = acc @ m + IntMatrix.identity(m.rows).scale(c)
        return acc

    def companion(self) -> IntMatrix:
        """Companion matrix (row-vector convention); needs a monic poly."""
        if self.coeffs[-1] != 1 or self.degree < 1:
            raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
        n = self.degree
        rows = [[int(j == i + 1) for j in range(n)] for i in range(n - 1)]
        rows.append([-c for c in self.coeffs[:-1]])
        return IntMatrix.of(rows)


def derivation(chi: IntPoly, g: IntMatrix, f0: IntMatrix, f1: IntMatrix) -> IntMatrix:
    """d(chi) for d(1) = 0, d(t) = g, d(pq) = dp q(f0) + p(f1) dq.

    Horner form: p = c + t q gives dp = g q(f0) + f1 dq.
    """
    dp = IntMatrix.zeros(g.rows, g.cols)
    q = IntMatrix.zeros(f0.rows, f0.cols)  # q(f0) for the running tail q
    for c in reversed(chi.coeffs):
        dp = g @ q + f1 @ dp
        q = f0 @ q + IntMatrix.identity(f0.rows).scale(c)
    return dp


def block_chi_check(chi: IntPoly, g: IntMatrix, f1: IntMatrix, n: int, details: bool = False):
    """Check chi(f) f^n == [[0, 0], [f1^n d(chi), f1^n chi(f1)]] for
    f = [[f0, 0], [g, f1]], f0 the companion matrix of ``chi``.

    With ``details`` also return whether f1 d(chi) == chi(f1) g + d(chi) f0.
    """
    f0 = chi.companion()
    if f1.rows != f1.cols:
        raise ShapeMismatch("f1 must be square")
    if (g.rows, g.cols) != (f1.rows, f0.rows):
        raise ShapeMismatch(f"g must be {f1.rows}x{f0.rows}, got {g.rows}x{g.cols}")
    k, r = f0.rows, f1.rows
    f = f0.block(IntMatrix.zeros(k, r), g, f1)
    dchi = derivation(chi, g, f0, f1)
    chi_f1 = chi(f1)
    f1n = f1 ** n
    expected = IntMatrix.zeros(k, k).block(IntMatrix.zeros(k, r), f1n @ dchi, f1n @ chi_f1)
    ok = chi(f) @ (f ** n) == expected
    if not details:
        return ok
    return ok, f1 @ dchi == chi_f1 @ g + dchi @ f0


def random_block_instance(rng, max_dim: int = 4, max_deg: int = 4, bound: int = 3):
    deg = rng.randint(1, max_deg)
    chi = IntPoly(tuple(rng.randint(-bound, bound) for _ in range(deg)) + (1,))
    r = rng.randint(1, max_dim)
    f1 = IntMatrix.of([[rng.randint(-bound, bound) for _ in range(r)] for _ in range(r)])
    g = IntMatrix.of([[rng.randint(-bound, bound) for _ in range(deg)] for _ in range(r)])
    return chi, g, f1, rng.randint(0, 3)
