"""Wreath recursion for virtual-endomorphism presentations.

A :class:`Machine` bundles a group (multiply, invert, identity, exact
equality through ``==``/``hash``), a subgroup ``H`` given by membership, a
right transversal ``t_0, ..., t_{m-1}`` with ``t_0`` representing ``H``, and
the virtual endomorphism ``f`` defined on ``H``. Everything else here is
derived: the one-level decomposition

    perm(i)          = the j with t_i g t_j^{-1} in H
    restrictions[i]  = f(t_i g t_{perm(i)}^{-1})

and its iterates. Actions are right actions on words over ``range(m)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Any, Dict, Iterable, List, Tuple


class MalformedMachine(RuntimeError):
    pass


@dataclass(frozen=True)
class Decomposition:
    perm: Tuple[int, ...]
    restrictions: Tuple[Any, ...]

    def is_identity_perm(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))


class Machine:
    """Base class for virtual-endomorphism presentations.

    Subclasses set ``degree``, ``transversal`` and ``generators`` and
    implement the group operations, ``in_H`` and ``apply_f``.
    """

    name = "machine"
    degree: int
    transversal: Tuple[Any, ...]
    generators: Dict[str, Any]
    #: declared triviality of the parabolic subgroup (stabilizer of the 0-ray)
    parabolic_trivial = False
    abelian = False

    def identity(self):
        raise NotImplementedError

    def mul(self, g, h):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def in_H(self, g) -> bool:
        raise NotImplementedError

    def apply_f(self, h):
        raise NotImplementedError

    def render(self, g) -> str:
        return str(g)

    def random_element(self, rng, size: int = 3):
        """Random product of ``size`` generators and inverses."""
        gens = list(self.generators.values())
        g = self.identity()
        for _ in range(size):
            s = rng.choice(gens)
            g = self.mul(g, s if rng.random() < 0.5 else self.inv(s))
        return g

    def random_H_element(self, rng, size: int = 3):
        g = self.random_element(rng, size)
        return self.mul(g, self.inv(self.transversal[transversal_index(self, g)]))

    # one cache per instance; machines are immutable once built
    def _decomposition_cache(self):
        cache = self.__dict__.get("_dcache")
        if cache is None:
            cache = lru_cache(maxsize=1 << 16)(lambda g: _decompose(self, g))
            self.__dict__["_dcache"] = cache
        return cache

    def _transversal_inverses(self):
        inv = self.__dict__.get("_tinv")
        if inv is None:
            inv = tuple(self.inv(t) for t in self.transversal)
            self.__dict__["_tinv"] = inv
        return inv

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} degree={self.degree}>"


def transversal_index(M: Machine, g) -> int:
    """The unique j with g t_j^{-1} in H."""
    hits = [j for j, ti in enumerate(M._transversal_inverses()) if M.in_H(M.mul(g, ti))]
    if len(hits) != 1:
        raise MalformedMachine(
            f"{M.name}: {M.render(g)} lies in {len(hits)} transversal cosets"
        )
    return hits[0]


def _decompose(M: Machine, g) -> Decomposition:
    perm, rest = [], []
    tinv = M._transversal_inverses()
    for t in M.transversal:
        x = M.mul(t, g)
        j = transversal_index(M, x)
        perm.append(j)
        rest.append(M.apply_f(M.mul(x, tinv[j])))
    if len(set(perm)) != M.degree:
        raise MalformedMachine(f"{M.name}: decomposition of {M.render(g)} is not a permutation")
    return Decomposition(tuple(perm), tuple(rest))


def decompose(M: Machine, g) -> Decomposition:
    return M._decomposition_cache()(g)


def act_vertex(M: Machine, v: Iterable[int], g) -> Tuple[int, ...]:
    out = []
    for x in v:
        d = decompose(M, g)
        out.append(d.perm[x])
        g = d.restrictions[x]
    return tuple(out)


def restriction(M: Machine, g, v: Iterable[int]):
    for x in v:
        g = decompose(M, g).restrictions[x]
    return g


def portrait(M: Machine, g, depth: int) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    """Root permutation of the restriction at every vertex of depth < ``depth``."""
    labels = {}
    level = [((), g)]
    for _ in range(depth):
        nxt = []
        for v, h in level:
            d = decompose(M, h)
            labels[v] = d.perm
            nxt.extend((v + (x,), d.restrictions[x]) for x in range(M.degree))
        level = nxt
    return labels


def is_trivial_to_depth(M: Machine, g, depth: int) -> bool:
    """True iff every vertex of depth < ``depth`` carries the identity label.

    Works level by level on the set of distinct restrictions, so cost
    follows the number of states rather than the number of vertices.
    """
    e = M.identity()
    level = {g}
    for _ in range(depth):
        nxt = set()
        for h in level:
            if h == e:
                continue
            d = decompose(M, h)
            if not d.is_identity_perm():
                return False
            nxt.update(d.restrictions)
        if not nxt - {e}:
            return True
        level = nxt
    return True


@dataclass
class StateSet:
    elements: List[Any] = field(default_factory=list)
    status: str = "closed"

    @property
    def closed(self) -> bool:
        return self.status == "closed"

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in set(self.elements)


def states(M: Machine, g, budget: int = 100) -> StateSet:
    """Breadth-first closure of ``{g}`` under restrictions."""
    if budget < 1:
        raise ValueError("budget must be positive")
    seen = {g: None}
    queue = deque([g])
    while queue:
        h = queue.popleft()
        for r in decompose(M, h).restrictions:
            if r not in seen:
                seen[r] = None
                if len(seen) > budget:
                    return StateSet(list(seen), "budget_exhausted")
                queue.append(r)
    return StateSet(list(seen), "closed")


def is_finite_state_gens(M: Machine, budget: int = 100) -> Dict[str, StateSet]:
    return {name: states(M, g, budget) for name, g in M.generators.items()}


def ball(M: Machine, length: int) -> List[Any]:
    """Distinct elements that are products of at most ``length`` generators
    and inverses, in breadth-first order (identity first)."""
    letters = []
    for g in M.generators.values():
        letters.append(g)
        gi = M.inv(g)
        if gi != g:
            letters.append(gi)
    seen = {M.identity(): None}
    frontier = [M.identity()]
    for _ in range(length):
        nxt = []
        for g in frontier:
            for s in letters:
                h = M.mul(g, s)
                if h not in seen:
                    seen[h] = None
                    nxt.append(h)
        frontier = nxt
    return list(seen)


def all_words(m: int, depth: int):
    return product(range(m), repeat=depth)


def perm_cycles(perm: Tuple[int, ...]) -> str:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"
