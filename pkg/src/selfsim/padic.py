"""2-adic integers, base-eta numeration and the alpha/p stream.

Two representations share the :class:`Padic2` type:

* exact: a rational ``p/q`` with ``q`` odd;
* windowed: the residue modulo ``2**prec``, i.e. the low ``prec`` binary
  digits, plus the precision counter.

Digits are always least-significant first.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

LCG_MUL = 6364136223846793005
LCG_INC = 1442695040888963407
MASK64 = (1 << 64) - 1

Word = tuple  # tuple of ints, least-significant / root-first


class InvalidEta(ValueError):
    pass


class OddArgument(ValueError):
    pass


class PrecisionExhausted(ArithmeticError):
    pass


def v2(x) -> float:
    """2-adic valuation of an integer or rational; ``inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    num, den = x.numerator, x.denominator
    return ((num & -num).bit_length() - 1) - ((den & -den).bit_length() - 1)


@dataclass(frozen=True)
class Padic2:
    value: Union[Fraction, int]
    prec: Union[int, None] = None

    def __post_init__(self):
        if self.prec is None:
            v = Fraction(self.value)
            if v.denominator % 2 == 0:
                raise ValueError(f"denominator of {v} is even")
            object.__setattr__(self, "value", v)
        else:
            if self.prec < 0:
                raise ValueError("negative precision")
            object.__setattr__(self, "value", int(self.value) % (1 << self.prec))

    @classmethod
    def exact(cls, x) -> "Padic2":
        return cls(Fraction(x))

    @classmethod
    def window(cls, bits: int, prec: int) -> "Padic2":
        return cls(bits, prec)

    @classmethod
    def from_digits(cls, digits: Sequence[int]) -> "Padic2":
        """Windowed value whose binary digits (lsb first) are ``digits``."""
        return cls(sum(d << i for i, d in enumerate(digits)), len(digits))

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    @property
    def precision(self) -> float:
        return math.inf if self.prec is None else self.prec

    def residue(self, n: int) -> int:
        """The value modulo ``2**n``; needs ``n <= precision``."""
        if self.prec is None:
            mod = 1 << n
            return self.value.numerator * pow(self.value.denominator, -1, mod) % mod if n else 0
        if n > self.prec:
            raise PrecisionExhausted(f"need {n} digits, have {self.prec}")
        return self.value % (1 << n)

    def to_window(self, n: int) -> "Padic2":
        return Padic2(self.residue(n), n)

    def parity(self) -> int:
        if self.prec is None:
            return self.value.numerator % 2
        if self.prec == 0:
            raise PrecisionExhausted("parity of a value with empty window")
        return self.value & 1

    def digits(self, n: int) -> Word:
        r = self.residue(n)
        return tuple((r >> i) & 1 for i in range(n))

    def agrees(self, other, n: int) -> bool:
        return self.residue(n) == _coerce(other).residue(n)

    def _pair(self, other):
        other = _coerce(other)
        if self.prec is None and other.prec is None:
            return self, other, None
        n = min(self.precision, other.precision)
        return self.to_window(n), other.to_window(n), n

    def __add__(self, other):
        a, b, n = self._pair(other)
        return Padic2(a.value + b.value, n)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, n = self._pair(other)
        return Padic2(a.value - b.value, n)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        a, b, n = self._pair(other)
        return Padic2(a.value * b.value, n)

    __rmul__ = __mul__

    def __neg__(self):
        return Padic2(-self.value, self.prec)

    def __str__(self):
        if self.prec is None:
            return str(self.value)
        return "".join(map(str, self.digits(self.prec))) + f"@{self.prec}"


def _coerce(x) -> Padic2:
    if isinstance(x, Padic2):
        return x
    return Padic2.exact(x)


ZERO = Padic2.exact(0)
ONE = Padic2.exact(1)


def p2_add(a, b) -> Padic2:
    return _coerce(a) + b


def p2_mul(a, b) -> Padic2:
    return _coerce(a) * b


def p2_neg(a) -> Padic2:
    return -_coerce(a)


# --------------------------------------------------------------------- eta


@dataclass(frozen=True)
class Eta:
    """A base eta with 2-adic valuation exactly one.

    ``value`` is exact for the integer and rational kinds and windowed for
    the seeded kind.
    """

    kind: str
    value: Padic2
    seed: Union[int, None] = None

    @property
    def is_exact(self) -> bool:
        return self.value.is_exact

    @property
    def precision(self) -> float:
        return self.value.precision

    @property
    def degenerate(self) -> bool:
        # eta = 2 collapses every p_n(1/eta), n >= 1, to zero
        return self.is_exact and self.value.value == 2

    def spec(self) -> str:
        if self.kind == "integer":
            return f"int:{self.value.value.numerator}"
        if self.kind == "rational":
            return f"rat:{self.value.value.numerator}/{self.value.value.denominator}"
        return f"seed:{self.seed:#x}:{self.value.prec}"

    def __str__(self):
        return self.spec()


def seeded_digits(seed: int, n: int) -> Word:
    """Digits d_0..d_{n-1} of the seeded pseudorandom eta."""
    out = []
    x = seed & MASK64
    for k in range(n):
        if k == 0:
            out.append(0)
        elif k == 1:
            out.append(1)
        else:
            out.append(x >> 63)
        x = (LCG_MUL * x + LCG_INC) & MASK64
    return tuple(out)


def make_eta(spec) -> Eta:
    """Build an :class:`Eta` from ``"int:v"``, ``"rat:p/q"``,
    ``"seed:u64:N"``, an ``int`` or a ``Fraction``."""
    if isinstance(spec, Eta):
        return spec
    if isinstance(spec, bool):
        raise InvalidEta(f"not an eta: {spec!r}")
    if isinstance(spec, int):
        return _checked(Eta("integer", Padic2.exact(spec)))
    if isinstance(spec, Fraction):
        kind = "integer" if spec.denominator == 1 else "rational"
        if spec.denominator % 2 == 0:
            raise InvalidEta(f"even denominator in {spec}")
        return _checked(Eta(kind, Padic2.exact(spec)))
    if not isinstance(spec, str):
        raise InvalidEta(f"not an eta specification: {spec!r}")
    kind, _, rest = spec.strip().partition(":")
    try:
        if kind == "int":
            return make_eta(int(rest))
        if kind == "rat":
            p, _, q = rest.partition("/")
            p, q = int(p), int(q or 1)
            if q == 0 or q % 2 == 0:
                raise InvalidEta(f"denominator of {spec!r} must be odd")
            return _checked(Eta("rational", Padic2.exact(Fraction(p, q))))
        if kind == "seed":
            s, _, n = rest.partition(":")
            return seeded_eta(int(s, 0), int(n, 0))
    except ValueError as exc:
        if isinstance(exc, InvalidEta):
            raise
        raise InvalidEta(f"malformed eta specification {spec!r}") from exc
    raise InvalidEta(f"unknown eta kind in {spec!r}")


def seeded_eta(seed: int, precision: int) -> Eta:
    if not 0 <= seed <= MASK64:
        raise InvalidEta("seed must be an unsigned 64-bit integer")
    if precision < 2:
        raise InvalidEta("seeded eta needs at least 2 digits")
    return Eta("seeded", Padic2.from_digits(seeded_digits(seed, precision)), seed)


def _checked(eta: Eta) -> Eta:
    if v2(eta.value.value) != 1:
        raise InvalidEta(f"{eta.value} is not 2 mod 4 (2-adic valuation must be 1)")
    return eta


# ------------------------------------------------------- division by eta


def p2_div_eta(a, eta: Eta) -> Padic2:
    """``a / eta`` for ``a`` in 2Z_2; a window loses one digit."""
    a = _coerce(a)
    e = eta.value
    if a.is_exact and e.is_exact:
        if a.parity():
            raise OddArgument(f"{a} is not in 2Z_2")
        return Padic2.exact(a.value / e.value)
    n = min(a.precision, e.precision)
    if n == 0:
        raise PrecisionExhausted("cannot divide an empty window by eta")
    bits = a.residue(n)
    if bits & 1:
        raise OddArgument(f"{a} is not in 2Z_2")
    m = n - 1
    unit = e.residue(n) >> 1
    return Padic2((bits >> 1) * pow(unit, -1, 1 << m), m)


def eta_digits(a, eta: Eta, n: int) -> Word:
    """First ``n`` base-eta digits of ``a``."""
    a = _coerce(a)
    if a.is_exact and eta.is_exact:
        # unreduced num/den with den odd; a/eta = (num/2 * eq) / (den * ep/2)
        num, den = a.value.numerator, a.value.denominator
        ep, eq = eta.value.value.numerator, eta.value.value.denominator
        half = ep // 2
        out = []
        for _ in range(n):
            x = num & 1
            out.append(x)
            num = ((num - x * den) >> 1) * eq
            den *= half
        return tuple(out)
    out = []
    for i in range(n):
        x = a.parity()
        out.append(x)
        if i < n - 1:
            a = p2_div_eta(a - x, eta)
    return tuple(out)


def eta_value(word: Sequence[int], eta: Eta) -> Padic2:
    acc = ZERO
    for x in reversed(word):
        acc = acc * eta.value + x
    return acc


# --------------------------------------------------------- alpha stream


class AlphaStream:
    """Append-only memo of alpha_1, alpha_2, ... and p_0(1/eta), p_1(1/eta), ...

    p_0 = 2 and p_{k+1} = p_k/eta - alpha_{k+1}, with alpha_{k+1} the parity
    of p_k/eta. Windowed etas allow indices up to ``precision - 2``.
    """

    def __init__(self, eta: Eta):
        self.eta = eta
        self._alphas = [None]  # 1-based
        self._ps = [Padic2.exact(2) if eta.is_exact else Padic2.exact(2).to_window(eta.value.prec)]
        self._lock = threading.Lock()

    @property
    def limit(self) -> float:
        return self.eta.precision - 2

    def _extend(self, n: int):
        if n > self.limit:
            raise PrecisionExhausted(
                f"alpha_{n} needs eta precision {n + 2}, have {self.eta.precision}"
            )
        with self._lock:
            while len(self._ps) <= n:
                q = p2_div_eta(self._ps[-1], self.eta)
                alpha = q.parity()
                self._alphas.append(alpha)
                self._ps.append(q - alpha)

    def alpha(self, k: int) -> int:
        if k < 1:
            raise IndexError("alphas start at index 1")
        if k >= len(self._ps):
            self._extend(k)
        return self._alphas[k]

    def p(self, k: int) -> Padic2:
        if k >= len(self._ps):
            self._extend(k)
        return self._ps[k]


def alpha_stream(eta: Eta, n: int):
    """Return ``(alphas, ps)``: alpha_1..alpha_n and p_0(1/eta)..p_n(1/eta)."""
    stream = AlphaStream(eta)
    alphas = tuple(stream.alpha(k) for k in range(1, n + 1))
    return alphas, tuple(stream.p(k) for k in range(n + 1))


def word_str(word: Sequence[int]) -> str:
    if all(0 <= x < 10 for x in word):
        return "".join(map(str, word))
    return ",".join(map(str, word))


def parse_word(text: str) -> Word:
    text = text.strip()
    if "," in text:
        return tuple(int(x) for x in text.split(","))
    return tuple(int(c) for c in text)
