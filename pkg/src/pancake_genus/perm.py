"""Elements of the generalized symmetric group S(m, n) and prefix reversals.

An element is a string of ``n`` distinct symbols from ``1..n``, each carrying a
sign in ``0..m-1``.  A *flip* ``r_i`` reverses the first ``i`` symbols and adds
one to each of their signs modulo ``m``; the *flop* ``r_i^-1`` does the same
but subtracts one.  Signs are stored per position, so ``signs[j]`` belongs to
``symbols[j]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import factorial, lcm
from typing import Iterator, NamedTuple

MAX_N = 12
FLIP = 1
FLOP = -1


class GroupParams(NamedTuple):
    m: int
    n: int

    def check(self) -> "GroupParams":
        if self.m < 1 or self.n < 1:
            raise ValueError(f"need m >= 1 and n >= 1, got m={self.m}, n={self.n}")
        if self.n > MAX_N:
            raise ValueError(f"n={self.n} exceeds the supported maximum {MAX_N}")
        if self.order >= 2**63:
            raise ValueError(f"|S({self.m},{self.n})| does not fit a 64-bit index")
        return self

    @property
    def order(self) -> int:
        """Number of elements, ``m**n * n!``."""
        return self.m**self.n * factorial(self.n)

    @property
    def family(self) -> str:
        return {1: "pn", 2: "bpn"}.get(self.m, "pmn")


class GeneratorLabel(NamedTuple):
    """A prefix reversal ``r_index`` (direction FLIP) or its inverse (FLOP)."""

    index: int
    direction: int = FLIP

    @property
    def name(self) -> str:
        return f"r{self.index}" + ("~" if self.direction == FLOP else "")

    @property
    def inverse(self) -> "GeneratorLabel":
        return GeneratorLabel(self.index, -self.direction)

    @classmethod
    def parse(cls, text: str) -> "GeneratorLabel":
        m = re.fullmatch(r"r(\d+)(~?)", text.strip())
        if not m:
            raise ValueError(f"bad generator name {text!r}")
        return cls(int(m.group(1)), FLOP if m.group(2) else FLIP)

    def __str__(self) -> str:
        return self.name


def generators(params: GroupParams) -> tuple[GeneratorLabel, ...]:
    """Generator labels in the fixed adjacency-slot order.

    ``r_2..r_n`` for m = 1, ``r_1..r_n`` for m = 2, and
    ``r_1~, r_1, r_2~, r_2, ...`` (flop before flip) for m >= 3.
    """
    m, n = params
    if m == 1:
        return tuple(GeneratorLabel(i) for i in range(2, n + 1))
    if m == 2:
        return tuple(GeneratorLabel(i) for i in range(1, n + 1))
    return tuple(GeneratorLabel(i, d) for i in range(1, n + 1) for d in (FLOP, FLIP))


@dataclass(frozen=True)
class SignedPermutation:
    symbols: tuple[int, ...]
    signs: tuple[int, ...]
    m: int

    def __post_init__(self):
        n = len(self.symbols)
        if sorted(self.symbols) != list(range(1, n + 1)):
            raise ValueError(f"{self.symbols} is not a permutation of 1..{n}")
        if len(self.signs) != n:
            raise ValueError("symbols and signs differ in length")
        if any(not 0 <= a < self.m for a in self.signs):
            raise ValueError(f"signs {self.signs} out of range for m={self.m}")

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def params(self) -> GroupParams:
        return GroupParams(self.m, self.n)

    def flip(self, i: int) -> "SignedPermutation":
        return apply_flip(self, i)

    def flop(self, i: int) -> "SignedPermutation":
        return apply_flop(self, i)

    def apply(self, gen: GeneratorLabel) -> "SignedPermutation":
        return _reverse(self, gen.index, gen.direction)

    def walk(self, word) -> "SignedPermutation":
        """Apply generators left to right: ``v.walk([a, b])`` is ``v a b``."""
        v = self
        for g in word:
            v = v.apply(g)
        return v

    def suffix(self, length: int) -> tuple[tuple[int, int], ...]:
        if length == 0:
            return ()
        return tuple(zip(self.symbols[-length:], self.signs[-length:]))

    def __str__(self) -> str:
        return format_element(self)


def identity(params: GroupParams) -> SignedPermutation:
    m, n = params
    return SignedPermutation(tuple(range(1, n + 1)), (0,) * n, m)


def _reverse(v: SignedPermutation, i: int, delta: int) -> SignedPermutation:
    if not 1 <= i <= v.n:
        raise IndexError(f"reversal index {i} out of range 1..{v.n}")
    symbols = v.symbols[:i][::-1] + v.symbols[i:]
    signs = tuple((a + delta) % v.m for a in v.signs[:i][::-1]) + v.signs[i:]
    return SignedPermutation(symbols, signs, v.m)


def apply_flip(v: SignedPermutation, i: int) -> SignedPermutation:
    return _reverse(v, i, 1)


def apply_flop(v: SignedPermutation, i: int) -> SignedPermutation:
    return _reverse(v, i, -1)


def reversal_order(params: GroupParams, i: int) -> int:
    """Order of the flip ``r_i`` in S(m, n).

    ``r_1`` only shifts one sign, so its order is ``m``.  For ``i >= 2`` an odd
    power leaves the prefix reversed, and ``r_i^2`` adds 2 to each prefix sign,
    giving ``lcm(2, m)``.
    """
    m, n = params
    if not 1 <= i <= n:
        raise IndexError(f"reversal index {i} out of range 1..{n}")
    return m if i == 1 else lcm(2, m)


def rank(v: SignedPermutation) -> int:
    """Dense index: Lehmer rank of the symbols times ``m**n`` plus the signs
    read as a base-``m`` number with ``signs[0]`` least significant."""
    n, m = v.n, v.m
    perm_rank = 0
    for j, s in enumerate(v.symbols):
        smaller = sum(1 for t in v.symbols[j + 1:] if t < s)
        perm_rank += smaller * factorial(n - 1 - j)
    sign_rank = sum(a * m**j for j, a in enumerate(v.signs))
    return perm_rank * m**n + sign_rank


def unrank(k: int, params: GroupParams) -> SignedPermutation:
    m, n = params
    if not 0 <= k < params.order:
        raise IndexError(f"index {k} out of range for S({m},{n})")
    perm_rank, sign_rank = divmod(k, m**n)
    pool = list(range(1, n + 1))
    symbols = []
    for j in range(n):
        d, perm_rank = divmod(perm_rank, factorial(n - 1 - j))
        symbols.append(pool.pop(d))
    signs = []
    for _ in range(n):
        sign_rank, a = divmod(sign_rank, m)
        signs.append(a)
    return SignedPermutation(tuple(symbols), tuple(signs), m)


def elements(params: GroupParams) -> Iterator[SignedPermutation]:
    for k in range(params.order):
        yield unrank(k, params)


def format_element(v: SignedPermutation) -> str:
    if v.m == 1:
        sep = "" if v.n <= 9 else " "
        return sep.join(map(str, v.symbols))
    if v.m == 2:
        return " ".join(f"-{s}" if a else str(s) for s, a in zip(v.symbols, v.signs))
    return " ".join(f"{s}^{a}" for s, a in zip(v.symbols, v.signs))


_CARET = re.compile(r"(\d+)\^(\d+)")
_SIGNED = re.compile(r"(-?)(\d+)")


def parse_element(text: str, m: int) -> SignedPermutation:
    """Parse ``3^0 4^2 1^2``, ``43512`` / ``4 3 5 1 2`` (m = 1) or ``-2 3 1`` /
    ``-231`` (m = 2)."""
    text = text.strip()
    if "^" in text:
        pairs = _CARET.findall(text)
        if not pairs or _CARET.sub("", text).strip():
            raise ValueError(f"cannot parse {text!r}")
        return SignedPermutation(tuple(int(s) for s, _ in pairs), tuple(int(a) for _, a in pairs), m)
    if re.fullmatch(r"(-?\d)+", text):
        # compact single-digit form such as 43512 or -21-3
        tokens = re.findall(r"-?\d", text)
    else:
        tokens = text.replace(",", " ").split()
    symbols, signs = [], []
    for tok in tokens:
        mt = _SIGNED.fullmatch(tok)
        if not mt:
            raise ValueError(f"cannot parse token {tok!r} in {text!r}")
        if mt.group(1) and m != 2:
            raise ValueError("a leading '-' sign is only meaningful for m = 2")
        symbols.append(int(mt.group(2)))
        signs.append(1 if mt.group(1) else 0)
    return SignedPermutation(tuple(symbols), tuple(signs), m)
