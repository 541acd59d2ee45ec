"""The n-qubit Pauli group modulo global phase, in symplectic representation.

A Pauli is a pair of n-bit masks (x, z): qubit i carries I/X/Z/Y according to
(x_i, z_i) = (0,0)/(1,0)/(0,1)/(1,1). Global phases {+-1, +-i} are never
tracked; products and commutators are phase-blind throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterator

from .errors import DimensionMismatch, ParseError
from .f2 import parity

_LETTER_TO_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_XZ_TO_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


@dataclass(frozen=True)
class PauliOp:
    """An n-qubit Pauli modulo phase; equality and hashing are phase-blind."""

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be nonnegative")
        if self.x >> self.n or self.z >> self.n or self.x < 0 or self.z < 0:
            raise ValueError("support extends beyond the qubit count")

    def letter(self, q: int) -> str:
        return _XZ_TO_LETTER[((self.x >> q) & 1, (self.z >> q) & 1)]

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def __str__(self) -> str:
        return render(self)


def identity(n: int) -> PauliOp:
    return PauliOp(n, 0, 0)


def single(n: int, qubit: int, letter: str) -> PauliOp:
    """The Pauli acting as `letter` on one qubit and identity elsewhere."""
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range for n={n}")
    try:
        xb, zb = _LETTER_TO_XZ[letter]
    except KeyError:
        raise ValueError(f"unknown Pauli letter {letter!r}") from None
    return PauliOp(n, xb << qubit, zb << qubit)


def parse_pauli(s: str, *, line: int | None = None) -> PauliOp:
    """Parse a string over I/X/Y/Z, qubit 0 leftmost."""
    if not s:
        raise ParseError("empty Pauli string", line=line)
    x = z = 0
    for i, ch in enumerate(s):
        try:
            xb, zb = _LETTER_TO_XZ[ch]
        except KeyError:
            raise ParseError(f"invalid Pauli letter {ch!r}", line=line, column=i) from None
        x |= xb << i
        z |= zb << i
    return PauliOp(len(s), x, z)


def render(p: PauliOp) -> str:
    return "".join(p.letter(q) for q in range(p.n))


def _check_dims(a: PauliOp, b: PauliOp) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"operators act on {a.n} vs {b.n} qubits")


def multiply(a: PauliOp, b: PauliOp) -> PauliOp:
    """Phase-blind product: componentwise XOR of the symplectic parts."""
    _check_dims(a, b)
    return PauliOp(a.n, a.x ^ b.x, a.z ^ b.z)


def symplectic_product(a: PauliOp, b: PauliOp) -> int:
    """1 iff a and b anticommute."""
    _check_dims(a, b)
    return parity(a.x & b.z) ^ parity(a.z & b.x)


def commutes(a: PauliOp, b: PauliOp) -> bool:
    return symplectic_product(a, b) == 0


def weight(p: PauliOp) -> int:
    """Number of qubits on which p is not the identity."""
    return (p.x | p.z).bit_count()


def enumerate_paulis(n: int, max_weight: int) -> Iterator[PauliOp]:
    """Every non-identity Pauli of weight <= max_weight, exactly once.

    Order: ascending weight, then lexicographic support, then letters in
    X < Y < Z order per support qubit. The order is part of the contract:
    search witnesses and references are reported against it.
    """
    if not 0 <= max_weight <= n:
        raise ValueError("need 0 <= max_weight <= n")
    for w in range(1, max_weight + 1):
        for support in combinations(range(n), w):
            for letters in product("XYZ", repeat=w):
                x = z = 0
                for q, letter in zip(support, letters):
                    xb, zb = _LETTER_TO_XZ[letter]
                    x |= xb << q
                    z |= zb << q
                yield PauliOp(n, x, z)


def count_paulis(n: int, max_weight: int) -> int:
    """Closed-form size of enumerate_paulis(n, max_weight)."""
    return sum(comb(n, w) * 3**w for w in range(1, max_weight + 1))


def errors_up_to_weight(n: int, max_weight: int) -> list[PauliOp]:
    """The physical error set 'all Paulis of weight <= w', identity included."""
    return [identity(n), *enumerate_paulis(n, max_weight)]
