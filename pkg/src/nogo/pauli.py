"""Exact algebra of n-qubit Pauli strings with phase tracking.

A Pauli string is a tensor word over {I, X, Y, Z} together with a global
phase i^k, k in Z4.  Everything here is exact symbol manipulation; no
floating point is involved.  The dense-matrix counterpart used to
cross-check this module lives in :mod:`nogo.matrices`.

Text encoding: an optional leading phase token ("+1", "+i", "-1", "-i")
followed by the letters, e.g. ``-1 XYZ``.  A bare letter word means
phase +1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_QUBITS = 16

_LETTERS = "IXYZ"

# Single-qubit products a*b -> (i-exponent, letter).  Cyclic products pick
# up +i, anticyclic ones -i.
_SINGLE_PRODUCT = {
    ("I", "I"): (0, "I"), ("I", "X"): (0, "X"), ("I", "Y"): (0, "Y"), ("I", "Z"): (0, "Z"),
    ("X", "I"): (0, "X"), ("Y", "I"): (0, "Y"), ("Z", "I"): (0, "Z"),
    ("X", "X"): (0, "I"), ("Y", "Y"): (0, "I"), ("Z", "Z"): (0, "I"),
    ("X", "Y"): (1, "Z"), ("Y", "Z"): (1, "X"), ("Z", "X"): (1, "Y"),
    ("Y", "X"): (3, "Z"), ("Z", "Y"): (3, "X"), ("X", "Z"): (3, "Y"),
}

_PHASE_TOKENS = {"+1": 0, "+i": 1, "-1": 2, "-i": 3}
_TOKEN_OF_PHASE = {v: k for k, v in _PHASE_TOKENS.items()}

_ENCODING_RE = re.compile(r"^\s*([+-][1i])?\s*([IXYZ]+)\s*$")


class DimensionMismatch(ValueError):
    """Raised when two strings with different qubit counts are combined."""


@dataclass(frozen=True)
class PauliString:
    """An n-qubit Pauli word with an exact phase i**phase.

    Attributes:
        letters: per-qubit symbols, one of I, X, Y, Z each.
        phase: exponent k in Z4, meaning a global factor i**k.
    """

    letters: str
    phase: int = 0

    def __post_init__(self) -> None:
        if not (1 <= len(self.letters) <= MAX_QUBITS):
            raise ValueError(
                f"qubit count must be between 1 and {MAX_QUBITS}, got {len(self.letters)}"
            )
        if any(ch not in _LETTERS for ch in self.letters):
            raise ValueError(f"letters must be drawn from {{I,X,Y,Z}}, got {self.letters!r}")
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def n(self) -> int:
        return len(self.letters)

    def identity_sign(self) -> int | None:
        """+1 or -1 when this string is plus or minus the identity, else None."""
        if any(ch != "I" for ch in self.letters):
            return None
        if self.phase == 0:
            return 1
        if self.phase == 2:
            return -1
        return None

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.letters, self.phase + 2)

    def __str__(self) -> str:
        if self.phase == 0:
            return self.letters
        return f"{_TOKEN_OF_PHASE[self.phase]} {self.letters}"


def identity(n: int) -> PauliString:
    """The all-I string with phase +1, the unit of multiplication."""
    return PauliString("I" * n)


def parse_pauli(text: str) -> PauliString:
    """Parse the text encoding, e.g. ``XYZ`` or ``-1 XYZ``."""
    m = _ENCODING_RE.match(text)
    if m is None:
        raise ValueError(f"not a Pauli string encoding: {text!r}")
    token, letters = m.groups()
    phase = _PHASE_TOKENS[token] if token else 0
    return PauliString(letters, phase)


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Exact operator product p*q with accumulated phase."""
    if p.n != q.n:
        raise DimensionMismatch(f"qubit counts differ: {p.n} vs {q.n}")
    phase = p.phase + q.phase
    out = []
    for a, b in zip(p.letters, q.letters):
        k, letter = _SINGLE_PRODUCT[a, b]
        phase += k
        out.append(letter)
    return PauliString("".join(out), phase)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff p*q == q*p.

    Two strings commute exactly when the number of positions where both
    letters are non-identity and different is even.
    """
    if p.n != q.n:
        raise DimensionMismatch(f"qubit counts differ: {p.n} vs {q.n}")
    anti = sum(
        1 for a, b in zip(p.letters, q.letters) if a != "I" and b != "I" and a != b
    )
    return anti % 2 == 0


def mutually_commuting(strings: Sequence[PauliString]) -> bool:
    """True iff every pair in the set commutes.  Empty sets count as True."""
    items = list(strings)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if not commutes(items[i], items[j]):
                return False
    return True


def set_product(strings: Iterable[PauliString], *, n: int | None = None) -> PauliString:
    """Ordered product of a list of strings.

    For a mutually commuting list the result is order independent.  The
    empty product is the identity, which requires the qubit count ``n``
    to be supplied.
    """
    items = list(strings)
    if not items:
        if n is None:
            raise ValueError("empty product needs an explicit qubit count n")
        return identity(n)
    acc = items[0]
    for s in items[1:]:
        acc = multiply(acc, s)
    return acc


def _lines(rows: Sequence[Sequence[str]]) -> tuple[tuple[PauliString, ...], ...]:
    return tuple(tuple(parse_pauli(s) for s in row) for row in rows)


# The nine two-qubit observables arranged on six lines (three rows, then
# three columns).  Every line is mutually commuting; the product of each
# line is +identity except the right-hand column, which is -identity.
SQUARE_LINES = _lines(
    [
        ["XI", "IX", "XX"],
        ["IY", "YI", "YY"],
        ["XY", "YX", "ZZ"],
        ["XI", "IY", "XY"],
        ["IX", "YI", "YX"],
        ["XX", "YY", "ZZ"],
    ]
)

# The ten three-qubit observables arranged on the five lines of a
# five-pointed star.  Lines are ordered with the horizontal line (the
# four triple products, whose line product is -identity) last.
STAR_LINES = _lines(
    [
        ["XII", "IXI", "IIX", "XXX"],
        ["YII", "IYI", "IIX", "YYX"],
        ["YII", "IXI", "IIY", "YXY"],
        ["XII", "IYI", "IIY", "XYY"],
        ["XXX", "YYX", "YXY", "XYY"],
    ]
)

STAR_HORIZONTAL = STAR_LINES[-1]
