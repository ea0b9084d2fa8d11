"""Value assignments for product-form context constraints.

A constraint system is a set of observables (opaque string ids) plus
contexts: subsets that must multiply to a target sign +1 or -1 under a
hypothetical assignment of +1/-1 values.  Three deciders are provided:

* :func:`exhaustive_search` enumerates every assignment (up to 2**24),
* :func:`parity_certificate` looks for a GF(2) parity refutation,
* :func:`check_assignment` validates a candidate assignment.

A parity certificate is a subset of contexts in which every observable
appears an even number of times while the chosen targets multiply to -1;
its existence rules out any satisfying assignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .pauli import PauliString, mutually_commuting, set_product

MAX_EXHAUSTIVE_OBSERVABLES = 24
_CHUNK = 1 << 20


class ContextConstructionError(ValueError):
    """Raised when a Pauli context is not mutually commuting."""


class UnsupportedIdentityError(ValueError):
    """Raised when a context's product is not plus or minus the identity."""


class SystemTooLargeError(ValueError):
    """Raised when exhaustive search would exceed the 2**24 state cap."""


class AssignmentInputError(ValueError):
    """Raised when an assignment does not cover the whole system."""


@dataclass(frozen=True)
class Context:
    members: tuple[str, ...]
    target: int

    def __post_init__(self) -> None:
        if self.target not in (1, -1):
            raise ValueError(f"target sign must be +1 or -1, got {self.target}")
        if len(set(self.members)) != len(self.members):
            raise ValueError(f"context members must be duplicate-free: {self.members}")


@dataclass(frozen=True)
class ConstraintSystem:
    observables: tuple[str, ...]
    contexts: tuple[Context, ...]

    def __post_init__(self) -> None:
        known = set(self.observables)
        if len(known) != len(self.observables):
            raise ValueError("observable ids must be unique")
        for ctx in self.contexts:
            missing = [m for m in ctx.members if m not in known]
            if missing:
                raise ValueError(f"context members not in observables: {missing}")

    @property
    def size(self) -> int:
        return len(self.observables)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive search.

    ``assignment`` is None on UNSAT; ``examined`` counts enumerated
    assignments and equals 2**size exactly when the system is UNSAT.
    """

    assignment: dict[str, int] | None
    examined: int

    @property
    def satisfiable(self) -> bool:
        return self.assignment is not None


@dataclass(frozen=True)
class ParityCertificate:
    """Indices of contexts forming a parity refutation."""

    contexts: tuple[int, ...]


def system_from_contexts(raw: Iterable[tuple[Sequence[str], int]]) -> ConstraintSystem:
    """Build a system from (member ids, target) pairs, deduplicating ids
    in first-seen order."""
    observables: list[str] = []
    seen: set[str] = set()
    contexts: list[Context] = []
    for members, target in raw:
        for m in members:
            if m not in seen:
                seen.add(m)
                observables.append(m)
        contexts.append(Context(tuple(members), target))
    return ConstraintSystem(tuple(observables), tuple(contexts))


def build_from_pauli(contexts: Sequence[Sequence[PauliString]]) -> ConstraintSystem:
    """Turn lists of commuting Pauli strings into a constraint system.

    Each context must be mutually commuting and its ordered product must
    be plus or minus the identity; the sign becomes the context target.
    Observables are identified by their exact text encoding, so a string
    and its negative are distinct.
    """
    raw: list[tuple[list[str], int]] = []
    for ctx in contexts:
        items = list(ctx)
        if not mutually_commuting(items):
            raise ContextConstructionError(
                f"context is not mutually commuting: {[str(p) for p in items]}"
            )
        sign = set_product(items).identity_sign() if items else 1
        if sign is None:
            raise UnsupportedIdentityError(
                "context product is not +identity or -identity: "
                f"{[str(p) for p in items]}"
            )
        raw.append(([str(p) for p in items], sign))
    return system_from_contexts(raw)


def _context_masks(sys: ConstraintSystem) -> tuple[np.ndarray, np.ndarray]:
    index = {obs: i for i, obs in enumerate(sys.observables)}
    masks = np.zeros(len(sys.contexts), dtype=np.uint32)
    want_odd = np.zeros(len(sys.contexts), dtype=np.uint32)
    for j, ctx in enumerate(sys.contexts):
        mask = 0
        for m in ctx.members:
            mask |= 1 << index[m]
        masks[j] = mask
        want_odd[j] = 1 if ctx.target == -1 else 0
    return masks, want_odd


def _parity(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    v ^= v >> np.uint32(16)
    v ^= v >> np.uint32(8)
    v ^= v >> np.uint32(4)
    v ^= v >> np.uint32(2)
    v ^= v >> np.uint32(1)
    return v & np.uint32(1)


def exhaustive_search(sys: ConstraintSystem) -> SearchResult:
    """Try all 2**size assignments in plain binary counter order.

    Bit j of the counter set means observable j takes the value -1.  The
    first satisfying assignment in that order is returned; on UNSAT the
    examined count is exactly 2**size.  Systems with more than 24
    observables are rejected; use parity_certificate for those.
    """
    k = sys.size
    if k > MAX_EXHAUSTIVE_OBSERVABLES:
        raise SystemTooLargeError(
            f"{k} observables exceed the exhaustive cap of "
            f"{MAX_EXHAUSTIVE_OBSERVABLES}; use parity_certificate for large systems"
        )
    masks, want_odd = _context_masks(sys)
    total = 1 << k
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        counters = np.arange(start, stop, dtype=np.uint32)
        ok = np.ones(counters.shape, dtype=bool)
        for mask, odd in zip(masks, want_odd):
            ok &= _parity(counters & mask) == odd
        hits = np.flatnonzero(ok)
        if hits.size:
            c = int(counters[hits[0]])
            assignment = {
                obs: -1 if (c >> j) & 1 else 1 for j, obs in enumerate(sys.observables)
            }
            return SearchResult(assignment, examined=start + int(hits[0]) + 1)
    return SearchResult(None, examined=total)


def check_assignment(sys: ConstraintSystem, assignment: Mapping[str, int]) -> bool:
    """True iff every context's value product equals its target."""
    missing = [obs for obs in sys.observables if obs not in assignment]
    if missing:
        raise AssignmentInputError(f"assignment is missing observables: {missing}")
    bad = [v for v in assignment.values() if v not in (1, -1)]
    if bad:
        raise AssignmentInputError(f"assignment values must be +1 or -1, got {bad}")
    for ctx in sys.contexts:
        prod = 1
        for m in ctx.members:
            prod *= assignment[m]
        if prod != ctx.target:
            return False
    return True


def parity_certificate(sys: ConstraintSystem) -> ParityCertificate | None:
    """Solve for a context subset refuting the system over GF(2).

    Unknown x_j = 1 means context j is chosen.  The requirements are:
    every observable is covered an even number of times, and the chosen
    targets multiply to -1.  Solved by Gaussian elimination with pivots
    taken at the lowest available row index, free variables set to zero,
    so the result is reproducible.  Returns None when no subset exists;
    absence of a certificate does not prove satisfiability.
    """
    m = len(sys.contexts)
    rows: list[list[int]] = []
    for obs in sys.observables:
        mask = 0
        for j, ctx in enumerate(sys.contexts):
            if obs in ctx.members:
                mask |= 1 << j
        rows.append([mask, 0])
    target_mask = 0
    for j, ctx in enumerate(sys.contexts):
        if ctx.target == -1:
            target_mask |= 1 << j
    rows.append([target_mask, 1])

    pivot_row_of_col: dict[int, int] = {}
    rank = 0
    for col in range(m):
        piv = next((i for i in range(rank, len(rows)) if (rows[i][0] >> col) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and (rows[i][0] >> col) & 1:
                rows[i][0] ^= rows[rank][0]
                rows[i][1] ^= rows[rank][1]
        pivot_row_of_col[col] = rank
        rank += 1
    for i in range(rank, len(rows)):
        if rows[i][0] == 0 and rows[i][1] == 1:
            return None
    chosen = tuple(sorted(col for col, r in pivot_row_of_col.items() if rows[r][1] == 1))
    return ParityCertificate(chosen)


def certificate_is_valid(sys: ConstraintSystem, cert: ParityCertificate) -> bool:
    """Re-check a certificate directly against its definition."""
    counts: dict[str, int] = {obs: 0 for obs in sys.observables}
    product = 1
    for j in cert.contexts:
        ctx = sys.contexts[j]
        product *= ctx.target
        for mmb in ctx.members:
            counts[mmb] += 1
    return product == -1 and all(c % 2 == 0 for c in counts.values())


class ContextFileError(ValueError):
    """Parse failure in a context file; carries the 1-based line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_context_file(text: str) -> ConstraintSystem:
    """Parse the context-file format: one context per line,
    ``target_sign: id1 id2 id3 ...``.  Blank lines and lines starting
    with ``#`` are skipped."""
    raw: list[tuple[list[str], int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if ":" not in stripped:
            raise ContextFileError(lineno, "expected 'target_sign: id1 id2 ...'")
        sign_text, _, members_text = stripped.partition(":")
        sign_text = sign_text.strip()
        if sign_text not in ("+1", "-1"):
            raise ContextFileError(lineno, f"target sign must be +1 or -1, got {sign_text!r}")
        members = members_text.split()
        if not members:
            raise ContextFileError(lineno, "context has no members")
        if len(set(members)) != len(members):
            raise ContextFileError(lineno, "context members must be duplicate-free")
        raw.append((members, 1 if sign_text == "+1" else -1))
    if not raw:
        raise ContextFileError(1, "no contexts found")
    return system_from_contexts(raw)


def load_context_file(path: str) -> ConstraintSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_context_file(fh.read())
