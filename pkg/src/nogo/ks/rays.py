"""Projective directions in 3-space and their orthogonality structure.

A :class:`Ray` carries either exact Q(sqrt2) coordinates or plain floats;
the two modes never mix inside one dot product.  Rays are identified with
their negatives.  Canonical form: the first nonzero component is
positive, with exact rays scaled so that component equals 1 and approx
rays unit-normalized.

Ray file format, one ray per line:

* exact:  ``E p/q+r/s*sqrt2, p/q+r/s*sqrt2, p/q+r/s*sqrt2``
* approx: ``F x, y, z`` with decimal components.

Blank lines and ``#`` comments are allowed.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .qsqrt2 import QSqrt2

_SIGN_EPS = 1e-12


class ModeError(ValueError):
    """Raised when exact and approx rays are mixed."""


class RayInputError(ValueError):
    """Raised for zero vectors and other malformed ray inputs."""


@dataclass(frozen=True)
class Ray:
    coords: tuple
    label: str | None = None

    def __post_init__(self) -> None:
        if len(self.coords) != 3:
            raise RayInputError(f"a ray needs 3 components, got {len(self.coords)}")
        if self.exact:
            if all(c.is_zero() for c in self.coords):
                raise RayInputError("zero vector is not a ray")
        else:
            if not all(isinstance(c, float) for c in self.coords):
                raise RayInputError("ray components must be all QSqrt2 or all float")
            if not all(math.isfinite(c) for c in self.coords):
                raise RayInputError("ray components must be finite")
            if all(c == 0.0 for c in self.coords):
                raise RayInputError("zero vector is not a ray")

    @property
    def exact(self) -> bool:
        return isinstance(self.coords[0], QSqrt2)

    def canonical(self) -> Ray:
        if self.exact:
            first = next(c for c in self.coords if not c.is_zero())
            scale = first.inverse()
            if first.sign() < 0:
                scale = -scale
            return Ray(tuple(c * scale for c in self.coords), self.label)
        v = np.array(self.coords, dtype=float)
        v /= np.linalg.norm(v)
        for c in v:
            if abs(c) > _SIGN_EPS:
                if c < 0:
                    v = -v
                break
        return Ray(tuple(float(c) if c != 0.0 else 0.0 for c in v), self.label)

    def float_coords(self) -> tuple[float, float, float]:
        if self.exact:
            return tuple(float(c) for c in self.coords)
        return self.coords


def exact_ray(c1, c2, c3, label: str | None = None) -> Ray:
    """Build an exact ray from ints, Fractions, QSqrt2 values, or (p, q) pairs."""

    def conv(c) -> QSqrt2:
        if isinstance(c, QSqrt2):
            return c
        if isinstance(c, tuple):
            return QSqrt2(Fraction(c[0]), Fraction(c[1]))
        return QSqrt2(Fraction(c), Fraction(0))

    return Ray((conv(c1), conv(c2), conv(c3)), label)


def approx_ray(x: float, y: float, z: float, label: str | None = None) -> Ray:
    return Ray((float(x), float(y), float(z)), label)


def dot(u: Ray, v: Ray):
    """Inner product of canonical representatives; exact or float per mode."""
    if u.exact != v.exact:
        raise ModeError("cannot mix exact and approx rays in one dot product")
    uc, vc = u.canonical(), v.canonical()
    if u.exact:
        total = QSqrt2.of(0)
        for a, b in zip(uc.coords, vc.coords):
            total = total + a * b
        return total
    return float(np.dot(uc.coords, vc.coords))


def same_ray(u: Ray, v: Ray, tolerance: float = 1e-9) -> bool:
    if u.exact != v.exact:
        return False
    if u.exact:
        return u.canonical().coords == v.canonical().coords
    return 1.0 - abs(float(np.dot(u.canonical().coords, v.canonical().coords))) <= tolerance


@dataclass(frozen=True)
class ColoringInstance:
    """Deduplicated rays plus their triad and bare-pair constraints.

    ``triads`` lists every mutually orthogonal index triple; ``pairs``
    lists orthogonal index pairs not contained in any triad.  The
    tolerance applies to approx mode only; exact orthogonality is an
    exact zero test.
    """

    rays: tuple[Ray, ...]
    triads: tuple[tuple[int, int, int], ...]
    pairs: tuple[tuple[int, int], ...]
    tolerance: float

    @property
    def exact(self) -> bool:
        return self.rays[0].exact


def build_instance(rays, tolerance: float = 1e-9) -> ColoringInstance:
    """Canonicalize, dedupe, and scan for orthogonal pairs and triads."""
    items = [r.canonical() for r in rays]
    if not items:
        raise RayInputError("at least one ray is required")
    exact = items[0].exact
    if any(r.exact != exact for r in items):
        raise ModeError("all rays in an instance must share one arithmetic mode")

    kept: list[Ray] = []
    if exact:
        seen: dict[tuple, int] = {}
        for r in items:
            if r.coords not in seen:
                seen[r.coords] = len(kept)
                kept.append(r)
    else:
        for r in items:
            if not any(same_ray(r, k, tolerance) for k in kept):
                kept.append(r)

    n = len(kept)
    orth = np.zeros((n, n), dtype=bool)
    if exact:
        for i in range(n):
            for j in range(i + 1, n):
                if dot(kept[i], kept[j]).is_zero():
                    orth[i, j] = orth[j, i] = True
    else:
        mat = np.array([r.coords for r in kept], dtype=float)
        gram = mat @ mat.T
        orth = np.abs(gram) <= tolerance
        np.fill_diagonal(orth, False)

    triads: list[tuple[int, int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if orth[i, j]:
                both = np.flatnonzero(orth[i] & orth[j])
                triads.extend((i, j, int(k)) for k in both if k > j)
    in_triad: set[tuple[int, int]] = set()
    for t in triads:
        in_triad.update(itertools.combinations(t, 2))
    pairs = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if orth[i, j] and (i, j) not in in_triad
    ]
    return ColoringInstance(tuple(kept), tuple(triads), tuple(pairs), tolerance)


class RayFileError(ValueError):
    """Parse failure in a ray file; carries the 1-based line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


_RAT_RE = r"-?\d+(?:/\d+)?"
_EXACT_COMPONENT_RE = re.compile(
    rf"^\s*({_RAT_RE})\s*([+-])\s*({_RAT_RE})\s*\*\s*sqrt2\s*$"
)


def _parse_exact_component(text: str) -> QSqrt2:
    m = _EXACT_COMPONENT_RE.match(text)
    if m is not None:
        p, sign, r = m.groups()
        q = Fraction(r)
        return QSqrt2(Fraction(p), q if sign == "+" else -q)
    # bare rational, no sqrt2 part
    if re.match(rf"^\s*{_RAT_RE}\s*$", text):
        return QSqrt2(Fraction(text.strip()), Fraction(0))
    raise ValueError(f"bad exact component: {text!r}")


def _format_exact_component(c: QSqrt2) -> str:
    def rat(x: Fraction) -> str:
        return f"{x.numerator}/{x.denominator}"

    sign = "+" if c.q >= 0 else "-"
    return f"{rat(c.p)}{sign}{rat(abs(c.q))}*sqrt2"


def parse_ray_line(line: str) -> Ray:
    stripped = line.strip()
    mode, _, rest = stripped.partition(" ")
    parts = [p.strip() for p in rest.split(",")]
    if mode not in ("E", "F") or len(parts) != 3:
        raise ValueError("expected 'E c1, c2, c3' or 'F x, y, z'")
    if mode == "E":
        return Ray(tuple(_parse_exact_component(p) for p in parts))
    try:
        values = tuple(float(p) for p in parts)
    except ValueError:
        raise ValueError(f"bad float components: {rest!r}") from None
    return Ray(values)


def format_ray_line(ray: Ray) -> str:
    ray = ray.canonical()
    if ray.exact:
        return "E " + ", ".join(_format_exact_component(c) for c in ray.coords)
    return "F " + ", ".join(repr(c) for c in ray.coords)


def parse_ray_file(text: str) -> list[Ray]:
    rays: list[Ray] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rays.append(parse_ray_line(stripped))
        except ValueError as exc:
            raise RayFileError(lineno, str(exc)) from None
    if not rays:
        raise RayFileError(1, "no rays found")
    return rays


def load_ray_file(path: str) -> list[Ray]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_ray_file(fh.read())


def format_ray_file(rays) -> str:
    return "\n".join(format_ray_line(r) for r in rays) + "\n"
