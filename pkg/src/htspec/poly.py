"""Univariate polynomials over the two scalar backends, plus root finding.

Coefficients are stored in ascending degree with the leading coefficient
nonzero. Exact (rational) polynomials stay exact through all ring
operations and are only converted to complex doubles when roots are
requested.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import scalars
from .errors import DomainError, NonConvergenceError
from .scalars import Scalar

RATIONAL = "rational"
COMPLEX = "complex"

_ABERTH_MAX_SWEEPS = 400
_POLISH_STEPS = 60


class Polynomial:
    """Immutable dense polynomial with a backend tag."""

    __slots__ = ("backend", "coeffs")

    def __init__(self, coeffs: Iterable[Scalar], backend: str | None = None):
        raw = list(coeffs)
        if backend is None:
            backend = RATIONAL if scalars.all_exact(raw) else COMPLEX
        if backend == RATIONAL:
            vals = [Fraction(c) for c in raw]
            while vals and vals[-1] == 0:
                vals.pop()
        elif backend == COMPLEX:
            vals = [scalars.to_complex(c) for c in raw]
            while vals and vals[-1] == 0:
                vals.pop()
        else:
            raise DomainError(f"unknown backend {backend!r}")
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "coeffs", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, backend: str = RATIONAL) -> "Polynomial":
        return cls((), backend)

    @classmethod
    def one(cls, backend: str = RATIONAL) -> "Polynomial":
        return cls((1,), backend)

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        return cls((value,))

    @classmethod
    def variable(cls, backend: str = RATIONAL) -> "Polynomial":
        return cls((0, 1), backend)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def to_complex(self) -> "Polynomial":
        if self.backend == COMPLEX:
            return self
        return Polynomial(self.coeffs, COMPLEX)

    def _pair(self, other: "Polynomial"):
        if self.backend == other.backend:
            return self, other
        return self.to_complex(), other.to_complex()

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self._pair(other)
        n = max(len(a.coeffs), len(b.coeffs))
        zero = Fraction(0) if a.backend == RATIONAL else 0j
        out = [zero] * n
        for i, c in enumerate(a.coeffs):
            out[i] += c
        for i, c in enumerate(b.coeffs):
            out[i] += c
        return Polynomial(out, a.backend)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs], self.backend)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self._pair(other)
        if a.is_zero or b.is_zero:
            return Polynomial.zero(a.backend)
        zero = Fraction(0) if a.backend == RATIONAL else 0j
        out = [zero] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            if ca == 0:
                continue
            for j, cb in enumerate(b.coeffs):
                out[i + j] += ca * cb
        return Polynomial(out, a.backend)

    def scale(self, factor: Scalar) -> "Polynomial":
        if scalars.is_exact(factor) and self.backend == RATIONAL:
            return Polynomial([c * Fraction(factor) for c in self.coeffs], RATIONAL)
        z = scalars.to_complex(factor)
        return Polynomial([scalars.to_complex(c) * z for c in self.coeffs], COMPLEX)

    def evaluate(self, x: Scalar) -> Scalar:
        """Horner evaluation; exact when both backend and argument are exact."""
        if self.backend == RATIONAL and scalars.is_exact(x):
            acc = Fraction(0)
            xf = Fraction(x)
            for c in reversed(self.coeffs):
                acc = acc * xf + c
            return acc
        z = scalars.to_complex(x)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + scalars.to_complex(c)
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.backend == other.backend
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.backend, self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r}, backend={self.backend!r})"

    def to_json(self) -> dict:
        return {
            "backend": self.backend,
            "coeffs": [scalars.format_scalar(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Polynomial":
        return cls([scalars.parse_scalar(c) for c in obj["coeffs"]], obj["backend"])


def _horner2(coeffs: Sequence[complex], z: complex) -> tuple[complex, complex]:
    """Value and first derivative in one pass."""
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _newton_polish(coeffs: Sequence[complex], z: complex) -> complex:
    best = z
    best_err = abs(_horner2(coeffs, z)[0])
    for _ in range(_POLISH_STEPS):
        p, dp = _horner2(coeffs, z)
        if p == 0 or dp == 0:
            break
        z = z - p / dp
        err = abs(_horner2(coeffs, z)[0])
        if err < best_err:
            best, best_err = z, err
        else:
            break
    return best


def _aberth(coeffs: Sequence[complex], tol: float) -> list[complex]:
    """Simultaneous root iteration on a monic-normalized polynomial."""
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    d = len(monic) - 1
    if d == 1:
        return [-monic[0]]

    radius = 1.0 + max(abs(c) for c in monic[:-1])
    # Fixed angular offset keeps the start off the axes and deterministic.
    z = [radius * cmath.exp(1j * (2.0 * math.pi * j / d + 0.4)) for j in range(d)]

    for _ in range(_ABERTH_MAX_SWEEPS):
        moved = 0.0
        for j in range(d):
            p, dp = _horner2(monic, z[j])
            if p == 0:
                continue
            if dp == 0:
                z[j] *= 1.0 + 1e-8
                moved = math.inf
                continue
            ratio = p / dp
            repel = 0j
            for i in range(d):
                if i == j:
                    continue
                diff = z[j] - z[i]
                if diff == 0:
                    diff = 1e-12 * (1.0 + abs(z[j]))
                repel += 1.0 / diff
            denom = 1.0 - ratio * repel
            step = ratio if denom == 0 else ratio / denom
            z[j] -= step
            moved = max(moved, abs(step) / (1.0 + abs(z[j])))
        if moved < 1e-15:
            break

    return [_newton_polish(monic, zj) for zj in z]


def find_roots(p: Polynomial, tol: float = 1e-10) -> list[complex]:
    """All deg(p) roots with multiplicity, sorted by (Re, Im).

    Each returned root satisfies the backward-error bound
    |p(root)| <= tol * max|c_i| * max(1, |root|)^deg.
    """
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    if p.is_zero:
        raise DomainError("the zero polynomial has no root set")
    coeffs = [scalars.to_complex(c) for c in p.coeffs]
    d = len(coeffs) - 1
    if d == 0:
        return []

    shift = 0
    while coeffs[shift] == 0:
        shift += 1
    roots = [0j] * shift
    reduced = coeffs[shift:]
    if len(reduced) > 1:
        roots.extend(_aberth(reduced, tol))

    roots.sort(key=lambda z: (z.real, z.imag))
    scale = max(abs(c) for c in coeffs)
    failures = []
    for z in roots:
        err = abs(_horner2(coeffs, z)[0])
        if err > tol * scale * max(1.0, abs(z)) ** d:
            failures.append((z, err))
    if failures:
        raise NonConvergenceError(
            f"root refinement missed tolerance for {len(failures)} root(s)",
            state={"roots": roots, "failures": failures},
        )
    return roots


def largest_real_root(p: Polynomial, tol: float = 1e-8) -> float:
    """Maximum real root; roots with |Im| <= tol * max(1, |root|) count as real."""
    candidates = [
        z.real for z in find_roots(p) if abs(z.imag) <= tol * max(1.0, abs(z))
    ]
    if not candidates:
        raise DomainError("polynomial has no real root within tolerance")
    return max(candidates)


def deflate_exact_root(p: Polynomial, root: Scalar) -> Polynomial | None:
    """Divide an exact polynomial by (x - root), or None if root is not a root.

    Synthetic division in rational arithmetic; only the rational backend
    can certify the zero remainder exactly.
    """
    if p.backend != RATIONAL or p.degree < 1:
        return None
    r = Fraction(root)
    d = p.degree
    quotient = [Fraction(0)] * d
    quotient[d - 1] = p.coeffs[d]
    for i in range(d - 1, 0, -1):
        quotient[i - 1] = p.coeffs[i] + r * quotient[i]
    remainder = p.coeffs[0] + r * quotient[0]
    if remainder != 0:
        return None
    return Polynomial(quotient, RATIONAL)
