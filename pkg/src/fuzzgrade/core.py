"""Triangular and trapezoidal fuzzy numbers.

Both shapes are immutable value types.  The arithmetic follows the usual
closed-form rules for these shapes: sums and differences are computed on
the defining entries, and a triangular number ``(a, b, c)`` is promoted to
the trapezoid ``(a, b, b, c)`` whenever it meets a trapezoid.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union


class EmptyInputError(ValueError):
    """Raised when an aggregate is requested over no data."""

    def __init__(self, message: str = "empty input"):
        super().__init__(message)


class DegenerateError(ValueError):
    """Raised when a fuzzy number encloses zero area."""

    def __init__(self, message: str = "degenerate (zero-area) fuzzy number"):
        super().__init__(message)


@dataclass(frozen=True)
class ClosedInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"interval bounds out of order: [{self.lo}, {self.hi}]")

    def __add__(self, other: ClosedInterval) -> ClosedInterval:
        return ClosedInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: ClosedInterval) -> ClosedInterval:
        return ClosedInterval(self.lo - other.hi, self.hi - other.lo)

    def __contains__(self, x) -> bool:
        if isinstance(x, ClosedInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo


class _FuzzyArithmetic:
    """Operator sugar shared by both shapes; the work is done by the module functions."""

    __slots__ = ()

    def __add__(self, other):
        if isinstance(other, (TriangularFN, TrapezoidalFN)):
            return add(self, other)
        if isinstance(other, (int, float)):
            return scalar_add(other, self)
        return NotImplemented

    def __radd__(self, other):
        if isinstance(other, (int, float)):
            return scalar_add(other, self)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, (TriangularFN, TrapezoidalFN)):
            return subtract(self, other)
        if isinstance(other, (int, float)):
            return scalar_add(-other, self)
        return NotImplemented

    def __neg__(self):
        return opposite(self)

    def __mul__(self, k):
        if isinstance(k, (int, float)):
            return scalar_mul(k, self)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, (int, float)):
            return scalar_mul(1.0 / k, self)
        return NotImplemented

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _check_finite(entries):
    for e in entries:
        if not math.isfinite(e):
            raise ValueError(f"fuzzy number entries must be finite, got {entries}")


@dataclass(frozen=True)
class TriangularFN(_FuzzyArithmetic):
    """Fuzzy number ``(a, b, c)`` meaning "approximately b".

    Degenerate ramps (``a == b`` or ``b == c``) are accepted.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        _check_finite(self.entries)
        if not self.a <= self.b <= self.c:
            raise ValueError(f"triangular entries must satisfy a <= b <= c, got {self.entries}")

    @property
    def entries(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @property
    def support(self) -> ClosedInterval:
        return ClosedInterval(self.a, self.c)

    @property
    def core(self) -> ClosedInterval:
        return ClosedInterval(self.b, self.b)

    def to_trapezoidal(self) -> TrapezoidalFN:
        return TrapezoidalFN(self.a, self.b, self.b, self.c)

    def __call__(self, x: float) -> float:
        return membership(self, x)


@dataclass(frozen=True)
class TrapezoidalFN(_FuzzyArithmetic):
    """Fuzzy number ``(a, b, c, d)`` meaning "approximately in [b, c]"."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        _check_finite(self.entries)
        if not self.a <= self.b <= self.c <= self.d:
            raise ValueError(
                f"trapezoidal entries must satisfy a <= b <= c <= d, got {self.entries}"
            )

    @property
    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    @property
    def support(self) -> ClosedInterval:
        return ClosedInterval(self.a, self.d)

    @property
    def core(self) -> ClosedInterval:
        return ClosedInterval(self.b, self.c)

    def to_trapezoidal(self) -> TrapezoidalFN:
        return self

    def __call__(self, x: float) -> float:
        return membership(self, x)


FuzzyNumber = Union[TriangularFN, TrapezoidalFN]


def fuzzy_number(entries: Sequence[float]) -> FuzzyNumber:
    """Build a TFN from three entries or a TpFN from four."""
    entries = tuple(float(e) for e in entries)
    if len(entries) == 3:
        return TriangularFN(*entries)
    if len(entries) == 4:
        return TrapezoidalFN(*entries)
    raise ValueError(f"expected 3 or 4 entries, got {len(entries)}")


def _as_trapezoid_entries(fn: FuzzyNumber) -> tuple[float, float, float, float]:
    return fn.to_trapezoidal().entries


def _same_shape(A: FuzzyNumber, B: FuzzyNumber):
    """Return both operands' entries, promoting to four entries on mixed input."""
    if type(A) is type(B):
        return A.entries, B.entries, type(A)
    return _as_trapezoid_entries(A), _as_trapezoid_entries(B), TrapezoidalFN


_BELOW_ONE = math.nextafter(1.0, 0.0)


def membership(fn: FuzzyNumber, x: float) -> float:
    """Membership grade of ``x``.

    On a zero-width ramp the shared abscissa belongs to the core, so it
    gets grade 1.
    """
    a, b, c, d = _as_trapezoid_entries(fn)
    if x < a or x > d:
        return 0.0
    if b <= x <= c:
        return 1.0
    # ramps stay below 1 even where the ratio rounds up, so 1 marks the core exactly
    if x < b:
        return min((x - a) / (b - a), _BELOW_ONE)
    return min((d - x) / (d - c), _BELOW_ONE)


def alpha_cut(fn: FuzzyNumber, alpha: float) -> ClosedInterval:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    a, b, c, d = _as_trapezoid_entries(fn)
    lo = a + alpha * (b - a)
    hi = d - alpha * (d - c)
    # keep the cut well-formed when rounding pushes endpoints past each other
    return ClosedInterval(min(lo, b), max(hi, c))


class Comparison(enum.Enum):
    LESS_OR_EQUAL = "less_or_equal"
    GREATER_OR_EQUAL = "greater_or_equal"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"

    @property
    def comparable(self) -> bool:
        return self is not Comparison.INCOMPARABLE


def compare(A: FuzzyNumber, B: FuzzyNumber, atol: float = 0.0) -> Comparison:
    """Partial order on fuzzy numbers via their alpha-cut endpoints.

    The cut endpoints are affine in alpha, so checking the defining entries
    is the same as checking every level.
    """
    ea, eb, _ = _same_shape(A, B)
    le = all(x <= y + atol for x, y in zip(ea, eb))
    ge = all(x >= y - atol for x, y in zip(ea, eb))
    if le and ge:
        return Comparison.EQUIVALENT
    if le:
        return Comparison.LESS_OR_EQUAL
    if ge:
        return Comparison.GREATER_OR_EQUAL
    return Comparison.INCOMPARABLE


def add(A: FuzzyNumber, B: FuzzyNumber) -> FuzzyNumber:
    ea, eb, cls = _same_shape(A, B)
    return cls(*(x + y for x, y in zip(ea, eb)))


def opposite(A: FuzzyNumber) -> FuzzyNumber:
    return type(A)(*(-x for x in reversed(A.entries)))


def subtract(A: FuzzyNumber, B: FuzzyNumber) -> FuzzyNumber:
    ea, eb, cls = _same_shape(A, B)
    return cls(*(x - y for x, y in zip(ea, reversed(eb))))


def scalar_add(k: float, A: FuzzyNumber) -> FuzzyNumber:
    return type(A)(*(k + x for x in A.entries))


def scalar_mul(k: float, A: FuzzyNumber) -> FuzzyNumber:
    if k < 0:
        return type(A)(*(k * x for x in reversed(A.entries)))
    if k == 0:
        return type(A)(*(0.0 for _ in A.entries))
    return type(A)(*(k * x for x in A.entries))


def mean_fn(fns: Iterable[FuzzyNumber]) -> FuzzyNumber:
    """Mean value ``(A_1 + ... + A_n) / n`` of same-shape fuzzy numbers."""
    fns = list(fns)
    if not fns:
        raise EmptyInputError()
    if len(fns) == 1:
        return fns[0]
    total = fns[0]
    for fn in fns[1:]:
        total = add(total, fn)
    n = len(fns)
    # divide rather than multiply by 1/n so integer data averages exactly
    return type(total)(*(x / n for x in total.entries))


def isclose(A: FuzzyNumber, B: FuzzyNumber, atol: float = 1e-9) -> bool:
    """Entrywise equality with an absolute tolerance, promoting mixed shapes."""
    ea, eb, _ = _same_shape(A, B)
    return all(abs(x - y) <= atol for x, y in zip(ea, eb))
