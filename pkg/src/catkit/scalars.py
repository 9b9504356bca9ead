"""Scalar semirings used as matrix entry domains.

Three carriers are supported: Booleans under or/and, unbounded natural
numbers, and complex numbers compared within an absolute tolerance.
Every value is tagged with its semiring so that mixed arithmetic is
rejected early instead of producing silently wrong entries.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass


class SemiringMismatch(TypeError):
    """Raised when values from two different semirings meet."""


KINDS = ("bool", "nat", "complex")


@dataclass(frozen=True)
class SemiringTag:
    """Names a scalar semiring; tolerance is only meaningful for complex."""

    kind: str
    tolerance: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown semiring kind {self.kind!r}")
        if self.kind == "complex":
            if not (math.isfinite(self.tolerance) and self.tolerance >= 0.0):
                raise ValueError("complex tolerance must be finite and >= 0")
        elif self.tolerance != 0.0:
            # bool and nat equality is exact by definition
            raise ValueError(f"{self.kind} comparison is exact; tolerance must be 0")

    @property
    def exact(self) -> bool:
        return self.kind != "complex"


BOOL = SemiringTag("bool")
NAT = SemiringTag("nat")
DEFAULT_TOLERANCE = 1e-9


def complex_tag(tolerance: float = DEFAULT_TOLERANCE) -> SemiringTag:
    return SemiringTag("complex", tolerance)


COMPLEX = complex_tag()


def join_tags(a: SemiringTag, b: SemiringTag) -> SemiringTag:
    """Common tag of two operands; widest tolerance wins."""
    if a.kind != b.kind:
        raise SemiringMismatch(f"semiring mismatch: {a.kind} vs {b.kind}")
    return a if a.tolerance >= b.tolerance else b


def coerce(tag: SemiringTag, raw: object) -> object:
    """Validate and normalize a raw payload for the given semiring."""
    if tag.kind == "bool":
        if isinstance(raw, bool):
            return raw
        try:
            n = operator.index(raw)
        except TypeError:
            raise ValueError(f"not a boolean payload: {raw!r}") from None
        if n in (0, 1):
            return bool(n)
        raise ValueError(f"not a boolean payload: {raw!r}")
    if tag.kind == "nat":
        try:
            n = operator.index(raw)
        except TypeError:
            raise ValueError(f"not a natural payload: {raw!r}") from None
        if n < 0:
            raise ValueError(f"naturals are nonnegative, got {n}")
        return int(n)
    if isinstance(raw, (list, tuple)):
        if len(raw) != 2:
            raise ValueError(f"not a complex payload: {raw!r}")
        raw = complex(float(raw[0]), float(raw[1]))
    try:
        return complex(raw)
    except (TypeError, ValueError):
        raise ValueError(f"not a complex payload: {raw!r}") from None


@dataclass(frozen=True)
class ScalarValue:
    """One element of a tagged semiring."""

    tag: SemiringTag
    value: object

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", coerce(self.tag, self.value))

    def __repr__(self) -> str:
        return f"ScalarValue({self.tag.kind}, {self.value!r})"


def zero(tag: SemiringTag) -> ScalarValue:
    return ScalarValue(tag, {"bool": False, "nat": 0, "complex": 0j}[tag.kind])


def one(tag: SemiringTag) -> ScalarValue:
    return ScalarValue(tag, {"bool": True, "nat": 1, "complex": 1 + 0j}[tag.kind])


def add(a: ScalarValue, b: ScalarValue) -> ScalarValue:
    tag = join_tags(a.tag, b.tag)
    if tag.kind == "bool":
        return ScalarValue(tag, a.value or b.value)
    return ScalarValue(tag, a.value + b.value)


def mul(a: ScalarValue, b: ScalarValue) -> ScalarValue:
    tag = join_tags(a.tag, b.tag)
    if tag.kind == "bool":
        return ScalarValue(tag, a.value and b.value)
    return ScalarValue(tag, a.value * b.value)


def conj(a: ScalarValue) -> ScalarValue:
    if a.tag.kind == "complex":
        return ScalarValue(a.tag, a.value.conjugate())
    return a


def distance(a: ScalarValue, b: ScalarValue) -> float:
    """Componentwise distance used for tolerance comparison and reports."""
    join_tags(a.tag, b.tag)
    if a.tag.kind == "bool":
        return 0.0 if a.value == b.value else 1.0
    if a.tag.kind == "nat":
        d = abs(a.value - b.value)
        try:
            return float(d)
        except OverflowError:
            return math.inf
    d = a.value - b.value
    return max(abs(d.real), abs(d.imag))


def approx_eq(a: ScalarValue, b: ScalarValue) -> bool:
    tag = join_tags(a.tag, b.tag)
    if tag.exact:
        return a.value == b.value
    return distance(a, b) <= tag.tolerance
