"""Base types and run-time values.

The base-type catalog is closed: every sigil of every universe denotes one
of the five carriers below, and values never leave their carrier.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Any

from .errors import InvalidBound, TypeMismatch


class BaseType(enum.Enum):
    BOOLEAN = "boolean"
    NATURAL = "natural"
    STRING = "string"
    UNIT = "unit"
    FIELDMAP = "fieldmap"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, tag: str) -> "BaseType":
        try:
            return cls(tag)
        except ValueError:
            raise TypeMismatch(f"unknown base type {tag!r}") from None


@dataclass(frozen=True)
class Value:
    """A datum tagged with its carrier.

    ``data`` is a ``bool``, non-negative ``int``, ``str``, ``None`` (unit) or,
    for fieldmaps, a tuple of ``(field, value)`` pairs sorted by field so that
    equality ignores insertion order.
    """

    base: BaseType
    data: Any

    def __post_init__(self):
        if not _inhabits(self.base, self.data):
            raise TypeMismatch(f"{self.data!r} is not a {self.base} value")

    @staticmethod
    def boolean(b: bool) -> "Value":
        return Value(BaseType.BOOLEAN, b)

    @staticmethod
    def natural(n: int) -> "Value":
        return Value(BaseType.NATURAL, n)

    @staticmethod
    def string(s: str) -> "Value":
        return Value(BaseType.STRING, s)

    @staticmethod
    def unit() -> "Value":
        return Value(BaseType.UNIT, None)

    @staticmethod
    def fieldmap(mapping) -> "Value":
        items = mapping.items() if hasattr(mapping, "items") else mapping
        return Value(BaseType.FIELDMAP, tuple(sorted(items)))

    def to_json(self):
        if self.base is BaseType.FIELDMAP:
            return dict(self.data)
        return self.data

    @staticmethod
    def from_json(base: BaseType, raw) -> "Value":
        if base is BaseType.FIELDMAP:
            if not isinstance(raw, dict):
                raise TypeMismatch(f"{raw!r} is not a fieldmap value")
            return Value.fieldmap(raw)
        return Value(base, raw)

    def __repr__(self):
        if self.base is BaseType.UNIT:
            return "()"
        if self.base is BaseType.FIELDMAP:
            return repr(dict(self.data))
        return repr(self.data)


def _inhabits(base: BaseType, data) -> bool:
    if base is BaseType.BOOLEAN:
        return isinstance(data, bool)
    if base is BaseType.NATURAL:
        return isinstance(data, int) and not isinstance(data, bool) and data >= 0
    if base is BaseType.STRING:
        return isinstance(data, str)
    if base is BaseType.UNIT:
        return data is None
    if base is BaseType.FIELDMAP:
        return (
            isinstance(data, tuple)
            and all(
                isinstance(p, tuple) and len(p) == 2
                and isinstance(p[0], str) and isinstance(p[1], str)
                for p in data
            )
            and list(data) == sorted(data)
            and len({k for k, _ in data}) == len(data)
        )
    return False


STRING_ALPHABET = ("a", "b")
FIELD_NAMES = ("f", "g")
FIELD_VALUES = ("", "a")


def require_bound(bound: int):
    if not isinstance(bound, int) or bound < 1:
        raise InvalidBound(f"bound must be >= 1, got {bound}")


def enumerate_carrier(base: BaseType, bound: int) -> list[Value]:
    """Finite, duplicate-free, deterministic sample of a carrier.

    Naturals grow with ``bound``; strings are capped at length 3 and
    fieldmaps at two fields, whatever the bound.
    """
    require_bound(bound)
    if base is BaseType.BOOLEAN:
        return [Value.boolean(False), Value.boolean(True)]
    if base is BaseType.UNIT:
        return [Value.unit()]
    if base is BaseType.NATURAL:
        return [Value.natural(n) for n in range(bound)]
    if base is BaseType.STRING:
        out = []
        for length in range(min(bound, 4)):
            for letters in itertools.product(STRING_ALPHABET, repeat=length):
                out.append(Value.string("".join(letters)))
        return out
    if base is BaseType.FIELDMAP:
        out = []
        for size in range(min(bound, 2) + 1):
            for keys in itertools.combinations(FIELD_NAMES, size):
                for vals in itertools.product(FIELD_VALUES, repeat=size):
                    out.append(Value.fieldmap(zip(keys, vals)))
        return out
    raise TypeMismatch(f"no carrier for {base!r}")


def enumerate_tuples(bases, bound: int):
    """All argument tuples over the product of the given carriers."""
    return itertools.product(*(enumerate_carrier(b, bound) for b in bases))
