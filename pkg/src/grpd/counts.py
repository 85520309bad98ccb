"""Cardinalities in N ∪ {ω}.

Counts of boundary points are either plain ``int`` or the singleton
:data:`OMEGA`. ``OMEGA`` absorbs addition and multiplication by any
positive count, and compares greater than every integer.
"""

from __future__ import annotations

from typing import Union


class _Omega:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return "ω"

    def __reduce__(self):
        return (_Omega, ())

    def __hash__(self):
        return hash("omega")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        return 0 if other == 0 else self

    __rmul__ = __mul__


OMEGA = _Omega()

Count = Union[int, _Omega]


def is_omega(c) -> bool:
    return c is OMEGA


def count_key(c: Count):
    """Sort key placing every integer before ω."""
    return (1, 0) if c is OMEGA else (0, c)


def count_to_json(c: Count):
    return "omega" if c is OMEGA else c


def count_from_json(v) -> Count:
    if v == "omega":
        return OMEGA
    if isinstance(v, int) and v >= 0:
        return v
    raise ValueError(f"not a count: {v!r}")
