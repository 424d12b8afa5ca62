"""Exact scalars over Q and prime fields, and span membership by row reduction.

Rational scalars are :class:`fractions.Fraction`; residues mod ``p`` are
:class:`Mod`.  A :class:`FieldSpec` is the factory for both.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Optional, Sequence, Union

from sympy import isprime

__all__ = [
    "FieldSpec", "Mod", "FieldMismatchError", "DimensionMismatchError",
    "SpanSolution", "solve_in_span", "rank", "Q",
]


class FieldMismatchError(TypeError):
    pass


class DimensionMismatchError(ValueError):
    pass


class Mod:
    """Residue class modulo a prime, always reduced into ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other) -> Optional[int]:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} and F_{other.p} scalars mixed")
            return other.value
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"F_{self.p} scalar mixed with rational {other}")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Mod(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Mod(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Mod(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Mod(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.value, self.p)

    def inverse(self) -> Mod:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Mod(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Mod]

_FIELD_RE = re.compile(r"(?:q|f(\d+))\Z")


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field ``F_p``."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and not (isinstance(self.p, int) and isprime(self.p)):
            raise ValueError(f"{self.p} is not a prime")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``q`` or ``f<p>``."""
        m = _FIELD_RE.match(text.strip().lower())
        if not m:
            raise ValueError(f"bad field {text!r}: expected 'q' or 'f<prime>'")
        return cls(int(m.group(1))) if m.group(1) else cls()

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, n: Union[int, Fraction, Mod]) -> Scalar:
        """Image of an integer (or a scalar of this field) in the field."""
        if isinstance(n, Mod):
            if n.p != self.p:
                raise FieldMismatchError(f"F_{n.p} scalar used in {self}")
            return n
        if self.p is None:
            return Fraction(n)
        if isinstance(n, Fraction):
            return Mod(n.numerator, self.p) / n.denominator
        return Mod(n, self.p)

    def zero(self) -> Scalar:
        return self(0)

    def one(self) -> Scalar:
        return self(1)

    def contains(self, a) -> bool:
        if self.p is None:
            return isinstance(a, Fraction)
        return isinstance(a, Mod) and a.p == self.p

    def parse_scalar(self, text: str) -> Scalar:
        return self(Fraction(text))

    def __str__(self):
        return "q" if self.p is None else f"f{self.p}"


Q = FieldSpec()


def _inverse(a: Scalar) -> Scalar:
    return a.inverse() if isinstance(a, Mod) else 1 / a


@dataclass(frozen=True)
class SpanSolution:
    """Outcome of a span membership query.

    On success ``coefficients`` reproduce the target; otherwise the two ranks
    certify that adjoining the target raises the rank.
    """

    coefficients: Optional[tuple]
    rank_basis: int
    rank_augmented: int

    @property
    def in_span(self) -> bool:
        return self.coefficients is not None


def _check_vectors(vectors, field, dim):
    for vec in vectors:
        for k, a in vec.items():
            if dim is not None and k not in dim:
                raise DimensionMismatchError(f"coordinate {k!r} outside the ambient space")
            if not field.contains(a):
                raise FieldMismatchError(f"scalar {a!r} is not in {field}")


def _column_key(order):
    if order is None:
        return lambda k: k
    index = {k: i for i, k in enumerate(order)}
    return index.__getitem__


def _echelon(rows: list[dict], key, field, track: bool):
    """Forward elimination with leftmost pivots.

    Returns the reduced rows as ``(vector, combination)`` pairs keyed by pivot;
    ``combination`` expresses each row in the original inputs when ``track``.
    """
    pivots: dict[Hashable, tuple[dict, dict]] = {}
    for i, row in enumerate(rows):
        vec = {k: a for k, a in row.items() if a}
        comb = {i: field.one()} if track else {}
        while vec:
            lead = min(vec, key=key)
            if lead not in pivots:
                inv = _inverse(vec[lead])
                vec = {k: a * inv for k, a in vec.items()}
                comb = {j: c * inv for j, c in comb.items()}
                pivots[lead] = (vec, comb)
                break
            pvec, pcomb = pivots[lead]
            factor = vec[lead]
            for k, a in pvec.items():
                b = vec.get(k, 0) - factor * a
                if b:
                    vec[k] = b
                else:
                    vec.pop(k, None)
            for j, c in pcomb.items():
                b = comb.get(j, 0) - factor * c
                if b:
                    comb[j] = b
                else:
                    comb.pop(j, None)
    return pivots


def rank(vectors: Sequence[Mapping], field: FieldSpec, order: Optional[Sequence] = None) -> int:
    return len(_echelon([dict(v) for v in vectors], _column_key(order), field, track=False))


def solve_in_span(basis: Sequence[Mapping], target: Mapping, field: FieldSpec,
                  order: Optional[Sequence] = None) -> SpanSolution:
    """Express ``target`` as a combination of ``basis`` or prove it impossible.

    Vectors are sparse maps from coordinates to scalars of ``field``.  When
    ``order`` is given it fixes the pivot order of the coordinates and every
    coordinate must belong to it.
    """
    dim = set(order) if order is not None else None
    _check_vectors(list(basis) + [target], field, dim)
    key = _column_key(order)
    pivots = _echelon([dict(b) for b in basis], key, field, track=True)
    r = len(pivots)
    # reduce the target against the echelon rows
    vec = {k: a for k, a in target.items() if a}
    coeffs = [field.zero() for _ in basis]
    while vec:
        lead = min(vec, key=key)
        if lead not in pivots:
            return SpanSolution(None, r, r + 1)
        pvec, pcomb = pivots[lead]
        factor = vec[lead]
        for k, a in pvec.items():
            b = vec.get(k, 0) - factor * a
            if b:
                vec[k] = b
            else:
                vec.pop(k, None)
        for j, c in pcomb.items():
            coeffs[j] = coeffs[j] + factor * c
    if combine(basis, coeffs, field) != {k: a for k, a in target.items() if a}:
        raise AssertionError("span solution failed re-substitution")
    return SpanSolution(tuple(coeffs), r, r)


def combine(vectors: Sequence[Mapping], coeffs: Sequence, field: FieldSpec) -> dict:
    """Sparse sum of ``coeffs[i] * vectors[i]``."""
    out: dict = {}
    for c, vec in zip(coeffs, vectors):
        for k, a in vec.items():
            out[k] = out.get(k, field.zero()) + c * a
    return {k: a for k, a in out.items() if a}


def span_basis(vectors: Sequence[Mapping], field: FieldSpec,
               order: Optional[Sequence] = None) -> list[dict]:
    """Reduced row echelon basis of the span, rows sorted by pivot."""
    key = _column_key(order)
    pivots = _echelon([dict(v) for v in vectors], key, field, track=False)
    lead_keys = sorted(pivots, key=key)
    rows = {k: dict(pivots[k][0]) for k in lead_keys}
    # back substitution
    for k in reversed(lead_keys):
        row = rows[k]
        for k2 in lead_keys:
            if k2 == k:
                continue
            other = rows[k2]
            f = other.get(k)
            if f:
                for kk, a in row.items():
                    b = other.get(kk, 0) - f * a
                    if b:
                        other[kk] = b
                    else:
                        other.pop(kk, None)
    return [rows[k] for k in lead_keys]
