"""Exact coefficient fields: the rationals and prime fields F_p (p odd).

Rational scalars are plain :class:`fractions.Fraction` values.  Elements of
F_p are instances of a per-prime subclass of :class:`Fp`, so that all the
algebra elsewhere in the package can be written with ordinary operators and
mixes freely with Python ints.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy.ntheory import isprime, sqrt_mod

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "Fp",
    "QQ",
    "GF",
    "Scalar",
    "field_from_spec",
    "field_of",
    "sqrt_if_square",
]


class Fp:
    """Residue modulo the class attribute ``p``; value kept in [0, p-1]."""

    __slots__ = ("v",)
    p: int = 0
    field: "PrimeField"

    def __init__(self, value: int):
        self.v = value % self.p

    @classmethod
    def _raw(cls, v: int) -> "Fp":
        obj = object.__new__(cls)
        obj.v = v
        return obj

    def _coerce(self, other) -> int | None:
        if type(other) is type(self):
            return other.v
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw((self.v + o) % self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw((self.v - o) % self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw((o - self.v) % self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw((self.v * o) % self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return self._raw(pow(self.v, -1, self.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        o %= self.p
        if o == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return self._raw(self.v * pow(o, -1, self.p) % self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(o % self.p) / self

    def __neg__(self):
        return self._raw(-self.v % self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return self._raw(pow(self.v, n, self.p))

    def __eq__(self, other):
        if type(other) is type(self):
            return self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


Scalar = Union[Fraction, Fp]


class Field:
    """Common interface of the two exact coefficient fields."""

    spec: str
    characteristic: int

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value) -> Scalar:  # pragma: no cover - abstract
        raise NotImplementedError

    def sqrt(self, s: Scalar) -> Scalar | None:  # pragma: no cover - abstract
        raise NotImplementedError

    def contains(self, s) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def parse(self, text) -> Scalar:
        """Read a scalar from JSON: an int or a string ``"n"`` / ``"n/d"``."""
        if isinstance(text, bool):
            raise ValueError(f"not a scalar: {text!r}")
        if isinstance(text, int):
            return self(text)
        if isinstance(text, str):
            text = text.strip()
            if "/" in text:
                num, den = text.split("/", 1)
                return self(int(num)) / self(int(den))
            return self(int(text))
        raise ValueError(f"not a scalar: {text!r}")

    def format(self, s: Scalar) -> str:
        return str(s)

    def random(self, rng, lo: int = -9, hi: int = 9) -> Scalar:
        raise NotImplementedError  # pragma: no cover - abstract

    def random_nonzero(self, rng, lo: int = -9, hi: int = 9) -> Scalar:
        while True:
            s = self.random(rng, lo, hi)
            if s:
                return s

    def __repr__(self):
        return f"<field {self.spec}>"


class Rationals(Field):
    spec = "rational"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fp):
            raise TypeError("cannot coerce an F_p residue into the rationals")
        return Fraction(value)

    def contains(self, s) -> bool:
        return isinstance(s, Fraction)

    def sqrt(self, s: Fraction) -> Fraction | None:
        s = Fraction(s)
        if s < 0:
            return None
        rn, rd = math.isqrt(s.numerator), math.isqrt(s.denominator)
        if rn * rn == s.numerator and rd * rd == s.denominator:
            return Fraction(rn, rd)
        return None

    def random(self, rng, lo: int = -9, hi: int = 9) -> Fraction:
        return Fraction(int(rng.integers(lo, hi + 1)))

    def random_vector(self, rng, n: int, lo: int = -9, hi: int = 9) -> list[Fraction]:
        return [Fraction(int(v)) for v in rng.integers(lo, hi + 1, size=n)]

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rational")


class PrimeField(Field):
    """F_p for an odd prime p.  Use :func:`GF` to get the cached instance."""

    characteristic: int

    def __init__(self, p: int):
        if p == 2 or not isprime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.p = p
        self.characteristic = p
        self.spec = f"fp:{p}"
        self.element = type(f"F{p}", (Fp,), {"__slots__": (), "p": p, "field": self})
        self._nonresidue = next(n for n in range(2, p) if pow(n, (p - 1) // 2, p) == p - 1)

    def __call__(self, value) -> Fp:
        if isinstance(value, Fp):
            if value.p != self.p:
                raise TypeError(f"residue mod {value.p} is not in F_{self.p}")
            return value
        if isinstance(value, Fraction):
            return self.element(value.numerator) / value.denominator
        return self.element(int(value))

    def contains(self, s) -> bool:
        return isinstance(s, Fp) and s.p == self.p

    def is_square(self, s: Fp) -> bool:
        s = self(s)
        return s.v == 0 or pow(s.v, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, s: Fp) -> Fp | None:
        s = self(s)
        if not self.is_square(s):
            return None
        r = sqrt_mod(s.v, self.p)
        return self.element(min(r, self.p - r))

    @property
    def nonresidue(self) -> Fp:
        """Smallest positive quadratic non-residue."""
        return self.element(self._nonresidue)

    def random(self, rng, lo: int = -9, hi: int = 9) -> Fp:
        # the bounds only matter over the rationals; F_p draws are uniform
        return self.element._raw(int(rng.integers(0, self.p)))

    def random_vector(self, rng, n: int, lo: int = -9, hi: int = 9) -> list[Fp]:
        raw = self.element._raw
        return [raw(int(v)) for v in rng.integers(0, self.p, size=n)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def _reduce_fp(p: int, v: int) -> Fp:
    return GF(p).element._raw(v)


def _fp_reduce(self: Fp):
    return (_reduce_fp, (self.p, self.v))


Fp.__reduce__ = _fp_reduce


def field_from_spec(spec: str) -> Field:
    """Parse ``"rational"`` or ``"fp:<P>"``."""
    spec = spec.strip().lower()
    if spec in ("rational", "q", "qq"):
        return QQ
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise ValueError(f"bad field spec {spec!r}") from None
        return GF(p)
    raise ValueError(f"bad field spec {spec!r}; expected 'rational' or 'fp:<P>'")


def field_of(s) -> Field:
    if isinstance(s, Fp):
        return s.field
    if isinstance(s, (Fraction, int)):
        return QQ
    raise TypeError(f"not a field scalar: {s!r}")


def sqrt_if_square(s: Scalar) -> Scalar | None:
    """Canonical square root of ``s`` in its own field, or None.

    The canonical root is the non-negative one over Q and the one with
    least residue in [0, (p-1)/2] over F_p.
    """
    return field_of(s).sqrt(s)
