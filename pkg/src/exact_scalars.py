"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A scalar is stored as the reduced residue of a rational polynomial modulo the
m-th cyclotomic polynomial, so roots of unity and signs never lose precision.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Sequence, Tuple, Union

import sympy

log = logging.getLogger(__name__)

DEFAULT_ORDER = 2

Rational = Union[int, Fraction]


class IncompatibleFieldError(ValueError):
    """Raised when scalars from different cyclotomic fields are combined."""
    pass


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> Tuple[int, ...]:
    """
    Coefficients of the m-th cyclotomic polynomial, constant term first.

    Args:
        m: Order of the root of unity (m >= 1)

    Returns:
        Tuple of integers; the last entry is the leading coefficient 1
    """
    if m < 1:
        raise ValueError(f"Cyclotomic order must be positive, got {m}")
    x = sympy.Symbol('x')
    poly = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def euler_phi(m: int) -> int:
    return len(cyclotomic_coeffs(m)) - 1


def _reduce(coeffs: Sequence[Rational], m: int) -> Tuple[Fraction, ...]:
    phi = cyclotomic_coeffs(m)
    d = len(phi) - 1
    work = [Fraction(c) for c in coeffs]
    if len(work) < d:
        work.extend([Fraction(0)] * (d - len(work)))
    for k in range(len(work) - 1, d - 1, -1):
        c = work[k]
        if c:
            base = k - d
            for j in range(d):
                if phi[j]:
                    work[base + j] -= c * phi[j]
            work[k] = Fraction(0)
    return tuple(work[:d])


class CycScalar:
    """
    An element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1).

    Instances are immutable and hashable. Python operators work between
    scalars of the same order and with plain ints or Fractions.
    """

    __slots__ = ('_order', '_coeffs')

    def __init__(self, order: int, coeffs: Iterable[Rational] = ()):
        self._order = int(order)
        self._coeffs = _reduce(list(coeffs), self._order)

    @classmethod
    def _raw(cls, order: int, coeffs: Tuple[Fraction, ...]) -> 'CycScalar':
        obj = cls.__new__(cls)
        obj._order = order
        obj._coeffs = coeffs
        return obj

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @classmethod
    def from_rational(cls, value: Rational, order: int = DEFAULT_ORDER) -> 'CycScalar':
        d = euler_phi(order)
        return cls._raw(order, (Fraction(value),) + (Fraction(0),) * (d - 1))

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> 'CycScalar':
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> 'CycScalar':
        return cls.from_rational(1, order)

    @classmethod
    def coerce(cls, value: Any, order: int) -> 'CycScalar':
        """Turn an int, Fraction or same-order scalar into a CycScalar of the given order."""
        if isinstance(value, CycScalar):
            if value.order != order:
                raise IncompatibleFieldError(
                    f"Scalar of order {value.order} used where order {order} is required"
                )
            return value
        if isinstance(value, (int, Fraction)):
            return cls.from_rational(value, order)
        raise TypeError(f"Cannot interpret {value!r} as a scalar of Q(zeta_{order})")

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_one(self) -> bool:
        return self._coeffs[0] == 1 and not any(self._coeffs[1:])

    def as_rational(self) -> Fraction:
        """
        Return the scalar as a Fraction.

        Raises:
            ValueError: If the scalar is not rational
        """
        if any(self._coeffs[1:]):
            raise ValueError(f"{self} is not a rational number")
        return self._coeffs[0]

    def as_sign(self) -> int:
        """Return +1 or -1 for the scalars 1 and -1; anything else is a ValueError."""
        value = self.as_rational()
        if value not in (1, -1):
            raise ValueError(f"{self} is not a sign")
        return int(value)

    def _other(self, other: Any) -> 'CycScalar':
        return CycScalar.coerce(other, self._order)

    def __add__(self, other: Any) -> 'CycScalar':
        try:
            return cyc_add(self, self._other(other))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> 'CycScalar':
        return CycScalar._raw(self._order, tuple(-c for c in self._coeffs))

    def __sub__(self, other: Any) -> 'CycScalar':
        try:
            return cyc_add(self, -self._other(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other: Any) -> 'CycScalar':
        try:
            return cyc_add(self._other(other), -self)
        except TypeError:
            return NotImplemented

    def __mul__(self, other: Any) -> 'CycScalar':
        try:
            return cyc_mul(self, self._other(other))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> 'CycScalar':
        try:
            return cyc_mul(self, cyc_inv(self._other(other)))
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other: Any) -> 'CycScalar':
        try:
            return cyc_mul(self._other(other), cyc_inv(self))
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int) -> 'CycScalar':
        return power(self, k)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, CycScalar):
            return self._order == other._order and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs[0] == other and not any(self._coeffs[1:])
        return NotImplemented

    def __ne__(self, other: Any) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        if not any(self._coeffs[1:]):
            return hash(self._coeffs[0])
        return hash((self._order, self._coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if not any(self._coeffs[1:]):
            return str(self._coeffs[0])
        terms = []
        for k, c in enumerate(self._coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                power_str = "z" if k == 1 else f"z^{k}"
                terms.append(power_str if c == 1 else f"({c})*{power_str}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"CycScalar(m={self._order}, {self})"

    def to_json(self) -> Dict[str, Any]:
        return {'m': self._order, 'coeffs': [str(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'CycScalar':
        order = int(data['m'])
        return cls(order, [Fraction(str(c)) for c in data['coeffs']])


def _check_orders(a: CycScalar, b: CycScalar) -> None:
    if a.order != b.order:
        raise IncompatibleFieldError(
            f"Cannot combine scalars of orders {a.order} and {b.order}"
        )


def cyc_add(a: CycScalar, b: CycScalar) -> CycScalar:
    """
    Exact sum of two scalars of the same field.

    Raises:
        IncompatibleFieldError: If the orders differ
    """
    _check_orders(a, b)
    return CycScalar._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def cyc_mul(a: CycScalar, b: CycScalar) -> CycScalar:
    """
    Exact product reduced modulo the cyclotomic polynomial.

    Raises:
        IncompatibleFieldError: If the orders differ
    """
    _check_orders(a, b)
    if len(a.coeffs) == 1:
        return CycScalar._raw(a.order, (a.coeffs[0] * b.coeffs[0],))
    product = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if y:
                product[i + j] += x * y
    return CycScalar._raw(a.order, _reduce(product, a.order))


def cyc_inv(a: CycScalar) -> CycScalar:
    """
    Exact inverse computed with the extended gcd against the cyclotomic polynomial.

    Raises:
        ZeroDivisionError: If a is zero
    """
    if a.is_zero():
        raise ZeroDivisionError("Inverse of the zero scalar")
    if len(a.coeffs) == 1:
        return CycScalar._raw(a.order, (1 / a.coeffs[0],))
    x = sympy.Symbol('x')
    num = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(a.coeffs)],
                     x, domain='QQ')
    mod = sympy.Poly(list(reversed(cyclotomic_coeffs(a.order))), x, domain='QQ')
    inverse = num.invert(mod)
    coeffs = []
    for c in reversed(inverse.all_coeffs()):
        r = sympy.Rational(c)
        coeffs.append(Fraction(int(r.p), int(r.q)))
    return CycScalar(a.order, coeffs)


def power(a: CycScalar, k: int) -> CycScalar:
    """a**k for any integer k; negative exponents go through cyc_inv."""
    if k < 0:
        a = cyc_inv(a)
        k = -k
    result = CycScalar.one(a.order)
    base = a
    while k:
        if k & 1:
            result = cyc_mul(result, base)
        base = cyc_mul(base, base)
        k >>= 1
    return result


@lru_cache(maxsize=None)
def root_of_unity(m: int, k: int = 1) -> CycScalar:
    """zeta_m^k, reduced; k is taken modulo m."""
    k %= m
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    return CycScalar(m, coeffs)


def root_exponent(value: CycScalar) -> int:
    """
    Find k in [0, m) with value == zeta_m^k.

    Raises:
        ValueError: If value is not an m-th root of unity
    """
    for k in range(value.order):
        if root_of_unity(value.order, k) == value:
            return k
    raise ValueError(f"{value!r} is not a root of unity of order dividing {value.order}")
