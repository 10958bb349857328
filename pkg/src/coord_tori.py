"""Coordinate tori: graded algebras whose homogeneous pieces are one-dimensional.

Every torus is described by a support predicate S and a structure function c
with a_lam * a_mu = c(lam, mu) a_(lam+mu). Elements are sparse maps from
degrees to scalars against the canonical basis {a_lam}.
"""

import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .exact_scalars import CycScalar, DEFAULT_ORDER, root_exponent, root_of_unity
from .lattice import (
    CosetSet, LatticeVec, Sublattice, coset_sum, unit_vec, vec, vec_add, vec_neg,
    vec_sub, window_points, zero_vec,
)

log = logging.getLogger(__name__)

ASSOCIATIVE = 'associative'
ALTERNATIVE = 'alternative'
JORDAN = 'jordan'

HALF = Fraction(1, 2)


class TorusError(ValueError):
    """Base class for coordinate torus errors."""
    pass


class FlavorError(TorusError):
    """Raised when an operation needs a different flavor of torus."""
    pass


class NotInvertibleError(TorusError):
    """Raised when a homogeneous element has no inverse in the torus."""
    pass


class SupportError(TorusError):
    """Raised when a basis element is requested outside the support."""
    pass


class PreconditionError(TorusError):
    """Raised when an operation's precondition does not hold."""
    pass


class IncompatibleAlgebraError(TorusError):
    """Raised when elements of different tori are combined."""
    pass


class StructuredTorus:
    """
    Base class for tori.

    Subclasses implement in_support, _structure and gamma_generators. The
    structure function is only consulted for lam, mu and lam + mu in S.
    """

    kind = 'abstract'

    def __init__(self, n: int, m: int, flavor: str):
        self.n = n
        self.m = m
        self.flavor = flavor
        self.zero_scalar = CycScalar.zero(m)
        self.one_scalar = CycScalar.one(m)
        self._cache: Dict[Tuple[LatticeVec, LatticeVec], CycScalar] = {}

    # -- subclass hooks -------------------------------------------------
    def in_support(self, lam: LatticeVec) -> bool:
        raise NotImplementedError

    def _structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        raise NotImplementedError

    def gamma_generators(self) -> List[LatticeVec]:
        raise NotImplementedError

    def support_description(self) -> str:
        raise NotImplementedError

    def describe(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'n': self.n, 'm': self.m, 'flavor': self.flavor}

    # -- structure ------------------------------------------------------
    def structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        key = (lam, mu)
        value = self._cache.get(key)
        if value is None:
            value = self._structure(lam, mu)
            self._cache[key] = value
        return value

    def mul_coeff(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        """Coefficient of a_(lam+mu) in a_lam * a_mu; zero unless lam, mu and lam + mu all lie in S."""
        if not (self.in_support(lam) and self.in_support(mu) and self.in_support(vec_add(lam, mu))):
            return self.zero_scalar
        return self.structure(lam, mu)

    def triple_coeff(self, lam: LatticeVec, mu: LatticeVec, nu: LatticeVec) -> CycScalar:
        """Coefficient of {a_lam, a_mu, a_nu} = 2((xy)z + (zy)x - (zx)y)."""
        m = self.mul_coeff
        xy = m(lam, mu)
        zy = m(nu, mu)
        zx = m(nu, lam)
        total = self.zero_scalar
        if xy:
            total = total + xy * m(vec_add(lam, mu), nu)
        if zy:
            total = total + zy * m(vec_add(nu, mu), lam)
        if zx:
            total = total - zx * m(vec_add(nu, lam), mu)
        return total * 2

    def commutation_factor(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        """chi with a_lam a_mu = chi a_mu a_lam."""
        return self.structure(lam, mu) / self.structure(mu, lam)

    # -- elements -------------------------------------------------------
    @property
    def zero_degree(self) -> LatticeVec:
        return zero_vec(self.n)

    def scalar(self, value: Any) -> CycScalar:
        return CycScalar.coerce(value, self.m)

    def basis(self, lam: Sequence[int], coeff: Any = 1) -> 'TorusElement':
        """
        The element coeff * a_lam.

        Raises:
            SupportError: If lam is not in the support
        """
        lam = vec(lam)
        if len(lam) != self.n:
            raise SupportError(f"Degree {lam} does not have length {self.n}")
        if not self.in_support(lam):
            raise SupportError(f"Degree {lam} is not in the support of {self.kind} torus")
        return TorusElement(self, {lam: self.scalar(coeff)})

    def element(self, coeffs: Dict[Sequence[int], Any]) -> 'TorusElement':
        return TorusElement(self, {vec(k): self.scalar(v) for k, v in coeffs.items()})

    def zero(self) -> 'TorusElement':
        return TorusElement(self, {})

    def identity(self) -> 'TorusElement':
        return self.basis(self.zero_degree)

    def inverse(self, x: 'TorusElement') -> 'TorusElement':
        """
        Inverse of a nonzero homogeneous element.

        For Jordan tori this is the U-inverse: the v with U_x v = x.

        Raises:
            NotInvertibleError: If x is not homogeneous or has no inverse
        """
        lam, k = x.homogeneous()
        neg = vec_neg(lam)
        if not self.in_support(neg):
            raise NotInvertibleError(f"No basis element at {neg}, so a_{lam} is not invertible")
        if self.flavor == JORDAN:
            g = self.triple_coeff(lam, neg, lam) * HALF
            if not g:
                raise NotInvertibleError(f"U operator of a_{lam} is singular")
            return TorusElement(self, {neg: 1 / (k * g)})
        c = self.mul_coeff(lam, neg)
        unit = self.identity().coefficient(self.zero_degree)
        if not c:
            raise NotInvertibleError(f"a_{lam} a_{neg} = 0")
        return TorusElement(self, {neg: unit / (k * c)})

    def window(self, w: int) -> List[LatticeVec]:
        """Support degrees inside [-w, w]^n."""
        return [p for p in window_points(self.n, w) if self.in_support(p)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"


class TorusElement:
    """A finite linear combination of basis symbols a_lam of one torus."""

    __slots__ = ('torus', 'coeffs')

    def __init__(self, torus: StructuredTorus, coeffs: Dict[LatticeVec, CycScalar]):
        self.torus = torus
        clean = {}
        for lam, c in coeffs.items():
            c = torus.scalar(c)
            if c:
                if not torus.in_support(lam):
                    raise SupportError(f"Degree {lam} is not in the support")
                clean[lam] = c
        self.coeffs = clean

    def _check(self, other: 'TorusElement') -> None:
        if not isinstance(other, TorusElement) or other.torus is not self.torus:
            raise IncompatibleAlgebraError("Elements belong to different tori")

    def __add__(self, other: 'TorusElement') -> 'TorusElement':
        self._check(other)
        result = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            result[lam] = result[lam] + c if lam in result else c
        return TorusElement(self.torus, result)

    def __neg__(self) -> 'TorusElement':
        return TorusElement(self.torus, {lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other: 'TorusElement') -> 'TorusElement':
        return self + (-other)

    def scale(self, k: Any) -> 'TorusElement':
        k = self.torus.scalar(k)
        return TorusElement(self.torus, {lam: k * c for lam, c in self.coeffs.items()})

    def __mul__(self, other: Any) -> 'TorusElement':
        if isinstance(other, TorusElement):
            return torus_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other: Any) -> 'TorusElement':
        return self.scale(other)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.torus is other.torus and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, lam: Sequence[int]) -> CycScalar:
        return self.coeffs.get(vec(lam), self.torus.zero_scalar)

    def degrees(self) -> List[LatticeVec]:
        return sorted(self.coeffs)

    def homogeneous(self) -> Tuple[LatticeVec, CycScalar]:
        """
        Degree and coefficient of a nonzero homogeneous element.

        Raises:
            NotInvertibleError: If the element is zero or not homogeneous
        """
        if len(self.coeffs) != 1:
            raise NotInvertibleError(f"Expected a nonzero homogeneous element, got {self}")
        (lam, c), = self.coeffs.items()
        return lam, c

    def to_json(self) -> List[Dict[str, Any]]:
        return [{'degree': list(lam), 'coeff': self.coeffs[lam].to_json()} for lam in sorted(self.coeffs)]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[lam]})a{list(lam)}" for lam in sorted(self.coeffs))


def torus_mul(x: TorusElement, y: TorusElement) -> TorusElement:
    """
    Product of two elements: the bilinear extension of a_lam a_mu = c(lam, mu) a_(lam+mu).

    Raises:
        IncompatibleAlgebraError: If x and y belong to different tori
    """
    x._check(y)
    A = x.torus
    result: Dict[LatticeVec, CycScalar] = {}
    for lam, a in x.coeffs.items():
        for mu, b in y.coeffs.items():
            c = A.mul_coeff(lam, mu)
            if not c:
                continue
            nu = vec_add(lam, mu)
            term = a * b * c
            result[nu] = result[nu] + term if nu in result else term
    return TorusElement(A, result)


def jordan_triple(x: TorusElement, y: TorusElement, z: TorusElement) -> TorusElement:
    """
    The Jordan triple product {x, y, z} = 2((xy)z + (zy)x - (zx)y).

    Raises:
        FlavorError: If the torus is not a Jordan torus
    """
    x._check(y)
    x._check(z)
    A = x.torus
    if A.flavor != JORDAN:
        raise FlavorError(f"Triple product needs a Jordan torus, got {A.flavor}")
    result: Dict[LatticeVec, CycScalar] = {}
    for lam, a in x.coeffs.items():
        for mu, b in y.coeffs.items():
            for nu, c in z.coeffs.items():
                t = A.triple_coeff(lam, mu, nu)
                if not t:
                    continue
                deg = vec_add(vec_add(lam, mu), nu)
                term = a * b * c * t
                result[deg] = result[deg] + term if deg in result else term
    return TorusElement(A, result)


def u_operator(u: TorusElement, v: TorusElement) -> TorusElement:
    """U_u v = 1/2 {u, v, u}."""
    return jordan_triple(u, v, u).scale(HALF)


# -- quantum tori ---------------------------------------------------------

QEntry = Union[int, Fraction, CycScalar, Dict[str, Any]]


def q_exponents(q: Sequence[Sequence[QEntry]], m: int) -> Tuple[Tuple[int, ...], ...]:
    """
    Convert a q-matrix into exponents k_ij with q_ij = zeta_m^k_ij.

    Entries may be 1, -1, CycScalars, {"zeta": k} or scalar JSON.

    Raises:
        TorusError: If an entry is not a root of unity of order dividing m,
            or the matrix violates q_ii = 1, q_ij = q_ji^-1
    """
    n = len(q)
    rows = []
    for i, row in enumerate(q):
        if len(row) != n:
            raise TorusError(f"q-matrix row {i} has length {len(row)}, expected {n}")
        rows.append(tuple(_entry_exponent(entry, m) for entry in row))
    for i in range(n):
        if rows[i][i] % m:
            raise TorusError(f"q_{i + 1}{i + 1} must be 1")
        for j in range(i + 1, n):
            if (rows[i][j] + rows[j][i]) % m:
                raise TorusError(f"q_{i + 1}{j + 1} must be the inverse of q_{j + 1}{i + 1}")
    return tuple(rows)


def _entry_exponent(entry: QEntry, m: int) -> int:
    if isinstance(entry, dict) and 'zeta' in entry:
        return int(entry['zeta']) % m
    if isinstance(entry, dict):
        entry = CycScalar.from_json(entry)
    if isinstance(entry, (int, Fraction)):
        entry = CycScalar.from_rational(entry, m)
    if not isinstance(entry, CycScalar) or entry.order != m:
        raise TorusError(f"q entry {entry!r} is not a scalar of order {m}")
    try:
        return root_exponent(entry)
    except ValueError as e:
        raise TorusError(str(e))


def _quantum_exponent(k: Sequence[Sequence[int]], b: LatticeVec, c: LatticeVec, m: int) -> int:
    # x^b x^c = prod_{i>j} q_ji^(b_i c_j) x^(b+c)
    total = 0
    n = len(b)
    for i in range(n):
        if not b[i]:
            continue
        for j in range(i):
            if c[j] and k[j][i]:
                total += k[j][i] * b[i] * c[j]
    return total % m


def quantum_structure(q: Sequence[Sequence[QEntry]], b: Sequence[int], c: Sequence[int],
                      m: int = DEFAULT_ORDER) -> CycScalar:
    """
    The scalar gamma with x^b x^c = gamma x^(b+c) in the normal order x_1^b_1 ... x_n^b_n.

    Args:
        q: The q-matrix, x_j x_i = q_ij x_i x_j
        b: Exponent of the left monomial
        c: Exponent of the right monomial
        m: Order of the cyclotomic field holding the entries

    Returns:
        The structure constant as a CycScalar

    Raises:
        TorusError: If q is malformed
    """
    k = q_exponents(q, m)
    return root_of_unity(m, _quantum_exponent(k, vec(b), vec(c), m))


class QuantumTorus(StructuredTorus):
    """The quantum torus k_q presented by x_j x_i = q_ij x_i x_j."""

    kind = 'quantum'

    def __init__(self, n: int, q: Optional[Sequence[Sequence[QEntry]]] = None, m: int = DEFAULT_ORDER):
        super().__init__(n, m, ASSOCIATIVE)
        if q is None:
            q = [[1] * n for _ in range(n)]
        if len(q) != n:
            raise TorusError(f"q-matrix has {len(q)} rows, expected {n}")
        self.k = q_exponents(q, m)

    def in_support(self, lam: LatticeVec) -> bool:
        return True

    def _structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        return root_of_unity(self.m, _quantum_exponent(self.k, lam, mu, self.m))

    def commutation_exponent(self, lam: LatticeVec, mu: LatticeVec) -> int:
        return (_quantum_exponent(self.k, lam, mu, self.m) - _quantum_exponent(self.k, mu, lam, self.m)) % self.m

    def is_central(self, lam: LatticeVec) -> bool:
        return all(self.commutation_exponent(lam, unit_vec(self.n, i)) == 0 for i in range(self.n))

    def is_sign_matrix(self) -> bool:
        return all(e == 0 or 2 * e == self.m for row in self.k for e in row)

    def q_signs(self) -> List[List[int]]:
        """The q-matrix as +/-1 integers; only meaningful when is_sign_matrix()."""
        if not self.is_sign_matrix():
            raise TorusError("q-matrix has entries other than +1 and -1")
        return [[1 if e == 0 else -1 for e in row] for row in self.k]

    def gamma_generators(self) -> List[LatticeVec]:
        gens = [tuple(self.m if j == i else 0 for j in range(self.n)) for i in range(self.n)]
        gens.extend(p for p in _box(self.n, self.m) if any(p) and self.is_central(p))
        return gens

    def support_description(self) -> str:
        return f"all of Z^{self.n}"

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['q_exponents'] = [list(row) for row in self.k]
        return info


class LaurentTorus(QuantumTorus):
    """The group algebra k[Lambda] of Laurent polynomials."""

    kind = 'laurent'

    def __init__(self, n: int, m: int = DEFAULT_ORDER):
        super().__init__(n, None, m)

    def gamma_generators(self) -> List[LatticeVec]:
        return [unit_vec(self.n, i) for i in range(self.n)]


def _box(n: int, m: int) -> List[LatticeVec]:
    points: List[LatticeVec] = [()]
    for _ in range(n):
        points = [p + (a,) for p in points for a in range(m)]
    return points


# -- octonion torus -------------------------------------------------------

def octonion_exponent(i: Sequence[int], j: Sequence[int]) -> int:
    """kappa(i, j) mod 2 on the first three coordinates."""
    i1, i2, i3 = (a % 2 for a in i[:3])
    j1, j2, j3 = (a % 2 for a in j[:3])
    return (i3 * j1 + i2 * j1 + i3 * j2 + i1 * j2 * j3 + i2 * j1 * j3 + i3 * j1 * j2) % 2


class OctonionTorus(StructuredTorus):
    """
    The octonion torus on x1, x2, x3, optionally tensored with Laurent variables.

    x^i x^j = (-1)^kappa(i,j) x^(i+j) where kappa only sees the first three
    coordinates.
    """

    kind = 'octonion'

    def __init__(self, extra_laurent: int = 0, m: int = DEFAULT_ORDER):
        super().__init__(3 + extra_laurent, m, ALTERNATIVE)
        self.extra_laurent = extra_laurent

    def in_support(self, lam: LatticeVec) -> bool:
        return True

    def _structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        return -self.one_scalar if octonion_exponent(lam, mu) else self.one_scalar

    def gamma_generators(self) -> List[LatticeVec]:
        return [tuple(2 if (j == i and i < 3) else (1 if j == i else 0) for j in range(self.n))
                for i in range(self.n)]

    def support_description(self) -> str:
        return f"all of Z^{self.n}"

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['extra_laurent'] = self.extra_laurent
        return info


def octonion_witness(A: StructuredTorus) -> Tuple[TorusElement, TorusElement]:
    """The pair ((x1 x2) x3, x1 (x2 x3)) for a torus on at least three generators."""
    x1, x2, x3 = (A.basis(unit_vec(A.n, i)) for i in range(3))
    return (x1 * x2) * x3, x1 * (x2 * x3)


# -- Jordan tori ----------------------------------------------------------

class JordanPlusTorus(StructuredTorus):
    """The plus algebra k_q^+ with x . y = 1/2 (xy + yx)."""

    kind = 'jordan_plus'

    def __init__(self, base: QuantumTorus):
        super().__init__(base.n, base.m, JORDAN)
        self.base = base

    def in_support(self, lam: LatticeVec) -> bool:
        return True

    def _structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        return (self.base.structure(lam, mu) + self.base.structure(mu, lam)) * HALF

    def gamma_generators(self) -> List[LatticeVec]:
        return self.base.gamma_generators()

    def support_description(self) -> str:
        return f"all of Z^{self.n}"

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['q_exponents'] = [list(row) for row in self.base.k]
        return info


class SpinFactorTorus(StructuredTorus):
    """
    The spin factor R + V with R = k[2 Lambda] and V the free R-module on x_1..x_k.

    deg x_i = lambda_i, and f(x_i, x_j) = delta_ij t^(2 lambda_i). By default the
    generator degrees are the unit vectors followed by their sum.
    """

    kind = 'spin'

    def __init__(self, n: int = 3, vectors: Optional[Sequence[Sequence[int]]] = None, m: int = DEFAULT_ORDER):
        super().__init__(n, m, JORDAN)
        if vectors is None:
            vectors = [unit_vec(n, i) for i in range(n)]
            if n >= 2:
                vectors.append(tuple(1 for _ in range(n)))
        self.vectors = [vec(v) for v in vectors]
        classes = [tuple(a % 2 for a in v) for v in self.vectors]
        if any(not any(c) for c in classes):
            raise TorusError("Spin factor generator degrees must be nonzero modulo 2")
        if len(set(classes)) != len(classes):
            raise TorusError("Spin factor generator degrees must be distinct modulo 2")
        self._classes = {c: i for i, c in enumerate(classes)}

    def _class(self, lam: LatticeVec) -> Optional[int]:
        residue = tuple(a % 2 for a in lam)
        if not any(residue):
            return -1
        return self._classes.get(residue)

    def in_support(self, lam: LatticeVec) -> bool:
        return self._class(lam) is not None

    def _structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        i, j = self._class(lam), self._class(mu)
        if i is None or j is None:
            return self.zero_scalar
        if i < 0 or j < 0 or i == j:
            return self.one_scalar
        return self.zero_scalar

    def gamma_generators(self) -> List[LatticeVec]:
        return [tuple(2 if j == i else 0 for j in range(self.n)) for i in range(self.n)]

    def support_description(self) -> str:
        parts = ["2Z^%d" % self.n] + [f"2Z^{self.n}+{list(v)}" for v in self.vectors]
        return " u ".join(parts)

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['vectors'] = [list(v) for v in self.vectors]
        return info


# -- derived tori ---------------------------------------------------------

class DerivedTorus(StructuredTorus):
    """
    A torus built on the vector space of a parent torus.

    Degree lam here is degree lam + shift of the parent, with the same basis
    vector a_(lam+shift).
    """

    def __init__(self, parent: StructuredTorus, shift: LatticeVec, flavor: str):
        super().__init__(parent.n, parent.m, flavor)
        self.parent = parent
        self.shift = shift

    def in_support(self, lam: LatticeVec) -> bool:
        return self.parent.in_support(vec_add(lam, self.shift))

    def gamma_generators(self) -> List[LatticeVec]:
        return self.parent.gamma_generators()

    def support_description(self) -> str:
        if not any(self.shift):
            return self.parent.support_description()
        return f"({self.parent.support_description()}) - {list(self.shift)}"

    def from_parent(self, x: TorusElement) -> TorusElement:
        if x.torus is not self.parent:
            raise IncompatibleAlgebraError("Element does not belong to the parent torus")
        return TorusElement(self, {vec_sub(lam, self.shift): c for lam, c in x.coeffs.items()})

    def to_parent(self, x: TorusElement) -> TorusElement:
        if x.torus is not self:
            raise IncompatibleAlgebraError("Element does not belong to this torus")
        return TorusElement(self.parent, {vec_add(lam, self.shift): c for lam, c in x.coeffs.items()})

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['parent'] = self.parent.describe()
        info['shift'] = list(self.shift)
        return info


class JordanIsotope(DerivedTorus):
    """The u-isotope A^(u) with x ._u y = 1/2 {x, u, y} and unit u^-1."""

    kind = 'jordan_isotope'

    def __init__(self, parent: StructuredTorus, u: TorusElement):
        if parent.flavor != JORDAN:
            raise FlavorError(f"Jordan isotopes need a Jordan torus, got {parent.flavor}")
        u_degree, _ = u.homogeneous()
        super().__init__(parent, vec_neg(u_degree), JORDAN)
        self.u = u
        self.u_coeff = u.coefficient(u_degree)
        self._unit = parent.inverse(u)

    def _structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        rho = self.shift
        t = self.parent.triple_coeff(vec_add(lam, rho), vec_neg(rho), vec_add(mu, rho))
        return t * self.u_coeff * HALF

    def identity(self) -> TorusElement:
        return self.from_parent(self._unit)

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['u'] = self.u.to_json()
        return info


class AlternativeIsotope(DerivedTorus):
    """The (u1, u2)-isotope with x . y = (x u1)(u2 y) and unit (u1 u2)^-1."""

    kind = 'alternative_isotope'

    def __init__(self, parent: StructuredTorus, u1: TorusElement, u2: TorusElement):
        if parent.flavor not in (ASSOCIATIVE, ALTERNATIVE):
            raise FlavorError(f"(u1,u2)-isotopes need an alternative torus, got {parent.flavor}")
        d1, self.k1 = u1.homogeneous()
        d2, self.k2 = u2.homogeneous()
        super().__init__(parent, vec_neg(vec_add(d1, d2)), parent.flavor)
        self.u1, self.u2 = u1, u2
        self.d1, self.d2 = d1, d2
        self._unit = parent.inverse(u1 * u2)

    def _structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        m = self.parent.mul_coeff
        left = vec_add(lam, self.shift)
        right = vec_add(mu, self.shift)
        c1 = m(left, self.d1)
        if not c1:
            return self.zero_scalar
        c2 = m(self.d2, right)
        if not c2:
            return self.zero_scalar
        return self.k1 * self.k2 * c1 * c2 * m(vec_add(left, self.d1), vec_add(self.d2, right))

    def identity(self) -> TorusElement:
        return self.from_parent(self._unit)

    def unit_map(self) -> Callable[[TorusElement], TorusElement]:
        """x -> (u1 u2)^-1 x, a graded map from the parent onto this isotope."""
        unit = self._unit

        def apply(x: TorusElement) -> TorusElement:
            return self.from_parent(unit * x)

        return apply


class OppositeTorus(DerivedTorus):
    """A^op with x .op y = yx."""

    kind = 'opposite'

    def __init__(self, parent: StructuredTorus):
        super().__init__(parent, zero_vec(parent.n), parent.flavor)

    def _structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        return self.parent.structure(mu, lam)

    def identity(self) -> TorusElement:
        return self.from_parent(self.parent.identity())


class PerturbedTorus(DerivedTorus):
    """A copy of a torus with one structure constant multiplied by a factor."""

    kind = 'perturbed'

    def __init__(self, parent: StructuredTorus, lam: Sequence[int], mu: Sequence[int], factor: Any):
        super().__init__(parent, zero_vec(parent.n), parent.flavor)
        self.target = (vec(lam), vec(mu))
        self.factor = self.scalar(factor)

    def _structure(self, lam: LatticeVec, mu: LatticeVec) -> CycScalar:
        value = self.parent.structure(lam, mu)
        if (lam, mu) == self.target:
            return value * self.factor
        return value

    def identity(self) -> TorusElement:
        return self.from_parent(self.parent.identity())

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['perturbed'] = {'lam': list(self.target[0]), 'mu': list(self.target[1]),
                             'factor': self.factor.to_json()}
        return info


def jordan_isotope(A: StructuredTorus, u_degree: Sequence[int], u: Optional[TorusElement] = None) -> JordanIsotope:
    """
    The u-isotope A^(u) for u = a_(u_degree), or for an explicit homogeneous u.

    With u in A^(-rho) the isotope is graded by (A^(u))^lam = A^(lam+rho).

    Raises:
        NotInvertibleError: If u_degree is outside the support
        FlavorError: If A is not a Jordan torus
    """
    u_degree = vec(u_degree)
    if u is None:
        if not A.in_support(u_degree):
            raise NotInvertibleError(f"No invertible element of degree {u_degree} in the torus")
        u = A.basis(u_degree)
    return JordanIsotope(A, u)


def alternative_isotope(A: StructuredTorus, u1_degree: Sequence[int], u2_degree: Sequence[int]) -> AlternativeIsotope:
    """The (u1, u2)-isotope with u_i = a_(u_i degree)."""
    return AlternativeIsotope(A, A.basis(u1_degree), A.basis(u2_degree))


def opposite(A: StructuredTorus) -> OppositeTorus:
    return OppositeTorus(A)


def perturb_structure(A: StructuredTorus, lam: Sequence[int], mu: Sequence[int], factor: Any = -1) -> PerturbedTorus:
    return PerturbedTorus(A, lam, mu, factor)


# -- involutions ----------------------------------------------------------

class Involution:
    """
    A graded involution iota(a_lam) = e(lam) a_lam of an associative torus.

    The sign function is held as a callable so that isotopes compose.
    """

    def __init__(self, torus: StructuredTorus, sign_fn: Callable[[LatticeVec], int],
                 signs: Optional[Sequence[int]] = None, h_degrees: Sequence[LatticeVec] = ()):
        if torus.flavor != ASSOCIATIVE:
            raise FlavorError(f"Involutions are defined here for associative tori, got {torus.flavor}")
        self.torus = torus
        self._sign_fn = sign_fn
        self.signs = tuple(signs) if signs is not None else None
        self.h_degrees = tuple(h_degrees)

    @classmethod
    def from_signs(cls, torus: QuantumTorus, e: Sequence[int]) -> 'Involution':
        """
        The unique involution with iota(x_i) = e_i x_i on a quantum torus with q = +/-1.

        Raises:
            TorusError: If q has entries other than +/-1 or e is malformed
        """
        if not isinstance(torus, QuantumTorus):
            raise TorusError("Sign involutions need a quantum torus")
        q = torus.q_signs()
        if len(e) != torus.n or any(s not in (1, -1) for s in e):
            raise TorusError(f"Involution signs must be {torus.n} values in {{1, -1}}, got {list(e)}")
        b = [1 if s == -1 else 0 for s in e]
        a = [[1 if q[i][j] == -1 else 0 for j in range(torus.n)] for i in range(torus.n)]

        def sign(lam: LatticeVec) -> int:
            bits = [x % 2 for x in lam]
            value = sum(bi * li for bi, li in zip(b, bits))
            for i in range(len(bits)):
                if bits[i]:
                    for j in range(i + 1, len(bits)):
                        value += a[i][j] * bits[j]
            return -1 if value % 2 else 1

        return cls(torus, sign, signs=e)

    def sign(self, lam: Sequence[int]) -> int:
        return self._sign_fn(vec(lam))

    def is_hermitian(self, lam: Sequence[int]) -> bool:
        return self.sign(lam) == 1

    def apply(self, x: TorusElement) -> TorusElement:
        if x.torus is not self.torus:
            raise IncompatibleAlgebraError("Element does not belong to the involution's torus")
        return TorusElement(self.torus, {lam: c * self.sign(lam) for lam, c in x.coeffs.items()})

    def to_json(self) -> Dict[str, Any]:
        return {'e': list(self.signs) if self.signs is not None else None,
                'h': [list(h) for h in self.h_degrees]}


def involution_isotope(iota: Involution, h_degree: Sequence[int]) -> Involution:
    """
    The involution x -> h iota(x) h^-1 for h = a_(h_degree).

    Raises:
        PreconditionError: If a_(h_degree) is not hermitian
    """
    mu = vec(h_degree)
    if not iota.is_hermitian(mu):
        raise PreconditionError(f"a_{list(mu)} is not hermitian for the involution")
    A = iota.torus

    def sign(lam: LatticeVec) -> int:
        return iota.sign(lam) * A.commutation_factor(mu, lam).as_sign()

    return Involution(A, sign, signs=iota.signs, h_degrees=iota.h_degrees + (mu,))


# -- invariants -----------------------------------------------------------

def commutator_degree_test(A: StructuredTorus, lam: Sequence[int]) -> bool:
    """
    Whether A^lam lies in [A, A].

    For the shipped associative tori this holds exactly when a_lam fails to
    commute with some generator.

    Raises:
        FlavorError: If A is not associative
    """
    if A.flavor != ASSOCIATIVE:
        raise FlavorError(f"Commutator test needs an associative torus, got {A.flavor}")
    lam = vec(lam)
    for i in range(A.n):
        e = unit_vec(A.n, i)
        if A.structure(lam, e) != A.structure(e, lam):
            return True
    return False


def centrality_table(A: StructuredTorus, window: int = 1, test_window: int = 1) -> Dict[LatticeVec, bool]:
    """
    For each support degree in the window, whether left multiplication by a_lam
    is a centroid element on the test window.
    """
    m = A.mul_coeff
    tests = A.window(test_window)
    table = {}
    for lam in A.window(window):
        central = True
        for mu in tests:
            for nu in tests:
                mn = vec_add(mu, nu)
                lhs = m(mu, nu) * m(lam, mn)
                left = m(lam, mu) * m(vec_add(lam, mu), nu)
                right = m(lam, nu) * m(mu, vec_add(lam, nu))
                if lhs != left or lhs != right:
                    central = False
                    break
            if not central:
                break
        table[lam] = central
    return table


def invariants(A: StructuredTorus, window: int = 1) -> Dict[str, Any]:
    """
    Isograded-isomorphism invariants of a torus.

    Args:
        A: The torus
        window: Box radius for the centrality table

    Returns:
        Dict with the support description, Gamma, S/Gamma, Sigma(S/Gamma) and
        the centrality table with its consistency against the closed form
    """
    gamma = Sublattice(A.gamma_generators(), A.n)
    result: Dict[str, Any] = {
        'kind': A.kind,
        'support': A.support_description(),
        'gamma_basis': [list(b) for b in gamma.basis],
        'gamma_index': gamma.index(),
        'quotient_invariants': gamma.invariants(),
    }
    if gamma.is_full_rank():
        reps = [r for r in gamma.coset_representatives() if A.in_support(r)]
        cosets = CosetSet.from_vectors(gamma, reps)
        sigma = coset_sum(cosets)
        result['support_cosets'] = [list(r) for r in cosets.representatives]
        result['support_coset_count'] = len(cosets)
        result['sigma'] = list(sigma)
        result['sigma_is_zero'] = not any(sigma)
    table = centrality_table(A, window)
    mismatches = [list(lam) for lam, central in table.items() if central != gamma.contains(lam)]
    result['centrality_table'] = {','.join(map(str, lam)): central for lam, central in table.items()}
    result['centrality_mismatches'] = mismatches
    result['centrality_consistent'] = not mismatches
    log.debug("Invariants of %s: index %s, %d centrality mismatches", A.kind, gamma.index(), len(mismatches))
    return result


def sigma_of_support(A: StructuredTorus) -> LatticeVec:
    """Sigma(S/Gamma) as a canonical coset representative."""
    gamma = Sublattice(A.gamma_generators(), A.n)
    reps = [r for r in gamma.coset_representatives() if A.in_support(r)]
    return coset_sum(CosetSet.from_vectors(gamma, reps))
