"""Centreless Lie tori over coordinate tori: TKK(A), sl_(r+1)(A) and ssp_2r(A, iota).

Each model wraps an underlying Lie algebra (shared by all of its grading-shift
isotopes) and a Q x Lambda grading. Matrix algebras store elements as sparse
maps (row, col, degree) -> scalar; TKK elements carry plus and minus parts
and an inner part sum kappa V_(a_lam, a_mu) compared by its action on a
degree window.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .checks import DEFAULT_MAX_CHECKS, DEFAULT_SEED, MAX_WITNESSES, build_report, run_check, sweep
from .coord_tori import (
    ASSOCIATIVE, JORDAN, Involution, StructuredTorus, TorusElement, commutator_degree_test,
    involution_isotope, jordan_isotope, opposite, u_operator,
)
from .exact_scalars import CycScalar
from .lattice import (
    LatticeVec, RootDatum, RootDomainError, ShiftHom, Sublattice, vec, vec_add,
    vec_neg, vec_sub, window_points, zero_vec,
)

log = logging.getLogger(__name__)

DEFAULT_ACTION_WINDOW = 2
DEFAULT_CARTAN_WINDOW = 1

Degree = Tuple[LatticeVec, LatticeVec]


class LieTorusError(ValueError):
    """Base class for Lie torus model errors."""
    pass


class InadmissibleShiftError(LieTorusError):
    """Raised when a shift does not send every base root into its Lambda-support."""
    pass


class ModelMismatchError(LieTorusError):
    """Raised when elements of different algebras are combined."""
    pass


# -- linear algebra over CycScalar ---------------------------------------

def exact_rank(vectors: Iterable[Dict[Any, CycScalar]]) -> int:
    """Rank of sparse vectors over Q(zeta_m) by incremental Gauss-Jordan elimination."""
    pivots: List[Tuple[Any, Dict[Any, CycScalar]]] = []
    for v in vectors:
        work = dict(v)
        for key, row in pivots:
            c = work.get(key)
            if c:
                _axpy(work, -c, row)
        if not work:
            continue
        key = next(iter(work))
        lead = work[key]
        row = {k: x / lead for k, x in work.items()}
        for _, other in pivots:
            c = other.get(key)
            if c:
                _axpy(other, -c, row)
        pivots.append((key, row))
    return len(pivots)


def _axpy(target: Dict[Any, CycScalar], k: CycScalar, source: Dict[Any, CycScalar]) -> None:
    for key, x in source.items():
        value = target[key] + k * x if key in target else k * x
        if value:
            target[key] = value
        else:
            target.pop(key, None)


def _accumulate(target: Dict[Any, CycScalar], key: Any, value: CycScalar) -> None:
    if not value:
        return
    if key in target:
        total = target[key] + value
        if total:
            target[key] = total
        else:
            del target[key]
    else:
        target[key] = value


# -- elements -------------------------------------------------------------

class LieElement:
    """Common arithmetic for elements of an underlying Lie algebra."""

    __slots__ = ('algebra',)

    def _check(self, other: 'LieElement') -> None:
        if not isinstance(other, LieElement) or other.algebra is not self.algebra:
            raise ModelMismatchError("Elements belong to different Lie algebras")

    def __sub__(self, other: 'LieElement') -> 'LieElement':
        return self + (-other)

    def __rmul__(self, k: Any) -> 'LieElement':
        return self.scale(k)

    def __mul__(self, k: Any) -> 'LieElement':
        return self.scale(k)

    def is_zero(self) -> bool:
        return not self.algebra.flatten(self)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LieElement) or other.algebra is not self.algebra:
            return NotImplemented
        return not self.algebra.flatten(self - other)

    __hash__ = None


class MatrixElement(LieElement):
    """A matrix over a torus stored as (row, col, degree) -> scalar."""

    __slots__ = ('entries',)

    def __init__(self, algebra: 'MatrixAlgebra', entries: Dict[Tuple[int, int, LatticeVec], CycScalar]):
        self.algebra = algebra
        self.entries = {k: v for k, v in entries.items() if v}

    def __add__(self, other: 'MatrixElement') -> 'MatrixElement':
        self._check(other)
        result = dict(self.entries)
        for k, v in other.entries.items():
            _accumulate(result, k, v)
        return MatrixElement(self.algebra, result)

    def __neg__(self) -> 'MatrixElement':
        return MatrixElement(self.algebra, {k: -v for k, v in self.entries.items()})

    def scale(self, k: Any) -> 'MatrixElement':
        k = self.algebra.torus.scalar(k)
        return MatrixElement(self.algebra, {key: k * v for key, v in self.entries.items()})

    def entry(self, i: int, j: int) -> TorusElement:
        A = self.algebra.torus
        return TorusElement(A, {lam: c for (p, q, lam), c in self.entries.items() if (p, q) == (i, j)})

    def to_json(self) -> List[Dict[str, Any]]:
        return [{'row': i, 'col': j, 'degree': list(lam), 'coeff': self.entries[(i, j, lam)].to_json()}
                for (i, j, lam) in sorted(self.entries)]

    def __repr__(self) -> str:
        if not self.entries:
            return "0"
        return " + ".join(f"({c})a{list(lam)}e{i + 1}{j + 1}" for (i, j, lam), c in sorted(self.entries.items()))


class TKKElement(LieElement):
    """x_1 + sum kappa V_(a_lam, a_mu) + y_-1 with parts keyed by degrees."""

    __slots__ = ('plus', 'inner', 'minus')

    def __init__(self, algebra: 'TKKAlgebra', plus: Optional[Dict[LatticeVec, CycScalar]] = None,
                 inner: Optional[Dict[Tuple[LatticeVec, LatticeVec], CycScalar]] = None,
                 minus: Optional[Dict[LatticeVec, CycScalar]] = None):
        self.algebra = algebra
        self.plus = {k: v for k, v in (plus or {}).items() if v}
        self.inner = {k: v for k, v in (inner or {}).items() if v}
        self.minus = {k: v for k, v in (minus or {}).items() if v}

    def __add__(self, other: 'TKKElement') -> 'TKKElement':
        self._check(other)
        parts = []
        for mine, theirs in ((self.plus, other.plus), (self.inner, other.inner), (self.minus, other.minus)):
            result = dict(mine)
            for k, v in theirs.items():
                _accumulate(result, k, v)
            parts.append(result)
        return TKKElement(self.algebra, *parts)

    def __neg__(self) -> 'TKKElement':
        return self.scale(-1)

    def scale(self, k: Any) -> 'TKKElement':
        k = self.algebra.torus.scalar(k)
        return TKKElement(self.algebra,
                          {d: k * v for d, v in self.plus.items()},
                          {d: k * v for d, v in self.inner.items()},
                          {d: k * v for d, v in self.minus.items()})

    def to_json(self) -> Dict[str, Any]:
        return {
            'plus': [{'degree': list(d), 'coeff': self.plus[d].to_json()} for d in sorted(self.plus)],
            'inner': [{'x': list(a), 'y': list(b), 'coeff': self.inner[(a, b)].to_json()}
                      for (a, b) in sorted(self.inner)],
            'minus': [{'degree': list(d), 'coeff': self.minus[d].to_json()} for d in sorted(self.minus)],
        }

    def __repr__(self) -> str:
        terms = [f"({c})a{list(d)}_1" for d, c in sorted(self.plus.items())]
        terms += [f"({c})V[a{list(a)},a{list(b)}]" for (a, b), c in sorted(self.inner.items())]
        terms += [f"({c})a{list(d)}_-1" for d, c in sorted(self.minus.items())]
        return " + ".join(terms) if terms else "0"


# -- underlying algebras --------------------------------------------------

class MatrixAlgebra:
    """Matrices of a fixed size over an associative torus under the commutator."""

    def __init__(self, torus: StructuredTorus, size: int):
        if torus.flavor != ASSOCIATIVE:
            raise LieTorusError(f"Matrix models need an associative torus, got {torus.flavor}")
        self.torus = torus
        self.size = size

    def zero(self) -> MatrixElement:
        return MatrixElement(self, {})

    def unit(self, i: int, j: int, lam: Sequence[int], coeff: Any = 1) -> MatrixElement:
        lam = vec(lam)
        if not self.torus.in_support(lam):
            raise LieTorusError(f"Degree {lam} outside the coordinate support")
        return MatrixElement(self, {(i, j, lam): self.torus.scalar(coeff)})

    def from_torus(self, i: int, j: int, x: TorusElement) -> MatrixElement:
        return MatrixElement(self, {(i, j, lam): c for lam, c in x.coeffs.items()})

    def product(self, a: MatrixElement, b: MatrixElement) -> Dict[Tuple[int, int, LatticeVec], CycScalar]:
        m = self.torus.mul_coeff
        rows: Dict[int, List[Tuple[int, LatticeVec, CycScalar]]] = {}
        for (k, j, mu), c in b.entries.items():
            rows.setdefault(k, []).append((j, mu, c))
        result: Dict[Tuple[int, int, LatticeVec], CycScalar] = {}
        for (i, k, lam), c1 in a.entries.items():
            for j, mu, c2 in rows.get(k, ()):
                s = m(lam, mu)
                if s:
                    _accumulate(result, (i, j, vec_add(lam, mu)), c1 * c2 * s)
        return result

    def bracket(self, a: MatrixElement, b: MatrixElement) -> MatrixElement:
        a._check(b)
        result = self.product(a, b)
        for k, v in self.product(b, a).items():
            _accumulate(result, k, -v)
        return MatrixElement(self, result)

    def flatten(self, x: MatrixElement) -> Dict[Any, CycScalar]:
        return dict(x.entries)

    def trace(self, x: MatrixElement, rows: Optional[Iterable[int]] = None) -> TorusElement:
        rows = range(self.size) if rows is None else rows
        total = self.torus.zero()
        for i in rows:
            total = total + x.entry(i, i)
        return total


class TKKAlgebra:
    """TKK(A) = A_1 + V_(A,A) + A_-1 for a Jordan torus A."""

    def __init__(self, torus: StructuredTorus, action_window: int = DEFAULT_ACTION_WINDOW):
        if torus.flavor != JORDAN:
            raise LieTorusError(f"TKK needs a Jordan torus, got {torus.flavor}")
        self.torus = torus
        self.action_window = action_window
        self._action_degrees = torus.window(action_window)
        self._action_cache: Dict[Tuple[LatticeVec, LatticeVec], Dict[Any, CycScalar]] = {}

    def zero(self) -> TKKElement:
        return TKKElement(self)

    def plus(self, lam: Sequence[int], coeff: Any = 1) -> TKKElement:
        lam = self._degree(lam)
        return TKKElement(self, plus={lam: self.torus.scalar(coeff)})

    def minus(self, lam: Sequence[int], coeff: Any = 1) -> TKKElement:
        lam = self._degree(lam)
        return TKKElement(self, minus={lam: self.torus.scalar(coeff)})

    def inner(self, lam: Sequence[int], mu: Sequence[int], coeff: Any = 1) -> TKKElement:
        return TKKElement(self, inner={(self._degree(lam), self._degree(mu)): self.torus.scalar(coeff)})

    def _degree(self, lam: Sequence[int]) -> LatticeVec:
        lam = vec(lam)
        if not self.torus.in_support(lam):
            raise LieTorusError(f"Degree {lam} outside the Jordan torus support")
        return lam

    def _apply_inner(self, inner: Dict[Tuple[LatticeVec, LatticeVec], CycScalar],
                     part: Dict[LatticeVec, CycScalar], adjoint: bool) -> Dict[LatticeVec, CycScalar]:
        # T(z) = sum k {a, b, z}; T*(z) = -sum k {b, a, z}
        t = self.torus.triple_coeff
        result: Dict[LatticeVec, CycScalar] = {}
        for (lam, mu), k in inner.items():
            for nu, c in part.items():
                coeff = t(mu, lam, nu) * -1 if adjoint else t(lam, mu, nu)
                if coeff:
                    _accumulate(result, vec_add(vec_add(lam, mu), nu), k * c * coeff)
        return result

    def bracket(self, a: TKKElement, b: TKKElement) -> TKKElement:
        a._check(b)
        t = self.torus.triple_coeff
        plus = self._apply_inner(a.inner, b.plus, False)
        for k, v in self._apply_inner(b.inner, a.plus, False).items():
            _accumulate(plus, k, -v)
        minus = self._apply_inner(a.inner, b.minus, True)
        for k, v in self._apply_inner(b.inner, a.minus, True).items():
            _accumulate(minus, k, -v)
        inner: Dict[Tuple[LatticeVec, LatticeVec], CycScalar] = {}
        for (lam, mu), k1 in a.inner.items():
            for (nu, rho), k2 in b.inner.items():
                # [V_(x,y), V_(z,w)] = V_({x,y,z}, w) - V_(z, {y,x,w})
                c = t(lam, mu, nu)
                if c:
                    _accumulate(inner, (vec_add(vec_add(lam, mu), nu), rho), k1 * k2 * c)
                c = t(mu, lam, rho)
                if c:
                    _accumulate(inner, (nu, vec_add(vec_add(mu, lam), rho)), -k1 * k2 * c)
        for lam, c1 in a.plus.items():
            for mu, c2 in b.minus.items():
                _accumulate(inner, (lam, mu), c1 * c2)
        for lam, c1 in b.plus.items():
            for mu, c2 in a.minus.items():
                _accumulate(inner, (lam, mu), -c1 * c2)
        return TKKElement(self, plus, inner, minus)

    def inner_action(self, lam: LatticeVec, mu: LatticeVec) -> Dict[Any, CycScalar]:
        """Coefficients of V_(a_lam, a_mu) acting on both sides of the action window."""
        key = (lam, mu)
        cached = self._action_cache.get(key)
        if cached is None:
            t = self.torus.triple_coeff
            cached = {}
            for nu in self._action_degrees:
                c = t(lam, mu, nu)
                if c:
                    cached[('V+', nu)] = c
                c = t(mu, lam, nu)
                if c:
                    cached[('V-', nu)] = -c
            self._action_cache[key] = cached
        return cached

    def flatten(self, x: TKKElement) -> Dict[Any, CycScalar]:
        result: Dict[Any, CycScalar] = {}
        for d, c in x.plus.items():
            result[('+', d)] = c
        for d, c in x.minus.items():
            result[('-', d)] = c
        for (lam, mu), k in x.inner.items():
            for key, c in self.inner_action(lam, mu).items():
                _accumulate(result, ('V', vec_add(lam, mu)) + key, k * c)
        return result


# -- models ---------------------------------------------------------------

@dataclass(frozen=True)
class LambdaSupport:
    """The set Lambda_alpha of a model, as a description and a membership test."""
    description: str
    contains: Callable[[LatticeVec], bool] = field(compare=False)

    def to_json(self) -> Dict[str, Any]:
        return {'description': self.description}


class LieTorusModel:
    """
    Base class for the three Lie torus constructions.

    Subclasses implement the natural (unshifted) grading; this class applies
    the shift, so that the piece (alpha, lam) of L^(s) is the natural piece
    (alpha, lam + s(alpha)).
    """

    kind = 'abstract'

    def __init__(self, datum: RootDatum, torus: StructuredTorus, algebra: Any, shift: Optional[ShiftHom] = None):
        self.datum = datum
        self.torus = torus
        self.algebra = algebra
        self.n = torus.n
        self.shift = shift if shift is not None else ShiftHom.zero(datum, torus.n)
        if self.shift.n != self.n:
            raise LieTorusError(f"Shift has images of length {self.shift.n}, lattice rank is {self.n}")

    # -- subclass hooks -------------------------------------------------
    def with_shift(self, shift: ShiftHom) -> 'LieTorusModel':
        raise NotImplementedError

    def natural_basis(self, alpha: LatticeVec, lam: LatticeVec) -> List[LieElement]:
        raise NotImplementedError

    def natural_components(self, x: LieElement) -> Dict[Degree, LieElement]:
        raise NotImplementedError

    def natural_lambda(self, alpha: LatticeVec, lam: LatticeVec) -> bool:
        raise NotImplementedError

    def natural_lambda_description(self, alpha: LatticeVec) -> str:
        raise NotImplementedError

    def is_member(self, x: LieElement) -> bool:
        return True

    def describe(self) -> Dict[str, Any]:
        return {'model': self.kind, 'datum': self.datum.to_json(), 'coord': self.torus.describe(),
                'shift': self.shift.to_json()}

    # -- grading --------------------------------------------------------
    def s(self, alpha: LatticeVec) -> LatticeVec:
        return self.shift.apply(alpha)

    def basis(self, alpha: Sequence[int], lam: Sequence[int]) -> List[LieElement]:
        """Basis of the homogeneous piece L_alpha^lam in this model's grading."""
        alpha, lam = vec(alpha), vec(lam)
        if any(alpha) and not self.datum.is_root(alpha):
            return []
        return self.natural_basis(alpha, vec_add(lam, self.s(alpha)))

    def components(self, x: LieElement) -> Dict[Degree, LieElement]:
        return {(alpha, vec_sub(lam, self.s(alpha))): part
                for (alpha, lam), part in self.natural_components(x).items()}

    def graded_component(self, x: LieElement, alpha: Sequence[int], lam: Sequence[int]) -> LieElement:
        """Projection of x onto the (alpha, lam) piece."""
        return self.components(x).get((vec(alpha), vec(lam)), self.algebra.zero())

    def degree_of(self, x: LieElement) -> Optional[Degree]:
        """The degree of a nonzero homogeneous element, else None."""
        comps = {d: p for d, p in self.components(x).items() if not p.is_zero()}
        if len(comps) != 1:
            return None
        return next(iter(comps))

    def in_lambda_support(self, alpha: Sequence[int], lam: Sequence[int]) -> bool:
        alpha = vec(alpha)
        return self.natural_lambda(alpha, vec_add(vec(lam), self.s(alpha)))

    def lambda_support(self, alpha: Sequence[int]) -> LambdaSupport:
        """
        Lambda_alpha = {lam : L_alpha^lam != 0}.

        Raises:
            RootDomainError: If alpha is not a nonzero root
        """
        alpha = vec(alpha)
        if not self.datum.is_root(alpha):
            raise RootDomainError(f"{alpha} is not a nonzero root of {self.datum.type_tag}{self.datum.rank}")
        desc = self.natural_lambda_description(alpha)
        offset = self.s(alpha)
        if any(offset):
            desc = f"({desc}) - {list(offset)}"
        return LambdaSupport(desc, lambda lam: self.in_lambda_support(alpha, lam))

    def roots_with_zero(self) -> List[LatticeVec]:
        return [self.datum.zero] + list(self.datum.roots)

    def window_basis(self, w: int) -> List[Tuple[LatticeVec, LatticeVec, LieElement]]:
        """All (alpha, lam, element) with lam in [-w, w]^n."""
        result = []
        for lam in window_points(self.n, w):
            for alpha in self.roots_with_zero():
                for x in self.basis(alpha, lam):
                    result.append((alpha, lam, x))
        return result

    def bracket(self, a: LieElement, b: LieElement) -> LieElement:
        if a.algebra is not self.algebra or b.algebra is not self.algebra:
            raise ModelMismatchError("Element does not belong to this model")
        return self.algebra.bracket(a, b)

    def flatten(self, x: LieElement) -> Dict[Any, CycScalar]:
        return self.algebra.flatten(x)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """The Lie bracket of two elements of the same underlying algebra."""
    a._check(b)
    return a.algebra.bracket(a, b)


def graded_component(model: LieTorusModel, x: LieElement, alpha: Sequence[int], lam: Sequence[int]) -> LieElement:
    return model.graded_component(x, alpha, lam)


def lambda_support(model: LieTorusModel, alpha: Sequence[int]) -> LambdaSupport:
    return model.lambda_support(alpha)


class SLModel(LieTorusModel):
    """sl_(r+1)(A): matrices over an associative torus with trace in [A, A]."""

    kind = 'sl'

    def __init__(self, torus: StructuredTorus, r: int, shift: Optional[ShiftHom] = None,
                 algebra: Optional[MatrixAlgebra] = None):
        if r < 1:
            raise LieTorusError(f"sl needs r >= 1, got {r}")
        self.r = r
        algebra = algebra or MatrixAlgebra(torus, r + 1)
        super().__init__(RootDatum('A', r), torus, algebra, shift)

    def with_shift(self, shift: ShiftHom) -> 'SLModel':
        return SLModel(self.torus, self.r, shift, self.algebra)

    def root_of(self, i: int, j: int) -> LatticeVec:
        return vec_sub(self.datum.epsilon(i), self.datum.epsilon(j))

    def _central(self, lam: LatticeVec) -> bool:
        return not commutator_degree_test(self.torus, lam)

    def natural_basis(self, alpha: LatticeVec, lam: LatticeVec) -> List[MatrixElement]:
        if not self.torus.in_support(lam):
            return []
        N = self.r + 1
        alg = self.algebra
        if any(alpha):
            i = alpha.index(1)
            j = alpha.index(-1)
            return [alg.unit(i, j, lam)]
        if not self._central(lam):
            return [alg.unit(p, p, lam) for p in range(N)]
        return [alg.unit(p, p, lam) - alg.unit(p + 1, p + 1, lam) for p in range(N - 1)]

    def natural_components(self, x: MatrixElement) -> Dict[Degree, MatrixElement]:
        parts: Dict[Degree, Dict] = {}
        for (i, j, lam), c in x.entries.items():
            parts.setdefault((self.root_of(i, j), lam), {})[(i, j, lam)] = c
        return {d: MatrixElement(self.algebra, e) for d, e in parts.items()}

    def natural_lambda(self, alpha: LatticeVec, lam: LatticeVec) -> bool:
        return self.torus.in_support(lam)

    def natural_lambda_description(self, alpha: LatticeVec) -> str:
        return self.torus.support_description()

    def is_member(self, x: MatrixElement) -> bool:
        """Trace condition: every degree of trace(X) lies in [A, A]."""
        tr = self.algebra.trace(x)
        return all(not self._central(lam) for lam in tr.coeffs)

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['r'] = self.r
        return info


class SSPModel(LieTorusModel):
    """
    ssp_2r(A, iota): matrices [[X, Y], [Z, -X_bar^t]] with Y_bar^t = Y and Z_bar^t = Z.

    Row p < r has weight e_p and row p >= r has weight -e_(p-r).
    """

    kind = 'ssp'

    def __init__(self, torus: StructuredTorus, r: int, involution: Involution, shift: Optional[ShiftHom] = None,
                 algebra: Optional[MatrixAlgebra] = None):
        if r < 2:
            raise LieTorusError(f"ssp needs r >= 2, got {r}")
        if involution.torus is not torus:
            raise LieTorusError("Involution belongs to a different torus")
        self.r = r
        self.involution = involution
        algebra = algebra or MatrixAlgebra(torus, 2 * r)
        super().__init__(RootDatum('C', r), torus, algebra, shift)

    def with_shift(self, shift: ShiftHom) -> 'SSPModel':
        return SSPModel(self.torus, self.r, self.involution, shift, self.algebra)

    def weight(self, p: int) -> LatticeVec:
        if p < self.r:
            return self.datum.epsilon(p)
        return vec_neg(self.datum.epsilon(p - self.r))

    def root_of(self, p: int, q: int) -> LatticeVec:
        return vec_sub(self.weight(p), self.weight(q))

    def bar(self, lam: LatticeVec) -> int:
        return self.involution.sign(lam)

    def ell(self, i: int, j: int, lam: LatticeVec, coeff: Any = 1) -> MatrixElement:
        """l_ij(x) = x e_(i,j) - x_bar e_(j+r,i+r)."""
        r, alg = self.r, self.algebra
        return alg.unit(i, j, lam, coeff) - alg.unit(j + r, i + r, lam, self.torus.scalar(coeff) * self.bar(lam))

    def m_elem(self, i: int, j: int, lam: LatticeVec, coeff: Any = 1) -> MatrixElement:
        """m_ij(x) = x e_(i,j+r) + x_bar e_(j,i+r)."""
        r, alg = self.r, self.algebra
        return alg.unit(i, j + r, lam, coeff) + alg.unit(j, i + r, lam, self.torus.scalar(coeff) * self.bar(lam))

    def n_elem(self, i: int, j: int, lam: LatticeVec, coeff: Any = 1) -> MatrixElement:
        """n_ij(x) = x e_(i+r,j) + x_bar e_(j+r,i)."""
        r, alg = self.r, self.algebra
        return alg.unit(i + r, j, lam, coeff) + alg.unit(j + r, i, lam, self.torus.scalar(coeff) * self.bar(lam))

    def cartan(self, i: int, lam: LatticeVec) -> MatrixElement:
        """h_i(x) = e_ii(x) - e_(i+r,i+r)(x_bar)."""
        return self.ell(i, i, lam)

    def _free_trace(self, lam: LatticeVec) -> bool:
        # a_lam in A_+ + [A, A]
        return self.bar(lam) == 1 or commutator_degree_test(self.torus, lam)

    def natural_basis(self, alpha: LatticeVec, lam: LatticeVec) -> List[MatrixElement]:
        if not self.torus.in_support(lam):
            return []
        r = self.r
        if not any(alpha):
            if self._free_trace(lam):
                return [self.cartan(i, lam) for i in range(r)]
            return [self.cartan(i, lam) - self.cartan(i + 1, lam) for i in range(r - 1)]
        plus = [i for i, a in enumerate(alpha) if a > 0]
        minus = [i for i, a in enumerate(alpha) if a < 0]
        if len(plus) == 1 and len(minus) == 1:
            return [self.ell(plus[0], minus[0], lam)]
        if not minus:
            i, j = (plus[0], plus[0]) if len(plus) == 1 else plus
            if i == j:
                return [self.algebra.unit(i, i + r, lam)] if self.bar(lam) == 1 else []
            return [self.m_elem(i, j, lam)]
        i, j = (minus[0], minus[0]) if len(minus) == 1 else minus
        if i == j:
            return [self.algebra.unit(i + r, i, lam)] if self.bar(lam) == 1 else []
        return [self.n_elem(i, j, lam)]

    def natural_components(self, x: MatrixElement) -> Dict[Degree, MatrixElement]:
        parts: Dict[Degree, Dict] = {}
        for (p, q, lam), c in x.entries.items():
            parts.setdefault((self.root_of(p, q), lam), {})[(p, q, lam)] = c
        return {d: MatrixElement(self.algebra, e) for d, e in parts.items()}

    def natural_lambda(self, alpha: LatticeVec, lam: LatticeVec) -> bool:
        if self.datum.is_long(alpha):
            return self.torus.in_support(lam) and self.bar(lam) == 1
        return self.torus.in_support(lam)

    def natural_lambda_description(self, alpha: LatticeVec) -> str:
        if self.datum.is_long(alpha):
            return "Lambda_+ = {lam : iota(a_lam) = a_lam}"
        return self.torus.support_description()

    def shape_defects(self, x: MatrixElement) -> List[str]:
        """Ways in which x fails the block shape and trace condition."""
        r = self.r
        defects = []
        for (p, q, lam), c in x.entries.items():
            sign = self.bar(lam)
            if p < r and q < r:
                partner, expected = (q + r, p + r), -c * sign
            elif p >= r and q >= r:
                partner, expected = (q - r, p - r), -c * sign
            elif p < r:
                partner, expected = (q - r, p + r), c * sign
            else:
                partner, expected = (q + r, p - r), c * sign
            actual = x.entries.get(partner + (lam,), self.torus.zero_scalar)
            if actual != expected:
                defects.append(f"entry ({p},{q}) at {list(lam)} has no matching ({partner[0]},{partner[1]})")
        tr = self.algebra.trace(x, range(r))
        for lam in tr.coeffs:
            if not self._free_trace(lam):
                defects.append(f"trace of X has an antihermitian central term at {list(lam)}")
        return defects

    def is_member(self, x: MatrixElement) -> bool:
        return not self.shape_defects(x)

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['r'] = self.r
        info['involution'] = self.involution.to_json()
        return info


class TKKModel(LieTorusModel):
    """TKK(A) of a Jordan torus, a Lie torus of type A_1 with alpha = e_1 - e_2."""

    kind = 'tkk'

    def __init__(self, torus: StructuredTorus, shift: Optional[ShiftHom] = None, algebra: Optional[TKKAlgebra] = None,
                 action_window: int = DEFAULT_ACTION_WINDOW, cartan_window: int = DEFAULT_CARTAN_WINDOW):
        algebra = algebra or TKKAlgebra(torus, action_window)
        self.cartan_window = cartan_window
        super().__init__(RootDatum('A', 1), torus, algebra, shift)
        self.alpha = self.datum.base[0]
        self._cartan_cache: Dict[LatticeVec, List[TKKElement]] = {}

    def with_shift(self, shift: ShiftHom) -> 'TKKModel':
        model = TKKModel(self.torus, shift, self.algebra, cartan_window=self.cartan_window)
        model._cartan_cache = self._cartan_cache
        return model

    def natural_basis(self, alpha: LatticeVec, lam: LatticeVec) -> List[TKKElement]:
        A = self.torus
        if alpha == self.alpha:
            return [self.algebra.plus(lam)] if A.in_support(lam) else []
        if alpha == vec_neg(self.alpha):
            return [self.algebra.minus(lam)] if A.in_support(lam) else []
        if any(alpha):
            return []
        cached = self._cartan_cache.get(lam)
        if cached is None:
            cached = []
            rows: List[Dict[Any, CycScalar]] = []
            rank = 0
            for mu in A.window(self.cartan_window):
                nu = vec_sub(lam, mu)
                if not A.in_support(nu):
                    continue
                candidate = self.algebra.inner(mu, nu)
                flat = self.algebra.flatten(candidate)
                if not flat:
                    continue
                new_rank = exact_rank(rows + [flat])
                if new_rank > rank:
                    rows.append(flat)
                    cached.append(candidate)
                    rank = new_rank
            self._cartan_cache[lam] = cached
        return list(cached)

    def natural_components(self, x: TKKElement) -> Dict[Degree, TKKElement]:
        alg = self.algebra
        parts: Dict[Degree, TKKElement] = {}
        for d, c in x.plus.items():
            parts[(self.alpha, d)] = parts.get((self.alpha, d), alg.zero()) + TKKElement(alg, plus={d: c})
        neg = vec_neg(self.alpha)
        for d, c in x.minus.items():
            parts[(neg, d)] = parts.get((neg, d), alg.zero()) + TKKElement(alg, minus={d: c})
        zero = self.datum.zero
        for (a, b), c in x.inner.items():
            key = (zero, vec_add(a, b))
            parts[key] = parts.get(key, alg.zero()) + TKKElement(alg, inner={(a, b): c})
        return parts

    def natural_lambda(self, alpha: LatticeVec, lam: LatticeVec) -> bool:
        return self.torus.in_support(lam)

    def natural_lambda_description(self, alpha: LatticeVec) -> str:
        return self.torus.support_description()

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info['action_window'] = self.algebra.action_window
        return info


# -- admissibility and isotopes -------------------------------------------

def admissible(model: LieTorusModel, s: ShiftHom) -> bool:
    """Whether s(alpha_i) lies in Lambda_(alpha_i) for every base root."""
    return _inadmissible_root(model, s) is None


def _inadmissible_root(model: LieTorusModel, s: ShiftHom) -> Optional[int]:
    for i, alpha in enumerate(model.datum.base):
        if not model.in_lambda_support(alpha, s.images[i]):
            return i
    return None


def shift_isotope(model: LieTorusModel, s: ShiftHom) -> LieTorusModel:
    """
    The isotope L^(s) with (L^(s))_alpha^lam = L_alpha^(lam + s(alpha)).

    Raises:
        InadmissibleShiftError: If some s(alpha_i) is outside Lambda_(alpha_i)
    """
    bad = _inadmissible_root(model, s)
    if bad is not None:
        raise InadmissibleShiftError(
            f"s(alpha_{bad + 1}) = {list(s.images[bad])} is not in Lambda_alpha_{bad + 1} "
            f"({model.lambda_support(model.datum.base[bad]).description})"
        )
    return model.with_shift(model.shift + s)


# -- graded maps ----------------------------------------------------------

@dataclass
class GradedMap:
    """A candidate bi-isomorphism with its root map and its rule on elements."""
    name: str
    source: LieTorusModel
    target: LieTorusModel
    root_map: Callable[[LatticeVec], LatticeVec]
    degree_map: Callable[[LatticeVec], LatticeVec]
    rule: Callable[[LieElement], LieElement]
    details: Dict[str, Any] = field(default_factory=dict)

    def __call__(self, x: LieElement) -> LieElement:
        return self.rule(x)

    def describe(self) -> Dict[str, Any]:
        info = {'name': self.name, 'source': self.source.describe(), 'target': self.target.describe()}
        info.update(self.details)
        return info


def _identity(v: LatticeVec) -> LatticeVec:
    return v


def identity_map(model: LieTorusModel) -> GradedMap:
    return GradedMap('identity', model, model, _identity, _identity, lambda x: x)


def perturb_map(phi: GradedMap, alpha: Sequence[int], lam: Sequence[int], factor: Any = -1) -> GradedMap:
    """A copy of phi that rescales its value on the source piece (alpha, lam)."""
    alpha, lam = vec(alpha), vec(lam)
    source = phi.source

    def rule(x: LieElement) -> LieElement:
        part = source.graded_component(x, alpha, lam)
        image = phi.rule(x)
        if part.is_zero():
            return image
        return image + phi.rule(part).scale(source.torus.scalar(factor) - 1)

    return GradedMap(f"{phi.name} (perturbed at {list(alpha)}, {list(lam)})", phi.source, phi.target,
                     phi.root_map, phi.degree_map, rule, dict(phi.details))


def _matrix_map(source: LieTorusModel, target: LieTorusModel,
                entry_rule: Callable[[int, int, LatticeVec, CycScalar], MatrixElement]) -> Callable:
    def rule(x: MatrixElement) -> MatrixElement:
        if x.algebra is not source.algebra:
            raise ModelMismatchError("Element does not belong to the source model")
        result = target.algebra.zero()
        for (i, j, lam), c in x.entries.items():
            result = result + entry_rule(i, j, lam, c)
        return result
    return rule


def opposite_iso(model: LieTorusModel) -> GradedMap:
    """
    X -> -X^t from sl(A) onto sl(A^op), with the target grading shifted by -s.

    Raises:
        LieTorusError: If model is not an sl model
    """
    if not isinstance(model, SLModel):
        raise LieTorusError(f"opposite_iso needs an sl model, got {model.kind}")
    target = SLModel(opposite(model.torus), model.r, -model.shift)
    alg = target.algebra

    def entry(i: int, j: int, lam: LatticeVec, c: CycScalar) -> MatrixElement:
        return alg.unit(j, i, lam, -c)

    return GradedMap('opposite', model, target, vec_neg, _identity, _matrix_map(model, target, entry))


def diag_conjugation_iso(model: LieTorusModel, s: ShiftHom) -> GradedMap:
    """
    X -> d X d^-1 from L onto L^(s) with d = diag(a_s(e_1), ..., a_s(e_(r+1))) and s(e_1) = 0.

    Raises:
        LieTorusError: If model is not an sl model
    """
    if not isinstance(model, SLModel):
        raise LieTorusError(f"diag_conjugation_iso needs an sl model, got {model.kind}")
    target = shift_isotope(model, s)
    A = model.torus
    d = [A.basis(off) for off in s.epsilon_offsets()]
    d_inv = [A.inverse(x) for x in d]
    alg = model.algebra

    def entry(i: int, j: int, lam: LatticeVec, c: CycScalar) -> MatrixElement:
        return alg.from_torus(i, j, d[i] * A.basis(lam, c) * d_inv[j])

    return GradedMap('diag_conjugation', model, target, _identity, _identity, _matrix_map(model, target, entry),
                     {'d': [x.to_json() for x in d]})


def tkk_isotope_iso(model: LieTorusModel, s: ShiftHom) -> GradedMap:
    """
    The candidate isomorphism TKK(A^(u)) -> TKK(A)^(s) with u = a_(-s(alpha)).

    x_1 -> x_1, y_-1 -> (U_u y)_-1 and V_(x,y) -> V_(x, U_u y), all read
    through the raw basis a'_lam = a_(lam+rho) of A^(u).

    Raises:
        LieTorusError: If model is not a TKK model
        InadmissibleShiftError: If s is not admissible
        NotInvertibleError: If -s(alpha) is outside the support
    """
    if not isinstance(model, TKKModel):
        raise LieTorusError(f"tkk_isotope_iso needs a TKK model, got {model.kind}")
    target = shift_isotope(model, s)
    A = model.torus
    rho = s.images[0]
    Au = jordan_isotope(A, vec_neg(rho))
    source = TKKModel(Au, model.shift, action_window=model.algebra.action_window, cartan_window=model.cartan_window)
    u = Au.u
    alg = model.algebra

    def u_image(lam: LatticeVec) -> Tuple[LatticeVec, CycScalar]:
        # U_u a'_lam = gamma a_(lam - rho)
        image = u_operator(u, A.basis(vec_add(lam, rho)))
        return image.homogeneous()

    def rule(x: TKKElement) -> TKKElement:
        if x.algebra is not source.algebra:
            raise ModelMismatchError("Element does not belong to the source model")
        plus = {vec_add(lam, rho): c for lam, c in x.plus.items()}
        minus: Dict[LatticeVec, CycScalar] = {}
        for lam, c in x.minus.items():
            deg, gamma = u_image(lam)
            _accumulate(minus, deg, c * gamma)
        inner: Dict[Tuple[LatticeVec, LatticeVec], CycScalar] = {}
        for (lam, mu), c in x.inner.items():
            deg, gamma = u_image(mu)
            _accumulate(inner, (vec_add(lam, rho), deg), c * gamma)
        return TKKElement(alg, plus, inner, minus)

    return GradedMap('tkk_isotope', source, target, _identity, _identity, rule,
                     {'u': u.to_json(), 'rho': list(rho)})


def ssp_isotope_iso(model: LieTorusModel, s: ShiftHom) -> GradedMap:
    """
    The candidate isomorphism ssp(A, iota^(h)) -> ssp(A, iota)^(s) with h = a_s(alpha_r).

    Conjugation by g = diag(d_1, ..., d_r, d_1_bar^-1 h^-1, ..., d_r_bar^-1 h^-1)
    where d_p = a_s(e_p - e_r).

    Raises:
        LieTorusError: If model is not an ssp model
        InadmissibleShiftError: If s is not admissible
    """
    if not isinstance(model, SSPModel):
        raise LieTorusError(f"ssp_isotope_iso needs an ssp model, got {model.kind}")
    target = shift_isotope(model, s)
    A = model.torus
    r = model.r
    mu = s.images[-1]
    iota_h = involution_isotope(model.involution, mu)
    source = SSPModel(A, r, iota_h, model.shift)
    h = A.basis(mu)
    h_inv = A.inverse(h)
    d = [A.basis(off) for off in s.epsilon_offsets()]
    d_bar = [model.involution.apply(x) for x in d]
    g = d + [A.inverse(x) * h_inv for x in d_bar]
    g_inv = [A.inverse(x) for x in d] + [h * x for x in d_bar]
    alg = model.algebra

    def entry(p: int, q: int, lam: LatticeVec, c: CycScalar) -> MatrixElement:
        return alg.from_torus(p, q, g[p] * A.basis(lam, c) * g_inv[q])

    return GradedMap('ssp_isotope', source, target, _identity, _identity, _matrix_map(source, target, entry),
                     {'h_degree': list(mu), 'd': [x.to_json() for x in d]})


# -- axiom checks ---------------------------------------------------------

def _witness(*elements: LieElement) -> List[Any]:
    return [x.to_json() for x in elements]


def _proportional(x: LieElement, e: LieElement, flatten: Callable) -> Optional[CycScalar]:
    fx, fe = flatten(x), flatten(e)
    if not fe:
        return None
    key = next(iter(fe))
    k = fx.get(key, fe[key] * 0) / fe[key]
    if flatten(x - e.scale(k)):
        return None
    return k


def _sl2_triple(model: LieTorusModel, alpha: LatticeVec, lam: LatticeVec) -> Optional[Tuple[LieElement, LieElement, LieElement]]:
    """(e, f, h) in L_alpha^lam x L_-alpha^-lam with [h, e] = 2e, or None."""
    es = model.basis(alpha, lam)
    fs = model.basis(vec_neg(alpha), vec_neg(lam))
    if len(es) != 1 or len(fs) != 1:
        return None
    e, f0 = es[0], fs[0]
    h0 = model.bracket(e, f0)
    k = _proportional(model.bracket(h0, e), e, model.flatten)
    if not k:
        return None
    f = f0.scale(2 / k)
    return e, f, model.bracket(e, f)


def check_root_support(model: LieTorusModel, window: int) -> Dict[str, Any]:
    """(LT1) and (LT5): pieces only at roots or zero, and every nonzero root occurs."""
    witnesses = []
    seen = set()
    for lam in window_points(model.n, window):
        for alpha in model.roots_with_zero():
            for x in model.basis(alpha, lam):
                deg = model.degree_of(x)
                if deg != (alpha, lam):
                    witnesses.append({'alpha': list(alpha), 'lam': list(lam), 'degree_found': str(deg)})
                seen.add(alpha)
    missing = [list(a) for a in model.datum.roots if a not in seen]
    passed = not witnesses and not missing
    return {
        'check_type': 'root_support',
        'passed': passed,
        'missing_roots': missing,
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"Root support check {'passed' if passed else 'failed'}: {len(seen)} roots seen, "
                   f"{len(missing)} nonzero roots missing"
    }


def check_degree_zero(model: LieTorusModel) -> Dict[str, Any]:
    """(LT2)(i): L_alpha^0 != 0 for every nonzero root."""
    missing = [list(a) for a in model.datum.roots if not model.basis(a, zero_vec(model.n))]
    passed = not missing
    return {
        'check_type': 'degree_zero',
        'passed': passed,
        'witnesses': missing,
        'message': f"Degree zero check {'passed' if passed else 'failed'}: {len(missing)} roots with L_alpha^0 = 0"
    }


def check_one_dimensional(model: LieTorusModel, window: int) -> Dict[str, Any]:
    """Nonzero root pieces are at most one-dimensional and nonzero exactly on Lambda_alpha."""
    witnesses = []
    count = 0
    for alpha in model.datum.roots:
        for lam in window_points(model.n, window):
            count += 1
            dim = len(model.basis(alpha, lam))
            if dim > 1 or (dim == 1) != model.in_lambda_support(alpha, lam):
                witnesses.append({'alpha': list(alpha), 'lam': list(lam), 'dim': dim})
    passed = not witnesses
    return {
        'check_type': 'one_dimensional',
        'passed': passed,
        'pieces_checked': count,
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"One-dimensionality check {'passed' if passed else 'failed'}: {count} pieces"
    }


def check_sl2_triples(model: LieTorusModel, window: int, test_window: int = 1) -> Dict[str, Any]:
    """
    (LT2)(ii): for each base root alpha_i and lam in Lambda_alpha_i, the triple
    (e, f, h) satisfies [h, x_beta] = <beta, alpha_i^vee> x_beta on the test window.
    """
    tests = model.window_basis(test_window)
    witnesses = []
    triples = 0
    for alpha in model.datum.base:
        for lam in window_points(model.n, window):
            if not model.in_lambda_support(alpha, lam):
                continue
            triple = _sl2_triple(model, alpha, lam)
            if triple is None:
                witnesses.append({'alpha': list(alpha), 'lam': list(lam), 'issue': 'no sl2 triple'})
                continue
            triples += 1
            e, f, h = triple
            for beta, mu, x in tests:
                k = model.datum.coroot_pair(beta, alpha)
                if model.bracket(h, x) != x.scale(k):
                    if len(witnesses) < MAX_WITNESSES:
                        witnesses.append({'alpha': list(alpha), 'lam': list(lam), 'beta': list(beta),
                                          'mu': list(mu), 'e': e.to_json(), 'f': f.to_json(), 'x': x.to_json()})
    passed = not witnesses
    return {
        'check_type': 'sl2_triples',
        'passed': passed,
        'triples_checked': triples,
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"sl2 triple check {'passed' if passed else 'failed'}: {triples} triples against "
                   f"{len(tests)} test elements"
    }


def check_generation(model: LieTorusModel, window: int) -> Dict[str, Any]:
    """(LT3): L_0^lam is spanned by brackets [L_alpha^mu, L_-alpha^(lam-mu)] on the window."""
    witnesses = []
    points = window_points(model.n, window)
    for lam in points:
        cartan = model.basis(model.datum.zero, lam)
        if not cartan:
            continue
        brackets = []
        for alpha in model.datum.positive_roots:
            for mu in points:
                for x in model.basis(alpha, mu):
                    for y in model.basis(vec_neg(alpha), vec_sub(lam, mu)):
                        brackets.append(model.flatten(model.bracket(x, y)))
        span = exact_rank(brackets)
        joint = exact_rank(brackets + [model.flatten(c) for c in cartan])
        if span != len(cartan) or joint != span:
            witnesses.append({'lam': list(lam), 'dim': len(cartan), 'bracket_rank': span, 'joint_rank': joint})
    passed = not witnesses
    return {
        'check_type': 'generation',
        'passed': passed,
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"Generation check {'passed' if passed else 'failed'}: {len(points)} degrees, "
                   f"{len(witnesses)} Cartan pieces not spanned"
    }


def check_lattice_generation(model: LieTorusModel, window: int) -> Dict[str, Any]:
    """(LT4): the Lambda-support on the window generates Lambda."""
    support = [lam for lam in window_points(model.n, window)
               if any(model.basis(alpha, lam) for alpha in model.roots_with_zero())]
    index = Sublattice(support, model.n).index()
    passed = index == 1
    return {
        'check_type': 'lattice_generation',
        'passed': passed,
        'index': index,
        'message': f"Lattice generation check {'passed' if passed else 'failed'}: support generates a "
                   f"sublattice of index {index}"
    }


def check_bracket_laws(model: LieTorusModel, window: int, max_checks: int = DEFAULT_MAX_CHECKS,
                       seed: int = DEFAULT_SEED) -> List[Dict[str, Any]]:
    """Antisymmetry, grading and Jacobi on window-homogeneous pairs and triples."""
    basis = model.window_basis(window)
    anti, graded, jacobi = [], [], []
    pairs, full_pairs = sweep(basis, 2, max_checks, seed)
    n_pairs = 0
    for (a1, l1, x), (a2, l2, y) in pairs:
        n_pairs += 1
        xy = model.bracket(x, y)
        if not (xy + model.bracket(y, x)).is_zero() and len(anti) < MAX_WITNESSES:
            anti.append(_witness(x, y))
        if xy.is_zero():
            continue
        target = (vec_add(a1, a2), vec_add(l1, l2))
        if set(d for d, p in model.components(xy).items() if not p.is_zero()) != {target}:
            if len(graded) < MAX_WITNESSES:
                graded.append(_witness(x, y))
    triples, full_triples = sweep(basis, 3, max(1, max_checks // 10), seed + 1)
    n_triples = 0
    for (_, _, x), (_, _, y), (_, _, z) in triples:
        n_triples += 1
        total = (model.bracket(x, model.bracket(y, z)) + model.bracket(y, model.bracket(z, x))
                 + model.bracket(z, model.bracket(x, y)))
        if not total.is_zero() and len(jacobi) < MAX_WITNESSES:
            jacobi.append(_witness(x, y, z))
    log.debug("Bracket laws on %s: %d pairs, %d triples", model.kind, n_pairs, n_triples)
    return [
        {'check_type': 'antisymmetry', 'passed': not anti, 'pairs_checked': n_pairs, 'exhaustive': full_pairs,
         'witnesses': anti,
         'message': f"Antisymmetry check {'passed' if not anti else 'failed'}: {n_pairs} pairs"},
        {'check_type': 'grading', 'passed': not graded, 'pairs_checked': n_pairs, 'witnesses': graded,
         'message': f"Grading check {'passed' if not graded else 'failed'}: {n_pairs} pairs"},
        {'check_type': 'jacobi', 'passed': not jacobi, 'triples_checked': n_triples,
         'exhaustive': full_triples, 'witnesses': jacobi,
         'message': f"Jacobi check {'passed' if not jacobi else 'failed'}: {n_triples} triples"},
    ]


def check_centreless(model: LieTorusModel, window: int) -> Dict[str, Any]:
    """No window basis element brackets to zero with every root vector of radius at most 1."""
    generators = [x for lam in window_points(model.n, 1) for alpha in model.datum.roots
                  for x in model.basis(alpha, lam)]
    witnesses = []
    basis = model.window_basis(window)
    for alpha, lam, x in basis:
        if all(model.bracket(x, g).is_zero() for g in generators):
            witnesses.append({'alpha': list(alpha), 'lam': list(lam), 'element': x.to_json()})
    passed = not witnesses
    return {
        'check_type': 'centreless',
        'passed': passed,
        'elements_checked': len(basis),
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"Centreless check {'passed' if passed else 'failed'}: {len(witnesses)} of {len(basis)} "
                   f"basis elements commute with all root vectors of radius 1"
    }


def check_model_shape(model: LieTorusModel, window: int, max_checks: int = DEFAULT_MAX_CHECKS,
                      seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """Model-specific closure: trace condition for sl, block shape for ssp, inner identity for TKK."""
    basis = model.window_basis(window)
    witnesses = []
    if isinstance(model, TKKModel):
        inner = [x for alpha, _, x in basis if not any(alpha)]
        plus = [x for alpha, _, x in basis if alpha == model.alpha]
        pairs, _ = sweep(inner, 2, max(1, max_checks // 10), seed)
        count = 0
        for t1, t2 in pairs:
            commutator = model.bracket(t1, t2)
            for z in plus:
                count += 1
                lhs = model.bracket(commutator, z)
                rhs = model.bracket(t1, model.bracket(t2, z)) - model.bracket(t2, model.bracket(t1, z))
                if lhs != rhs and len(witnesses) < MAX_WITNESSES:
                    witnesses.append(_witness(t1, t2, z))
        label, detail = 'inner_identity', f"{count} operator identities"
    else:
        elements = [x for _, _, x in basis]
        count = 0
        for x in elements:
            count += 1
            if not model.is_member(x):
                witnesses.append(_witness(x))
        pairs, _ = sweep(elements, 2, max(1, max_checks // 10), seed)
        for x, y in pairs:
            count += 1
            if not model.is_member(model.bracket(x, y)) and len(witnesses) < MAX_WITNESSES:
                witnesses.append(_witness(x, y))
        label = 'trace_condition' if isinstance(model, SLModel) else 'ssp_shape'
        detail = f"{count} elements and brackets"
    passed = not witnesses
    return {
        'check_type': label,
        'passed': passed,
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"{label.replace('_', ' ').capitalize()} check {'passed' if passed else 'failed'}: {detail}"
    }


def check_axioms(model: LieTorusModel, window: int = 1, max_checks: int = DEFAULT_MAX_CHECKS,
                 seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """
    Check the Lie torus axioms and bracket laws on a degree window.

    Args:
        model: The model, possibly a shift isotope
        window: Box radius w >= 1
        max_checks: Cap on pairs (triples get a tenth) before sampling
        seed: Sampling seed

    Returns:
        Report dict with 'checks', 'summary' and 'errors'
    """
    checks: List[Dict[str, Any]] = []
    errors: List[str] = []
    run_check(checks, errors, "Root support check", check_root_support, model, window)
    run_check(checks, errors, "Degree zero check", check_degree_zero, model)
    run_check(checks, errors, "One-dimensionality check", check_one_dimensional, model, window)
    run_check(checks, errors, "sl2 triple check", check_sl2_triples, model, window)
    run_check(checks, errors, "Generation check", check_generation, model, window)
    run_check(checks, errors, "Lattice generation check", check_lattice_generation, model, window)
    try:
        checks.extend(check_bracket_laws(model, window, max_checks, seed))
    except Exception as e:
        errors.append(f"Bracket law checks failed: {str(e)}")
    run_check(checks, errors, "Centreless check", check_centreless, model, window)
    run_check(checks, errors, "Model shape check", check_model_shape, model, window, max_checks, seed)
    return build_report(checks, errors, model=model.describe(), window=window, seed=seed)


def verify_graded_map(phi: GradedMap, window: int = 1, max_checks: int = DEFAULT_MAX_CHECKS,
                      seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """
    Check a candidate bi-isomorphism on the window: grading, bracket
    preservation, injectivity and membership of images in the target.

    Returns:
        Report dict with 'checks', 'summary' and 'errors'
    """
    checks: List[Dict[str, Any]] = []
    errors: List[str] = []
    source, target = phi.source, phi.target
    try:
        basis = source.window_basis(window)
        images = [(alpha, lam, x, phi(x)) for alpha, lam, x in basis]
    except Exception as e:
        errors.append(f"Applying {phi.name} failed: {str(e)}")
        return build_report(checks, errors, map=phi.name, window=window)

    graded = []
    members = []
    groups: Dict[Degree, List[Dict[Any, CycScalar]]] = {}
    for alpha, lam, x, y in images:
        expected = (phi.root_map(alpha), phi.degree_map(lam))
        if target.degree_of(y) != expected and len(graded) < MAX_WITNESSES:
            graded.append({'alpha': list(alpha), 'lam': list(lam), 'x': x.to_json(), 'image': y.to_json()})
        if not target.is_member(y) and len(members) < MAX_WITNESSES:
            members.append({'x': x.to_json(), 'image': y.to_json()})
        groups.setdefault((alpha, lam), []).append(target.flatten(y))
    checks.append({
        'check_type': 'map_grading', 'passed': not graded, 'witnesses': graded,
        'message': f"Map grading check {'passed' if not graded else 'failed'}: {len(images)} basis images"
    })
    checks.append({
        'check_type': 'map_membership', 'passed': not members, 'witnesses': members,
        'message': f"Map membership check {'passed' if not members else 'failed'}: {len(images)} images in the target"
    })

    deficient = [{'alpha': list(a), 'lam': list(l), 'dim': len(rows), 'rank': exact_rank(rows)}
                 for (a, l), rows in groups.items() if exact_rank(rows) != len(rows)]
    checks.append({
        'check_type': 'map_injectivity', 'passed': not deficient, 'witnesses': deficient[:MAX_WITNESSES],
        'message': f"Map injectivity check {'passed' if not deficient else 'failed'}: {len(groups)} pieces"
    })

    hom = []
    pairs, exhaustive = sweep(images, 2, max_checks, seed)
    n_pairs = 0
    try:
        for (_, _, x, fx), (_, _, y, fy) in pairs:
            n_pairs += 1
            lhs = phi(source.bracket(x, y))
            rhs = target.bracket(fx, fy)
            if lhs != rhs and len(hom) < MAX_WITNESSES:
                hom.append({'x': x.to_json(), 'y': y.to_json(), 'image_of_bracket': lhs.to_json(),
                            'bracket_of_images': rhs.to_json()})
        checks.append({
            'check_type': 'map_homomorphism', 'passed': not hom, 'pairs_checked': n_pairs,
            'exhaustive': exhaustive, 'witnesses': hom,
            'message': f"Map homomorphism check {'passed' if not hom else 'failed'}: {n_pairs} pairs"
        })
    except Exception as e:
        errors.append(f"Map homomorphism check failed: {str(e)}")
    return build_report(checks, errors, map=phi.describe(), window=window, seed=seed)
