"""
The extended affine Lie algebra E(L, SCDer(L), 0) = D + L + C of a centreless
Lie torus, and the isomorphism chi: E(L) -> E(L^(s)) attached to an admissible
shift.

D-parts are stored as {gamma: theta} with theta a covector on Lambda and
theta(gamma) = 0, standing for t^gamma d_theta. C-parts are stored as
{gamma: v} with v a vector of Lambda (x) k, acting on t^(-gamma) d_theta by
theta(v); v is only defined modulo k gamma, so C-parts are compared through
their values on a fixed basis of D_(-gamma).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .checks import DEFAULT_MAX_CHECKS, DEFAULT_SEED, MAX_WITNESSES, build_report, run_check, sweep
from .coord_tori import QuantumTorus, TorusElement
from .exact_scalars import CycScalar
from .lattice import LatticeVec, ShiftHom, Sublattice, unit_vec, vec, vec_add, vec_neg, vec_sub, window_points, zero_vec
from .lie_tori import (
    LieElement, LieTorusError, LieTorusModel, MatrixElement, ModelMismatchError, SLModel, exact_rank,
    shift_isotope,
)

log = logging.getLogger(__name__)

Vector = Tuple[CycScalar, ...]
Degree = Tuple[LatticeVec, LatticeVec]


class NoFormError(LieTorusError):
    """Raised when no invariant form is available for a model."""
    pass


@lru_cache(maxsize=None)
def der_basis(n: int, gamma: LatticeVec) -> Tuple[LatticeVec, ...]:
    """
    Basis of {theta : theta(gamma) = 0} as primitive integer covectors.

    For gamma = 0 this is the standard basis of k^n. Otherwise, with i the first
    index where gamma_i != 0, it is gamma_i e_j - gamma_j e_i for j != i.
    """
    if not any(gamma):
        return tuple(unit_vec(n, k) for k in range(n))
    i = next(k for k, g in enumerate(gamma) if g)
    basis = []
    for j in range(n):
        if j == i:
            continue
        theta = [0] * n
        theta[j] = gamma[i]
        theta[i] -= gamma[j]
        g = 0
        for x in theta:
            g = gcd(g, x)
        if theta[i] < 0 or (theta[i] == 0 and theta[j] < 0):
            g = -g
        basis.append(tuple(x // g for x in theta))
    return tuple(basis)


def _pair(theta: Sequence[Any], v: Sequence[Any]) -> Any:
    total = 0
    for a, b in zip(theta, v):
        if a and b:
            total = total + a * b
    return total


def _vadd(target: Dict[LatticeVec, Vector], gamma: LatticeVec, v: Sequence[CycScalar]) -> None:
    if gamma in target:
        v = tuple(a + b for a, b in zip(target[gamma], v))
    if any(v):
        target[gamma] = tuple(v)
    else:
        target.pop(gamma, None)


class EalaElement:
    """d + l + f with d in D, l in L and f in C."""

    __slots__ = ('eala', 'd', 'l', 'c')

    def __init__(self, eala: 'EalaModel', d: Optional[Dict[LatticeVec, Vector]] = None,
                 l: Optional[LieElement] = None, c: Optional[Dict[LatticeVec, Vector]] = None):
        self.eala = eala
        self.d = {g: tuple(v) for g, v in (d or {}).items() if any(v)}
        self.l = l if l is not None else eala.model.algebra.zero()
        self.c = {g: tuple(v) for g, v in (c or {}).items() if any(v)}

    def _check(self, other: 'EalaElement') -> None:
        if not isinstance(other, EalaElement) or other.eala is not self.eala:
            raise ModelMismatchError("Elements belong to different EALAs")

    def __add__(self, other: 'EalaElement') -> 'EalaElement':
        self._check(other)
        d, c = dict(self.d), dict(self.c)
        for g, v in other.d.items():
            _vadd(d, g, v)
        for g, v in other.c.items():
            _vadd(c, g, v)
        return EalaElement(self.eala, d, self.l + other.l, c)

    def __neg__(self) -> 'EalaElement':
        return self.scale(-1)

    def __sub__(self, other: 'EalaElement') -> 'EalaElement':
        return self + (-other)

    def scale(self, k: Any) -> 'EalaElement':
        k = self.eala.scalar(k)
        return EalaElement(self.eala, {g: tuple(k * x for x in v) for g, v in self.d.items()},
                           self.l.scale(k), {g: tuple(k * x for x in v) for g, v in self.c.items()})

    def is_zero(self) -> bool:
        return not self.eala.flatten(self)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, EalaElement) or other.eala is not self.eala:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_json(self) -> Dict[str, Any]:
        return {
            'd': [{'gamma': list(g), 'theta': [x.to_json() for x in self.d[g]]} for g in sorted(self.d)],
            'l': self.l.to_json(),
            'c': [{'gamma': list(g), 'v': [x.to_json() for x in self.c[g]]} for g in sorted(self.c)],
        }

    def __repr__(self) -> str:
        terms = [f"t^{list(g)}d[{', '.join(map(str, v))}]" for g, v in sorted(self.d.items())]
        if not self.l.is_zero():
            terms.append(repr(self.l))
        terms += [f"c^{list(g)}[{', '.join(map(str, v))}]" for g, v in sorted(self.c.items())]
        return " + ".join(terms) if terms else "0"


class EalaModel:
    """
    E(L, SCDer(L), 0) for L = sl_(r+1) over a quantum torus, possibly shifted.

    The form on L is the degree-zero coefficient of trace(XY); the centroid is
    k[Gamma] acting through central elements t^gamma normalized so that
    t^gamma t^delta = t^(gamma + delta).

    Raises:
        NoFormError: If the model has no form shipped here
    """

    def __init__(self, model: LieTorusModel):
        if not isinstance(model, SLModel) or not isinstance(model.torus, QuantumTorus):
            raise NoFormError(f"No invariant form is available for a {model.kind} model over "
                              f"{model.torus.kind}; forms exist for sl over quantum tori")
        self.model = model
        self.torus = model.torus
        self.n = model.n
        self.gamma = Sublattice(self.torus.gamma_generators(), self.n)
        self._t_cache: Dict[LatticeVec, TorusElement] = {}

    def scalar(self, value: Any) -> CycScalar:
        return self.torus.scalar(value)

    def vector(self, values: Sequence[Any]) -> Vector:
        values = tuple(self.scalar(x) for x in values)
        if len(values) != self.n:
            raise LieTorusError(f"Expected {self.n} coordinates, got {len(values)}")
        return values

    def in_gamma(self, gamma: Sequence[int]) -> bool:
        return self.gamma.contains(gamma)

    def describe(self) -> Dict[str, Any]:
        return {'model': self.model.describe(), 'gamma': self.gamma.to_json()}

    # -- centroid -------------------------------------------------------
    def centroid_element(self, gamma: Sequence[int]) -> TorusElement:
        """The central element t^gamma of the coordinate torus."""
        gamma = vec(gamma)
        cached = self._t_cache.get(gamma)
        if cached is None:
            A = self.torus
            cached = A.identity()
            for k, g in zip(self.gamma.coordinates(gamma), self.gamma.basis):
                z = A.basis(g)
                step = z if k > 0 else A.inverse(z)
                for _ in range(abs(k)):
                    cached = cached * step
            self._t_cache[gamma] = cached
        return cached

    def centroid_apply(self, gamma: LatticeVec, x: MatrixElement) -> MatrixElement:
        """t^gamma x, a Lambda-shift by gamma that keeps the root."""
        t_deg, k = self.centroid_element(gamma).homogeneous()
        m = self.torus.mul_coeff
        entries = {}
        for (i, j, lam), c in x.entries.items():
            value = c * k * m(lam, t_deg)
            if value:
                entries[(i, j, vec_add(lam, t_deg))] = value
        return MatrixElement(x.algebra, entries)

    # -- element constructors -------------------------------------------
    def zero(self) -> EalaElement:
        return EalaElement(self)

    def derivation(self, gamma: Sequence[int], theta: Sequence[Any]) -> EalaElement:
        """
        The skew centroidal derivation t^gamma d_theta.

        Raises:
            LieTorusError: If gamma is outside Gamma or theta(gamma) != 0
        """
        gamma = vec(gamma)
        theta = self.vector(theta)
        if not self.in_gamma(gamma):
            raise LieTorusError(f"{list(gamma)} is not in the centroidal grading group")
        if _pair(theta, gamma):
            raise LieTorusError(f"t^{list(gamma)} d_theta is not skew: theta(gamma) != 0")
        return EalaElement(self, d={gamma: theta})

    def covector(self, gamma: Sequence[int], v: Sequence[Any]) -> EalaElement:
        """The element of C_gamma sending t^(-gamma) d_theta to theta(v)."""
        gamma = vec(gamma)
        if not self.in_gamma(gamma):
            raise LieTorusError(f"{list(gamma)} is not in the centroidal grading group")
        return EalaElement(self, c={gamma: self.vector(v)})

    def lie(self, l: LieElement) -> EalaElement:
        if l.algebra is not self.model.algebra:
            raise ModelMismatchError("Element does not belong to the Lie torus of this EALA")
        return EalaElement(self, l=l)

    def ev(self, lam: Sequence[int]) -> EalaElement:
        """ev(lam) in C_0 with ev(lam)(d_theta) = theta(lam)."""
        return self.covector(zero_vec(self.n), vec(lam))

    # -- structure maps -------------------------------------------------
    def form(self, x: LieElement, y: LieElement) -> CycScalar:
        """(x | y): the degree-zero coefficient of trace(xy)."""
        zero = zero_vec(self.n)
        total = self.torus.zero_scalar
        for (i, j, lam), c in self.model.algebra.product(x, y).items():
            if i == j and lam == zero:
                total = total + c
        return total

    def apply_derivation(self, d: Dict[LatticeVec, Vector], x: LieElement) -> LieElement:
        """sum_gamma t^gamma d_theta(x), with d_theta(x) = theta(lam) x on L^lam."""
        result = self.model.algebra.zero()
        if not d:
            return result
        comps = self.model.components(x)
        for gamma, theta in d.items():
            for (_, lam), part in comps.items():
                k = _pair(theta, lam)
                if k:
                    result = result + self.centroid_apply(gamma, part).scale(k)
        return result

    def der_bracket(self, d1: Dict[LatticeVec, Vector], d2: Dict[LatticeVec, Vector]) -> Dict[LatticeVec, Vector]:
        """[t^g1 d_th1, t^g2 d_th2] = t^(g1+g2) (th1(g2) d_th2 - th2(g1) d_th1)."""
        result: Dict[LatticeVec, Vector] = {}
        for g1, th1 in d1.items():
            for g2, th2 in d2.items():
                a = _pair(th1, g2)
                b = _pair(th2, g1)
                if not a and not b:
                    continue
                theta = tuple(a * y - b * x for x, y in zip(th1, th2))
                _vadd(result, vec_add(g1, g2), theta)
        return result

    def act_on_covectors(self, d: Dict[LatticeVec, Vector], c: Dict[LatticeVec, Vector]) -> Dict[LatticeVec, Vector]:
        """The contragredient action (d . f)(e) = -f([d, e])."""
        result: Dict[LatticeVec, Vector] = {}
        for g1, th1 in d.items():
            for g, v in c.items():
                a = _pair(th1, v)
                b = _pair(th1, g)
                w = tuple(a * x + b * y for x, y in zip(g1, v))
                _vadd(result, vec_add(g, g1), w)
        return result

    def sigma(self, x: LieElement, y: LieElement) -> Dict[LatticeVec, Vector]:
        """The cocycle sigma_D(x, y)(d) = (dx | y) as C-part data."""
        result: Dict[LatticeVec, Vector] = {}
        cy = self.model.components(y)
        for (_, lam), px in self.model.components(x).items():
            for (_, mu), py in cy.items():
                gamma = vec_add(lam, mu)
                if not self.in_gamma(gamma):
                    continue
                value = self.form(self.centroid_apply(vec_neg(gamma), px), py)
                if value:
                    _vadd(result, gamma, tuple(value * a for a in lam))
        return result

    def pair_dc(self, c: Dict[LatticeVec, Vector], d: Dict[LatticeVec, Vector]) -> CycScalar:
        total = self.torus.zero_scalar
        for gamma, v in c.items():
            theta = d.get(vec_neg(gamma))
            if theta is not None:
                total = total + _pair(theta, v)
        return total

    def bracket(self, a: EalaElement, b: EalaElement) -> EalaElement:
        """[d1+l1+f1, d2+l2+f2] = [d1,d2] + ([l1,l2] + d1 l2 - d2 l1) + (d1.f2 - d2.f1 + sigma(l1,l2))."""
        a._check(b)
        if a.eala is not self:
            raise ModelMismatchError("Elements belong to a different EALA")
        d = self.der_bracket(a.d, b.d)
        l = self.model.bracket(a.l, b.l) + self.apply_derivation(a.d, b.l) - self.apply_derivation(b.d, a.l)
        c: Dict[LatticeVec, Vector] = {}
        for part, sign in ((self.act_on_covectors(a.d, b.c), 1), (self.act_on_covectors(b.d, a.c), -1),
                           (self.sigma(a.l, b.l), 1)):
            for gamma, v in part.items():
                _vadd(c, gamma, tuple(sign * x for x in v))
        return EalaElement(self, d, l, c)

    def eala_form(self, a: EalaElement, b: EalaElement) -> CycScalar:
        """(d1+l1+f1 | d2+l2+f2) = (l1|l2) + f1(d2) + f2(d1)."""
        a._check(b)
        return self.form(a.l, b.l) + self.pair_dc(a.c, b.d) + self.pair_dc(b.c, a.d)

    # -- coordinates and grading ----------------------------------------
    def flatten(self, a: EalaElement) -> Dict[Any, CycScalar]:
        result: Dict[Any, CycScalar] = {}
        for gamma, theta in a.d.items():
            for k, x in enumerate(theta):
                if x:
                    result[('D', gamma, k)] = x
        for key, x in self.model.flatten(a.l).items():
            result[('L', key)] = x
        for gamma, v in a.c.items():
            for k, theta in enumerate(der_basis(self.n, vec_neg(gamma))):
                x = _pair(theta, v)
                if x:
                    result[('C', gamma, k)] = self.scalar(x)
        return result

    def components(self, a: EalaElement) -> Dict[Degree, EalaElement]:
        """Q x Lambda homogeneous components; D_gamma and C_gamma sit at (0, gamma)."""
        zero = self.model.datum.zero
        parts: Dict[Degree, EalaElement] = {}
        for gamma, theta in a.d.items():
            key = (zero, gamma)
            parts[key] = parts.get(key, self.zero()) + EalaElement(self, d={gamma: theta})
        for key, part in self.model.components(a.l).items():
            parts[key] = parts.get(key, self.zero()) + EalaElement(self, l=part)
        for gamma, v in a.c.items():
            key = (zero, gamma)
            parts[key] = parts.get(key, self.zero()) + EalaElement(self, c={gamma: v})
        return parts

    def degree_of(self, a: EalaElement) -> Optional[Degree]:
        comps = {d: p for d, p in self.components(a).items() if not p.is_zero()}
        if len(comps) != 1:
            return None
        return next(iter(comps))

    def d_basis(self, gamma: LatticeVec) -> List[EalaElement]:
        if not self.in_gamma(gamma):
            return []
        return [self.derivation(gamma, theta) for theta in der_basis(self.n, gamma)]

    def c_basis(self, gamma: LatticeVec) -> List[EalaElement]:
        """Unit vectors spanning k^n / k gamma."""
        if not self.in_gamma(gamma):
            return []
        skip = next((k for k, g in enumerate(gamma) if g), None)
        return [self.covector(gamma, unit_vec(self.n, k)) for k in range(self.n) if k != skip]

    def root_space(self, lam: Sequence[int], alpha: Sequence[int]) -> List[EalaElement]:
        """
        Basis of E_(lam + alpha): L_alpha^lam for alpha != 0, and
        D_lam + L_0^lam + C_lam for alpha = 0.
        """
        lam, alpha = vec(lam), vec(alpha)
        lie = [self.lie(x) for x in self.model.basis(alpha, lam)]
        if any(alpha):
            return lie
        return self.d_basis(lam) + lie + self.c_basis(lam)

    def h_basis(self) -> List[EalaElement]:
        """H = D_0 + h + C_0."""
        return self.root_space(zero_vec(self.n), self.model.datum.zero)

    def window_basis(self, w: int) -> List[Tuple[LatticeVec, LatticeVec, EalaElement]]:
        result = []
        for lam in window_points(self.n, w):
            for alpha in self.model.roots_with_zero():
                for x in self.root_space(lam, alpha):
                    result.append((alpha, lam, x))
        return result

    def nonisotropic_roots(self, w: int) -> List[Tuple[LatticeVec, LatticeVec]]:
        """(alpha, lam) with alpha != 0 and lam in Lambda_alpha, on the window."""
        return [(alpha, lam) for alpha in self.model.datum.roots for lam in window_points(self.n, w)
                if self.model.in_lambda_support(alpha, lam)]

    def in_core(self, a: EalaElement) -> bool:
        """Membership in the core L + C."""
        return not a.d


# -- module-level operations ----------------------------------------------

def graded_form(eala: EalaModel, x: LieElement, y: LieElement) -> CycScalar:
    return eala.form(x, y)


def degree_derivation_apply(eala: EalaModel, theta: Sequence[Any], x: LieElement) -> LieElement:
    """d_theta(x) = theta(lam) x on each homogeneous component of degree lam."""
    return eala.apply_derivation({zero_vec(eala.n): eala.vector(theta)}, x)


def scder_bracket(eala: EalaModel, d1: EalaElement, d2: EalaElement) -> EalaElement:
    return EalaElement(eala, d=eala.der_bracket(d1.d, d2.d))


def sigma_cocycle(eala: EalaModel, x: LieElement, y: LieElement, d: EalaElement) -> CycScalar:
    """sigma_D(x, y)(d) = (dx | y)."""
    return eala.pair_dc(eala.sigma(x, y), d.d)


def eala_bracket(a: EalaElement, b: EalaElement) -> EalaElement:
    a._check(b)
    return a.eala.bracket(a, b)


def eala_form(a: EalaElement, b: EalaElement) -> CycScalar:
    a._check(b)
    return a.eala.eala_form(a, b)


def root_space(eala: EalaModel, lam: Sequence[int], alpha: Sequence[int]) -> List[EalaElement]:
    return eala.root_space(lam, alpha)


def core_membership(a: EalaElement, window: int = 1) -> bool:
    """
    Whether a lies in the core L + C; pure C-parts are also checked to be
    central in the core on the window.
    """
    eala = a.eala
    if not eala.in_core(a):
        return False
    if a.l.is_zero() and a.c:
        for _, _, x in eala.window_basis(window):
            if eala.in_core(x) and not eala.bracket(a, x).is_zero():
                return False
    return True


# -- chi ------------------------------------------------------------------

@dataclass
class ChiMap:
    """chi = [[psi, 0, 0], [omega, Id, 0], [-1/2 psi^ omega# omega, -psi^ omega#, psi^]]."""
    source: EalaModel
    target: EalaModel
    shift: ShiftHom
    omega_scale: Fraction = Fraction(1)

    def h_theta(self, theta: Sequence[Any]) -> MatrixElement:
        """The h_theta in h with alpha(h_theta) = theta(s(alpha))."""
        model = self.source.model
        offsets = self.shift.epsilon_offsets()
        values = [_pair(theta, off) for off in offsets]
        mean = sum(values, self.source.scalar(0)) / len(values)
        alg = model.algebra
        zero = zero_vec(model.n)
        result = alg.zero()
        for p, x in enumerate(values):
            coeff = self.source.scalar(x - mean) * self.omega_scale
            if coeff:
                result = result + alg.unit(p, p, zero, coeff)
        return result

    def omega(self, d: Dict[LatticeVec, Vector]) -> LieElement:
        """omega(t^gamma d_theta) = t^gamma h_theta."""
        result = self.source.model.algebra.zero()
        for gamma, theta in d.items():
            result = result + self.source.centroid_apply(gamma, self.h_theta(theta))
        return result

    def omega_sharp(self, x: LieElement) -> Dict[LatticeVec, Vector]:
        """omega#(x)(d) = (x | omega(d)), as C-part data."""
        E = self.source
        result: Dict[LatticeVec, Vector] = {}
        for (alpha, lam), part in E.model.components(x).items():
            if any(alpha) or not E.in_gamma(lam):
                continue
            v = tuple(E.form(part, E.centroid_apply(vec_neg(lam), self.h_theta(unit_vec(E.n, k))))
                      for k in range(E.n))
            _vadd(result, lam, v)
        return result

    def kappa(self, d: Dict[LatticeVec, Vector], x: LieElement) -> Dict[LatticeVec, Vector]:
        """kappa(d + x) = 1/2 omega#(omega(d)) + omega#(x)."""
        result: Dict[LatticeVec, Vector] = {}
        for gamma, v in self.omega_sharp(self.omega(d)).items():
            _vadd(result, gamma, tuple(x * Fraction(1, 2) for x in v))
        for gamma, v in self.omega_sharp(x).items():
            _vadd(result, gamma, v)
        return result

    def __call__(self, a: EalaElement) -> EalaElement:
        if a.eala is not self.source:
            raise ModelMismatchError("Element does not belong to the source EALA")
        c = dict(a.c)
        for gamma, v in self.kappa(a.d, a.l).items():
            _vadd(c, gamma, tuple(-x for x in v))
        return EalaElement(self.target, dict(a.d), self.omega(a.d) + a.l, c)

    def degree_map(self, degree: Degree) -> Degree:
        alpha, lam = degree
        return alpha, vec_sub(lam, self.shift.apply(alpha))

    def describe(self) -> Dict[str, Any]:
        return {'source': self.source.describe(), 'shift': self.shift.to_json(),
                'omega_scale': str(self.omega_scale)}


def chi_iso(model: LieTorusModel, s: ShiftHom) -> ChiMap:
    """
    The isomorphism E(L, SCDer(L), 0) -> E(L^(s), SCDer(L^(s)), 0).

    Raises:
        NoFormError: If the model has no form
        InadmissibleShiftError: If s is not admissible
    """
    source = EalaModel(model)
    target = EalaModel(shift_isotope(model, s))
    return ChiMap(source, target, s)


def perturb_chi(chi: ChiMap, factor: Any = 2) -> ChiMap:
    """A copy of chi with omega rescaled, for negative controls."""
    return ChiMap(chi.source, chi.target, chi.shift, Fraction(factor))


# -- checks ---------------------------------------------------------------

def _m_bracket(E: EalaModel, m1: EalaElement, m2: EalaElement) -> EalaElement:
    """The bracket of D + L without its C-part."""
    return EalaElement(E, E.der_bracket(m1.d, m2.d),
                       E.model.bracket(m1.l, m2.l) + E.apply_derivation(m1.d, m2.l) - E.apply_derivation(m2.d, m1.l))


def _c_element(E: EalaModel, *parts: Tuple[Dict[LatticeVec, Vector], int]) -> EalaElement:
    c: Dict[LatticeVec, Vector] = {}
    for part, sign in parts:
        for gamma, v in part.items():
            _vadd(c, gamma, tuple(sign * x for x in v))
    return EalaElement(E, c=c)


def check_bracket_laws(E: EalaModel, window: int, max_checks: int = DEFAULT_MAX_CHECKS,
                       seed: int = DEFAULT_SEED) -> List[Dict[str, Any]]:
    """Antisymmetry and Jacobi of the E bracket on window-homogeneous elements."""
    basis = [x for _, _, x in E.window_basis(window)]
    anti, jacobi = [], []
    pairs, full_pairs = sweep(basis, 2, max_checks, seed)
    n_pairs = 0
    for x, y in pairs:
        n_pairs += 1
        if not (E.bracket(x, y) + E.bracket(y, x)).is_zero() and len(anti) < MAX_WITNESSES:
            anti.append([x.to_json(), y.to_json()])
    triples, full_triples = sweep(basis, 3, max_checks, seed + 1)
    n_triples = 0
    for x, y, z in triples:
        n_triples += 1
        total = E.bracket(x, E.bracket(y, z)) + E.bracket(y, E.bracket(z, x)) + E.bracket(z, E.bracket(x, y))
        if not total.is_zero() and len(jacobi) < MAX_WITNESSES:
            jacobi.append([x.to_json(), y.to_json(), z.to_json()])
    log.debug("EALA bracket laws: %d pairs, %d triples", n_pairs, n_triples)
    return [
        {'check_type': 'eala_antisymmetry', 'passed': not anti, 'pairs_checked': n_pairs,
         'exhaustive': full_pairs, 'witnesses': anti,
         'message': f"EALA antisymmetry check {'passed' if not anti else 'failed'}: {n_pairs} pairs"},
        {'check_type': 'eala_jacobi', 'passed': not jacobi, 'triples_checked': n_triples,
         'exhaustive': full_triples, 'witnesses': jacobi,
         'message': f"EALA Jacobi check {'passed' if not jacobi else 'failed'}: {n_triples} triples"},
    ]


def check_form_laws(E: EalaModel, window: int, max_checks: int = DEFAULT_MAX_CHECKS,
                    seed: int = DEFAULT_SEED) -> List[Dict[str, Any]]:
    """Symmetry, gradedness and invariance of the form on E."""
    basis = E.window_basis(window)
    symmetric, graded, invariant = [], [], []
    pairs, _ = sweep(basis, 2, max_checks, seed)
    n_pairs = 0
    for (a1, l1, x), (a2, l2, y) in pairs:
        n_pairs += 1
        value = E.eala_form(x, y)
        if value != E.eala_form(y, x) and len(symmetric) < MAX_WITNESSES:
            symmetric.append([x.to_json(), y.to_json()])
        if value and (any(vec_add(a1, a2)) or any(vec_add(l1, l2))) and len(graded) < MAX_WITNESSES:
            graded.append([x.to_json(), y.to_json()])
    triples, full = sweep([x for _, _, x in basis], 3, max_checks, seed + 1)
    n_triples = 0
    for x, y, z in triples:
        n_triples += 1
        if E.eala_form(E.bracket(x, y), z) != E.eala_form(x, E.bracket(y, z)) and len(invariant) < MAX_WITNESSES:
            invariant.append([x.to_json(), y.to_json(), z.to_json()])
    return [
        {'check_type': 'form_symmetry', 'passed': not symmetric, 'pairs_checked': n_pairs, 'witnesses': symmetric,
         'message': f"Form symmetry check {'passed' if not symmetric else 'failed'}: {n_pairs} pairs"},
        {'check_type': 'form_graded', 'passed': not graded, 'pairs_checked': n_pairs, 'witnesses': graded,
         'message': f"Form grading check {'passed' if not graded else 'failed'}: {n_pairs} pairs"},
        {'check_type': 'form_invariance', 'passed': not invariant, 'triples_checked': n_triples,
         'exhaustive': full, 'witnesses': invariant,
         'message': f"Form invariance check {'passed' if not invariant else 'failed'}: {n_triples} triples"},
    ]


def check_dc_pairing(E: EalaModel, window: int) -> Dict[str, Any]:
    """D_gamma pairs nondegenerately with C_(-gamma) for every gamma in Gamma on the window."""
    witnesses = []
    count = 0
    for gamma in window_points(E.n, window):
        ds = E.d_basis(gamma)
        cs = E.c_basis(vec_neg(gamma))
        if not ds and not cs:
            continue
        count += 1
        rows = [{k: E.eala_form(d, c) for k, c in enumerate(cs) if E.eala_form(d, c)} for d in ds]
        rank = exact_rank(rows)
        if rank != len(ds) or len(ds) != len(cs):
            witnesses.append({'gamma': list(gamma), 'dim_d': len(ds), 'dim_c': len(cs), 'rank': rank})
    passed = not witnesses
    return {
        'check_type': 'dc_pairing',
        'passed': passed,
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"D-C pairing check {'passed' if passed else 'failed'}: {count} degrees"
    }


def check_scder_closure(E: EalaModel, window: int) -> Dict[str, Any]:
    """Brackets of skew centroidal derivations are skew, in degree gamma1 + gamma2."""
    ds = [x for lam in window_points(E.n, window) for x in E.d_basis(lam)]
    witnesses = []
    for x in ds:
        for y in ds:
            z = E.der_bracket(x.d, y.d)
            for gamma, theta in z.items():
                if _pair(theta, gamma) and len(witnesses) < MAX_WITNESSES:
                    witnesses.append([x.to_json(), y.to_json()])
    passed = not witnesses
    return {
        'check_type': 'scder_closure',
        'passed': passed,
        'witnesses': witnesses,
        'message': f"SCDer closure check {'passed' if passed else 'failed'}: {len(ds) ** 2} brackets"
    }


def check_cocycle(E: EalaModel, window: int, max_checks: int = DEFAULT_MAX_CHECKS,
                  seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """
    sigma_D is a 2-cocycle of M = D + L with values in C:
    m1.s(m2,m3) - m2.s(m1,m3) + m3.s(m1,m2) - s([m1,m2],m3) + s([m1,m3],m2) - s([m2,m3],m1) = 0.
    """
    basis = [x for _, _, x in E.window_basis(window) if not x.c]
    triples, full = sweep(basis, 3, max_checks, seed + 2)
    witnesses = []
    count = 0
    for m1, m2, m3 in triples:
        count += 1
        total = _c_element(
            E,
            (E.act_on_covectors(m1.d, E.sigma(m2.l, m3.l)), 1),
            (E.act_on_covectors(m2.d, E.sigma(m1.l, m3.l)), -1),
            (E.act_on_covectors(m3.d, E.sigma(m1.l, m2.l)), 1),
            (E.sigma(_m_bracket(E, m1, m2).l, m3.l), -1),
            (E.sigma(_m_bracket(E, m1, m3).l, m2.l), 1),
            (E.sigma(_m_bracket(E, m2, m3).l, m1.l), -1),
        )
        if not total.is_zero() and len(witnesses) < MAX_WITNESSES:
            witnesses.append([m1.to_json(), m2.to_json(), m3.to_json()])
    passed = not witnesses
    return {
        'check_type': 'sigma_cocycle',
        'passed': passed,
        'triples_checked': count,
        'exhaustive': full,
        'witnesses': witnesses,
        'message': f"Cocycle check {'passed' if passed else 'failed'}: {count} triples"
    }


def check_ev_injective(E: EalaModel) -> Dict[str, Any]:
    """ev is injective on Lambda: the images of a basis of Lambda are independent in C_0."""
    rows = [E.flatten(E.ev(unit_vec(E.n, k))) for k in range(E.n)]
    rank = exact_rank(rows)
    passed = rank == E.n
    return {
        'check_type': 'ev_injective',
        'passed': passed,
        'rank': rank,
        'message': f"ev injectivity check {'passed' if passed else 'failed'}: rank {rank} of {E.n}"
    }


def check_root_spaces(E: EalaModel, window: int) -> Dict[str, Any]:
    """E_(lam+alpha) = L_alpha^lam for alpha != 0, and the dimensions of H and E at degree zero."""
    witnesses = []
    basis = E.window_basis(window)
    by_degree: Dict[Degree, int] = {}
    for alpha, lam, x in basis:
        deg = E.degree_of(x)
        if deg != (alpha, lam):
            witnesses.append({'alpha': list(alpha), 'lam': list(lam), 'degree_found': str(deg)})
        by_degree[(alpha, lam)] = by_degree.get((alpha, lam), 0) + 1
    for alpha, lam in E.nonisotropic_roots(window):
        if by_degree.get((alpha, lam), 0) != len(E.model.basis(alpha, lam)):
            witnesses.append({'alpha': list(alpha), 'lam': list(lam), 'issue': 'dimension'})
    zero = zero_vec(E.n)
    h_dim = len(E.h_basis())
    cartan = len(E.model.basis(E.model.datum.zero, zero))
    degree_zero = sum(count for (alpha, lam), count in by_degree.items() if lam == zero)
    if h_dim != 2 * E.n + cartan:
        witnesses.append({'issue': 'H dimension', 'h_dimension': h_dim, 'expected': 2 * E.n + cartan})
    passed = not witnesses
    return {
        'check_type': 'root_spaces',
        'passed': passed,
        'h_dimension': h_dim,
        'degree_zero_dimension': degree_zero,
        'nonisotropic_roots': len(E.nonisotropic_roots(window)),
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"Root space check {'passed' if passed else 'failed'}: dim H = {h_dim}, "
                   f"dim E at degree 0 = {degree_zero}"
    }


def check_core(E: EalaModel, window: int) -> Dict[str, Any]:
    """C is central in the core L + C, and nonzero D-parts lie outside the core."""
    basis = E.window_basis(window)
    witnesses = []
    for _, _, x in basis:
        if x.c and not core_membership(x, window):
            witnesses.append(x.to_json())
        if x.d and E.in_core(x):
            witnesses.append(x.to_json())
    passed = not witnesses
    return {
        'check_type': 'core_centre',
        'passed': passed,
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"Core check {'passed' if passed else 'failed'}: {len(basis)} basis elements"
    }


def check_eala(E: EalaModel, window: int = 1, max_checks: int = DEFAULT_MAX_CHECKS,
               seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """
    Window checks of E(L, SCDer(L), 0).

    Returns:
        Report dict with 'checks', 'summary' and 'errors'
    """
    checks: List[Dict[str, Any]] = []
    errors: List[str] = []
    for label, fn in (("Bracket law checks", check_bracket_laws), ("Form law checks", check_form_laws)):
        try:
            checks.extend(fn(E, window, max_checks, seed))
        except Exception as e:
            errors.append(f"{label} failed: {str(e)}")
    run_check(checks, errors, "D-C pairing check", check_dc_pairing, E, window)
    run_check(checks, errors, "SCDer closure check", check_scder_closure, E, window)
    run_check(checks, errors, "Cocycle check", check_cocycle, E, window, max_checks, seed)
    run_check(checks, errors, "ev injectivity check", check_ev_injective, E)
    run_check(checks, errors, "Root space check", check_root_spaces, E, window)
    run_check(checks, errors, "Core check", check_core, E, window)
    return build_report(checks, errors, eala=E.describe(), window=window, seed=seed)


def verify_chi(chi: ChiMap, window: int = 1, max_checks: int = DEFAULT_MAX_CHECKS,
               seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """
    Check chi on the window: grading, bracket preservation, isometry up to one
    global scalar, chi(H) = H^(s), and sigma' = sigma_D + delta(kappa).

    Returns:
        Report dict with 'checks', 'summary' and 'errors'
    """
    checks: List[Dict[str, Any]] = []
    errors: List[str] = []
    E, F = chi.source, chi.target
    try:
        basis = E.window_basis(window)
        images = [(alpha, lam, x, chi(x)) for alpha, lam, x in basis]
    except Exception as e:
        errors.append(f"Applying chi failed: {str(e)}")
        return build_report(checks, errors, chi=chi.describe(), window=window)

    graded = [{'alpha': list(a), 'lam': list(l), 'x': x.to_json(), 'image': y.to_json()}
              for a, l, x, y in images if F.degree_of(y) != chi.degree_map((a, l))]
    checks.append({
        'check_type': 'chi_grading', 'passed': not graded, 'witnesses': graded[:MAX_WITNESSES],
        'message': f"chi grading check {'passed' if not graded else 'failed'}: {len(images)} basis images"
    })

    hom, iso = [], []
    scalar: Optional[CycScalar] = None
    pairs, exhaustive = sweep(images, 2, max_checks, seed)
    n_pairs = 0
    for (_, _, x, fx), (_, _, y, fy) in pairs:
        n_pairs += 1
        if chi(E.bracket(x, y)) != F.bracket(fx, fy) and len(hom) < MAX_WITNESSES:
            hom.append({'x': x.to_json(), 'y': y.to_json()})
        before, after = E.eala_form(x, y), F.eala_form(fx, fy)
        if scalar is None and before:
            scalar = after / before
        if scalar is not None and after != scalar * before and len(iso) < MAX_WITNESSES:
            iso.append({'x': x.to_json(), 'y': y.to_json(), 'form': str(before), 'image_form': str(after)})
    if scalar is not None and not scalar:
        iso.append({'issue': 'forms scale by zero'})
    checks.append({
        'check_type': 'chi_homomorphism', 'passed': not hom, 'pairs_checked': n_pairs, 'exhaustive': exhaustive,
        'witnesses': hom, 'message': f"chi homomorphism check {'passed' if not hom else 'failed'}: {n_pairs} pairs"
    })
    checks.append({
        'check_type': 'chi_isometry', 'passed': not iso, 'scalar': str(scalar) if scalar is not None else None,
        'witnesses': iso,
        'message': f"chi isometry check {'passed' if not iso else 'failed'}: forms scale by {scalar}"
    })

    h_images = [chi(x) for x in E.h_basis()]
    h_target = F.h_basis()
    zero_degree = (F.model.datum.zero, zero_vec(F.n))
    outside = [y.to_json() for y in h_images if not y.is_zero() and F.degree_of(y) != zero_degree]
    rank = exact_rank([F.flatten(y) for y in h_images])
    h_ok = not outside and rank == len(h_target) == len(h_images)
    checks.append({
        'check_type': 'chi_cartan', 'passed': h_ok, 'rank': rank, 'target_dimension': len(h_target),
        'witnesses': outside[:MAX_WITNESSES],
        'message': f"chi Cartan check {'passed' if h_ok else 'failed'}: rank {rank} onto dim H' = {len(h_target)}"
    })
    run_check(checks, errors, "Cocycle transport check", check_cocycle_transport, chi, window, max_checks, seed)
    return build_report(checks, errors, chi=chi.describe(), window=window, seed=seed)


def check_cocycle_transport(chi: ChiMap, window: int, max_checks: int = DEFAULT_MAX_CHECKS,
                            seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """sigma'(xi m1, xi m2) = sigma_D(m1, m2) + m1.kappa(m2) - m2.kappa(m1) - kappa([m1, m2]) on D + L."""
    E, F = chi.source, chi.target
    basis = [x for _, _, x in E.window_basis(window) if not x.c]
    pairs, exhaustive = sweep(basis, 2, max_checks, seed)
    witnesses = []
    count = 0
    for m1, m2 in pairs:
        count += 1
        lhs = F.sigma(chi.omega(m1.d) + m1.l, chi.omega(m2.d) + m2.l)
        bracket = _m_bracket(E, m1, m2)
        rhs = _c_element(
            E,
            (E.sigma(m1.l, m2.l), 1),
            (E.act_on_covectors(m1.d, chi.kappa(m2.d, m2.l)), 1),
            (E.act_on_covectors(m2.d, chi.kappa(m1.d, m1.l)), -1),
            (chi.kappa(bracket.d, bracket.l), -1),
        )
        if EalaElement(E, c=lhs) != rhs and len(witnesses) < MAX_WITNESSES:
            witnesses.append({'m1': m1.to_json(), 'm2': m2.to_json()})
    passed = not witnesses
    return {
        'check_type': 'cocycle_transport',
        'passed': passed,
        'pairs_checked': count,
        'exhaustive': exhaustive,
        'witnesses': witnesses,
        'message': f"Cocycle transport check {'passed' if passed else 'failed'}: {count} pairs"
    }
