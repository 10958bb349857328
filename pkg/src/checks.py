"""Window check functions for coordinate tori, plus the report helpers shared by every checker."""

import itertools
import logging
import random
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exact_scalars import CycScalar
from .lattice import Sublattice, vec_add, vec_scale
from .coord_tori import (
    ALTERNATIVE, ASSOCIATIVE, JORDAN, Involution, StructuredTorus, TorusElement,
    JordanIsotope, centrality_table, jordan_isotope, octonion_witness, torus_mul, u_operator,
)

log = logging.getLogger(__name__)

DEFAULT_WINDOW = 2
DEFAULT_SEED = 0
DEFAULT_MAX_CHECKS = 20000
MAX_WITNESSES = 10


def jsonable(value: Any) -> Any:
    """Convert scalars, elements, tuples and Fractions into plain JSON values."""
    if hasattr(value, 'to_json'):
        return value.to_json()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k) if not isinstance(k, tuple) else ','.join(map(str, k)): jsonable(v)
                for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def build_report(checks: List[Dict[str, Any]], errors: Optional[List[str]] = None, **extra: Any) -> Dict[str, Any]:
    """
    Wrap a list of check dicts into a report with summary statistics.

    Args:
        checks: Check result dicts, each carrying a 'passed' flag
        errors: Messages from steps that raised
        **extra: Additional top-level report fields

    Returns:
        Dict with 'checks', 'summary' and 'errors'
    """
    errors = list(errors or [])
    total_checks = len(checks)
    passed_checks = sum(1 for check in checks if check.get('passed', False))
    failed_checks = total_checks - passed_checks
    report = dict(extra)
    report['checks'] = checks
    report['summary'] = {
        'total_checks': total_checks,
        'passed_checks': passed_checks,
        'failed_checks': failed_checks,
        'overall_passed': failed_checks == 0 and total_checks > 0 and not errors,
        'success_rate': round(passed_checks / total_checks * 100, 1) if total_checks > 0 else 0
    }
    report['errors'] = errors
    return report


def run_check(checks: List[Dict[str, Any]], errors: List[str], label: str,
              fn: Callable[..., Dict[str, Any]], *args: Any, **kwargs: Any) -> Optional[Dict[str, Any]]:
    """Run one check, appending its dict or an error message."""
    try:
        result = fn(*args, **kwargs)
        checks.append(result)
        return result
    except Exception as e:
        log.debug("%s raised", label, exc_info=True)
        errors.append(f"{label} failed: {str(e)}")
        return None


def sweep(domain: Sequence[Any], arity: int, max_checks: int = DEFAULT_MAX_CHECKS,
          seed: int = DEFAULT_SEED) -> Tuple[Iterator[Tuple[Any, ...]], bool]:
    """
    Tuples over a finite domain: all of them when there are at most
    max_checks, otherwise max_checks seeded samples.

    Returns:
        (iterator, exhaustive flag)
    """
    total = len(domain) ** arity
    if total <= max_checks:
        return itertools.product(domain, repeat=arity), True
    log.warning("Sampling %d of %d %d-tuples (seed %d)", max_checks, total, arity, seed)
    rng = random.Random(seed)

    def samples() -> Iterator[Tuple[Any, ...]]:
        for _ in range(max_checks):
            yield tuple(rng.choice(domain) for _ in range(arity))

    return samples(), False


def _chain(A: StructuredTorus, degrees: Sequence[Tuple[int, ...]]) -> CycScalar:
    # left-normed product ((d0 d1) d2) ...
    m = A.mul_coeff
    total = degrees[0]
    value = A.one_scalar
    for d in degrees[1:]:
        c = m(total, d)
        if not c:
            return A.zero_scalar
        value = value * c
        total = vec_add(total, d)
    return value


def _right(A: StructuredTorus, x, y, z) -> CycScalar:
    # x(yz)
    m = A.mul_coeff
    c = m(y, z)
    return c * m(x, vec_add(y, z)) if c else A.zero_scalar


def _associator(A: StructuredTorus, x, y, z) -> CycScalar:
    return _chain(A, (x, y, z)) - _right(A, x, y, z)


def _degree_witness(*degrees: Tuple[int, ...]) -> List[List[int]]:
    return [list(d) for d in degrees]


def check_flavor_laws(A: StructuredTorus, window: int = DEFAULT_WINDOW,
                      max_checks: int = DEFAULT_MAX_CHECKS, seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """
    Check the defining identity of the torus flavor on homogeneous tuples in the window.

    Associative tori are checked for associativity, alternative tori for the
    linearized left and right alternative laws, and Jordan tori for
    commutativity, a^2(ab) = a(a^2 b) and the linearized Jordan identity.

    Args:
        A: The torus
        window: Box radius w
        max_checks: Cap on tuples per law before sampling
        seed: Sampling seed

    Returns:
        Dict containing check results with failing degree tuples as witnesses
    """
    degrees = A.window(window)
    witnesses: List[Dict[str, Any]] = []
    checked = 0
    exhaustive = True
    laws: List[str] = []

    def fail(law: str, tup: Sequence[Tuple[int, ...]], lhs: CycScalar, rhs: CycScalar) -> None:
        if len(witnesses) < MAX_WITNESSES:
            witnesses.append({'law': law, 'degrees': _degree_witness(*tup),
                              'lhs': lhs.to_json(), 'rhs': rhs.to_json()})

    if A.flavor == ASSOCIATIVE:
        laws.append('associativity')
        tuples, full = sweep(degrees, 3, max_checks, seed)
        exhaustive &= full
        for x, y, z in tuples:
            checked += 1
            lhs, rhs = _chain(A, (x, y, z)), _right(A, x, y, z)
            if lhs != rhs:
                fail('associativity', (x, y, z), lhs, rhs)

    elif A.flavor == ALTERNATIVE:
        laws.extend(['left_alternative', 'right_alternative'])
        tuples, full = sweep(degrees, 3, max_checks, seed)
        exhaustive &= full
        for x, y, z in tuples:
            checked += 1
            left = _associator(A, x, y, z) + _associator(A, y, x, z)
            if left:
                fail('left_alternative', (x, y, z), left, A.zero_scalar)
            right = _associator(A, x, y, z) + _associator(A, x, z, y)
            if right:
                fail('right_alternative', (x, y, z), right, A.zero_scalar)

    elif A.flavor == JORDAN:
        laws.extend(['commutativity', 'jordan_pair', 'jordan_linearized'])
        pairs, full = sweep(degrees, 2, max_checks, seed)
        exhaustive &= full
        m = A.mul_coeff
        for x, y in pairs:
            checked += 1
            if m(x, y) != m(y, x):
                fail('commutativity', (x, y), m(x, y), m(y, x))
            xx = vec_scale(2, x)
            lhs = m(x, x) * m(x, y) * m(xx, vec_add(x, y))
            rhs = m(x, x) * m(xx, y) * m(x, vec_add(xx, y))
            if lhs != rhs:
                fail('jordan_pair', (x, y), lhs, rhs)
        quads, full = sweep(degrees, 4, max_checks, seed + 1)
        exhaustive &= full
        for x, y, z, w in quads:
            checked += 1
            lhs = _chain(A, (z, w, y, x)) + _chain(A, (x, w, y, z)) + _chain(A, (x, z, y, w))
            rhs = (m(z, w) * m(y, x) * m(vec_add(z, w), vec_add(y, x))
                   + m(x, w) * m(y, z) * m(vec_add(x, w), vec_add(y, z))
                   + m(x, z) * m(y, w) * m(vec_add(x, z), vec_add(y, w)))
            if lhs != rhs:
                fail('jordan_linearized', (x, y, z, w), lhs, rhs)
    else:
        raise ValueError(f"Unknown flavor {A.flavor}")

    passed = not witnesses
    log.debug("Flavor laws %s on %s: %d tuples, exhaustive=%s", laws, A.kind, checked, exhaustive)
    return {
        'check_type': 'flavor_laws',
        'passed': passed,
        'flavor': A.flavor,
        'laws': laws,
        'tuples_checked': checked,
        'exhaustive': exhaustive,
        'witnesses': witnesses,
        'message': f"Flavor law check {'passed' if passed else 'failed'}: {A.flavor} laws on {checked} tuples "
                   f"({'exhaustive' if exhaustive else 'sampled'}), {len(witnesses)} failures shown"
    }


def check_unit_law(A: StructuredTorus, window: int = DEFAULT_WINDOW) -> Dict[str, Any]:
    """Check that the torus identity acts trivially on both sides of every window basis element."""
    unit = A.identity()
    witnesses = []
    degrees = A.window(window)
    for lam in degrees:
        x = A.basis(lam)
        left, right = unit * x, x * unit
        if left != x or right != x:
            if len(witnesses) < MAX_WITNESSES:
                witnesses.append({'degree': list(lam), 'left': left.to_json(), 'right': right.to_json()})
    passed = not witnesses
    return {
        'check_type': 'unit_law',
        'passed': passed,
        'identity': unit.to_json(),
        'witnesses': witnesses,
        'message': f"Unit law check {'passed' if passed else 'failed'}: identity tested on {len(degrees)} basis elements"
    }


def check_invertibility(A: StructuredTorus, window: int = DEFAULT_WINDOW) -> Dict[str, Any]:
    """
    Check that every basis element in the window is invertible.

    Associative and alternative tori test x x^-1 = x^-1 x = 1; Jordan tori
    test U_x x^-1 = x and x . x^-1 = 1.
    """
    unit = A.identity()
    witnesses = []
    degrees = A.window(window)
    for lam in degrees:
        x = A.basis(lam)
        try:
            inv = A.inverse(x)
        except Exception as e:
            ok, detail = False, str(e)
        else:
            if A.flavor == JORDAN:
                ok = u_operator(x, inv) == x and x * inv == unit
            else:
                ok = x * inv == unit and inv * x == unit
            detail = inv.to_json()
        if not ok and len(witnesses) < MAX_WITNESSES:
            witnesses.append({'degree': list(lam), 'inverse': detail})
    passed = not witnesses
    return {
        'check_type': 'invertibility',
        'passed': passed,
        'witnesses': witnesses,
        'message': f"Invertibility check {'passed' if passed else 'failed'}: {len(degrees)} basis elements, {len(witnesses)} failures shown"
    }


def check_support(A: StructuredTorus, window: int = DEFAULT_WINDOW) -> Dict[str, Any]:
    """
    Check that the window support generates the lattice and, for Jordan tori,
    that it is closed under (lam, mu) -> lam + 2 mu.
    """
    degrees = A.window(window)
    index = Sublattice(degrees, A.n).index()
    witnesses = []
    if A.flavor == JORDAN:
        for lam, mu in itertools.product(degrees, repeat=2):
            target = vec_add(lam, vec_scale(2, mu))
            if not A.in_support(target) and len(witnesses) < MAX_WITNESSES:
                witnesses.append({'lam': list(lam), 'mu': list(mu), 'lam_plus_2mu': list(target)})
    elif A.flavor in (ASSOCIATIVE, ALTERNATIVE):
        for lam in degrees:
            if not A.in_support(tuple(-a for a in lam)) and len(witnesses) < MAX_WITNESSES:
                witnesses.append({'lam': list(lam), 'missing': 'negative'})
    passed = index == 1 and not witnesses
    return {
        'check_type': 'support',
        'passed': passed,
        'support': A.support_description(),
        'generated_index': index,
        'witnesses': witnesses,
        'message': f"Support check {'passed' if passed else 'failed'}: window support has index {index} in Z^{A.n}, "
                   f"{len(witnesses)} closure failures"
    }


def check_centroid_support(A: StructuredTorus, window: int = 1) -> Dict[str, Any]:
    """Compare the sampled centrality table with the closed-form centroid support Gamma."""
    gamma = Sublattice(A.gamma_generators(), A.n)
    table = centrality_table(A, window)
    witnesses = [{'degree': list(lam), 'central_sampled': central, 'in_gamma': gamma.contains(lam)}
                 for lam, central in table.items() if central != gamma.contains(lam)]
    passed = not witnesses
    return {
        'check_type': 'centroid_support',
        'passed': passed,
        'gamma_basis': [list(b) for b in gamma.basis],
        'degrees_tested': len(table),
        'witnesses': witnesses[:MAX_WITNESSES],
        'message': f"Centroid support check {'passed' if passed else 'failed'}: {len(table)} degrees, "
                   f"{len(witnesses)} disagree with Gamma"
    }


def check_octonion_witness(A: StructuredTorus) -> Dict[str, Any]:
    """Check (x1 x2) x3 = -x1 (x2 x3) with both sides nonzero."""
    left, right = octonion_witness(A)
    passed = not left.is_zero() and left == -right
    return {
        'check_type': 'octonion_witness',
        'passed': passed,
        'left': left.to_json(),
        'right': right.to_json(),
        'message': f"Octonion witness check {'passed' if passed else 'failed'}: (x1x2)x3 = {left}, x1(x2x3) = {right}"
    }


def check_involution_law(iota: Involution, window: int = DEFAULT_WINDOW,
                         max_checks: int = DEFAULT_MAX_CHECKS, seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """
    Check that the involution reverses products: e(lam+mu) c(lam, mu) = e(lam) e(mu) c(mu, lam).
    """
    A = iota.torus
    degrees = A.window(window)
    pairs, exhaustive = sweep(degrees, 2, max_checks, seed)
    witnesses = []
    checked = 0
    for lam, mu in pairs:
        checked += 1
        lhs = A.mul_coeff(lam, mu) * iota.sign(vec_add(lam, mu))
        rhs = A.mul_coeff(mu, lam) * (iota.sign(lam) * iota.sign(mu))
        if lhs != rhs and len(witnesses) < MAX_WITNESSES:
            witnesses.append({'lam': list(lam), 'mu': list(mu), 'lhs': lhs.to_json(), 'rhs': rhs.to_json()})
    passed = not witnesses
    return {
        'check_type': 'involution_law',
        'passed': passed,
        'pairs_checked': checked,
        'exhaustive': exhaustive,
        'involution': iota.to_json(),
        'witnesses': witnesses,
        'message': f"Involution law check {'passed' if passed else 'failed'}: {checked} pairs"
    }


def _compare_structures(X: StructuredTorus, Y: StructuredTorus, window: int) -> List[Dict[str, Any]]:
    witnesses = []
    points = sorted(set(X.window(window)) | set(Y.window(window)))
    for lam in points:
        if X.in_support(lam) != Y.in_support(lam):
            witnesses.append({'degree': list(lam), 'issue': 'support differs'})
    common = [p for p in points if X.in_support(p) and Y.in_support(p)]
    for lam, mu in itertools.product(common, repeat=2):
        a, b = X.mul_coeff(lam, mu), Y.mul_coeff(lam, mu)
        if a != b:
            witnesses.append({'lam': list(lam), 'mu': list(mu), 'left': a.to_json(), 'right': b.to_json()})
        if len(witnesses) >= MAX_WITNESSES:
            break
    return witnesses


def check_isotope_composition(A: StructuredTorus, u_degree: Sequence[int], v_degree: Sequence[int],
                              window: int = 1) -> Dict[str, Any]:
    """
    Check (A^(u))^(v) = A^(U_u v) as graded algebras on the window.

    Args:
        A: A Jordan torus
        u_degree: Degree of u = a_(u_degree) in A
        v_degree: Degree of v = a'_(v_degree) in the grading of A^(u)
        window: Box radius for the structure comparison
    """
    Au = jordan_isotope(A, u_degree)
    Auv = jordan_isotope(Au, v_degree)
    w = u_operator(Au.u, Au.to_parent(Au.basis(v_degree)))
    Aw = JordanIsotope(A, w)
    witnesses = _compare_structures(Auv, Aw, window)
    passed = not witnesses
    return {
        'check_type': 'isotope_composition',
        'passed': passed,
        'u_degree': list(u_degree),
        'v_degree': list(v_degree),
        'U_u_v': w.to_json(),
        'witnesses': witnesses,
        'message': f"Isotope composition check {'passed' if passed else 'failed'}: "
                   f"(A^(u))^(v) vs A^(U_u v) with U_u v = {w}"
    }


def verify_torus_isomorphism(source: StructuredTorus, target: StructuredTorus,
                             f: Callable[[TorusElement], TorusElement], window: int = 1) -> Dict[str, Any]:
    """
    Check that f maps basis elements to nonzero homogeneous elements and
    satisfies f(xy) = f(x) f(y) on window pairs.
    """
    degrees = source.window(window)
    images = {}
    witnesses = []
    for lam in degrees:
        image = f(source.basis(lam))
        if image.torus is not target or len(image.coeffs) != 1:
            witnesses.append({'degree': list(lam), 'issue': 'image is not a homogeneous element of the target'})
        images[lam] = image
    if not witnesses:
        for lam, mu in itertools.product(degrees, repeat=2):
            product = torus_mul(source.basis(lam), source.basis(mu))
            lhs = f(product) if not product.is_zero() else target.zero()
            rhs = images[lam] * images[mu]
            if lhs != rhs:
                witnesses.append({'lam': list(lam), 'mu': list(mu), 'f_of_product': lhs.to_json(),
                                  'product_of_images': rhs.to_json()})
            if len(witnesses) >= MAX_WITNESSES:
                break
    passed = not witnesses
    return {
        'check_type': 'torus_isomorphism',
        'passed': passed,
        'source': source.kind,
        'target': target.kind,
        'witnesses': witnesses,
        'message': f"Torus isomorphism check {'passed' if passed else 'failed'}: {len(degrees)} basis elements"
    }


def check_torus(A: StructuredTorus, window: int = DEFAULT_WINDOW, max_checks: int = DEFAULT_MAX_CHECKS,
                seed: int = DEFAULT_SEED) -> Dict[str, Any]:
    """
    Run every window check that applies to the torus.

    Returns:
        Report dict with 'checks', 'summary' and 'errors'
    """
    checks: List[Dict[str, Any]] = []
    errors: List[str] = []
    run_check(checks, errors, "Unit law check", check_unit_law, A, window)
    run_check(checks, errors, "Invertibility check", check_invertibility, A, window)
    run_check(checks, errors, "Flavor law check", check_flavor_laws, A, window, max_checks, seed)
    run_check(checks, errors, "Support check", check_support, A, window)
    run_check(checks, errors, "Centroid support check", check_centroid_support, A, min(window, 1))
    return build_report(checks, errors, torus=A.describe(), window=window, seed=seed)
