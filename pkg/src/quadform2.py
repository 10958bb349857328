"""Mod-2 quadratic forms on (Z/2)^n and their isometries.

Vectors of (Z/2)^n are handled as integer bit masks (bit i is coordinate i);
linear maps are numpy uint8 matrices whose column j is the image of e_j.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .coord_tori import Involution, involution_isotope
from .lattice import unit_vec, vec_add

log = logging.getLogger(__name__)

QUADFORM_BOUND = 5

BitVector = Union[int, Sequence[int]]


class QuadFormError(ValueError):
    """Raised for malformed quadratic forms or mismatched ranks."""
    pass


class CapacityError(QuadFormError):
    """Raised when an exhaustive search is requested above the size bound."""
    pass


def _mask(v: BitVector, n: int) -> int:
    if isinstance(v, (int, np.integer)):
        if not 0 <= int(v) < (1 << n):
            raise QuadFormError(f"Bit mask {v} out of range for n = {n}")
        return int(v)
    bits = list(v)
    if len(bits) != n:
        raise QuadFormError(f"Vector of length {len(bits)} given for a form of rank {n}")
    return sum((int(b) % 2) << i for i, b in enumerate(bits))


def mask_to_bits(mask: int, n: int) -> List[int]:
    return [(mask >> i) & 1 for i in range(n)]


@dataclass(frozen=True)
class QuadFormF2:
    """
    kappa(sum l_i e_i) = sum l_i b_i + sum_{i<j} l_i l_j a_ij over Z/2.

    a is stored as a full n x n bit matrix whose entries on and below the
    diagonal are zero.
    """

    n: int
    b: Tuple[int, ...]
    a: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.b) != self.n or len(self.a) != self.n or any(len(row) != self.n for row in self.a):
            raise QuadFormError(f"Form data does not match rank {self.n}")
        if any(x not in (0, 1) for x in self.b) or any(x not in (0, 1) for row in self.a for x in row):
            raise QuadFormError("Form entries must be bits")
        if any(self.a[i][j] for i in range(self.n) for j in range(i + 1)):
            raise QuadFormError("Alternating part must be strictly upper triangular")

    @classmethod
    def from_bits(cls, n: int, b: Sequence[int], a: Optional[Sequence[Sequence[int]]] = None) -> 'QuadFormF2':
        """Build a form, symmetrizing a lower-triangular or symmetric a into upper form."""
        if a is None:
            a = [[0] * n for _ in range(n)]
        upper = tuple(tuple((int(a[i][j]) | int(a[j][i])) % 2 if j > i else 0 for j in range(n))
                      for i in range(n))
        return cls(n, tuple(int(x) % 2 for x in b), upper)

    @classmethod
    def zero(cls, n: int) -> 'QuadFormF2':
        return cls.from_bits(n, [0] * n)

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'QuadFormF2':
        try:
            return cls.from_bits(int(data['n']), data['b'], data.get('a'))
        except (KeyError, TypeError, IndexError) as e:
            raise QuadFormError(f"Malformed form JSON: {e}")

    def to_json(self) -> Dict[str, Any]:
        return {'n': self.n, 'b': list(self.b), 'a': [list(row) for row in self.a]}

    @cached_property
    def table(self) -> Tuple[int, ...]:
        """Values of the form on every mask 0 .. 2^n - 1."""
        values = []
        for v in range(1 << self.n):
            total = 0
            for i in range(self.n):
                if (v >> i) & 1:
                    total ^= self.b[i]
                    for j in range(i + 1, self.n):
                        if (v >> j) & 1:
                            total ^= self.a[i][j]
            values.append(total)
        return tuple(values)

    def polar(self, u: int, v: int) -> int:
        """kappa_p(u, v) = kappa(u+v) + kappa(u) + kappa(v) on masks."""
        t = self.table
        return t[u ^ v] ^ t[u] ^ t[v]

    def code(self) -> int:
        """Integer encoding of (b, a), used to pick canonical orbit representatives."""
        bits = list(self.b) + [self.a[i][j] for i in range(self.n) for j in range(i + 1, self.n)]
        return sum(bit << k for k, bit in enumerate(bits))

    @classmethod
    def from_code(cls, n: int, code: int) -> 'QuadFormF2':
        b = [(code >> i) & 1 for i in range(n)]
        a = [[0] * n for _ in range(n)]
        k = n
        for i in range(n):
            for j in range(i + 1, n):
                a[i][j] = (code >> k) & 1
                k += 1
        return cls.from_bits(n, b, a)

    def __str__(self) -> str:
        terms = [f"l{i + 1}" for i in range(self.n) if self.b[i]]
        terms += [f"l{i + 1}l{j + 1}" for i in range(self.n) for j in range(i + 1, self.n) if self.a[i][j]]
        return " + ".join(terms) if terms else "0"


def evaluate(kappa: QuadFormF2, v: BitVector) -> int:
    """
    kappa(v) for a bit vector or mask.

    Raises:
        QuadFormError: If the vector length differs from the rank
    """
    return kappa.table[_mask(v, kappa.n)]


def polarization(kappa: QuadFormF2) -> np.ndarray:
    """Symmetric zero-diagonal bit matrix of kappa_p on the standard basis."""
    n = kappa.n
    p = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            p[i, j] = p[j, i] = kappa.a[i][j]
    return p


def gf2_row_reduce(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(2) and the pivot columns."""
    m = (np.array(matrix, dtype=np.uint8) % 2).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def gf2_rank(matrix: np.ndarray) -> int:
    return len(gf2_row_reduce(matrix)[1])


def polarization_rank(kappa: QuadFormF2) -> int:
    return gf2_rank(polarization(kappa))


def radical(kappa: QuadFormF2) -> List[int]:
    """Masks spanning the radical of kappa_p."""
    n = kappa.n
    reduced, pivots = gf2_row_reduce(polarization(kappa))
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = 1 << f
        for row, p in enumerate(pivots):
            if reduced[row, f]:
                v |= 1 << p
        basis.append(v)
    return basis


def values(kappa: QuadFormF2) -> Tuple[int, int]:
    """(number of zeros, number of ones) of kappa on (Z/2)^n."""
    ones = sum(kappa.table)
    return (1 << kappa.n) - ones, ones


def arf_invariant(kappa: QuadFormF2) -> Optional[int]:
    """The majority value of a nondegenerate form; None when kappa_p is degenerate."""
    if polarization_rank(kappa) != kappa.n:
        return None
    zeros, ones = values(kappa)
    return 0 if zeros > ones else 1


def from_torus_with_involution(q: Sequence[Sequence[int]], e: Sequence[int]) -> QuadFormF2:
    """
    The form with e_i = (-1)^b_i and q_ij = (-1)^a_ij.

    Raises:
        QuadFormError: If an entry of q or e is not +1 or -1, or q is not a
            symmetric sign matrix with unit diagonal
    """
    n = len(e)
    if len(q) != n or any(len(row) != n for row in q):
        raise QuadFormError(f"q must be {n} x {n}")
    for x in list(e) + [x for row in q for x in row]:
        if x not in (1, -1):
            raise QuadFormError(f"Entry {x!r} is not +1 or -1; only sign data has a mod-2 form")
    for i in range(n):
        if q[i][i] != 1:
            raise QuadFormError(f"q[{i}][{i}] = {q[i][i]!r}; the diagonal of q must be 1")
        for j in range(i + 1, n):
            if q[i][j] != q[j][i]:
                raise QuadFormError(f"q[{i}][{j}] = {q[i][j]!r} but q[{j}][{i}] = {q[j][i]!r}; sign entries satisfy q_ji = q_ij")
    b = [1 if x == -1 else 0 for x in e]
    a = [[1 if (j > i and q[i][j] == -1) else 0 for j in range(n)] for i in range(n)]
    return QuadFormF2.from_bits(n, b, a)


def to_torus_with_involution(kappa: QuadFormF2) -> Tuple[List[List[int]], List[int]]:
    """Recover (q, e) from kappa."""
    n = kappa.n
    p = polarization(kappa)
    q = [[-1 if p[i, j] else 1 for j in range(n)] for i in range(n)]
    e = [-1 if x else 1 for x in kappa.b]
    return q, e


def form_of_involution(iota: Involution) -> QuadFormF2:
    """The form with iota(a_lam) = (-1)^kappa(lam mod 2) a_lam, read off basis vectors and pairs."""
    n = iota.torus.n
    units = [unit_vec(n, i) for i in range(n)]
    b = [0 if iota.sign(u) == 1 else 1 for u in units]
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            pair = 0 if iota.sign(vec_add(units[i], units[j])) == 1 else 1
            a[i][j] = pair ^ b[i] ^ b[j]
    return QuadFormF2.from_bits(n, b, a)


def shift_by(kappa: QuadFormF2, mu: BitVector) -> QuadFormF2:
    """kappa + kappa_p(., mu), the form of iota^(h) for h of degree mu."""
    m = _mask(mu, kappa.n)
    b = [kappa.b[i] ^ kappa.polar(1 << i, m) for i in range(kappa.n)]
    return QuadFormF2(kappa.n, tuple(b), kappa.a)


def apply_matrix(tau: np.ndarray, v: int) -> int:
    n = tau.shape[0]
    result = 0
    for j in range(tau.shape[1]):
        if (v >> j) & 1:
            result ^= _column_mask(tau, j, n)
    return result


def _column_mask(tau: np.ndarray, j: int, n: int) -> int:
    return sum(int(tau[i, j]) << i for i in range(n))


def _matrix_from_columns(columns: Sequence[int], n: int) -> np.ndarray:
    tau = np.zeros((n, n), dtype=np.uint8)
    for j, c in enumerate(columns):
        for i in range(n):
            tau[i, j] = (c >> i) & 1
    return tau


def isotope_witness(kappa: QuadFormF2, mu: BitVector) -> np.ndarray:
    """The map lam -> lam + kappa_p(mu, lam) mu, an isometry between kappa and shift_by(kappa, mu) when kappa(mu) = 0."""
    m = _mask(mu, kappa.n)
    columns = [(1 << i) ^ (m if kappa.polar(m, 1 << i) else 0) for i in range(kappa.n)]
    return _matrix_from_columns(columns, kappa.n)


def verify_isometry(kappa: QuadFormF2, kappa2: QuadFormF2, tau: np.ndarray) -> bool:
    """Whether tau is invertible with kappa2(tau v) = kappa(v) for all v."""
    if kappa.n != kappa2.n or tau.shape != (kappa.n, kappa.n):
        return False
    if gf2_rank(tau) != kappa.n:
        return False
    return all(kappa2.table[apply_matrix(tau, v)] == kappa.table[v] for v in range(1 << kappa.n))


def compose(tau1: np.ndarray, tau2: np.ndarray) -> np.ndarray:
    """tau1 after tau2 over GF(2)."""
    return (tau1.astype(np.int64) @ tau2.astype(np.int64) % 2).astype(np.uint8)


def invert(tau: np.ndarray) -> np.ndarray:
    """
    Inverse over GF(2).

    Raises:
        QuadFormError: If tau is singular
    """
    n = tau.shape[0]
    augmented = np.concatenate([np.array(tau, dtype=np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    reduced, pivots = gf2_row_reduce(augmented)
    if pivots[:n] != list(range(n)):
        raise QuadFormError("Matrix is singular over GF(2)")
    return reduced[:, n:].copy()


def _check_capacity(n: int, bound: int) -> None:
    if n > bound:
        raise CapacityError(
            f"Rank {n} exceeds the search bound {bound}; compare polarization rank and "
            f"value distribution first, or raise the bound"
        )


def is_isometric(kappa: QuadFormF2, kappa2: QuadFormF2, bound: int = QUADFORM_BOUND) -> Optional[np.ndarray]:
    """
    Search for tau in GL_n(F_2) with kappa2(tau v) = kappa(v).

    Images of e_1, ..., e_n are chosen in ascending mask order subject to
    matching values, matching polarizations and linear independence, so the
    search is complete and returns the identity when the forms are equal.

    Args:
        kappa: Source form
        kappa2: Target form
        bound: Largest rank searched

    Returns:
        The witness matrix, or None if the forms are not isometric

    Raises:
        QuadFormError: If the ranks differ
        CapacityError: If the rank exceeds bound
    """
    if kappa.n != kappa2.n:
        raise QuadFormError(f"Forms have different ranks {kappa.n} and {kappa2.n}")
    n = kappa.n
    _check_capacity(n, bound)
    if values(kappa) != values(kappa2) or polarization_rank(kappa) != polarization_rank(kappa2):
        return None
    source_values = [kappa.table[1 << i] for i in range(n)]
    source_polar = [[kappa.polar(1 << i, 1 << j) for j in range(n)] for i in range(n)]
    images: List[int] = []
    nodes = 0

    def extend(span: frozenset) -> bool:
        nonlocal nodes
        i = len(images)
        if i == n:
            return True
        for c in range(1, 1 << n):
            if c in span or kappa2.table[c] != source_values[i]:
                continue
            if any(kappa2.polar(images[j], c) != source_polar[j][i] for j in range(i)):
                continue
            nodes += 1
            images.append(c)
            if extend(span | {s ^ c for s in span}):
                return True
            images.pop()
        return False

    found = extend(frozenset([0]))
    log.debug("Isometry search on rank %d visited %d nodes", n, nodes)
    if not found:
        return None
    return _matrix_from_columns(images, n)


def _transvection_images(kappa: QuadFormF2, i: int, j: int) -> QuadFormF2:
    # kappa o tau with tau(e_j) = e_j + e_i
    n = kappa.n
    cols = [1 << k for k in range(n)]
    cols[j] ^= 1 << i
    b = [kappa.table[c] for c in cols]
    a = [[kappa.polar(cols[r], cols[s]) if s > r else 0 for s in range(n)] for r in range(n)]
    return QuadFormF2(n, tuple(b), tuple(tuple(row) for row in a))


def classify(n: int, bound: int = QUADFORM_BOUND) -> List[Dict[str, Any]]:
    """
    Isometry classes of quadratic forms of rank n.

    Orbits are grown by breadth-first search under elementary transvections,
    which generate GL_n(F_2).

    Returns:
        List of {'representative', 'size', 'polarization_rank', 'values', 'arf'}
        sorted by the representative's code

    Raises:
        CapacityError: If n exceeds bound
    """
    if n < 1:
        raise QuadFormError(f"Rank must be positive, got {n}")
    _check_capacity(n, bound)
    total = 1 << (n + n * (n - 1) // 2)
    seen = set()
    classes = []
    for code in range(total):
        if code in seen:
            continue
        orbit = {code}
        queue = deque([QuadFormF2.from_code(n, code)])
        while queue:
            form = queue.popleft()
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    image = _transvection_images(form, i, j)
                    c = image.code()
                    if c not in orbit:
                        orbit.add(c)
                        queue.append(image)
        seen |= orbit
        rep = QuadFormF2.from_code(n, min(orbit))
        classes.append({
            'representative': rep,
            'size': len(orbit),
            'polarization_rank': polarization_rank(rep),
            'values': values(rep),
            'arf': arf_invariant(rep),
        })
    classes.sort(key=lambda c: c['representative'].code())
    log.debug("Rank %d: %d forms in %d classes", n, total, len(classes))
    return classes


def check_form_matches_torus(kappa: QuadFormF2, iota: Involution, window: int = 2) -> Dict[str, Any]:
    """
    Check iota(a_lam) = (-1)^kappa(lam) a_lam and that kappa_p gives the
    commutation signs a_lam a_mu = (-1)^kappa_p a_mu a_lam on the window.
    """
    A = iota.torus
    degrees = A.window(window)
    witnesses = []
    for lam in degrees:
        mask = _mask([x % 2 for x in lam], kappa.n)
        if iota.sign(lam) != (-1) ** kappa.table[mask] and len(witnesses) < 10:
            witnesses.append({'degree': list(lam), 'issue': 'involution sign'})
    for lam in degrees:
        for mu in degrees:
            p = kappa.polar(_mask([x % 2 for x in lam], kappa.n), _mask([x % 2 for x in mu], kappa.n))
            if A.commutation_factor(lam, mu) != (-1) ** p and len(witnesses) < 10:
                witnesses.append({'lam': list(lam), 'mu': list(mu), 'issue': 'commutation sign'})
    passed = not witnesses
    return {
        'check_type': 'form_matches_torus',
        'passed': passed,
        'form': kappa.to_json(),
        'witnesses': witnesses,
        'message': f"Form agreement check {'passed' if passed else 'failed'}: kappa = {kappa} on {len(degrees)} degrees"
    }


def check_involution_isotope_invariance(iota: Involution, bound: int = QUADFORM_BOUND) -> Dict[str, Any]:
    """
    For every hermitian class mu mod 2, check that the form of iota^(h) with
    deg h = mu is isometric to the form of iota, with the explicit witness
    accepted and the search agreeing.
    """
    kappa = form_of_involution(iota)
    n = kappa.n
    witnesses = []
    tested = []
    for m in range(1 << n):
        if kappa.table[m]:
            continue
        mu = tuple(mask_to_bits(m, n))
        shifted = form_of_involution(involution_isotope(iota, mu))
        expected = shift_by(kappa, m)
        tau = isotope_witness(kappa, m)
        ok_form = shifted == expected
        ok_witness = verify_isometry(shifted, kappa, tau)
        ok_search = is_isometric(shifted, kappa, bound) is not None
        tested.append(list(mu))
        if not (ok_form and ok_witness and ok_search):
            witnesses.append({'mu': list(mu), 'shifted_form': shifted.to_json(),
                              'form_matches_shift': ok_form, 'witness_accepted': ok_witness,
                              'search_found': ok_search, 'tau': tau.tolist()})
    passed = not witnesses
    return {
        'check_type': 'involution_isotope_invariance',
        'passed': passed,
        'form': kappa.to_json(),
        'hermitian_classes': tested,
        'witnesses': witnesses,
        'message': f"Involution isotope invariance check {'passed' if passed else 'failed'}: "
                   f"{len(tested)} hermitian classes for kappa = {kappa}"
    }
