"""Lattices, root data of types A and C, shift homomorphisms and coset arithmetic."""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_form
from sympy.polys.domains import ZZ

log = logging.getLogger(__name__)

LatticeVec = Tuple[int, ...]


class RootDomainError(ValueError):
    """Raised when a vector is not a root or not in the root lattice."""
    pass


def vec(values: Iterable[int]) -> LatticeVec:
    return tuple(int(v) for v in values)


def zero_vec(n: int) -> LatticeVec:
    return (0,) * n


def vec_add(a: LatticeVec, b: LatticeVec) -> LatticeVec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: LatticeVec, b: LatticeVec) -> LatticeVec:
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a: LatticeVec) -> LatticeVec:
    return tuple(-x for x in a)


def vec_scale(k: int, a: LatticeVec) -> LatticeVec:
    return tuple(k * x for x in a)


def dot(a: Sequence[Any], b: Sequence[Any]) -> Any:
    return sum(x * y for x, y in zip(a, b))


def unit_vec(n: int, i: int) -> LatticeVec:
    return tuple(1 if k == i else 0 for k in range(n))


def parse_vec(text: str) -> LatticeVec:
    """Parse "1,-2,0" into (1, -2, 0)."""
    text = text.strip()
    if not text:
        return ()
    return tuple(int(part) for part in text.split(','))


def window_points(n: int, w: int) -> List[LatticeVec]:
    """All integer points of the box [-w, w]^n in lexicographic order."""
    return [tuple(p) for p in itertools.product(range(-w, w + 1), repeat=n)]


@dataclass(frozen=True)
class RootDatum:
    """
    Reduced root system of type A_r or C_r in epsilon coordinates.

    A_r lives in the sum-zero sublattice of Z^(r+1), C_r in Z^r. The base is
    alpha_i = e_i - e_(i+1), and for C_r the last simple root is 2 e_r.
    """
    type_tag: str
    rank: int

    def __post_init__(self):
        if self.type_tag not in ('A', 'C'):
            raise RootDomainError(f"Unsupported root system type: {self.type_tag}")
        if self.rank < 1:
            raise RootDomainError(f"Rank must be positive, got {self.rank}")

    @property
    def ambient_dim(self) -> int:
        return self.rank + 1 if self.type_tag == 'A' else self.rank

    @property
    def zero(self) -> LatticeVec:
        return zero_vec(self.ambient_dim)

    def epsilon(self, i: int) -> LatticeVec:
        return unit_vec(self.ambient_dim, i)

    @cached_property
    def base(self) -> Tuple[LatticeVec, ...]:
        d = self.ambient_dim
        simple = [vec_sub(unit_vec(d, i), unit_vec(d, i + 1)) for i in range(self.rank - 1)]
        if self.type_tag == 'A':
            simple.append(vec_sub(unit_vec(d, self.rank - 1), unit_vec(d, self.rank)))
        else:
            simple.append(vec_scale(2, unit_vec(d, self.rank - 1)))
        return tuple(simple)

    @cached_property
    def roots(self) -> Tuple[LatticeVec, ...]:
        """The nonzero roots, sorted."""
        d = self.ambient_dim
        found = set()
        for i in range(d):
            for j in range(d):
                if i != j:
                    found.add(vec_sub(unit_vec(d, i), unit_vec(d, j)))
        if self.type_tag == 'C':
            for i in range(d):
                for j in range(d):
                    plus = vec_add(unit_vec(d, i), unit_vec(d, j))
                    found.add(plus)
                    found.add(vec_neg(plus))
        return tuple(sorted(found))

    @cached_property
    def positive_roots(self) -> Tuple[LatticeVec, ...]:
        return tuple(r for r in self.roots if all(c >= 0 for c in self.to_base_coords(r)))

    def is_root(self, beta: LatticeVec) -> bool:
        return tuple(beta) in set(self.roots)

    def is_long(self, alpha: LatticeVec) -> bool:
        return self.type_tag == 'C' and dot(alpha, alpha) == 4

    def in_root_lattice(self, beta: LatticeVec) -> bool:
        if len(beta) != self.ambient_dim:
            return False
        if self.type_tag == 'A':
            return sum(beta) == 0
        return sum(beta) % 2 == 0

    def to_base_coords(self, beta: LatticeVec) -> LatticeVec:
        """
        Coordinates of beta with respect to the base.

        Raises:
            RootDomainError: If beta is not in the root lattice
        """
        if not self.in_root_lattice(beta):
            raise RootDomainError(f"{tuple(beta)} is not in the root lattice of {self.type_tag}{self.rank}")
        partial = list(itertools.accumulate(beta))
        if self.type_tag == 'A':
            return tuple(partial[:self.rank])
        return tuple(partial[:self.rank - 1]) + (partial[self.rank - 1] // 2,)

    def from_base_coords(self, coords: Sequence[int]) -> LatticeVec:
        result = self.zero
        for c, alpha in zip(coords, self.base):
            result = vec_add(result, vec_scale(c, alpha))
        return result

    def coroot_pair(self, beta: LatticeVec, alpha: LatticeVec) -> int:
        """
        The pairing <beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha).

        Raises:
            RootDomainError: If alpha is zero or not a root, or beta is outside Q
        """
        if not any(alpha):
            raise RootDomainError("Coroot pairing against the zero root")
        if not self.is_root(alpha):
            raise RootDomainError(f"{tuple(alpha)} is not a root of {self.type_tag}{self.rank}")
        if not self.in_root_lattice(beta):
            raise RootDomainError(f"{tuple(beta)} is not in the root lattice")
        num = 2 * dot(beta, alpha)
        den = dot(alpha, alpha)
        return num // den

    def reflect(self, beta: LatticeVec, alpha: LatticeVec) -> LatticeVec:
        """Weyl reflection of beta in the hyperplane orthogonal to alpha."""
        return vec_sub(beta, vec_scale(self.coroot_pair(beta, alpha), alpha))

    def to_json(self) -> Dict[str, Any]:
        return {'type': self.type_tag, 'rank': self.rank}


def coroot_pair(datum: RootDatum, beta: LatticeVec, alpha: LatticeVec) -> int:
    return datum.coroot_pair(beta, alpha)


@dataclass(frozen=True)
class ShiftHom:
    """A homomorphism s: Q -> Lambda given by its values on the base."""
    datum: RootDatum
    images: Tuple[LatticeVec, ...]

    def __post_init__(self):
        if len(self.images) != self.datum.rank:
            raise RootDomainError(
                f"Shift needs {self.datum.rank} base images, got {len(self.images)}"
            )
        lengths = {len(v) for v in self.images}
        if len(lengths) != 1:
            raise RootDomainError(f"Shift images have inconsistent lengths: {sorted(lengths)}")

    @property
    def n(self) -> int:
        return len(self.images[0])

    @classmethod
    def zero(cls, datum: RootDatum, n: int) -> 'ShiftHom':
        return cls(datum, tuple(zero_vec(n) for _ in range(datum.rank)))

    @classmethod
    def parse(cls, text: str, datum: RootDatum) -> 'ShiftHom':
        """Parse "1,0;0,1" (one image per simple root, separated by ';')."""
        parts = [p for p in text.split(';')]
        return cls(datum, tuple(parse_vec(p) for p in parts))

    @classmethod
    def from_json(cls, data: Dict[str, Any], datum: RootDatum) -> 'ShiftHom':
        return cls(datum, tuple(vec(v) for v in data['s']))

    def to_json(self) -> Dict[str, Any]:
        return {'s': [list(v) for v in self.images]}

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.images)

    def apply(self, beta: LatticeVec) -> LatticeVec:
        coords = self.datum.to_base_coords(beta)
        result = zero_vec(self.n)
        for c, image in zip(coords, self.images):
            if c:
                result = vec_add(result, vec_scale(c, image))
        return result

    def __add__(self, other: 'ShiftHom') -> 'ShiftHom':
        return ShiftHom(self.datum, tuple(vec_add(a, b) for a, b in zip(self.images, other.images)))

    def __neg__(self) -> 'ShiftHom':
        return ShiftHom(self.datum, tuple(vec_neg(a) for a in self.images))

    def epsilon_offsets(self) -> List[LatticeVec]:
        """
        Values of s extended to the epsilon vectors.

        For A_r this is s(e_i) normalised by s(e_1) = 0. For C_r it is
        s(e_i - e_r), which vanishes for i = r.
        """
        r = self.datum.rank
        if self.datum.type_tag == 'A':
            offsets = [zero_vec(self.n)]
            for i in range(r):
                offsets.append(vec_sub(offsets[-1], self.images[i]))
            return offsets
        offsets = [zero_vec(self.n)] * r
        for i in range(r - 2, -1, -1):
            offsets[i] = vec_add(self.images[i], offsets[i + 1])
        return offsets


def apply_shift(s: ShiftHom, beta: LatticeVec) -> LatticeVec:
    """
    Evaluate s on a root-lattice vector given in epsilon coordinates.

    Raises:
        RootDomainError: If beta is not in the root lattice
    """
    return s.apply(beta)


def _hermite_rows(generators: Sequence[LatticeVec], n: int) -> List[LatticeVec]:
    """
    Row echelon Hermite basis of the span of generators.

    Pivots are the first nonzero entries, positive and strictly increasing, with the
    entries above each pivot reduced into [0, pivot).
    """
    nonzero = [g for g in generators if any(g)]
    if not nonzero:
        return []
    # sympy works on columns with pivots at the last nonzero entry, so feed it reversed coordinates
    columns = Matrix([list(reversed(g)) for g in nonzero]).T
    hnf = hermite_normal_form(columns)
    basis = []
    for j in reversed(range(hnf.cols)):
        row = tuple(int(hnf[i, j]) for i in reversed(range(n)))
        if any(row):
            basis.append(row)
    return basis


def _pivot(row: Sequence[int]) -> int:
    for k, a in enumerate(row):
        if a:
            return k
    return -1


class Sublattice:
    """
    A subgroup of Z^n given by generators, kept in Hermite normal form.

    reduce() returns the canonical representative of a coset, so equality of
    cosets is equality of reduced vectors.
    """

    def __init__(self, generators: Iterable[Sequence[int]], n: int):
        self.n = n
        self.generators = [vec(g) for g in generators]
        for g in self.generators:
            if len(g) != n:
                raise RootDomainError(f"Generator {g} does not have length {n}")
        self.basis: List[LatticeVec] = _hermite_rows(self.generators, n)
        self.pivots = [_pivot(r) for r in self.basis]

    def reduce(self, v: Sequence[int]) -> LatticeVec:
        work = list(v)
        for row, col in zip(self.basis, self.pivots):
            q = work[col] // row[col]
            if q:
                work = [a - q * b for a, b in zip(work, row)]
        return tuple(work)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[int]) -> List[int]:
        """
        Integer coordinates of v in the Hermite basis.

        Raises:
            RootDomainError: If v is not in the sublattice
        """
        work = list(v)
        coords = []
        for row, col in zip(self.basis, self.pivots):
            q, rem = divmod(work[col], row[col])
            if rem:
                raise RootDomainError(f"{tuple(v)} is not in the sublattice")
            coords.append(q)
            work = [a - q * b for a, b in zip(work, row)]
        if any(work):
            raise RootDomainError(f"{tuple(v)} is not in the sublattice")
        return coords

    def is_full_rank(self) -> bool:
        return len(self.basis) == self.n

    def index(self) -> Optional[int]:
        """Index in Z^n, or None when the quotient is infinite."""
        if not self.is_full_rank():
            return None
        result = 1
        for row, col in zip(self.basis, self.pivots):
            result *= row[col]
        return result

    def invariants(self) -> List[int]:
        """
        Invariant factors of Z^n / self from the Smith normal form.

        Trivial factors are dropped; a 0 stands for an infinite cyclic factor.
        """
        if not self.basis:
            return [0] * self.n
        snf = smith_normal_form(Matrix(self.basis), domain=ZZ)
        diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
        factors = [d for d in diagonal if d != 1]
        factors.extend([0] * (self.n - len(self.basis)))
        return factors

    def coset_representatives(self) -> List[LatticeVec]:
        """
        Canonical representatives of all cosets.

        Raises:
            RootDomainError: If the quotient is infinite
        """
        if not self.is_full_rank():
            raise RootDomainError("Quotient by a sublattice of lower rank is infinite")
        ranges = [range(row[col]) for row, col in zip(self.basis, self.pivots)]
        return [tuple(p) for p in itertools.product(*ranges)]

    def to_json(self) -> Dict[str, Any]:
        return {'basis': [list(b) for b in self.basis], 'index': self.index(),
                'invariants': self.invariants()}


@dataclass(frozen=True)
class CosetSet:
    """A finite set of cosets of a sublattice, stored by canonical representatives."""
    modulus: Sublattice = field(compare=False)
    representatives: Tuple[LatticeVec, ...]

    @classmethod
    def from_vectors(cls, modulus: Sublattice, vectors: Iterable[Sequence[int]]) -> 'CosetSet':
        reps = sorted({modulus.reduce(v) for v in vectors})
        return cls(modulus, tuple(reps))

    def __len__(self) -> int:
        return len(self.representatives)


def coset_sum(cosets: CosetSet) -> LatticeVec:
    """The sum of all cosets, as a canonical representative."""
    total = zero_vec(cosets.modulus.n)
    for rep in cosets.representatives:
        total = vec_add(total, rep)
    return cosets.modulus.reduce(total)
