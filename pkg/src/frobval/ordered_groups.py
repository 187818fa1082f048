"""Finitely generated totally ordered abelian groups.

Two representations cover every supported value group:

* ``arch``: a subgroup of the reals with coordinates over {1, sqrt(d)},
  rank at most 2, ordered by the real embedding;
* ``lex``: a subgroup of Z^r ordered lexicographically (native tuple
  comparison in Python is exactly this order).

Group elements are ``QuadraticReal`` values (arch) or integer tuples (lex).
Internally a group is an integer lattice: arch coordinates are cleared of
denominators by a common scale.  The canonical basis is a row-style Hermite
normal form (echelon rows, positive pivots, entries above a pivot reduced);
Smith normal form lives only in the oracle module as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import GroupMismatchError, MixedRepresentationError
from .exact_arith import QuadraticReal


def hnf_rows(rows, transform=False):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero echelon rows (pivot columns strictly increasing,
    pivots positive, entries above each pivot reduced into [0, pivot)).
    With ``transform=True`` also returns (H_full, U) where U is unimodular,
    U @ A = H_full, and H_full keeps zero rows so kernel rows of U line up.
    """
    a = [list(r) for r in rows]
    m = len(a)
    ncols = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def rowop_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def rowop_addmul(i, j, c):
        # row_i += c * row_j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def rowop_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    pivot_row = 0
    pivots = []
    for col in range(ncols):
        # clear the column below pivot_row via Euclid
        while True:
            nz = [i for i in range(pivot_row, m) if a[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(a[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = a[i][col] // a[i0][col]
                rowop_addmul(i, i0, -q)
        nz = [i for i in range(pivot_row, m) if a[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        if i0 != pivot_row:
            rowop_swap(i0, pivot_row)
        if a[pivot_row][col] < 0:
            rowop_neg(pivot_row)
        piv = a[pivot_row][col]
        for i in range(pivot_row):
            q = a[i][col] // piv
            if q:
                rowop_addmul(i, pivot_row, -q)
        pivots.append(col)
        pivot_row += 1

    basis = [tuple(r) for r in a[:pivot_row]]
    if transform:
        return [tuple(r) for r in a], [tuple(r) for r in u]
    return basis


def kernel_basis(matrix_rows):
    """Integer kernel of the linear map x -> M @ x for an r x n integer
    matrix given as rows; returns a lattice basis of {x in Z^n : M x = 0}."""
    r = len(matrix_rows)
    n = len(matrix_rows[0]) if r else 0
    # rows of M^T are the images of the standard basis vectors
    mt = [[matrix_rows[i][j] for i in range(r)] for j in range(n)]
    h, u = hnf_rows(mt, transform=True)
    return [tuple(u[i]) for i in range(n) if not any(h[i])]


def reduce_mod_lattice(vec, basis):
    """Canonical representative of `vec` modulo the lattice spanned by
    echelon `basis` rows (unique for vectors in the rational row span)."""
    v = list(vec)
    for row in basis:
        j = next(k for k, x in enumerate(row) if x)
        q = v[j] // row[j]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)


def solve_integer(basis, vec):
    """Coefficients c with sum(c_i * basis_i) = vec, or None if vec is not
    in the lattice.  Basis rows must be echelon (as from hnf_rows)."""
    v = [Fraction(x) for x in vec]
    coeffs = []
    for row in basis:
        j = next(k for k, x in enumerate(row) if x)
        c = v[j] / row[j]
        if c.denominator != 1:
            return None
        coeffs.append(int(c))
        v = [x - c * y for x, y in zip(v, row)]
    if any(v):
        return None
    return coeffs


def lex_positive(vec) -> bool:
    for x in vec:
        if x:
            return x > 0
    return False


@dataclass(frozen=True)
class OrderedGroup:
    """Finitely generated subgroup of R (kind 'arch') or lex Z^r ('lex')."""

    kind: str                  # 'arch' | 'lex'
    dim: int                   # coordinate dimension (2 for arch, r for lex)
    d: int | None              # radicand for arch groups
    denom: int                 # arch: coordinates are integer/denom; lex: 1
    basis_int: tuple           # echelon HNF rows of the integer lattice
    generators: tuple = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.basis_int)

    @classmethod
    def from_generators(cls, gens) -> "OrderedGroup":
        gens = list(gens)
        if not gens:
            raise MixedRepresentationError("group needs at least one generator")
        if all(isinstance(g, QuadraticReal) for g in gens):
            d = gens[0].d
            if any(g.d != d for g in gens):
                raise MixedRepresentationError("arch generators must share one radicand")
            if all(g.is_zero() for g in gens):
                raise MixedRepresentationError("group must be non-trivial")
            denom = lcm(*[
                q.denominator for g in gens for q in (g.a, g.b)
            ])
            rows = [(int(g.a * denom), int(g.b * denom)) for g in gens]
            basis = hnf_rows(rows)
            return cls("arch", 2, d, denom, tuple(basis), tuple(gens))
        if all(isinstance(g, tuple) for g in gens):
            r = len(gens[0])
            if any(len(g) != r for g in gens):
                raise MixedRepresentationError("lex generators must share one length")
            if all(not any(g) for g in gens):
                raise MixedRepresentationError("group must be non-trivial")
            basis = hnf_rows([list(g) for g in gens])
            return cls("lex", r, None, 1, tuple(basis), tuple(gens))
        raise MixedRepresentationError("generators mix representations")

    # -- element <-> coordinate conversion ---------------------------------

    def _to_coords(self, elem):
        if self.kind == "arch":
            if not isinstance(elem, QuadraticReal) or elem.d != self.d:
                raise GroupMismatchError("element does not belong to this group")
            return (elem.a * self.denom, elem.b * self.denom)
        if not isinstance(elem, tuple) or len(elem) != self.dim:
            raise GroupMismatchError("element does not belong to this group")
        return elem

    def _from_coords(self, coords):
        if self.kind == "arch":
            return QuadraticReal(
                Fraction(coords[0], self.denom), Fraction(coords[1], self.denom), self.d
            )
        return tuple(coords)

    def contains(self, elem) -> bool:
        coords = self._to_coords(elem)
        if any(Fraction(c).denominator != 1 for c in coords):
            return False
        return solve_integer(self.basis_int, [int(c) for c in coords]) is not None

    def basis_elements(self):
        return [self._from_coords(row) for row in self.basis_int]

    # -- the group-theoretic operations ------------------------------------

    def rational_rank(self) -> int:
        return self.rank

    def index_p(self, p: int) -> int:
        """[G : pG] = p^rank for a finitely generated torsion-free group."""
        return p ** self.rank

    def least_positive(self):
        """The least positive element, or None.

        Arch groups of rank >= 2 are dense in R and have none.  A lex group
        always has one: the last HNF basis row (largest pivot column).  Any
        positive element lex-below it must vanish on all earlier coordinates,
        hence is a positive multiple of that row.
        """
        if self.rank == 0:
            return None
        if self.kind == "arch":
            if self.rank >= 2:
                return None
            g = self._from_coords(self.basis_int[0])
            return g if g.sign() > 0 else -g
        return tuple(self.basis_int[-1])

    def dominates_all_multiples(self, a, g) -> bool:
        """True iff a >= n*g for every positive integer n (g > 0).

        Impossible in an archimedean group.  In lex order it holds exactly
        when a's first nonzero coordinate is positive and occurs strictly
        before g's: then a - n*g is decided at that coordinate for every n.
        """
        if self.kind == "arch":
            self._to_coords(a)
            self._to_coords(g)
            return False
        a = self._to_coords(a)
        g = self._to_coords(g)
        if not lex_positive(g):
            raise GroupMismatchError("g must be positive")
        fnz_a = next((i for i, x in enumerate(a) if x), None)
        fnz_g = next(i for i, x in enumerate(g) if x)
        return fnz_a is not None and fnz_a < fnz_g and a[fnz_a] > 0

    def scale(self, p: int) -> "OrderedGroup":
        """The subgroup pG, order-isomorphic to G by scaling."""
        basis = tuple(tuple(p * x for x in row) for row in self.basis_int)
        gens = tuple(
            g.scale(p) if self.kind == "arch" else tuple(p * x for x in g)
            for g in self.generators
        )
        return OrderedGroup(self.kind, self.dim, self.d, self.denom, basis, gens)

    # -- element helpers (dispatch on representation) ----------------------

    def compare_elements(self, a, b) -> int:
        if self.kind == "arch":
            return a.compare(b)
        a, b = self._to_coords(a), self._to_coords(b)
        return (a > b) - (a < b)

    def scale_element(self, n: int, g):
        if self.kind == "arch":
            return g.scale(n)
        return tuple(n * x for x in self._to_coords(g))

    def add_elements(self, a, b):
        if self.kind == "arch":
            return a + b
        return tuple(x + y for x, y in zip(self._to_coords(a), self._to_coords(b)))

    def neg_element(self, a):
        if self.kind == "arch":
            return -a
        return tuple(-x for x in self._to_coords(a))

    def is_positive(self, a) -> bool:
        if self.kind == "arch":
            return a.sign() > 0
        return lex_positive(self._to_coords(a))


def group_from_generators(gens) -> OrderedGroup:
    return OrderedGroup.from_generators(gens)


def rational_rank(g: OrderedGroup) -> int:
    return g.rational_rank()


def index_p(g: OrderedGroup, p: int) -> int:
    return g.index_p(p)


def least_positive(g: OrderedGroup):
    return g.least_positive()


def dominates_all_multiples(g: OrderedGroup, a, b) -> bool:
    return g.dominates_all_multiples(a, b)


def scale_group(g: OrderedGroup, p: int) -> OrderedGroup:
    return g.scale(p)
