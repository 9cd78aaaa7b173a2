# SPDX-License-Identifier: Apache-2.0

"""Finitely generated abelian groups in invariant-factor coordinates and their homomorphisms.

``FgAbelianGroup((d_1, ..., d_r))`` is ``⊕ Z/d_i`` with ``d_i = 0`` meaning ``Z``. Elements are
integer vectors, canonical when coordinate ``i`` lies in ``[0, d_i)`` for ``d_i > 0``.
Homomorphisms are integer matrices reduced row-wise modulo the codomain factors.
"""

import itertools
from dataclasses import dataclass

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from mackey_bisets.exception import AbelianGroupError


def _int_array(matrix, shape=None):
    arr = np.array(matrix.tolist(), dtype=object).astype(np.int64)
    return arr.reshape(shape) if shape is not None else arr


def smith(matrix):
    """Smith decomposition ``S = U·A·V`` with ``U``, ``V`` unimodular and ``diag(S) ≥ 0``.

    Returns:
        tuple: the diagonal (length ``min(rows, cols)``), ``U`` and ``V`` as int64 arrays.
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, np.eye(rows, dtype=np.int64), np.eye(cols, dtype=np.int64)
    S, U, V = smith_normal_decomp(Matrix(matrix.tolist()), domain=ZZ)
    S, U, V = _int_array(S, (rows, cols)), _int_array(U, (rows, rows)), _int_array(V, (cols, cols))
    diagonal = np.diagonal(S).copy()
    negative = diagonal < 0
    U[np.flatnonzero(negative)] *= -1
    diagonal[negative] *= -1
    return diagonal, U, V


def unimodular_inverse(matrix):
    """Exact inverse of a unimodular integer matrix."""
    matrix = np.asarray(matrix, dtype=np.int64)
    if matrix.size == 0:
        return matrix.copy()
    return _int_array(Matrix(matrix.tolist()).inv(), matrix.shape)


def integer_solve(A, b):
    """One integer solution ``x`` of ``A·x = b`` (``b`` a vector or a matrix of columns).

    Raises:
        AbelianGroupError: no integer solution exists.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    B = b.reshape(-1, 1) if vector else b
    rows, cols = A.shape
    if B.shape[0] != rows:
        raise AbelianGroupError(f"right-hand side has {B.shape[0]} rows, expected {rows}")
    diagonal, U, V = smith(A)
    c = U @ B
    y = np.zeros((cols, B.shape[1]), dtype=np.int64)
    for i, s in enumerate(diagonal):
        if s == 0:
            continue
        if np.any(c[i] % s):
            raise AbelianGroupError("system has no integer solution")
        y[i] = c[i] // s
    rank = int(np.count_nonzero(diagonal))
    if np.any(c[rank:]):
        raise AbelianGroupError("system has no integer solution")
    x = V @ y
    return x[:, 0] if vector else x


def integer_kernel(A):
    """Basis (as columns) of ``{x ∈ Z^n : A·x = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    diagonal, _, V = smith(A)
    rank = int(np.count_nonzero(diagonal))
    return V[:, rank:]


def lattice_basis(generators):
    """Basis (as columns) of the lattice spanned by the columns of ``generators``."""
    generators = np.asarray(generators, dtype=np.int64)
    diagonal, U, _ = smith(generators)
    rank = int(np.count_nonzero(diagonal))
    return unimodular_inverse(U)[:, :rank] * diagonal[:rank]


@dataclass(frozen=True)
class FgAbelianGroup:
    """``⊕ Z/d_i`` with ``d_i = 0`` for an infinite cyclic factor."""

    factors: tuple = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.factors)
        if any(d < 0 for d in factors):
            raise AbelianGroupError(f"factors must be non-negative, got {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def rank(self):
        """Number of cyclic factors."""
        return len(self.factors)

    @property
    def moduli(self):
        """Factors as an array."""
        return np.array(self.factors, dtype=np.int64)

    @property
    def is_finite(self):
        """``True`` without infinite cyclic factors."""
        return all(d > 0 for d in self.factors)

    @property
    def order(self):
        """Number of elements, ``None`` if infinite."""
        return int(np.prod(self.factors, dtype=np.int64)) if self.is_finite else None

    @property
    def is_trivial(self):
        """``True`` if every factor is ``Z/1`` (or there are none)."""
        return all(d == 1 for d in self.factors)

    def zero(self):
        """Zero element."""
        return np.zeros(self.rank, dtype=np.int64)

    def reduce(self, values):
        """Canonical form of a vector, or of the rows of a matrix, modulo the factors."""
        values = np.asarray(values, dtype=np.int64)
        moduli = self.moduli.reshape((-1,) + (1,) * (values.ndim - 1))
        return np.where(moduli > 0, np.mod(values, np.where(moduli > 0, moduli, 1)), values)

    def elements(self):
        """Every element in lexicographic order (finite groups only)."""
        if not self.is_finite:
            raise AbelianGroupError(f"{self} is infinite")
        for coords in itertools.product(*(range(d) for d in self.factors)):
            yield np.array(coords, dtype=np.int64)

    def direct_sum(self, *others):
        """Concatenated factors."""
        return FgAbelianGroup(self.factors + sum((o.factors for o in others), ()))

    def to_json(self):
        return list(self.factors)


class AbHom:
    """Homomorphism ``domain → codomain`` as a ``codomain.rank × domain.rank`` integer matrix.

    Equality is entry-wise congruence modulo the codomain factors.
    """

    def __init__(self, domain, codomain, matrix, check=True):
        matrix = np.asarray(matrix, dtype=np.int64).reshape(codomain.rank, domain.rank)
        matrix = codomain.reduce(matrix)
        matrix.flags.writeable = False
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        if check and not self.is_well_defined():
            raise AbelianGroupError(f"{matrix.tolist()} is not well defined {domain} -> {codomain}")

    @classmethod
    def identity(cls, group):
        """Identity map."""
        return cls(group, group, np.eye(group.rank, dtype=np.int64), check=False)

    @classmethod
    def zero(cls, domain, codomain):
        """Zero map."""
        return cls(domain, codomain, np.zeros((codomain.rank, domain.rank), dtype=np.int64))

    @classmethod
    def block(cls, rows):
        """Block matrix; homomorphisms in a column share the domain, in a row the codomain."""
        if not rows or not rows[0]:
            raise AbelianGroupError("block matrix needs at least one entry")
        domain = rows[0][0].domain.direct_sum(*(h.domain for h in rows[0][1:]))
        codomain = rows[0][0].codomain.direct_sum(*(row[0].codomain for row in rows[1:]))
        matrix = np.block([[h.matrix for h in row] for row in rows])
        return cls(domain, codomain, matrix, check=False)

    def __repr__(self):
        return f"AbHom({self.domain.factors} -> {self.codomain.factors}, {self.matrix.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, AbHom):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix.tobytes()))

    def _check_parallel(self, other):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise AbelianGroupError(f"{self} and {other} are not parallel")

    def __add__(self, other):
        self._check_parallel(other)
        return AbHom(self.domain, self.codomain, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        self._check_parallel(other)
        return AbHom(self.domain, self.codomain, self.matrix - other.matrix, check=False)

    def __neg__(self):
        return AbHom(self.domain, self.codomain, -self.matrix, check=False)

    def __rmul__(self, factor):
        return AbHom(self.domain, self.codomain, int(factor) * self.matrix, check=False)

    def __matmul__(self, other):
        if other.codomain != self.domain:
            raise AbelianGroupError(f"cannot compose {self} after {other}")
        return AbHom(other.domain, self.codomain, self.matrix @ other.matrix, check=False)

    def __call__(self, element):
        return self.codomain.reduce(self.matrix @ np.asarray(element, dtype=np.int64))

    def is_well_defined(self):
        """``d_j`` times column ``j`` vanishes in the codomain for every finite domain factor."""
        scaled = self.matrix * self.domain.moduli[None, :]
        return bool(np.all(self.codomain.reduce(scaled)[:, self.domain.moduli > 0] == 0))

    @property
    def is_identity(self):
        """``True`` for the identity of its domain."""
        return self.domain == self.codomain and self == AbHom.identity(self.domain)

    @property
    def is_zero(self):
        """``True`` for the zero map."""
        return not self.matrix.any()

    def to_json(self):
        return self.matrix.tolist()


def direct_sum(*homs):
    """Block-diagonal homomorphism."""
    domain = FgAbelianGroup().direct_sum(*(h.domain for h in homs))
    codomain = FgAbelianGroup().direct_sum(*(h.codomain for h in homs))
    matrix = np.zeros((codomain.rank, domain.rank), dtype=np.int64)
    row = col = 0
    for h in homs:
        matrix[row : row + h.codomain.rank, col : col + h.domain.rank] = h.matrix
        row += h.codomain.rank
        col += h.domain.rank
    return AbHom(domain, codomain, matrix, check=False)


@dataclass(frozen=True, eq=False)
class Kernel:
    """Common kernel of homomorphisms out of ``ambient``, in its own invariant factors.

    ``inclusion`` maps it into ``ambient``; :meth:`project` sends kernel elements of the
    ambient back to kernel coordinates.
    """

    ambient: FgAbelianGroup
    group: FgAbelianGroup
    inclusion: AbHom
    lattice: np.ndarray
    change: np.ndarray
    kept: np.ndarray

    def project(self, values):
        """Kernel coordinates of ambient vectors (or columns) lying in the kernel.

        Raises:
            AbelianGroupError: a vector is not in the kernel.
        """
        values = np.asarray(values, dtype=np.int64)
        w = integer_solve(self.lattice, values) if self.lattice.shape[1] else None
        if w is None:
            if np.any(self.ambient.reduce(values)):
                raise AbelianGroupError("vector is not in the kernel")
            shape = (0,) if values.ndim == 1 else (0, values.shape[1])
            return np.zeros(shape, dtype=np.int64)
        return self.group.reduce((self.change @ w)[self.kept])

    def restrict_to(self, hom):
        """``π ∘ hom`` for a map whose image lies in the kernel."""
        return AbHom(hom.domain, self.group, self.project(hom.matrix), check=False)


def kernel(ambient, homs):
    """Common kernel ``{v : f(v) = 0 for every f in homs}``.

    The lattice ``Λ = {v ∈ Z^r : f(v) ∈ D_f Z^s}`` contains ``D Z^r`` (``D`` the diagonal of
    the ambient factors), and the kernel is ``Λ / D Z^r`` read off a Smith decomposition.
    """
    r = ambient.rank
    D = np.diag(ambient.moduli)
    homs = list(homs)
    if homs:
        rows = sum(f.codomain.rank for f in homs)
        system = np.zeros((rows, r + rows), dtype=np.int64)
        offset = 0
        for f in homs:
            s = f.codomain.rank
            system[offset : offset + s, :r] = f.matrix
            system[offset : offset + s, r + offset : r + offset + s] = -np.diag(f.codomain.moduli)
            offset += s
        generators = integer_kernel(system)[:r]
    else:
        generators = np.eye(r, dtype=np.int64)
    lattice = lattice_basis(np.hstack([generators, D]) if r else generators)
    m = lattice.shape[1]
    relations = integer_solve(lattice, D) if m else np.zeros((0, r), dtype=np.int64)
    diagonal, U, _ = smith(relations)
    factors = np.zeros(m, dtype=np.int64)
    factors[: len(diagonal)] = diagonal
    kept = np.flatnonzero(factors != 1)
    group = FgAbelianGroup(tuple(int(d) for d in factors[kept]))
    inclusion = AbHom(group, ambient, lattice @ unimodular_inverse(U)[:, kept], check=False)
    return Kernel(ambient, group, inclusion, lattice, U, kept)
