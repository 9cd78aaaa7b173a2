# SPDX-License-Identifier: Apache-2.0

"""Finite groups as Cayley tables, their subgroups and homomorphisms between subgroups."""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from mackey_bisets.exception import GroupTableError, HomomorphismError, SubgroupError


def as_cayley_table(table):
    """Integer array of a Cayley table, rejecting rows of the wrong length."""
    if not isinstance(table, np.ndarray):
        order = len(table)
        if any(np.ndim(row) != 1 or len(row) != order for row in table):
            raise GroupTableError(f"Cayley table rows must all have length {order}")
    return np.array(table, dtype=np.int64)


class FiniteGroup:
    """Finite group on the elements ``0..order-1`` given by its Cayley table.

    ``table[a, b]`` is the index of ``a·b``. Instances are immutable and compare by identity,
    so subgroups of two separately built copies of one group are never equal.

    Args:
        table (array-like): ``order x order`` Cayley table.
        label (str): Human readable name.
        check_associativity (bool): Verify associativity (``order^3`` lookups).
    """

    def __init__(self, table, label="", check_associativity=True):
        table = as_cayley_table(table)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupTableError(f"Cayley table must be a non-empty square, got {table.shape}")
        order = table.shape[0]
        expected = np.arange(order)
        if not (
            np.array_equal(np.sort(table, axis=1), np.broadcast_to(expected, table.shape))
            and np.array_equal(
                np.sort(table, axis=0), np.broadcast_to(expected[:, None], table.shape)
            )
        ):
            raise GroupTableError("Cayley table is not a Latin square")

        identity = next(
            (
                e
                for e in range(order)
                if np.array_equal(table[e], expected) and np.array_equal(table[:, e], expected)
            ),
            None,
        )
        if identity is None:
            raise GroupTableError("Cayley table has no two-sided identity")

        if check_associativity:
            for a in range(order):
                # (a·b)·c against a·(b·c) for all b, c
                if not np.array_equal(table[table[a]], table[a][table]):
                    raise GroupTableError(f"Cayley table is not associative at a={a}")

        table.flags.writeable = False
        inverse = np.argmax(table == identity, axis=1)
        inverse.flags.writeable = False

        self.table = table
        self.order = order
        self.identity = int(identity)
        self.inverse = inverse
        self.label = label

    def __repr__(self):
        return f"FiniteGroup({self.label!r}, order={self.order})"

    def __len__(self):
        return self.order

    def mul(self, a, b):
        """Return ``a·b``."""
        return int(self.table[a, b])

    def inv(self, a):
        """Return ``a⁻¹``."""
        return int(self.inverse[a])

    def conj(self, h, g):
        """Return ``h^g = g⁻¹·h·g``."""
        return int(self.table[self.table[self.inverse[g], h], g])

    def conj_array(self, elements, g):
        """Vectorized ``g⁻¹·h·g`` over an array of elements."""
        return self.table[self.table[self.inverse[g], elements], g]

    def element_order(self, a):
        """Order of the element ``a``."""
        n, x = 1, a
        while x != self.identity:
            x = self.table[x, a]
            n += 1
        return n

    @cached_property
    def is_abelian(self):
        """``True`` if the table is symmetric."""
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def full(self):
        """The group itself as a subgroup."""
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial(self):
        """The trivial subgroup."""
        return Subgroup(self, (self.identity,))

    def subgroup(self, elements, check=True):
        """Build the canonical subgroup on ``elements``.

        Raises:
            SubgroupError: if ``check`` and the elements are not closed under the group laws.
        """
        elements = tuple(sorted({int(h) for h in elements}))
        if check:
            arr = np.array(elements, dtype=np.int64)
            if not elements or self.identity not in elements:
                raise SubgroupError(f"{list(elements)} does not contain the identity")
            if arr.min() < 0 or arr.max() >= self.order:
                raise SubgroupError(f"{list(elements)} has indices outside 0..{self.order - 1}")
            if not np.isin(self.table[np.ix_(arr, arr)], arr).all():
                raise SubgroupError(f"{list(elements)} is not closed under multiplication")
            if not np.isin(self.inverse[arr], arr).all():
                raise SubgroupError(f"{list(elements)} is not closed under inverses")
        return Subgroup(self, elements)

    def generate(self, generators):
        """Subgroup generated by ``generators`` (breadth-first closure)."""
        generators = [int(s) for s in generators]
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in generators:
                y = int(self.table[x, s])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return Subgroup(self, tuple(sorted(seen)))


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a :class:`FiniteGroup` as a strictly ascending tuple of element indices.

    Two subgroups are equal iff they live in the same group and have the same elements.
    Ordering is by ``(order, elements)``.
    """

    group: FiniteGroup = field(repr=False)
    elements: tuple

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.elements, self.elements[1:])):
            raise SubgroupError(f"subgroup elements must be strictly ascending: {self.elements}")

    def __repr__(self):
        return f"Subgroup({list(self.elements)})"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, h):
        return h in self.members

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __le__(self, other):
        return self.sort_key <= other.sort_key

    @property
    def order(self):
        """Number of elements."""
        return len(self.elements)

    @property
    def sort_key(self):
        """Canonical ordering key ``(order, elements)``."""
        return (len(self.elements), self.elements)

    @cached_property
    def members(self):
        """Elements as a frozenset."""
        return frozenset(self.elements)

    @cached_property
    def array(self):
        """Elements as a numpy array."""
        arr = np.array(self.elements, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @cached_property
    def positions(self):
        """Array mapping each group element to its position in ``elements`` (``-1`` outside)."""
        pos = np.full(self.group.order, -1, dtype=np.int64)
        pos[self.array] = np.arange(len(self.elements))
        pos.flags.writeable = False
        return pos

    def index(self, h):
        """Position of ``h`` in ``elements``."""
        pos = int(self.positions[h])
        if pos < 0:
            raise SubgroupError(f"{h} is not an element of {self}")
        return pos

    def to_list(self):
        """Elements as a plain list."""
        return list(self.elements)

    def to_json(self):
        return self.to_list()

    def conjugate(self, g):
        """Return ``H^g = g⁻¹Hg``."""
        conjugated = self.group.conj_array(self.array, g)
        return Subgroup(self.group, tuple(sorted(int(x) for x in conjugated)))

    def is_subgroup_of(self, other):
        """``True`` if every element lies in ``other``."""
        return self.group is other.group and self.members <= other.members

    def intersection(self, other):
        """Intersection of two subgroups."""
        return Subgroup(self.group, tuple(sorted(self.members & other.members)))

    def is_normal_in(self, ambient):
        """``True`` if ``ambient`` normalizes this subgroup."""
        return all(self.conjugate(g) == self for g in ambient)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between subgroups of one group, stored as sorted ``(h, image)`` pairs."""

    domain: Subgroup
    codomain: Subgroup
    pairs: tuple

    def __repr__(self):
        return f"GroupHom({dict(self.pairs)})"

    @classmethod
    def from_mapping(cls, domain, codomain, mapping, check=True, bijective=False):
        """Build from a ``{h: image}`` mapping covering the domain."""
        try:
            pairs = tuple((h, int(mapping[h])) for h in domain.elements)
        except KeyError as e:
            raise HomomorphismError(f"map is undefined on domain element {e}") from e
        hom = cls(domain, codomain, pairs)
        if check:
            hom.check(bijective=bijective)
        return hom

    @classmethod
    def from_images(cls, domain, codomain, images):
        """Build from an array of images aligned with ``domain.elements``."""
        return cls(domain, codomain, tuple(zip(domain.elements, (int(k) for k in images))))

    @classmethod
    def identity(cls, subgroup):
        """Identity of a subgroup."""
        return cls(subgroup, subgroup, tuple((h, h) for h in subgroup.elements))

    @classmethod
    def conjugation(cls, subgroup, g):
        """Conjugation ``c_g: H → H^g``, ``h ↦ g⁻¹hg``."""
        images = subgroup.group.conj_array(subgroup.array, g)
        return cls.from_images(subgroup, subgroup.conjugate(g), images)

    @cached_property
    def mapping(self):
        """Map as a dict."""
        return dict(self.pairs)

    @cached_property
    def images(self):
        """Images aligned with ``domain.elements``."""
        return np.array([k for _, k in self.pairs], dtype=np.int64)

    def __call__(self, h):
        return self.mapping[h]

    def is_multiplicative(self):
        """``True`` if ``f(ab) = f(a)f(b)`` on the domain."""
        table = self.domain.group.table
        dom = self.domain.array
        img = self.images
        if not np.all(np.isin(img, self.codomain.array)):
            return False
        lhs = img[self.domain.positions[table[np.ix_(dom, dom)]]]
        rhs = table[np.ix_(img, img)]
        return bool(np.array_equal(lhs, rhs))

    def is_bijective(self):
        """``True`` if the map is a bijection onto the codomain."""
        return len(self.domain) == len(self.codomain) and set(self.images.tolist()) == set(
            self.codomain.elements
        )

    def check(self, bijective=False):
        """Raise :class:`HomomorphismError` unless multiplicative (and bijective)."""
        if self.domain.group is not self.codomain.group:
            raise HomomorphismError("domain and codomain live in different groups")
        if not self.is_multiplicative():
            raise HomomorphismError(f"{self} is not a homomorphism into {self.codomain}")
        if bijective and not self.is_bijective():
            raise HomomorphismError(f"{self} is not a bijection onto {self.codomain}")
        return self

    def compose(self, other):
        """Return ``self ∘ other``."""
        return GroupHom(
            other.domain, self.codomain, tuple((h, self.mapping[k]) for h, k in other.pairs)
        )

    def inverse(self):
        """Inverse of a bijective homomorphism."""
        return GroupHom(self.codomain, self.domain, tuple(sorted((k, h) for h, k in self.pairs)))

    def restrict(self, subgroup):
        """Restriction to a subgroup of the domain."""
        return GroupHom(subgroup, self.codomain, tuple((h, self.mapping[h]) for h in subgroup))

    def image(self, subgroup=None):
        """Image of the domain (or of ``subgroup``) as a subgroup."""
        source = self.domain if subgroup is None else subgroup
        return Subgroup(self.domain.group, tuple(sorted({self.mapping[h] for h in source})))

    def preimage(self, subgroup):
        """Preimage of a subgroup of the codomain."""
        return Subgroup(
            self.domain.group, tuple(h for h, k in self.pairs if k in subgroup.members)
        )

    def with_codomain(self, codomain):
        """Same map with a different (containing) codomain."""
        return GroupHom(self.domain, codomain, self.pairs)
