# SPDX-License-Identifier: Apache-2.0

"""Additive completion: matrices of Burnside-category morphisms between tuples of subgroups."""

from dataclasses import dataclass

from mackey_bisets.category.morphism import BisetMorphism, hom_compose, tau_morphism
from mackey_bisets.exception import AmbientMismatchError


@dataclass(frozen=True)
class MatrixMorphism:
    """``target × source`` grid; entry ``(i, j)`` maps ``source[j]`` to ``target[i]``."""

    source: tuple
    target: tuple
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != len(self.target) or any(
            len(row) != len(self.source) for row in self.entries
        ):
            raise AmbientMismatchError(
                f"entry grid does not match {len(self.target)}x{len(self.source)}"
            )
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if entry.source != self.source[j] or entry.target != self.target[i]:
                    raise AmbientMismatchError(f"entry ({i}, {j}) has the wrong endpoints")

    @classmethod
    def from_rows(cls, source, target, rows):
        """Build from nested lists."""
        return cls(tuple(source), tuple(target), tuple(tuple(row) for row in rows))

    @classmethod
    def zero(cls, source, target):
        """All-zero matrix."""
        return cls.from_rows(
            source, target, [[BisetMorphism.zero(s, t) for s in source] for t in target]
        )

    @classmethod
    def identity(cls, objects):
        """Identity morphisms on the diagonal."""
        objects = tuple(objects)
        rows = [list(row) for row in cls.zero(objects, objects).entries]
        for i, s in enumerate(objects):
            rows[i][i] = BisetMorphism.identity(s)
        return cls.from_rows(objects, objects, rows)

    @classmethod
    def single(cls, morphism):
        """``1 × 1`` matrix."""
        return cls.from_rows((morphism.source,), (morphism.target,), [[morphism]])

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def __add__(self, other):
        return matrix_add(self, other)

    def __matmul__(self, other):
        return matrix_compose(self, other)

    @property
    def shape(self):
        """``(len(target), len(source))``."""
        return len(self.target), len(self.source)

    def to_json(self):
        """Endpoint lists and the 2-D array of morphisms."""
        return {
            "source": [s.to_list() for s in self.source],
            "target": [t.to_list() for t in self.target],
            "entries": [list(row) for row in self.entries],
        }


def matrix_add(a, b):
    """Entry-wise sum."""
    if a.source != b.source or a.target != b.target:
        raise AmbientMismatchError("matrices have different endpoint tuples")
    return MatrixMorphism.from_rows(
        a.source,
        a.target,
        [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a.entries, b.entries)],
    )


def matrix_compose(b, a):
    """``b ∘ a`` with ``hom_add`` and ``hom_compose`` as the ring operations."""
    if b.source != a.target:
        raise AmbientMismatchError("cannot compose matrices over different middle tuples")
    rows = []
    for i, t in enumerate(b.target):
        row = []
        for j, s in enumerate(a.source):
            total = BisetMorphism.zero(s, t)
            for k in range(len(a.target)):
                if b.entries[i][k].is_zero or a.entries[k][j].is_zero:
                    continue
                total = total + hom_compose(b.entries[i][k], a.entries[k][j])
            row.append(total)
        rows.append(row)
    return MatrixMorphism.from_rows(a.source, b.target, rows)


def tau_matrix(m):
    """Apply ``τ`` to every entry and transpose the grid."""
    return MatrixMorphism.from_rows(
        m.target,
        m.source,
        [
            [tau_morphism(m.entries[i][j]) for i in range(len(m.target))]
            for j in range(len(m.source))
        ],
    )


def direct_sum(*matrices):
    """Block-diagonal matrix."""
    source = tuple(s for m in matrices for s in m.source)
    target = tuple(t for m in matrices for t in m.target)
    rows = [[BisetMorphism.zero(s, t) for s in source] for t in target]
    row_offset = col_offset = 0
    for m in matrices:
        for i, row in enumerate(m.entries):
            for j, entry in enumerate(row):
                rows[row_offset + i][col_offset + j] = entry
        row_offset += len(m.target)
        col_offset += len(m.source)
    return MatrixMorphism.from_rows(source, target, rows)
