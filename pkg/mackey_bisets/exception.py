# SPDX-License-Identifier: Apache-2.0

"""Exceptions."""


class MackeyBisetsError(Exception):
    """Base exception class."""


class InputError(MackeyBisetsError, ValueError):
    """Unreadable JSON argument or file."""


class GroupSpecError(MackeyBisetsError, ValueError):
    """Malformed group specification."""


class GroupTableError(MackeyBisetsError, ValueError):
    """Cayley table violating the group axioms."""


class OrderCapError(MackeyBisetsError):
    """Generated group exceeds the configured order cap."""


class SubgroupError(MackeyBisetsError, ValueError):
    """Set of elements is not a subgroup, or not inside the required ambient group."""


class HomomorphismError(MackeyBisetsError, ValueError):
    """Map between subgroups is not a homomorphism or not bijective."""


class BisetError(MackeyBisetsError, ValueError):
    """Invalid biset: actions not unital, associative, commuting or free."""


class AmbientMismatchError(MackeyBisetsError, ValueError):
    """Composition or sum of morphisms with mismatched endpoints."""


class GMapError(MackeyBisetsError, ValueError):
    """Invalid G-map witness or incompatible G-maps."""


class AbelianGroupError(MackeyBisetsError, ValueError):
    """Ill-defined homomorphism or unsolvable system over finitely generated abelian groups."""


class MissingMapError(MackeyBisetsError, KeyError):
    """Mackey data lacks a required structure map."""


class NotConjugationBisetError(MackeyBisetsError, ValueError):
    """Biset is not a conjugation biset."""


class NotConjugationInvariantError(MackeyBisetsError):
    """Mackey data is not conjugation invariant, so it does not factor through B(G)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SweepFailure(MackeyBisetsError):
    """A verification sweep found counterexamples."""
