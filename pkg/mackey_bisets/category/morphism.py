# SPDX-License-Identifier: Apache-2.0

"""Morphisms of the Burnside category: integer combinations of canonical keys."""

from collections import Counter
from dataclasses import dataclass

from mackey_bisets.biset.compose import compose_keys
from mackey_bisets.biset.factor import is_conjugation, is_induction, is_restriction
from mackey_bisets.biset.standard import StandardRep, transpose_key
from mackey_bisets.exception import AmbientMismatchError, BisetError
from mackey_bisets.util import validate

MORPHISM_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["source", "target", "terms"],
    "properties": {
        "source": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "target": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["rep", "coeff"],
                "properties": {"rep": {"type": "object"}, "coeff": {"type": "integer"}},
            },
        },
    },
}


@dataclass(frozen=True)
class BisetMorphism:
    """Element of ``Hom(source, target)``: sorted ``(key, coefficient)`` pairs, no zeros.

    The empty combination is the class of the empty biset.
    """

    source: object
    target: object
    terms: tuple = ()

    @classmethod
    def from_terms(cls, source, target, terms):
        """Build from a ``{key: coefficient}`` mapping, dropping zero coefficients."""
        for key in terms:
            if key.H2 != target.elements or key.H1 != source.elements:
                raise AmbientMismatchError(
                    f"{key} is not over ({target.to_list()}, {source.to_list()})"
                )
        return cls(source, target, tuple(sorted((k, c) for k, c in terms.items() if c != 0)))

    @classmethod
    def from_rep(cls, rep, coeff=1):
        """Single-term morphism of a standard representation."""
        return cls.from_terms(rep.H1, rep.H2, {rep.key: coeff})

    @classmethod
    def identity(cls, subgroup):
        """Class of the identity biset."""
        return cls.from_rep(StandardRep.identity(subgroup))

    @classmethod
    def zero(cls, source, target):
        """Class of the empty biset."""
        return cls(source, target, ())

    @property
    def mapping(self):
        """Terms as a dict."""
        return dict(self.terms)

    @property
    def is_zero(self):
        """``True`` for the empty combination."""
        return not self.terms

    def __add__(self, other):
        return hom_add(self, other)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return hom_add(self, -other)

    def __matmul__(self, other):
        return hom_compose(self, other)

    def __rmul__(self, factor):
        return self.scale(factor)

    def scale(self, factor):
        """Multiply every coefficient by an integer."""
        return BisetMorphism.from_terms(
            self.source, self.target, {k: factor * c for k, c in self.terms}
        )

    def to_json(self):
        """JSON layout with the terms' standard representations."""
        return {
            "source": self.source.to_list(),
            "target": self.target.to_list(),
            "terms": [{"rep": key, "coeff": coeff} for key, coeff in self.terms],
        }

    @classmethod
    def from_json(cls, group, doc):
        """Parse and validate the JSON layout; every term is re-keyed."""
        validate(doc, MORPHISM_SCHEMA, BisetError, what="morphism")
        source, target = group.subgroup(doc["source"]), group.subgroup(doc["target"])
        terms = Counter()
        for term in doc["terms"]:
            rep = StandardRep.from_json(group, term["rep"])
            terms[rep.key] += term["coeff"]
        return cls.from_terms(source, target, terms)


def _check_same_endpoints(a, b):
    if a.source != b.source or a.target != b.target:
        raise AmbientMismatchError(
            f"morphisms have different endpoints: {a.source}->{a.target}, {b.source}->{b.target}"
        )


def hom_add(a, b):
    """Coefficient-wise sum (disjoint union of bisets)."""
    _check_same_endpoints(a, b)
    total = Counter(a.mapping)
    total.update(b.mapping)
    return BisetMorphism.from_terms(a.source, a.target, total)


def hom_compose(b, a):
    """``b ∘ a`` by bilinear extension of the double coset formula."""
    if b.source != a.target:
        raise AmbientMismatchError(f"cannot compose {b.source} with target {a.target}")
    total = Counter()
    for kb, cb in b.terms:
        for ka, ca in a.terms:
            for key, mult in compose_keys(kb.rep, ka.rep).items():
                total[key] += cb * ca * mult
    return BisetMorphism.from_terms(a.source, b.target, total)


def tau_morphism(a):
    """Term-wise transpose with source and target swapped."""
    terms = Counter()
    for key, coeff in a.terms:
        terms[transpose_key(key)] += coeff
    return BisetMorphism.from_terms(a.target, a.source, terms)


def is_in_B(a):  # pylint: disable=invalid-name
    """``True`` if every term is a conjugation biset."""
    return all(is_conjugation(key.rep) for key, _ in a.terms)


def is_restriction_morphism(a):
    """``True`` if every term is a restriction biset."""
    return all(is_restriction(key.rep) for key, _ in a.terms)


def is_induction_morphism(a):
    """``True`` if every term is an induction biset."""
    return all(is_induction(key.rep) for key, _ in a.terms)


def is_isomorphism_morphism(a):
    """``True`` for a single term with coefficient one that is an isomorphism biset."""
    if len(a.terms) != 1 or a.terms[0][1] != 1:
        return False
    rep = a.terms[0][0].rep
    return is_restriction(rep) and is_induction(rep)
