# SPDX-License-Identifier: Apache-2.0

"""Mackey data: values on subgroups plus restriction, induction and conjugation maps."""

import re
from dataclasses import dataclass, field

from mackey_bisets.exception import AbelianGroupError, GroupSpecError, MissingMapError
from mackey_bisets.group.catalog import build_group, parse_group_arg
from mackey_bisets.group.cosets import enumerate_subgroups
from mackey_bisets.mackey.abelian import AbHom, FgAbelianGroup
from mackey_bisets.util import parse_subgroup_label, subgroup_label, validate

_LABEL = r"\[[0-9, ]*\]"
_RES_IND_RE = re.compile(rf"^(res|ind):({_LABEL})<({_LABEL})$")
_CON_RE = re.compile(rf"^con:(\d+),({_LABEL})$")

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

MACKEY_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["group", "M", "maps"],
    "properties": {
        "group": {"type": "object"},
        "M": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
            },
        },
        "maps": {"type": "object", "additionalProperties": _MATRIX},
    },
}


@dataclass(frozen=True, eq=False)
class MackeyData:
    """Generator form of a Mackey functor on a finite group.

    ``values[H]`` is ``M(H)``; ``res[(H, K)]: M(K) → M(H)`` and ``ind[(H, K)]: M(H) → M(K)``
    for ``H ≤ K``; ``con[(g, H)]: M(H) → M(H^g)``.
    """

    group: object
    spec: dict
    values: dict
    res: dict = field(default_factory=dict)
    ind: dict = field(default_factory=dict)
    con: dict = field(default_factory=dict)

    @property
    def subgroups(self):
        """Every subgroup of the group, in canonical order."""
        return enumerate_subgroups(self.group)

    def value(self, subgroup):
        """``M(H)``."""
        try:
            return self.values[subgroup]
        except KeyError as e:
            raise MissingMapError(f"no value for {subgroup_label(subgroup)}") from e

    def restriction(self, H, K):
        """``res^K_H``."""
        try:
            return self.res[(H, K)]
        except KeyError as e:
            raise MissingMapError(f"res:{subgroup_label(H)}<{subgroup_label(K)}") from e

    def induction(self, H, K):
        """``ind^K_H``."""
        try:
            return self.ind[(H, K)]
        except KeyError as e:
            raise MissingMapError(f"ind:{subgroup_label(H)}<{subgroup_label(K)}") from e

    def conjugation(self, g, H):
        """``con(g, H)``."""
        try:
            return self.con[(g, H)]
        except KeyError as e:
            raise MissingMapError(f"con:{g},{subgroup_label(H)}") from e

    def missing(self):
        """Labels of required entries that are absent."""
        absent = []
        subs = self.subgroups
        absent.extend(subgroup_label(H) for H in subs if H not in self.values)
        for K in subs:
            for H in subs:
                if not H.is_subgroup_of(K):
                    continue
                if (H, K) not in self.res:
                    absent.append(f"res:{subgroup_label(H)}<{subgroup_label(K)}")
                if (H, K) not in self.ind:
                    absent.append(f"ind:{subgroup_label(H)}<{subgroup_label(K)}")
        for H in subs:
            absent.extend(
                f"con:{g},{subgroup_label(H)}"
                for g in range(self.group.order)
                if (g, H) not in self.con
            )
        return absent


def dump_mackey(data):
    """JSON document of :class:`MackeyData`."""
    maps = {}
    for (H, K), hom in data.res.items():
        maps[f"res:{subgroup_label(H)}<{subgroup_label(K)}"] = hom.matrix.tolist()
    for (H, K), hom in data.ind.items():
        maps[f"ind:{subgroup_label(H)}<{subgroup_label(K)}"] = hom.matrix.tolist()
    for (g, H), hom in data.con.items():
        maps[f"con:{g},{subgroup_label(H)}"] = hom.matrix.tolist()
    return {
        "group": data.spec,
        "M": {subgroup_label(H): list(value.factors) for H, value in data.values.items()},
        "maps": maps,
    }


def load_mackey(doc):
    """Parse and validate a MackeyData JSON document.

    Raises:
        GroupSpecError: schema violation, unknown key or malformed subgroup.
        AbelianGroupError: a matrix of the wrong shape or not well defined.
    """
    validate(doc, MACKEY_SCHEMA, GroupSpecError, what="Mackey data")
    spec = parse_group_arg(doc["group"])
    group = build_group(spec)

    def subgroup(label):
        try:
            return group.subgroup(parse_subgroup_label(label))
        except ValueError as e:
            raise GroupSpecError(f"bad subgroup {label!r}: {e}") from e

    values = {subgroup(label): FgAbelianGroup(tuple(f)) for label, f in doc["M"].items()}

    def value(H):
        if H not in values:
            raise GroupSpecError(f"no value for {subgroup_label(H)}")
        return values[H]

    def hom(domain, codomain, matrix, key):
        rows = len(matrix)
        if rows != codomain.rank or any(len(row) != domain.rank for row in matrix):
            raise AbelianGroupError(
                f"{key}: expected a {codomain.rank}x{domain.rank} matrix, got {rows} rows"
            )
        try:
            return AbHom(domain, codomain, matrix)
        except AbelianGroupError as e:
            raise AbelianGroupError(f"{key}: {e}") from e

    res, ind, con = {}, {}, {}
    for key, matrix in doc["maps"].items():
        if match := _RES_IND_RE.match(key):
            kind, H, K = match.group(1), subgroup(match.group(2)), subgroup(match.group(3))
            if not H.is_subgroup_of(K):
                raise GroupSpecError(f"{key}: the first subgroup is not inside the second")
            if kind == "res":
                res[(H, K)] = hom(value(K), value(H), matrix, key)
            else:
                ind[(H, K)] = hom(value(H), value(K), matrix, key)
        elif match := _CON_RE.match(key):
            g, H = int(match.group(1)), subgroup(match.group(2))
            if g >= group.order:
                raise GroupSpecError(f"{key}: {g} is not a group element")
            con[(g, H)] = hom(value(H), value(H.conjugate(g)), matrix, key)
        else:
            raise GroupSpecError(f"unknown map key {key!r}")
    return MackeyData(group, spec, values, res, ind, con)
