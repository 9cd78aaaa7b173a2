# SPDX-License-Identifier: Apache-2.0

"""Group specifications and the catalog of named groups.

Element orderings per kind:

* ``cyclic n``: ``k`` is the k-th power of the generator.
* ``dihedral n`` (order ``2n``): ``k`` is ``r^k`` and ``n + k`` is ``r^k s``.
* ``symmetric n`` / ``alternating n``: permutations of ``0..n-1`` in lexicographic order
  (even ones only for ``alternating``), product ``(p·q)(i) = p(q(i))``.
* ``quaternion``: ``4 * sign + unit`` with units ``1, i, j, k`` and sign ``0`` for ``+``.
* ``klein4``: ``a·b = a xor b``.
* ``table``: as given.
* ``perm``: breadth-first closure from the identity, generators in listed order.
* ``product``: mixed radix, first factor most significant.
"""

import itertools
import json
import re
from functools import lru_cache
from math import factorial

import numpy as np

from mackey_bisets.exception import GroupSpecError, InputError, OrderCapError
from mackey_bisets.group.core import FiniteGroup, as_cayley_table
from mackey_bisets.group.cosets import centralizer, enumerate_subgroups
from mackey_bisets.settings import L, ORDER_CAP
from mackey_bisets.util import load_json_arg, to_str, validate

_POSITIVE = {"type": "integer", "minimum": 1}

GROUP_SPEC_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "definitions": {
        "spec": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {
                    "enum": [
                        "cyclic",
                        "dihedral",
                        "symmetric",
                        "alternating",
                        "quaternion",
                        "klein4",
                        "table",
                        "perm",
                        "product",
                    ]
                }
            },
            "allOf": [
                {
                    "if": {"properties": {"kind": {"enum": ["cyclic", "dihedral", "symmetric"]}}},
                    "then": {"required": ["n"], "properties": {"n": _POSITIVE}},
                },
                {
                    "if": {"properties": {"kind": {"const": "alternating"}}},
                    "then": {
                        "required": ["n"],
                        "properties": {"n": {"type": "integer", "minimum": 2}},
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "table"}}},
                    "then": {
                        "required": ["table"],
                        "properties": {
                            "table": {
                                "type": "array",
                                "minItems": 1,
                                "items": {
                                    "type": "array",
                                    "items": {"type": "integer", "minimum": 0},
                                },
                            }
                        },
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "perm"}}},
                    "then": {
                        "required": ["degree", "generators"],
                        "properties": {
                            "degree": _POSITIVE,
                            "generators": {
                                "type": "array",
                                "items": {
                                    "type": "array",
                                    "items": {"type": "integer", "minimum": 0},
                                },
                            },
                        },
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "product"}}},
                    "then": {
                        "required": ["factors"],
                        "properties": {
                            "factors": {
                                "type": "array",
                                "minItems": 1,
                                "items": {"$ref": "#/definitions/spec"},
                            }
                        },
                    },
                },
            ],
        }
    },
    "$ref": "#/definitions/spec",
}

_NAME_RE = re.compile(r"^(?:(C|D|S|A)(\d+)|(Q8)|(V4))$")


def validate_spec(spec):
    """Validate a GroupSpec dict against :data:`GROUP_SPEC_SCHEMA`."""
    return validate(spec, GROUP_SPEC_SCHEMA, GroupSpecError, what="group spec")


def group_from_name(name):
    """Translate a catalog shorthand into a GroupSpec dict.

    Accepts ``C<n>``, ``D<n>`` (order ``2n``), ``S<n>``, ``A<n>``, ``Q8``, ``V4`` and
    ``x``-joined products such as ``C2xC2`` or ``C2xS3``.
    """
    parts = name.strip().split("x")
    if len(parts) > 1:
        return {"kind": "product", "factors": [group_from_name(p) for p in parts]}
    match = _NAME_RE.match(parts[0])
    if match is None:
        raise GroupSpecError(f"Unknown group name {name!r}")
    letter, n, quaternion, klein = match.groups()
    if quaternion:
        return {"kind": "quaternion"}
    if klein:
        return {"kind": "klein4"}
    kind = {"C": "cyclic", "D": "dihedral", "S": "symmetric", "A": "alternating"}[letter]
    return {"kind": kind, "n": int(n)}


def parse_group_arg(value):
    """GroupSpec dict from a dict, a JSON string or a catalog shorthand."""
    if isinstance(value, dict):
        return validate_spec(value)
    value = value.strip()
    if value.startswith("{") or value.startswith("@"):
        try:
            return validate_spec(load_json_arg(value))
        except InputError as e:
            raise GroupSpecError(str(e)) from e
    return group_from_name(value)


def spec_label(spec):
    """Short human readable label of a spec."""
    kind = spec["kind"]
    if kind == "product":
        return "x".join(spec_label(s) for s in spec["factors"])
    if kind in ("cyclic", "dihedral", "symmetric", "alternating"):
        return f"{kind[0].upper()}{spec['n']}"
    if kind == "quaternion":
        return "Q8"
    if kind == "klein4":
        return "V4"
    if kind == "perm":
        return f"perm{spec['degree']}"
    return f"table{len(spec['table'])}"


def _check_cap(order, what):
    if order > ORDER_CAP:
        raise OrderCapError(f"{what} has order {order} > cap {ORDER_CAP}")


def _cyclic_table(n):
    idx = np.arange(n)
    return np.add.outer(idx, idx) % n


def _dihedral_table(n):
    k = np.arange(2 * n)
    rot, flip = k % n, k // n
    # r^a s^f · r^b s^g = r^(a + (-1)^f b) s^(f + g)
    sign = np.where(flip == 0, 1, -1)
    new_rot = (rot[:, None] + sign[:, None] * rot[None, :]) % n
    new_flip = (flip[:, None] + flip[None, :]) % 2
    return new_flip * n + new_rot


def _table_from_perms(perms):
    """Cayley table of a list of permutations closed under composition."""
    perms = np.asarray(perms, dtype=np.int64)
    order, degree = perms.shape
    weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
    codes = perms @ weights
    sorter = np.argsort(codes)
    table = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        # row a: p_a ∘ p_b for every b
        composed = perms[a][perms] @ weights
        table[a] = sorter[np.searchsorted(codes, composed, sorter=sorter)]
    return table


def _permutation_table(n, even_only=False):
    size = factorial(n) // (2 if even_only and n > 1 else 1)
    _check_cap(size, f"{'A' if even_only else 'S'}{n}")
    perms = [p for p in itertools.permutations(range(n)) if not even_only or _is_even(p)]
    return _table_from_perms(perms)


def _is_even(perm):
    seen, transpositions = set(), 0
    for start in range(len(perm)):
        if start in seen:
            continue
        length, i = 0, start
        while i not in seen:
            seen.add(i)
            i = perm[i]
            length += 1
        transpositions += length - 1
    return transpositions % 2 == 0


# (sign, unit) products of the quaternion units 1, i, j, k
_UNIT_PRODUCTS = [
    [(0, 0), (0, 1), (0, 2), (0, 3)],
    [(0, 1), (1, 0), (0, 3), (1, 2)],
    [(0, 2), (1, 3), (1, 0), (0, 1)],
    [(0, 3), (0, 2), (1, 1), (1, 0)],
]


def _quaternion_table():
    table = np.empty((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            sign, unit = _UNIT_PRODUCTS[a % 4][b % 4]
            table[a, b] = 4 * ((sign + a // 4 + b // 4) % 2) + unit
    return table


def _klein4_table():
    idx = np.arange(4)
    return np.bitwise_xor.outer(idx, idx)


def _perm_closure_table(degree, generators):
    identity = tuple(range(degree))
    gens = []
    for gen in generators:
        if sorted(gen) != list(identity):
            raise GroupSpecError(f"{gen} is not a permutation of 0..{degree - 1}")
        gens.append(tuple(gen))
    index = {identity: 0}
    perms = [identity]
    head = 0
    while head < len(perms):
        x = perms[head]
        head += 1
        for s in gens:
            y = tuple(x[i] for i in s)
            if y not in index:
                index[y] = len(perms)
                perms.append(y)
                _check_cap(len(perms), f"closure of {generators}")
    return _table_from_perms(perms)


def _product_table(tables):
    table = tables[0]
    for other in tables[1:]:
        n1, n2 = table.shape[0], other.shape[0]
        _check_cap(n1 * n2, "direct product")
        # ((a1, a2), (b1, b2)) -> T1[a1, b1] * n2 + T2[a2, b2]
        table = (
            np.add.outer(table * n2, other).transpose(0, 2, 1, 3).reshape(n1 * n2, n1 * n2)
        )
    return table


def _spec_table(spec):
    kind = spec["kind"]
    if kind == "cyclic":
        _check_cap(spec["n"], "cyclic group")
        return _cyclic_table(spec["n"]), False
    if kind == "dihedral":
        _check_cap(2 * spec["n"], "dihedral group")
        return _dihedral_table(spec["n"]), False
    if kind == "symmetric":
        return _permutation_table(spec["n"]), False
    if kind == "alternating":
        return _permutation_table(spec["n"], even_only=True), False
    if kind == "quaternion":
        return _quaternion_table(), False
    if kind == "klein4":
        return _klein4_table(), False
    if kind == "table":
        return spec["table"], True
    if kind == "perm":
        return _perm_closure_table(spec["degree"], spec["generators"]), False
    if kind == "product":
        built = [_spec_table(f) for f in spec["factors"]]
        tables = [as_cayley_table(t) for t, _ in built]
        return _product_table(tables), any(check for _, check in built)
    raise GroupSpecError(f"Unknown group kind {kind!r}")


@lru_cache(maxsize=64)
def _build_cached(canonical):
    spec = json.loads(canonical)
    table, check = _spec_table(spec)
    group = FiniteGroup(table, label=spec_label(spec), check_associativity=check)
    L.debug("Built %s of order %d", group.label, group.order)
    return group


def build_group(spec):
    """Build a :class:`FiniteGroup` from a GroupSpec dict.

    Identical specs return the same instance, so subgroups built from separate calls compare
    equal.

    Raises:
        GroupSpecError: malformed spec.
        GroupTableError: explicit table violating the group axioms.
        OrderCapError: generated group larger than ``MACKEY_ORDER_CAP``.
    """
    validate_spec(spec)
    return _build_cached(to_str(spec))


def cayley_invariants(group):
    """Isomorphism invariants: order, element orders, center order, abelian flag, subgroups."""
    return {
        "order": group.order,
        "element_orders": sorted(group.element_order(a) for a in range(group.order)),
        "center_order": centralizer(group.full, group.full).order,
        "abelian": group.is_abelian,
        "subgroup_count": len(enumerate_subgroups(group)),
    }
