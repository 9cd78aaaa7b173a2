# SPDX-License-Identifier: Apache-2.0

"""Finite groups given by Cayley tables, subgroups and cosets."""

from .catalog import build_group, group_from_name, parse_group_arg
from .core import FiniteGroup, GroupHom, Subgroup
