# SPDX-License-Identifier: Apache-2.0

"""Custom luigi parameters."""

import luigi

from mackey_bisets.group.catalog import parse_group_arg
from mackey_bisets.util import to_str


class GroupSpecParameter(luigi.Parameter):
    """GroupSpec given as a catalog name (``S3``, ``C2xC2``) or GroupSpec JSON."""

    def normalize(self, x):
        """Normalize to a validated GroupSpec dict."""
        return parse_group_arg(x)

    def serialize(self, x):
        """Canonical JSON with sorted keys."""
        return to_str(x)
