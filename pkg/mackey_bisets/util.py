# SPDX-License-Identifier: Apache-2.0

"""Utils."""

import json
from pathlib import Path

import jsonschema
import numpy as np

from mackey_bisets.exception import InputError


class _Encoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, np.integer):
            return int(o)
        elif isinstance(o, np.floating):
            return float(o)
        elif isinstance(o, np.bool_):
            return bool(o)
        elif isinstance(o, np.ndarray):
            return o.tolist()
        elif isinstance(o, (frozenset, set)):
            return sorted(o)
        elif hasattr(o, "to_json"):
            return o.to_json()
        else:
            return super().default(o)


def to_str(obj, **kwargs):
    """Serialize to a JSON string with sorted keys."""
    kwargs.setdefault("sort_keys", True)
    return json.dumps(obj, cls=_Encoder, **kwargs)


def to_jsonable(obj):
    """Round-trip through the encoder so the result holds only plain JSON types."""
    return json.loads(to_str(obj))


def load_json_arg(value):
    """Parse inline JSON or ``@path`` referring to a JSON file."""
    if isinstance(value, (dict, list)):
        return value
    try:
        if value.startswith("@"):
            return json.loads(Path(value[1:]).read_text(encoding="utf-8"))
        return json.loads(value)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"Can't read JSON input {value!r}: {e}") from e


def validate(instance, schema, error_cls, what="document"):
    """Validate against a JSON schema raising ``error_cls`` with the schema message."""
    try:
        jsonschema.validate(instance, schema)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise error_cls(f"Invalid {what} at '{path}': {e.message}") from e
    return instance


def subgroup_label(subgroup):
    """Compact string form of a subgroup, used as a JSON object key."""
    return "[" + ",".join(str(h) for h in subgroup.elements) + "]"


def parse_subgroup_label(label):
    """Inverse of :func:`subgroup_label`."""
    body = label.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"Malformed subgroup label {label!r}")
    body = body[1:-1].strip()
    return [int(x) for x in body.split(",")] if body else []
