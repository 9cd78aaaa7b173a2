# SPDX-License-Identifier: Apache-2.0

"""Mackey bisets."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("mackey-bisets")
except PackageNotFoundError:  # running from a source checkout
    __version__ = "0.0.0"
