# SPDX-License-Identifier: Apache-2.0

"""Bifree bisets: standard representations, realization, composition and factorization."""

from .standard import CanonicalKey, StandardRep, canonical_key, transpose
