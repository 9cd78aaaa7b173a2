# SPDX-License-Identifier: Apache-2.0

"""The Burnside category, its additive completion and G-sets."""
