# SPDX-License-Identifier: Apache-2.0

"""Settings."""

import logging
import logging.config
import os
from pathlib import Path

DEBUG = os.getenv("DEBUG", None)
LOGGING_CFG = Path("logging.cfg")
if LOGGING_CFG.exists():
    logging.config.fileConfig(LOGGING_CFG, disable_existing_loggers=False)
logging.getLogger("luigi-interface").setLevel(
    logging.DEBUG if os.getenv("DEBUG_LUIGI", None) else logging.WARNING
)
L = logging.getLogger("mackey_bisets")
L.setLevel(logging.DEBUG if DEBUG else logging.INFO)

# groups generated from permutations or products refuse to grow past this order
ORDER_CAP = int(os.getenv("MACKEY_ORDER_CAP", "10080"))

# default seed for sampled sweeps
SEED = int(os.getenv("MACKEY_SEED", "0"))

# counterexamples kept per check report
MAX_FAILURES = int(os.getenv("MACKEY_MAX_FAILURES", "20"))

# random pullback squares checked by full M1
M1_SQUARES = int(os.getenv("MACKEY_M1_SQUARES", "20"))

# groups used by the acceptance sweeps
EXHAUSTIVE_GROUPS = ("C6", "S3", "D4", "Q8", "C2xC2")
SAMPLED_GROUPS = ("A4", "S4")
MACKEY_GROUPS = ("C6", "S3", "D4", "Q8", "A4")
FUNCTORIALITY_GROUPS = ("S3", "D4")
FACTORIZATION_GROUPS = ("S3", "D4")
INVOLUTION_GROUPS = ("S3", "D4", "Q8")
LEMMA_GROUPS = ("S3", "D4")
CLOSURE_GROUPS = ("D4",)
PULLBACK_MAX_ORDER = 12
# one group per isomorphism type up to PULLBACK_MAX_ORDER, the dicyclic group as permutations
PULLBACK_GROUPS = (
    "C1",
    "C2",
    "C3",
    "C4",
    "V4",
    "C5",
    "C6",
    "S3",
    "C7",
    "C8",
    "C2xC4",
    "C2xC2xC2",
    "D4",
    "Q8",
    "C9",
    "C3xC3",
    "C10",
    "D5",
    "C11",
    "C12",
    "C2xC6",
    "D6",
    "A4",
    '{"kind": "perm", "degree": 7, "generators": [[1, 2, 0, 3, 4, 5, 6], [0, 2, 1, 4, 5, 6, 3]]}',
)

REPORT_JSON = "report.json"
