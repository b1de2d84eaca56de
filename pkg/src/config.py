import os
from typing import Any, Dict, List

from dotenv import load_dotenv

load_dotenv()  # load variables from .env


def _get_bool(env_name: str, default: bool) -> bool:
    value = os.getenv(env_name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


def _get_list(env_name: str, default: str) -> List[str]:
    raw = os.getenv(env_name, default)
    return [part.strip() for part in raw.split(",") if part.strip()]


FORMAT_VERSION = "1"

# ---------------------------------------------------------------------------
# Analysis limits
# ---------------------------------------------------------------------------

MAX_PATHS = int(os.getenv("AE_MAX_PATHS", "1000000"))
MAX_ORDERINGS = int(os.getenv("AE_MAX_ORDERINGS", "10000000"))
ORDERING_LIST_LIMIT = int(os.getenv("AE_ORDERING_LIST_LIMIT", "20"))
EXTENSIONAL_PRIME_BOUND = int(os.getenv("AE_EXTENSIONAL_PRIME_BOUND", "10007"))

# "audience" (chords inherit the target tag) or "minimal" (meet of the two sides)
CHORD_TAG_POLICY = os.getenv("AE_CHORD_TAG_POLICY", "audience").strip().lower()

# ---------------------------------------------------------------------------
# Protocol generator defaults
# ---------------------------------------------------------------------------

DEFAULT_PRIME = int(os.getenv("AE_DEFAULT_PRIME", "11"))
DEFAULT_ROOT = int(os.getenv("AE_DEFAULT_ROOT", "2"))
DEFAULT_EAVESDROPPERS = _get_list("AE_EAVESDROPPERS", "E")
DEFAULT_EXPONENTS = [3, 4, 7, 9, 13, 17, 19, 23, 29, 31]

EXPOSURE_ALERTS_ENABLED = _get_bool("AE_EXPOSURE_ALERTS_ENABLED", True)

ALGEBRA_BACKENDS: Dict[str, Dict[str, Any]] = {
    "modexp": {
        "enabled": _get_bool("AE_BACKEND_MODEXP_ENABLED", True),
        "module": "algebra.modexp",
        "label": "Modular exponentiation (DH_p)",
    },
    "matrix_monoid": {
        "enabled": _get_bool("AE_BACKEND_MATRIX_MONOID_ENABLED", True),
        "module": "algebra.matrix_monoid",
        "label": "Matrix monoid over Z_n",
    },
}
