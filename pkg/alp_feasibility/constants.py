"""
Constants Module: Centralizes static names, markers and exit codes.
"""

# ==========================================
# RESERVED NAMES
# ==========================================

# The time parameter in both text formats
K_SYMBOL = "K"

# Auxiliary identifiers are "_" + letter (+ index); user names may not start with "_"
AUX_PREFIX = "_"
AUX_E = "_e"
AUX_F = "_f"
AUX_Y = "_y"
AUX_Z = "_z"
AUX_W = "_w"

# ==========================================
# FILES
# ==========================================

ALP_SUFFIX = ".alp"
MANIFEST_NAME = "manifest.json"
BENCH_CSV_NAME = "bench.csv"
BENCH_SUMMARY_NAME = "summary.json"


def case_file_name(index: int) -> str:
    """1-based case index -> deterministic file name."""
    return f"case_{index:04d}{ALP_SUFFIX}"


# ==========================================
# EXIT CODES
# ==========================================

EXIT_FEASIBLE = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

# ==========================================
# TEXT OPERATORS
# ==========================================

UNICODE_OPERATORS = {"≤": "<=", "≥": ">=", "≠": "!="}
