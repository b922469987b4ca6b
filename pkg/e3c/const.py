"""Constants for the exchanged 3-ary cube toolkit."""
from typing import Final

# Package identity
DOMAIN: Final = "e3c"
VERSION: Final = "0.4.0"

# Alphabet
RADIX: Final = 3
MAX_RADIX: Final = 10

# Edge classes, indexed by the d-label whose free block they change (E0 changes d)
EDGE_E0: Final = "E0"
EDGE_E1: Final = "E1"
EDGE_E2: Final = "E2"
EDGE_E3: Final = "E3"

# Subcube classes: L holds d=0 (free C), M holds d=1 (free B), R holds d=2 (free A)
SUBCUBE_L: Final = "L"
SUBCUBE_M: Final = "M"
SUBCUBE_R: Final = "R"

# Bound table: case index -> per-subcase (blocks summed, offset).
# A term ("st", 7) reads s + t + 7.
BOUND_TABLE: Final[dict[int, tuple[tuple[str, int], ...]]] = {
    1: (("t", 6), ("t", 6), ("t", 6)),
    2: (("s", 6), ("s", 6), ("s", 6)),
    3: (("st", 7), ("st", 7), ("st", 5)),
    4: (("r", 6), ("r", 6), ("r", 6)),
    5: (("rt", 7), ("rt", 5), ("rt", 7)),
    6: (("rs", 5), ("rs", 7), ("rs", 7)),
    7: (("rst", 4), ("rst", 4), ("rst", 4)),
    8: (("", 7), ("", 7), ("", 7)),
    9: (("t", 6), ("t", 6), ("t", 8)),
    10: (("s", 6), ("s", 8), ("s", 6)),
    11: (("st", 7), ("st", 7), ("st", 7)),
    12: (("r", 8), ("r", 6), ("r", 6)),
    13: (("rt", 7), ("rt", 7), ("rt", 7)),
    14: (("rs", 7), ("rs", 7), ("rs", 7)),
    15: (("rst", 6), ("rst", 6), ("rst", 6)),
}

# Subcase numbering for d != d' (ordered so that d < d')
SUBCASE_BY_DPAIR: Final[dict[tuple[int, int], int]] = {(0, 1): 1, (0, 2): 2, (1, 2): 3}

# Construction strategies recorded on every path system
STRATEGY_RECIPE: Final = "recipe"
STRATEGY_VARIANT: Final = "recipe-variant"
STRATEGY_FLOW_REPAIR: Final = "flow-repair"

# Sampling and budgets
DEFAULT_SEED: Final = 42
DEFAULT_TRIALS: Final = 1000
DEFAULT_ROUTE_SAMPLE: Final = 10_000
DEFAULT_FAULT_BUDGET: Final = 10**7
DEFAULT_VERTEX_BUDGET: Final = 3**9

# Modes
MODE_EXHAUSTIVE: Final = "exhaustive"
MODE_SAMPLED: Final = "sampled"
MODES: Final = [MODE_EXHAUSTIVE, MODE_SAMPLED]

# Output formats
FORMAT_EDGE_LIST: Final = "edge-list"
FORMAT_DOT: Final = "dot"
FORMAT_JSON: Final = "json"
FORMATS: Final = [FORMAT_EDGE_LIST, FORMAT_DOT, FORMAT_JSON]

# DOT edge colours per class
DOT_COLORS: Final = {
    EDGE_E0: "black",
    EDGE_E1: "red",
    EDGE_E2: "blue",
    EDGE_E3: "darkgreen",
}

# Subcommands
CMD_GEN: Final = "gen"
CMD_METRICS: Final = "metrics"
CMD_ROUTE: Final = "route"
CMD_VERIFY: Final = "verify"
CMD_FAULT: Final = "fault"
CMD_CONNECTIVITY: Final = "connectivity"

# Exit codes
EXIT_OK: Final = 0
EXIT_VERIFICATION_FAILED: Final = 1
EXIT_USAGE: Final = 2
EXIT_BUDGET: Final = 3

# Verdicts
VERDICT_PASS: Final = "PASS"
VERDICT_FAIL: Final = "FAIL"
UNREACHABLE: Final = "unreachable"
