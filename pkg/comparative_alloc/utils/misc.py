EPS = 1e-12

# every output file starts with this comment line, followed by the config digest
PROVENANCE_PREFIX = "# comparative_alloc config_digest="

# default scenario: 90 MHz channel at 3.75 GHz, 60 kHz spacing, 125 blocks of 12 subcarriers
DEFAULT_SUBCARRIER_COUNT = 1500
DEFAULT_SUBCARRIER_SPACING = 60e3
DEFAULT_BLOCK_SIZE = 12
DEFAULT_CENTER_FREQUENCY = 3.75e9
DEFAULT_THRESHOLD = 1.1

# exhaustive enumeration refuses larger instances
ENUMERATION_GUARD = 20


class ExitStatus:
    SUCCESS = 0
    VALIDATION_FAILURE = 2
    DEGENERATE_INPUT = 3
    GUARD_REFUSAL = 4
    INVARIANT_VIOLATION = 5
