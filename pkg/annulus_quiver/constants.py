SERVICE_NAME = 'annulus_quiver'

MIN_PERIPHERAL_GAP = 2
ORACLE_WINDOW_FACTOR = 4  # oracle covers canonical free indices in [-4(n+1), 4(n+1)]

DEFAULT_MAX_LEVEL = 8
DEFAULT_G = 3
DEFAULT_H = 2
DEFAULT_M = 1

OUTER_SUFFIX = 'o'
INNER_SUFFIX = 'i'

IOTA_0 = 'iota_0'
KAPPA_0 = 'kappa_0'
IOTA_INF = 'iota_inf'
KAPPA_INF = 'kappa_inf'
CONNECTING_FAMILIES = (IOTA_0, KAPPA_0, IOTA_INF, KAPPA_INF)

DOT_ELEMENTARY_STYLE = 'solid'
DOT_LONG_STYLE = 'dashed'
DOT_TAU_STYLE = 'dotted'

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
