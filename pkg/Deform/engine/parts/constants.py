# 실행 기본값
DEFAULT_DIM = 64
DEFAULT_TOL = 1e-12
DEFAULT_TAU_MAX = 10.0
DEFAULT_STEPS = 401
DEFAULT_ALPHA = 0.8

# 급수 및 상태 절단
Q_LIMIT_WIDTH = 1e-8
SERIES_TOL = 1e-14
STATE_TOL = 1e-14
MAX_SERIES_TERMS = 20000
SERIES_TERMS_CEILING = 1_000_000
EIGENVALUE_TOL = 1e-10
HERMITIAN_TOL = 1e-14
DIMENSION_PADDING = 8
BAND_GROWTH_DIMS = (16, 32, 64)

# 검증 격자
CLOSURE_QS = (0.5, 1.0, 1.2, 2.0)
CLOSURE_INDEX_MAX = 4
BINOMIAL_QS = (1.2, 2.0)
POWER_LAW_QS = (0.5, 1.2, 2.0)
MULTICOMMUTATOR_INDEX_MAX = 3
MULTICOMMUTATOR_DEPTH = 6
SCALING_QS = (1.2, 2.0)
SCALING_COLUMNS = (0, 1, 3)
SCALING_INDICES = ((1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2))
NORMAL_ORDER_QS = (0.5, 1.0, 1.2, 2.0)
NORMAL_ORDER_M_MAX = 5
NORMAL_ORDER_N_MAX = 3
RELATION_QS = (0.5, 1.0, 1.2, 2.0)
RELATION_XS = (0.1, 0.5, 1.0, 2.0)
RELATION_M_MAX = 5
ISO_RATIOS = (1.0, 5.0, 10.0, 100.0)
ISO_NS = (1, 2, 3, 4)
ISO_DEPTH = 6
ISO_TIME_MAX = 1.0
ISO_TIME_STEPS = 101
ORACLE_Q = 1.2
ORACLE_OMEGA1 = 10.0
ORACLE_OMEGA2 = 1.0
ORACLE_INDEX_MAX = 3
BRIDGE_Q_OFFSET = 1e-9
BRIDGE_OMEGA = 1.0

# 허용 오차
CLOSURE_TOLERANCE = 1e-10
MULTICOMMUTATOR_TOLERANCE = 1e-9
CONSISTENCY_TOLERANCE = 1e-12
SCALING_TOLERANCE = 1e-9
COLLAPSE_TOLERANCE = 1e-9
NORMAL_ORDER_TOLERANCE = 1e-9
RELATION_TOLERANCE = 1e-10
ISOMORPHISM_TOLERANCE = 1e-12
ORACLE_TOLERANCE = 1e-8
CLOSED_FORM_TOLERANCE = 1e-10
BRIDGE_TOLERANCE = 1e-6
