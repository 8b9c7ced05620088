"""onehotmaps - One-hot map conversions and comparisons on a simulated SIMD HE scheme."""

from ._config import Settings, load_settings, parse_profile, settings_from_dict
from ._version import __version__
from .bench import (
    run_comparator_suite,
    run_comparator_suite_async,
    run_num2onehot,
    run_num2onehot_async,
    run_shadow_bounds,
    run_tradeoff,
    run_tradeoff_async,
)
from .comparators import (
    bitvec_equal,
    bitvec_equal_complex,
    bitvec_equal_xorsum,
    eq_approx,
    ge_via_maps,
    range_check,
    zero_test,
)
from .conversions import (
    binary_to_one_hot,
    binary_to_one_hot_lanes,
    build_shadow_tree,
    crt_to_one_hot,
    crt_to_one_hot_packed,
    greater_map_from_one_hot,
    hier_crt_to_one_hot,
    lagrange_denominators,
    numeric_to_one_hot_alg1,
    numeric_to_one_hot_alg2,
    numeric_to_one_hot_naive,
    one_hot_to_binary,
    one_hot_to_crt,
    one_hot_to_numeric,
    shadow_bounds,
)
from .exceptions import (
    ConfigError,
    ContextMismatchError,
    CrtBasisError,
    DepthBudgetError,
    FixedPointOverflowError,
    OneHotMapsError,
    RepresentationError,
    ShapeError,
)
from .models import (
    ArithmeticProfile,
    BenchRecord,
    Conversion,
    CostLedger,
    CostWeights,
    EqConfig,
    Orientation,
    ProfileMode,
    RepresentationKind,
    SplitRule,
)
from .packing import TileShape, TileTensor, pack, unpack
from .representations import (
    ClassMap,
    CrtBasis,
    HierBasis,
    build_hier_basis,
    decode,
    encode,
    find_crt_basis,
)
from .simd import CipherVec, HeContext, PlainVec

__all__ = [
    "__version__",
    # Simulator
    "CipherVec",
    "HeContext",
    "PlainVec",
    # Representations
    "ClassMap",
    "CrtBasis",
    "HierBasis",
    "build_hier_basis",
    "decode",
    "encode",
    "find_crt_basis",
    # Conversions
    "binary_to_one_hot",
    "binary_to_one_hot_lanes",
    "build_shadow_tree",
    "crt_to_one_hot",
    "crt_to_one_hot_packed",
    "greater_map_from_one_hot",
    "hier_crt_to_one_hot",
    "lagrange_denominators",
    "numeric_to_one_hot_alg1",
    "numeric_to_one_hot_alg2",
    "numeric_to_one_hot_naive",
    "one_hot_to_binary",
    "one_hot_to_crt",
    "one_hot_to_numeric",
    "shadow_bounds",
    # Comparators
    "bitvec_equal",
    "bitvec_equal_complex",
    "bitvec_equal_xorsum",
    "eq_approx",
    "ge_via_maps",
    "range_check",
    "zero_test",
    # Packing
    "TileShape",
    "TileTensor",
    "pack",
    "unpack",
    # Experiments
    "run_comparator_suite",
    "run_comparator_suite_async",
    "run_num2onehot",
    "run_num2onehot_async",
    "run_shadow_bounds",
    "run_tradeoff",
    "run_tradeoff_async",
    # Configuration
    "Settings",
    "load_settings",
    "parse_profile",
    "settings_from_dict",
    # Models
    "ArithmeticProfile",
    "BenchRecord",
    "Conversion",
    "CostLedger",
    "CostWeights",
    "EqConfig",
    "Orientation",
    "ProfileMode",
    "RepresentationKind",
    "SplitRule",
    # Exceptions
    "ConfigError",
    "ContextMismatchError",
    "CrtBasisError",
    "DepthBudgetError",
    "FixedPointOverflowError",
    "OneHotMapsError",
    "RepresentationError",
    "ShapeError",
]
