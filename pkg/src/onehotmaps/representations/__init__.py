"""Client-side input representations and moduli selection."""

from ._classmap import ClassMap
from ._crt import CrtBasis, crt_combine, find_crt_basis, prime_power_factors, small_primes
from ._encode import (
    BinaryRep,
    CrtRep,
    Encoded,
    GreaterMap,
    NumericResidues,
    OneHotMap,
    binary_width,
    decode,
    encode,
    greater_map_of,
)
from ._hier import (
    HierBasis,
    HierCrtRep,
    HierNode,
    build_hier_basis,
    decode_hier,
    encode_hier,
    split_modulus,
)

__all__ = [
    "BinaryRep",
    "ClassMap",
    "CrtBasis",
    "CrtRep",
    "Encoded",
    "GreaterMap",
    "HierBasis",
    "HierCrtRep",
    "HierNode",
    "NumericResidues",
    "OneHotMap",
    "binary_width",
    "build_hier_basis",
    "crt_combine",
    "decode",
    "decode_hier",
    "encode",
    "encode_hier",
    "find_crt_basis",
    "greater_map_of",
    "prime_power_factors",
    "small_primes",
    "split_modulus",
]
