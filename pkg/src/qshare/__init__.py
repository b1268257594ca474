"""Exact simulation and brute-force verification of quantum secret sharing."""

from .polycode import CodeParams, decode_subset, encode
from .scheme import (
    SchemeSpec,
    SharedState,
    build_threshold,
    bundle,
    discard,
    reconstruct,
    split,
    split_entangled,
)
from .verify import Encoding, full_report

__all__ = [
    "CodeParams",
    "Encoding",
    "SchemeSpec",
    "SharedState",
    "build_threshold",
    "bundle",
    "decode_subset",
    "discard",
    "encode",
    "full_report",
    "reconstruct",
    "split",
    "split_entangled",
]
__version__ = "0.1.0"
