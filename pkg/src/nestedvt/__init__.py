"""Nested VT codes for the chop-and-shuffle channel."""

from .bits import (
    ERASURE,
    Bits,
    Ternary,
    bits_from_text,
    bits_to_text,
    ternary_from_text,
    ternary_to_text,
)
from .channel_sim import (
    ChannelParams,
    Fragment,
    FragmentSet,
    alpha_to_p,
    capacity,
    chop,
    chop_and_shuffle,
    shuffle,
)
from .erasure_code import ErasureConfig, UnrecoverableErasures, ec_decode, ec_encode
from .nested_codec import encode_nested, strip_nested, verify_all_conditions
from .nested_layout import (
    LayerSpec,
    PositionMatrix,
    RateBounds,
    codeword_span,
    encoding_rate,
    layer_lengths,
    position_matrix,
    rate_bounds,
)
from .reassembler import (
    Candidate,
    DecodeOutcome,
    SearchConfig,
    brute_force_oracle,
    declare_error,
    decode_search,
    is_helpful,
    overlap,
)
from .residues import ResidueScheme, all_zero, distinct, fixed, residue_for
from .vt_core import (
    VtParams,
    build_parity,
    check_vt,
    encode_vt,
    parity_length,
    parity_length_sloane,
    strip_parity,
    syndrome,
)

__all__ = [
    "ERASURE",
    "Bits",
    "Ternary",
    "bits_from_text",
    "bits_to_text",
    "ternary_from_text",
    "ternary_to_text",
    "ChannelParams",
    "Fragment",
    "FragmentSet",
    "alpha_to_p",
    "capacity",
    "chop",
    "chop_and_shuffle",
    "shuffle",
    "ErasureConfig",
    "UnrecoverableErasures",
    "ec_decode",
    "ec_encode",
    "encode_nested",
    "strip_nested",
    "verify_all_conditions",
    "LayerSpec",
    "PositionMatrix",
    "RateBounds",
    "codeword_span",
    "encoding_rate",
    "layer_lengths",
    "position_matrix",
    "rate_bounds",
    "Candidate",
    "DecodeOutcome",
    "SearchConfig",
    "brute_force_oracle",
    "declare_error",
    "decode_search",
    "is_helpful",
    "overlap",
    "ResidueScheme",
    "all_zero",
    "distinct",
    "fixed",
    "residue_for",
    "VtParams",
    "build_parity",
    "check_vt",
    "encode_vt",
    "parity_length",
    "parity_length_sloane",
    "strip_parity",
    "syndrome",
    "__version__",
]

__version__ = "0.1.0"
