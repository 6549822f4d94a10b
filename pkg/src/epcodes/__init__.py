"""Erasure and error coding for interleaved array codes over GF(2^b).

The package builds binary extension fields, nested Reed-Solomon row
codes, and array codes whose weighted row combinations fall into
progressively deeper subcodes.  On top of those sit transpose duality,
iterative row-column decoding, balanced parity layouts, product-code
distance bounds with optimal constructions, combined error-erasure
decoding, and a Monte Carlo reliability harness.  The cli module
exposes the lot as the epcodes command.
"""

from .gf import (AopReducible, ContextMismatch, DivisionByZero, FieldContext,
                 FieldError, ReducibleModulus, build_aop_field, build_field,
                 default_field, smallest_aop_prime)
from .rs import LengthExceedsOrder, RsCode, build_rs
from .linalg import ParityMatrix
from .eii import (DecodeReport, EiiCode, HasErasures, Profile, ProfileError,
                  SymbolGrid, WrongDataLength, build_eii, make_profile,
                  row_correctable)
from .layout import (BALANCED, TAIL, ParityLayout, balanced_layout,
                     encode_balanced, iterative_decode, tail_layout,
                     transpose_code, transpose_grid, transpose_profile)
from .epc import (EmptyRange, EpcParams, FieldTooSmall, OrderTooSmall,
                  ParameterOutOfRange, TooLarge, distance_bound, epc_params,
                  exhaustive_min_distance, global_parity_matrix,
                  global_parity_required_degree, lrc_bound,
                  matrix_erasure_decode, optimal_two_level_code,
                  power_matrix_det_degree, two_global_parity_matrix)
from .errmode import (CORRECTED, FAILED_BOTH, FAILED_ROWS, ErrorDecodeReport,
                      decode_errors_erasures)
from .sim import (DecoderModel, SimResult, birthday_expected, correctable,
                  correction_probability, mean_erasures_to_failure)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith('_')]
