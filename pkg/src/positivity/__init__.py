"""Positive realness and external positivity of SISO rational transfer functions."""

__version__ = "0.1.0"

from .errors import (DegenerateInput, GridMismatch, ImproperInput,  # noqa: E402
                     NoWitnessExists, ParseError, PoleOnAxis, PositivityError)
from .poly import Polynomial, nonneg_on_halfline, poly_eval, poly_mul, poly_roots  # noqa: E402
from .xfer import (TransferFunction, decompose_biproper, freq_response,  # noqa: E402
                   poles_with_residues, realpart_even_poly, relative_degree,
                   tf_inverse, tf_new)
from .realize import (InputSpec, Signal, StateSpace, impulse_response,  # noqa: E402
                      io_energy, matrix_exponential, simulate, to_state_space)
from .posreal import (is_positive_real, is_positive_real_discrete,  # noqa: E402
                      is_strictly_positive_real)
from .extpos import (Certificate, PositivityVerdict, Status,  # noqa: E402
                     check_external_positivity, coefficient_sign_sufficient,
                     construct_negativity_witness, impulse_min_on_horizon)
from .discretize import (check_ep_preservation, check_pr_discretization,  # noqa: E402
                         markov_parameters, zoh_discretize)
from .parse import format_tf, parse_input_spec, parse_tf_text  # noqa: E402
from .report import AnalysisReport, analyze  # noqa: E402

__all__ = [
    "DegenerateInput", "GridMismatch", "ImproperInput", "NoWitnessExists", "ParseError", "PoleOnAxis",
    "PositivityError",
    "Polynomial", "nonneg_on_halfline", "poly_eval", "poly_mul", "poly_roots",
    "TransferFunction", "decompose_biproper", "freq_response", "poles_with_residues", "realpart_even_poly",
    "relative_degree", "tf_inverse", "tf_new",
    "InputSpec", "Signal", "StateSpace", "impulse_response", "io_energy", "matrix_exponential", "simulate",
    "to_state_space",
    "is_positive_real", "is_positive_real_discrete", "is_strictly_positive_real",
    "Certificate", "PositivityVerdict", "Status", "check_external_positivity", "coefficient_sign_sufficient",
    "construct_negativity_witness", "impulse_min_on_horizon",
    "check_ep_preservation", "check_pr_discretization", "markov_parameters", "zoh_discretize",
    "format_tf", "parse_input_spec", "parse_tf_text",
    "AnalysisReport", "analyze",
]
