"""Kodaira fibres as configuration graphs, their contractions, and fundamental cycles."""

from .lattice import (
    IntersectionMatrix,
    MatrixError,
    affine_matrix,
    dynkin_matrix,
    laufer_fundamental_cycle,
    laufer_steps,
    multiplicities_from_matrix,
    null_space,
)
from .config import (
    N_BOUND,
    Component,
    ConfigError,
    FibreConfig,
    Realization,
    concurring_lines,
    config_isomorphic,
    contract,
    cusp_with_line,
    enumerate_contractions,
    find_isomorphism,
    kodaira_config,
    kodaira_types,
    realizable_any,
    realizable_as_contraction,
)
from .dot import emit_dot, to_dot
