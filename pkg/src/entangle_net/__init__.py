"""Entanglement dynamics of double Jaynes-Cummings networks."""

from .double_jc import ModelParams, PreparedState
from .entanglement import XState, concurrence, concurrence_x
from .multimode import BathParams, IntegrationError, steady_concurrence, steady_state_pair
from .tavis import (
    coefficient_set,
    min_entanglement_sweep,
    rho_pair_cross,
    rho_pair_same,
    tavis_unitary,
    v_operator,
)

__version__ = "0.1.0"

__all__ = [
    "BathParams",
    "IntegrationError",
    "ModelParams",
    "PreparedState",
    "XState",
    "coefficient_set",
    "concurrence",
    "concurrence_x",
    "min_entanglement_sweep",
    "rho_pair_cross",
    "rho_pair_same",
    "steady_concurrence",
    "steady_state_pair",
    "tavis_unitary",
    "v_operator",
]
