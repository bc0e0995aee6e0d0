"""Information storage measures for discrete input-driven processes.

Estimates local and average active information storage, its
input-corrected variant, and interaction information from symbol
sequences, and computes the same quantities exactly from the stationary
distribution of the composite input/unit Markov chain.
"""

from .symseq import (
    Alphabet,
    BINARY,
    EmbeddingConfig,
    JointCountTable,
    SymbolSeries,
    count_joint,
    embed,
    marginalize,
)
from .estimators import (
    Distribution,
    conditional_entropy,
    conditional_mutual_information,
    entropy,
    mutual_information,
    plugin_distribution,
)
from .infodyn import (
    LocalProfile,
    MeasureResult,
    MEASURES,
    ais,
    compute,
    ensemble_average,
    icais,
    interaction,
    local_ais,
    local_icais,
    local_interaction,
    sweep_k,
)
from .procsim import (
    ConvergenceError,
    ForwardingUnit,
    MarkovChainModel,
    ProcessSpec,
    TableUnit,
    Unit,
    UnitSpec,
    XorMemoryUnit,
    build_joint_chain,
    exact_joint,
    generate_input,
    make_unit,
    oracle_joint,
    simulate_unit,
    stationary_distribution,
    stationary_from_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BINARY",
    "ConvergenceError",
    "Distribution",
    "EmbeddingConfig",
    "ForwardingUnit",
    "JointCountTable",
    "LocalProfile",
    "MEASURES",
    "MarkovChainModel",
    "MeasureResult",
    "ProcessSpec",
    "SymbolSeries",
    "TableUnit",
    "Unit",
    "UnitSpec",
    "XorMemoryUnit",
    "ais",
    "build_joint_chain",
    "compute",
    "conditional_entropy",
    "conditional_mutual_information",
    "count_joint",
    "embed",
    "ensemble_average",
    "entropy",
    "exact_joint",
    "generate_input",
    "icais",
    "interaction",
    "local_ais",
    "local_icais",
    "local_interaction",
    "make_unit",
    "marginalize",
    "mutual_information",
    "oracle_joint",
    "plugin_distribution",
    "simulate_unit",
    "stationary_distribution",
    "stationary_from_matrix",
    "sweep_k",
]
