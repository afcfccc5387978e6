"""Modeling, optimization, synthesis, and verification of qubit-multiplexed
quantum oracles for systems of Boolean equations."""

from .asdt import (
    BuildSpec,
    BuildTrace,
    CapacityExceeded,
    InvalidSpec,
    NodeClass,
    build,
    capacity,
    classify,
    is_saturated_tree,
)
from .baselines import (
    LimitExceeded,
    OptimalityCertificate,
    WcycleInfeasible,
    WcycleSpec,
    build_wcycle,
    enumerate_valid_trees,
    min_leaf_cost,
)
from .boolsys import (
    AnfPoly,
    BooleanSystem,
    GenerationFailed,
    Monomial,
    QubitCollision,
    VariableCountTooLarge,
    encode_indicator,
    generate,
    generate_planted,
    solutions,
)
from .circuit import Circuit, Gate, depth, gate_count, inverse, peephole
from .cost import CostExpr, CostModel, evaluate_closed_form, evaluate_postorder, leaf_cost_units
from .lowering import DecompositionPlan, InsufficientAncilla, decompose
from .revsim import (
    BasisState,
    UnsupportedGate,
    VerificationReport,
    WidthTooLarge,
    apply_basis,
    apply_statevector,
    grover_run,
    verify_oracle,
)
from .synth import (
    LeafAssignment,
    QubitLayout,
    SizeMismatch,
    allocate,
    assign_leaves,
    grover_diffuser,
    synthesize,
    synthesize_lowered,
)
from .tree import (
    HrseTree,
    NodeAttr,
    StructuralError,
    TreeMetrics,
    ValidationReport,
    metrics,
    validate,
)

__version__ = "0.1.0"
