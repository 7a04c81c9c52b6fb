"""Shallow-shadow tomography and shadow-based training of variational circuits.

The package splits into:

- linalg:      statevector simulation, Pauli strings, Pauli-basis transforms
- clifford:    exact 2-qubit Clifford tableaus (enumeration, sampling, dense)
- brickwork:   the randomizing circuit ensemble and its batched simulation
- channel:     the measurement channel's Pauli weights and its inverse
- mps:         tensor-network state and operator backends
- shadows:     snapshot acquisition, shadow estimators, sample planning
- ansatz:      the ALA / MERA / HEA / TTN circuit families
- costs:       state-preparation and gate-synthesis objectives
- optimize:    SPSA and Powell with evaluation traces and strict budgets
- experiments: seeded end-to-end runs and budget sweeps
- store, cli:  persistence format and the command-line workbench
"""
from .ansatz import AnsatzDescriptor, build_ansatz, crossing_metric, vectorize_unitary
from .brickwork import BrickworkCircuit, BrickworkLayout
from .budget import BudgetExhaustedError, BudgetLedger
from .channel import PatternWeightTable, channel_mpo, monte_carlo_weight, pattern_weights
from .clifford import CliffordTableau2, enumerate_clifford2, sample_uniform_clifford2
from .costs import CostFunction, exact_cost, shadow_cost, shot_cost
from .experiments import ExperimentConfig, run_experiment
from .linalg import PauliString, expectation, haar_random_state, measure_standard_basis
from .optimize import PowellConfig, SpsaConfig, powell_minimize, spsa_minimize
from .shadows import (
    SamplePlan,
    ShadowSet,
    Snapshot,
    acquire_snapshots,
    estimate_expectation,
    materialize_dense,
    materialize_mps,
    median_of_means,
    plan_samples,
)

__version__ = "0.1.0"
