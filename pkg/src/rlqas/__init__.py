"""RL-driven quantum architecture search with topology and cut constraints."""

from .circuits import (
    Circuit,
    CircuitMetrics,
    Gate,
    apply_gate,
    circuit_from_json,
    circuit_metrics,
    circuit_to_json,
    init_state,
    simulate,
    simulate_batch,
)
from .connectivity import (
    CutPartition,
    TopologyGraph,
    allowed_edges,
    enumerate_connected_topologies,
    enumerate_cuts,
    load_topology,
    topology_catalog,
)
from .dqn import (
    AdamOptimizer,
    AgentHyperparams,
    QNetwork,
    ReplayBuffer,
    Transitions,
    ddqn_targets,
    epsilon_at,
    select_action,
    sync_target,
    train_step,
)
from .env import (
    CHEMICAL_ACCURACY,
    Action,
    CircuitEnv,
    CurriculumState,
    EpisodeRecord,
    build_action_space,
    compute_reward,
    decode_observation,
    encode_observation,
    record_success,
    update_threshold,
)
from .hamiltonian import (
    PauliHamiltonian,
    PauliString,
    bundled_names,
    bundled_path,
    exact_ground_energy,
    expectation,
    expectation_batch,
    load_hamiltonian,
    load_reference_energy,
)
from .orchestrator import (
    ExperimentConfig,
    RunSummary,
    aggregate_runs,
    load_config,
    probability_of_success,
    report_from_logs,
    run_agent_cut,
    run_agent_topo,
    run_full,
    run_qas,
    select_best_topology,
)
from .vqe import VqeResult, parameter_shift_gradient, vqe_minimize

__version__ = "0.1.0"
