"""Flooding dissemination and collection on time-varying digraphs."""

from . import bounds, cords, graph, knowledge, montecarlo, oracle, schedules
from ._kernels import active as _active_kernels
from .bounds import (BoundsReport, bound_windows, bounds_report, expected_knowledge_curve,
                     min_fks_time, phi, proposition_check, tightness_check)
from .cords import Cord, chi_certificates, chi_cycle_check, longest_input_cord, verify_cord
from .errors import (ContractError, DomainError, FloodnetError, InvalidNodeError,
                     InvalidSizeError, SearchLimitError)
from .graph import (GraphSequence, GraphSnapshot, random_cycle_graph, random_sequence,
                    reverse_transpose)
from .knowledge import (KnowledgeState, TerminationView, flood_step, infer_size,
                        initial_state, is_fcs, is_fds, is_fks, run)
from .montecarlo import SweepReport, TrialRecord, run_trial, sweep
from .oracle import BoolMatrix, duality_check, from_snapshot, product_reachability
from .schedules import (Schedule, build_schedule, cp_path_schedule, doubling_schedule,
                        dp_path_schedule, eta_schedule, fixed_cycle_schedule, nu_schedule,
                        psi_schedule, verify_certificates)

__version__ = "0.1.0"
BACKEND = _active_kernels.name
