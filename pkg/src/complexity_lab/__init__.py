"""Numerical laboratory for the geometry of unitary walks: phase-invariant
distances, ball volumes and packings, moment operators and design
Hamiltonians, circuit and stochastic-Hamiltonian walk samplers, brute-force
gate complexity, and composite equidistribution/recurrence experiments."""

from . import cli, complexity, ensembles, experiments, geometry, graphs, moments, qmath, seeding
from .complexity import (ComplexityResult, Enumeration, GateWord, WordNet,
                         WordTable, complexity_state, complexity_unitary,
                         enumerate_words, low_complexity_packing,
                         stability_check)
from .ensembles import (CircuitArchitecture, GateSet, SLHIncrementBasis,
                        WalkTrace, builtin_gateset, load_gateset, save_gateset,
                        slh_increment_basis, slh_paths, slh_step, walk)
from .experiments import (ConditionalProfile, EquidCertificate,
                          RecurrenceReport, SaturationScan, StabilityReport,
                          certify_equidistribution,
                          conditional_recurrence_profile, run_recurrence,
                          saturation_window_scan, slh_stability_test)
from .geometry import (MCVolume, PackingResult, VolumeBounds, annulus_bound,
                       arc_cdf, clopper_pearson, covering_number_exact,
                       greedy_packing, mc_ball_volume, overlap_pdf,
                       packing_number_exact, szarek_bounds, vol_state_ball)
from .moments import (BoundInputs, DesignHamiltonian, GapReport,
                      MomentOperator, design_depth_formulas,
                      design_hamiltonian, equid_gap_threshold,
                      equid_time_bounds, gap_lower_bound_path_coupling,
                      gap_lower_bound_poly, haar_moment_projector,
                      mc_moment_operator, rqc_step_moment_operator,
                      spectral_gap)
from .qmath import (PhaseSet, PureState, Unitary, UnitaryChannel,
                    distance_state, distance_unitary, eigenphases, haar_state,
                    haar_unitary, shortest_arc)
from .seeding import substream

__version__ = "0.1.0"
