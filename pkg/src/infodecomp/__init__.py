"""Information decomposition over finite joint pmfs.

Common-information measures (Gacs-Korner, Wyner), partial-information
atoms, intrinsic/union/synergy optimizations, zero-error private
information, and the conditional information bottleneck.  All values in
bits.
"""

from ._kernels import USE_NUMBA
from .core_prob import (Alphabet, InfoValueError, JointPMF,
                        PMFValidationError, conditional_mutual_information,
                        condition, dump_pmf, entropy, format_pmf,
                        joint_entropy, load_pmf, marginalize,
                        mutual_information, parse_pmf_text)
from .info_lattice import (LatticeError, Partition, SampleSpace,
                           check_distributivity, equivalent, is_richer, join,
                           meet, one_block, partition_entropy,
                           pmf_to_partitions, singletons)
from .common_info import (BipartiteGraph, Channel, MDCDecomposition,
                          OptReport, bipartite_graph, check_ci_ordering,
                          common_rv, gk_common_information,
                          gk_common_information_k, is_perfectly_resolvable,
                          is_zic, mdc_decompose,
                          min_assisted_common_information,
                          residual_information, wyner_common_information)
from .pid import (PIDAtoms, RedundancyMeasure, check_wb_axioms,
                  conditional_gk, consistency_residual, condgk_consistency_residual,
                  find_consistency_witness, gk_redundancy,
                  gk_redundancy_measure, pid_atoms, unique_from_cmi,
                  unique_from_conditional_gk, unique_from_intrinsic)
from .secrecy_opt import (intrinsic_grid_oracle, intrinsic_information,
                          lockability_bound_check, synergy_gk,
                          union_grid_oracle, union_information)
from .zero_error import (CharacteristicGraph, Coloring, characteristic_graph,
                         chromatic_color, chromatic_number, greedy_color,
                         hexner_yo_private, is_proper, witsenhausen_private)
from .bottleneck import (BottleneckSolution, beta_sweep, cib_optimize,
                         four_variable_joint)
from .battery import (Expectation, NamedDistribution, corpus_dir,
                      corpus_distributions, corpus_pmf, make_and_gate,
                      make_bsc, make_cond_independent, make_copy_both,
                      make_decomposable, make_figure2, make_hexner_yo,
                      make_random, make_typewriter_pair, make_xor,
                      run_expectations, verify_corpus, write_corpus)

__version__ = "0.1.0"
