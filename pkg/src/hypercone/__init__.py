"""Uniform hyperbolicity of finite SL(2,R) families over subshifts.

A library and CLI that decides uniform hyperbolicity of matrix pairs over
the full 2-shift, certifies tuples over general subshifts of finite type via
multicone inclusions, computes core arc systems and their combinatorial
shadow (monotonic correspondences and winding numbers), searches for
boundary witnesses, and conjugates trace-bounded tuples into a compact
entry range.
"""

from .projgeom import ArcP1, MultiCone, ProjPoint, cross_ratio, hilbert_dist
from .sl2core import (CanonicalPair, Mat2, MatClass, c1_bound, canonical_form,
                      classify, invariant_dirs, normalize_tuple)
from .symdyn import RateReport, Sft, hyperbolicity_rate, periodic_words, product
from .multicone import (CertifyReport, CoreSet, MulticoneFamily, certify,
                        compute_cores, core_criterion, fatten_cores,
                        single_component_length, tightness)
from .twoshift import (Classification2, Degenerate, EllipticWitness,
                       NonPrincipal, Principal, TraceTriple, classify_pair,
                       fricke, is_free, is_twisted, trace_step_minus,
                       trace_step_plus)
from .fareycomb import (ComponentModel, build_order, component_model,
                        farey_interval, j_of_fword, orbit_words,
                        rotation_orbit_word)
from .corrdyn import (CombMulticone, MonotoneCorr, Morphism,
                      classify_two_morphism, compose, induced_morphism,
                      morphism_hyperbolic, morphism_tight, reduce_tight,
                      validate, winding_comb, winding_matrix)
from .witness import (BoundaryReport, best_heteroclinic, diagnose_boundary,
                      search_elliptic, search_heteroclinic, search_parabolic)
from .tolerances import DEFAULT, Tolerances

__version__ = "0.1.0"
