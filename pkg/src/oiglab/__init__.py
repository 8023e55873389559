"""One-inclusion graphs, Hall density and optimal transductive learners."""
from fractions import Fraction

from .classes import (HypothesisClass, gen_cantor, gen_full, gen_random, load_class, make_class,
                      restrict, save_class)
from .exceptions import (CapExceededError, InfeasibleError, InvalidClassError, InvalidSampleError,
                         OIGError, OrientationMismatchError)
from .hall import degeneracy, hall_complexity, hall_density, hall_density_brute, hall_density_flow
from .oig import OneInclusionGraph, bipartite_view, build_agnostic_oig, build_oig, export
from .orientation import (FractionalOrientation, Orientation, in_degree, learner_table, out_degree,
                          verify_coorientation, verify_orientation)
from .solvers import (extract_regularizer, flow_orient, kcore_orient, kl_regularizer_value,
                      maxent_brute_primal, maxent_sampler, maxent_solve)
from .transduct import (TransductiveLearner, cantor_failure_demo, error_rate, induced_orientation,
                        transductive_error)
from .estimators import FlowLearner, KCoreLearner, MaxEntLearner

__version__ = "0.1.0"
