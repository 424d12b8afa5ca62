"""Simplicity of the Lie algebra [L(G), L(G)] of a Leavitt path algebra."""

from .algebra import (Element, LeavittAlgebra, Monomial, Path, WorkLimitExceeded,
                      brute_force_commutator_vertex_span, commutator, degree_components,
                      multiply, s0_s1_split, star, vertex_part)
from .expr import parse_element
from .fields import FieldSpec, Mod, Q, solve_in_span
from .graph import (Graph, every_cycle_has_exit, hereditary_saturated_closure,
                    induced_subgraph, is_balloon, is_fiber, is_lpa_simple,
                    is_points_and_loops, minimal_hereditary_saturated, parse_graph,
                    weak_components)
from .simplicity import (SimplicityVerdict, balloon_sum_condition, commutator_vertex_basis,
                         decide_lie_simple, vertex_combo_in_commutators)
from .verify import verify_certificate

__version__ = "0.1.0"
