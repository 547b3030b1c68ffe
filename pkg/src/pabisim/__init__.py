"""Bisimulation quotients, their lattices, and normal forms for finite PA."""

from .automaton import (
    TAU,
    Automaton,
    Isomorphism,
    Transition,
    canonical_form,
    disjoint_union,
    find_isomorphism,
    is_quotient,
    is_rescaled,
    isomorphic,
    quotient,
    reachable_fraction,
    rescale,
)
from .bisim import BisimKind, BisimReport, bisimilar, coarsest_partition
from .dist import EMPTY, ClassDist, SubDist, dirac, lift_holds, make_subdist, minus, oplus, scale, tv_distance
from .lattice import (
    LatticeReport,
    QuotientSet,
    align,
    extreme_points,
    join,
    leq,
    meet,
    normal_form,
    strong_normal_form,
    verify_lattice,
    weak_normal_form,
)
from .lp import FeasibilityResult, LinearSystem, feasible, in_convex_hull
from .pafile import PaDocument, dumps, export_dot, load, parse, serialize
from .partition import Partition
from .semantics import EPSILON, TransitionQuery, class_project, strong_match, weak_match

__version__ = "0.1.0"
