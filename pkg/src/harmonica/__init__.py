"""Harmonic morphisms and harmonic group actions on finite multigraphs."""

from ._kernel import BACKEND
from .action import (
    ActionGroup,
    Automorphism,
    HarmonicityCertificate,
    automorphism_group,
    build_automorphism,
    generate_group,
    is_harmonic_action,
    is_harmonic_action_by_definition,
    quotient,
    subgroups,
)
from .census import CensusReport, enumerate_graphs, max_harmonic_order, run_census
from .covers import derived_cover, homology_voltages, lift_automorphism, macbeath, spanning_tree, voltage_assignment
from .errors import (
    BudgetExceeded,
    HarmonicaError,
    HarmonicaInputError,
    ParseError,
    TheoremViolation,
)
from .morphism import COLLAPSED, GraphMorphism, build_morphism, compose, degree, is_harmonic, multiplicities
from .multigraph import MultiGraph, are_isomorphic, build_graph, canonical_key, genus
from .ramification import (
    RamificationProfile,
    classify_branch_locus,
    classify_branch_vector,
    profile,
    verify_riemann_hurwitz,
)

__version__ = "0.1.0"
