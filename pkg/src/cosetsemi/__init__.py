"""Coset semigroups K(G), K1(G) of finite groups and the units of their completions."""
from .catalog import Catalog, default_catalog, load_catalog
from .completion import build_A_G, full_completion, units_bruteforce
from .cosets import FULL, NONTRIVIAL, Coset, CosetSemigroup, build_coset_semigroup
from .errors import (
    AxiomError,
    BudgetExceeded,
    CapExceeded,
    CosetSemiError,
    Degenerate,
    HypothesisFailed,
    NotNormal,
    ParseError,
    SearchTimeout,
    UnknownSuite,
)
from .group import FiniteGroup, build_group
from .isomorphism import group_isomorphic
from .lattice import SubgroupLattice, enumerate_subgroups
from .mingraph import build_gamma, predicted_J
from .report import Report
from .semigroup_iso import semigroup_isomorphic
from .suites import Options, describe_group, reconstruction_pairs, run_suite

__all__ = [
    "AxiomError", "BudgetExceeded", "CapExceeded", "Catalog", "Coset", "CosetSemiError", "CosetSemigroup",
    "Degenerate", "FULL", "FiniteGroup", "HypothesisFailed", "NONTRIVIAL", "NotNormal", "Options", "ParseError",
    "Report", "SearchTimeout", "SubgroupLattice", "UnknownSuite", "build_A_G", "build_coset_semigroup",
    "build_gamma", "build_group", "default_catalog", "describe_group", "enumerate_subgroups", "full_completion",
    "group_isomorphic", "load_catalog", "predicted_J", "reconstruction_pairs", "run_suite",
    "semigroup_isomorphic", "units_bruteforce",
]
