"""Exact repetitiveness measures (smallest attractor, BMS, SLP) via weighted CNF."""

from minrep.text import Text, SubstringRef, MinimalSubstringSet
from minrep.cnf import Formula, FormulaStats
from minrep.solve import SolveResult, solve, check_assignment, default_backend
from minrep.attractor import AttractorSet, compute_gamma, verify_attractor
from minrep.bms import BmsScheme, compute_b, verify_bms
from minrep.slp import Slp, compute_g, verify_slp
from minrep.witness import Witness, load_witness, make_witness, save_witness, \
    verify_witness

__all__ = [
    "Text",
    "SubstringRef",
    "MinimalSubstringSet",
    "Formula",
    "FormulaStats",
    "SolveResult",
    "solve",
    "check_assignment",
    "default_backend",
    "AttractorSet",
    "compute_gamma",
    "verify_attractor",
    "BmsScheme",
    "compute_b",
    "verify_bms",
    "Slp",
    "compute_g",
    "verify_slp",
    "Witness",
    "load_witness",
    "make_witness",
    "save_witness",
    "verify_witness",
]
