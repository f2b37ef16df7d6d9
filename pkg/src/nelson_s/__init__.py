"""Proof checkers, finite-algebra checks and model search for Nelson's logic S.

Modules: ``formula`` (syntax), ``calculus_s`` and ``calculus_sp`` (proof
checkers), ``algebra`` (finite algebras and class checks), ``algebraizer``
(calculus to algebra conditions), ``model_search`` (enumeration,
countermodels), ``n4`` (N4/N3-lattices), ``demos`` and ``cli``.
"""
from __future__ import annotations

from .algebra import FiniteAlgebra, check_cibrl, check_s_prime, to_s_algebra, to_s_prime
from .algebraizer import check_s_def34, compile_calculus
from .calculus_s import check_proof
from .calculus_sp import check_proof_sp, deduction_transform
from .formula import Lang, parse, to_text
from .kernels import BACKEND
from .model_search import enumerate_class, find_countermodel
from .n4 import N4Algebra, check_n3, check_n4_lattice

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FiniteAlgebra",
    "Lang",
    "N4Algebra",
    "check_cibrl",
    "check_n3",
    "check_n4_lattice",
    "check_proof",
    "check_proof_sp",
    "check_s_def34",
    "check_s_prime",
    "compile_calculus",
    "deduction_transform",
    "enumerate_class",
    "find_countermodel",
    "parse",
    "to_s_algebra",
    "to_s_prime",
    "to_text",
]
