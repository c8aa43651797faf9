"""Spherical t-designs as optimal exact designs for spherical harmonic regression."""

__version__ = "0.1.0"

from .catalog import lower_bound, platonic, polar_nodes, product_design, ProductDesignSpec
from .construct import ConstructOptions, ConstructOutcome, minimize, objective, refine
from .cubature import StrengthReport, monomial_check, monomial_integral, residuals, strength
from .designio import parse, write
from .harmonics import assoc_legendre, basis_vector, real_sph_harm
from .kernels import BACKEND
from .optimality import (
    CoefficientVector,
    CriteriaReport,
    InformationMatrix,
    check_result,
    criteria,
    fit,
    information_matrix,
    simulate,
)
from .sphere import Design, SpherePoint, from_angles, from_vector, random_design
from .stereogram import project, render

__all__ = [
    "BACKEND",
    "CoefficientVector",
    "ConstructOptions",
    "ConstructOutcome",
    "CriteriaReport",
    "Design",
    "InformationMatrix",
    "ProductDesignSpec",
    "SpherePoint",
    "StrengthReport",
    "assoc_legendre",
    "basis_vector",
    "check_result",
    "criteria",
    "fit",
    "from_angles",
    "from_vector",
    "information_matrix",
    "lower_bound",
    "minimize",
    "monomial_check",
    "monomial_integral",
    "objective",
    "parse",
    "platonic",
    "polar_nodes",
    "product_design",
    "project",
    "random_design",
    "real_sph_harm",
    "refine",
    "render",
    "residuals",
    "simulate",
    "strength",
    "write",
]
