"""Exact group-ring arithmetic for Stickelberger elements, Fitting ideals and Eisenstein series."""

from .dirichlet import DirichletCharacter, generalized_bernoulli, l_value, minus_class_number
from .fitting import PresentedHom, PresentedModule, fitting_ideal, fitting_of_hom, module_order
from .group_ring import GroupRing, GroupRingElement, character_idempotent, chi_component, try_invert
from .groups import Character, FiniteAbelianGroup, Subgroup
from .rings import QQ, ZZ, cyclotomic_field, integers_mod, unramified_ring
from .stickelberger import CyclotomicExtension, PlaceData, euler_factor, stickelberger_element
from .verify import Config, VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "FiniteAbelianGroup", "Subgroup", "Character", "GroupRing", "GroupRingElement",
    "character_idempotent", "chi_component", "try_invert",
    "QQ", "ZZ", "cyclotomic_field", "integers_mod", "unramified_ring",
    "PresentedModule", "PresentedHom", "fitting_ideal", "fitting_of_hom", "module_order",
    "DirichletCharacter", "generalized_bernoulli", "l_value", "minus_class_number",
    "CyclotomicExtension", "PlaceData", "euler_factor", "stickelberger_element",
    "Config", "VerificationReport", "run_suite",
]
