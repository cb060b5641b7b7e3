"""Group-ring valued Eisenstein series over abstract arithmetic settings."""

from .constant_terms import (
    CuspData,
    TauLaurent,
    const_term_olW_derived,
    const_term_olW_direct,
    const_term_W,
    eisenstein_constant_term,
    theta_sharp_closed,
    theta_sharp_value,
)
from .determinant import check_tw1_coeff, t_determinant_identity
from .expansions import (
    DEFAULT_BOUND,
    QExpansion,
    eisenstein_series,
    hecke_T,
    hecke_U,
    level_raise,
    modified_olW1,
    modified_W_k,
)
from .family import FamilyError, family_U_action, ordinary_projector
from .ideals import IdealIndex, ideals_up_to
from .setting import ArithmeticSetting, FieldView, SettingError, SettingPrime
from .units import y_unit_report

__all__ = [
    "ArithmeticSetting", "SettingPrime", "SettingError", "FieldView", "IdealIndex", "ideals_up_to",
    "QExpansion", "DEFAULT_BOUND", "eisenstein_series", "modified_W_k", "modified_olW1",
    "hecke_T", "hecke_U", "level_raise", "FamilyError", "family_U_action", "ordinary_projector",
    "CuspData", "TauLaurent", "eisenstein_constant_term", "const_term_W", "const_term_olW_direct",
    "const_term_olW_derived", "theta_sharp_value", "theta_sharp_closed",
    "check_tw1_coeff", "t_determinant_identity", "y_unit_report",
]
