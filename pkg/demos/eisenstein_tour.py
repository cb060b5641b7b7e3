"""
Group-ring valued Eisenstein series
===================================

A hand-built abstract setting over Z/2 x Z/3 with p = 3, its Eisenstein
series, Hecke operators, the ordinary projector and constant terms.
"""

from etnc.eisenstein.constant_terms import CuspData, const_term_olW_derived, const_term_olW_direct
from etnc.eisenstein.expansions import eisenstein_series, hecke_T, modified_olW1
from etnc.eisenstein.family import family_U_action, ordinary_projector
from etnc.eisenstein.ideals import IdealIndex
from etnc.eisenstein.setting import ArithmeticSetting, SettingPrime
from etnc.groups import FiniteAbelianGroup, Subgroup

G = FiniteAbelianGroup((2, 3), (1, 0))
P3 = Subgroup(G, [(0, 1)])
C2 = Subgroup(G, [(1, 0)])
T = G.trivial_subgroup()

s = ArithmeticSetting(G, 3, [
    SettingPrime("p1", 3, P3, (0, 1), True, 2),
    SettingPrime("q1", 7, C2, (0, 1), False, 1),
    SettingPrime("q2", 13, P3, (1, 0), False, 1),
    SettingPrime("t1", 2, T, (1, 1), False, 0)], IdealIndex({"p1": 2, "q1": 1, "q2": 1}))
print("P =", s.P, " n_p =", s.n_p())

# E_1 and its eigenvalue under T_t1
E = eisenstein_series(s, 1, bound=40)
TE = hecke_T(E, "t1")
eigen = s.proj(s.frob("t1")) + s.A.one()
print("T_t1 E_1 = (Psi(t1) + 1) E_1:", TE.agrees_with(E.scale(eigen).truncate(TE.bound)))

W = modified_olW1(s, bound=40)
for a in (IdealIndex(), IdealIndex.prime("t1"), IdealIndex.prime("q2")):
    print("c(", a, ") =", W.coeff(a))

# The U_p matrix on a two-member family, and its ordinary projector
s2 = ArithmeticSetting(G, 3, [
    SettingPrime("p1", 3, T, (0, 1), True, 0),
    SettingPrime("q1", 7, C2, (0, 1), False, 1),
    SettingPrime("t1", 2, T, (1, 1), False, 0)], IdealIndex({"q1": 1}))
fam = family_U_action(s2, "p1", S=frozenset({"q1"}))
print("U =", fam["U"], "inverse checked:", fam["inverse_ok"])
e_ord, steps = ordinary_projector(s2, fam["U"], 20)
print("e_ord after", steps, "steps:", e_ord)

# Constant terms at a cusp in C_inf: direct formula against the derived one
cusp = CuspData(s.level)
for psi in s.psi_characters():
    print(const_term_olW_direct(s, psi, cusp) == const_term_olW_derived(s, psi, cusp))
