"""
Stickelberger elements for Q(zeta_m)
====================================

L-values at s = 0, the element theta they interpolate, and the
hypotheses that decide whether theta is p-integral.
"""

from etnc.dirichlet import DirichletCharacter, l_value, minus_class_number
from etnc.stickelberger import (
    CyclotomicExtension,
    auxiliary_prime,
    check_hypotheses,
    stickelberger_element,
    theta_integrality,
    theta_values,
)

# Two classical values: L(chi_-4, 0) = 1/2 and L(chi_-3, 0) = 1/3
for m in (4, 3):
    psi = DirichletCharacter.from_index(m, 1)
    print(f"L(chi mod {m}, 0) =", l_value(psi).to_rational())

# Smoothing at 5 multiplies by (1 - 5 psi(5))
print("smoothed at 5:", l_value(DirichletCharacter.from_index(3, 1), smooth=[5]).to_rational())

# The minus class number as a product of L-values
for p in (23, 29, 31, 37):
    print(f"h^-(Q(zeta_{p})) =", minus_class_number(p))

# theta for Q(i) with only the infinite places in Sigma
ext = CyclotomicExtension(4)
theta = stickelberger_element(ext, [], [])
print("theta for m = 4:", theta)

# m = 23, p = 3: add the ramified prime to Sigma and pick an auxiliary prime
ext = CyclotomicExtension(23)
aux = auxiliary_prime(ext, 3)
hyp = check_hypotheses(ext, [23], [aux], 3)
print("auxiliary prime", aux, {k: v for k, v in hyp.items() if k.startswith("H")})

theta = stickelberger_element(ext, [23], [aux])
print("integral at 3:", theta_integrality(theta, 3, 40))

# odd character values of theta
for index, value in sorted(theta_values(theta).items())[:4]:
    print(index, value)
