"""
Fitting ideals over finite group rings
======================================

Orders of finitely presented modules over (Z/p^N)[P], computed from
determinants and compared with direct enumeration.
"""

import json
from pathlib import Path

from etnc.fitting import (
    PresentedModule,
    brute_force_order,
    fitting_ideal,
    make_ring,
    module_order_report,
)

# diag(p, p^2) over Z_3 at precision 40: the cokernel has order 3^3
data = json.loads((Path(__file__).parent / "data" / "diag_p_p2.json").read_text())
mod = PresentedModule.from_json(data)
rep = module_order_report(mod)
print("order", rep.order, "certified", rep.certified, "margin", rep.margin)
print("Fitting ideal generators:", fitting_ideal(mod).generators)

# A 1x1 presentation over (Z/27)[C3], small enough to enumerate
R = make_ring(3, 3, (3,), 1)
g = R.basis((1,))
mod = PresentedModule(R, [[R.scalar(4) - g]], rows=1)
print("determinant route:", module_order_report(mod, slack=0).order)
print("enumeration:      ", brute_force_order(mod))

# Rows are generators and columns relations; with too few relations
# the zeroth Fitting ideal vanishes
mod = PresentedModule(R, [[R.scalar(3)], [R.zero()]], rows=2)
print("two generators, one relation:", fitting_ideal(mod).generators)
