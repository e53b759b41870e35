"""The Moyal star product on phase-space polynomials and the chi realization
of su(2)."""

import numpy as np

from moyalkw import PhasePoly, chi, moyal_bracket, poisson_bracket, star
from moyalkw.expr import evaluate

p = PhasePoly({(1, 0): 1})
q = PhasePoly({(0, 1): 1})
print("q * p =", star(q, p))
print("p * q =", star(p, q))

c1, c2, c3 = chi(1), chi(2), chi(3)
print("{chi1, chi2}_M =", moyal_bracket(c1, c2))
print("chi3           =", c3)

# the star bracket differs from the Poisson bracket at order hbar^2
f, g = q * q * q + p * q, p * p * p - q
d = (moyal_bracket(f, g) - poisson_bracket(f, g)).to_expr()
at = {"p": np.array([0.3]), "q": np.array([-0.7])}
for h in (1e-1, 1e-2, 1e-3):
    print(f"hbar={h:g}  |{{f,g}}_M - {{f,g}}_P| = {abs(evaluate(d, {**at, 'hbar': np.array([h])})[0]):.3e}")
