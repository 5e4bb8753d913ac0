"""Stable reduction over F_9[[x]] and the round trip through the cusp.

Specializing the universal Tate-Drinfeld module at a point R' -> F_9
produces a rank-2 module over F_9((x)) with stable reduction of rank 1.
The reduction pipeline recovers, from the bare module, everything the
construction started from: the rank-1 module psi, the lattice generator
psi_T(1/x), and the normalized level datum mu -- Drinfeld's bijection
made effective.
"""

from dforge import (field_make, rank1_universal, tate_lattice,
                    tate_module, specialize, newton_slopes,
                    stable_normalize, drinfeld_approx, lattice_recover,
                    triple_extract, LevelStructure)
from dforge.tate import series_canon

F3 = field_make(3, 1, 1)
F9 = field_make(3, 1, 2)
uni = rank1_universal(F3, (0, 1))
L = tate_lattice(uni, N=9)
te = tate_module(L, 9)

sp = specialize(te, F9)
print("specialized at T ->", sp.t, ", lam ->", sp.lam_val, "in F_9")
print("phi_T over F_9((x)):")
for i, c in enumerate(sp.phi.phi_T.coeffs):
    print("  tau^%d:" % i, c.truncate(9))
print()

slopes = newton_slopes(sp.phi.image((0, 1)))
print("Newton slopes of (1/X) phi_T(X):", slopes)
phi_p, k, rrank, xi = stable_normalize(sp.phi, (0, 1))
print("twist exponent k =", k, "; reduction rank =", rrank)
print()

res = drinfeld_approx(phi_p, 10)
print("successive approximation: s to tau-degree", res.s.deg(),
      "at precision", res.achieved)
print("  v_1 =", res.s.coeff(1).truncate(9))
print("  (the specialized lattice exponential has s_1 =",
      sp.e.coeff(1).truncate(9), ")")
print("recovered psi_T:", [c.coeff(0) for c in res.psi.phi_T.coeffs])
print()

ell, u = lattice_recover(phi_p, res.s, (0, 1), res.psi, 10)
print("lattice generator ell =", ell.truncate(1))
print("  (psi_T(1/x) =",
      sp.psi.image((0, 1)).eval(sp.LD.x(-1), ydom=sp.LD).truncate(1), ")")
print()

lvl = LevelStructure(sp.phi, (0, 1), (sp.lam10, sp.lam01),
                     canon=series_canon(-3, 8), validate=False)
triple, _ = triple_extract(sp.phi, lvl, 10)
print("triple (psi, mu, ell):", triple.report)
print("mu(1) =", triple.mu1.truncate(1), " (the universal mu(1) = 1, "
      "up to F_q^*)")
