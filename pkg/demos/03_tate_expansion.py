"""The Tate-Drinfeld module at the cusp, explicitly.

Over R' = A_T[lam]/(lam^2+T) the lattice Lambda is generated by
ell = psi_T(1/x); the truncated exponential e = 1 + s_1 tau + ...
conjugates psi into the rank-2 module phi^td_T = T + g(x) tau +
Delta(x) tau^2, whose x = 0 fiber is psi again.  1/j = Delta/g^4
vanishes to order 6, the cusp width for f = T.
"""

from dforge import (field_make, rank1_universal, tate_lattice,
                    tate_module, j_expansion, h_sigma, h_sigma_verify,
                    universal_assembly)
from dforge.poly import ResidueRing

F3 = field_make(3, 1, 1)
uni = rank1_universal(F3, (0, 1))
N = 9
L = tate_lattice(uni, N=N)
te = tate_module(L, N)

print("lattice generator ell = psi_T(1/x) =", L.ell)
print()
print("lattice exponential to tau-degree", te.e.deg())
print("  s_1 =", te.e.coeff(1).truncate(N))
print()
print("g(x)     =", te.g.truncate(N))
print("Delta(x) =", te.delta.truncate(N))
print("x=0 fiber: g(0) =", te.ring.repr_elem(te.g.coeff(0)),
      "= psi's tau-coefficient; Delta(0) = 0")
print()
k, alpha = j_expansion(te, (0, 1))
print("1/j_T = alpha x^%d with alpha(0) =" % k,
      te.ring.repr_elem(alpha.coeff(0)))
print()
print("level structure:")
print("  lam(1,0) = e(1/x) =", te.lam10.truncate(4))
print("  lam(0,1) = e(1)   =", te.lam01.truncate(4))
print()

# the stabilizer N acts through x -> delta x; the unipotent case
Rf = ResidueRing(te.A, te.f)
sigma = ((Rf.one(), Rf.one()), (Rf.zero(), Rf.one()))
h = h_sigma(te, sigma)
print("h_sigma for [[1,1],[0,1]]: delta^-1 =", h.delta.inv().truncate(3))
print("verified mod x^%d" % h_sigma_verify(te, sigma, h, upto=5))
print()

asm = universal_assembly(te)
print("universal assembly: %d copies of Spec R'[[x]], coset reps:"
      % len(asm.reps))
for rep, _ in asm.copies:
    print("  ", rep)
