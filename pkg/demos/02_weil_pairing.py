"""The Weil pairing of a rank-2 module and the exterior-square oracle.

phi_T = theta + g tau + Delta tau^2 has exterior square
psi_T = theta - Delta tau; the determinant-in-coordinates pairing
w(u, v) = psi_det(t0) is alternating, bilinear, and GL_2-reindexing of
the level structure acts through the determinant.
"""

import itertools

from dforge import (field_make, PolyRing, DrinfeldModule, dm_torsion,
                    exterior_power2, motive_oracle, moore_pair,
                    PairingContext, weil_map, MatrixRing)
from dforge.drinfeld import torsion_basis
from dforge.poly import trim

F3 = field_make(3, 1, 1)
A = PolyRing(F3)
T = A.gen()

phi = DrinfeldModule(A, F3, (2, 0, 1))
psi = exterior_power2(phi)
print("phi_T =", phi.phi_T)
print("psi_T =", psi.phi_T, " (exterior square)")
print("motive oracle recomputes:", motive_oracle(phi).phi_T)
print()

tor = dm_torsion(phi, T)
lvl = torsion_basis(tor)
ctx = PairingContext.build(tor.phi_ext, lvl)
F = ctx.psi_field
print("torsion basis over F_9:", lvl.images)
print("t0 (least generator of psi[T]):", ctx.t0)
print("w(u, v) on the basis:", ctx.pair(*lvl.images), "= t0")
print("w(u, u) =", ctx.pair(lvl.images[0], lvl.images[0]),
      " (alternating)")
print()

# Moore determinant as an independent cross-check for f = T
print("moore(u,v) = u v^3 - u^3 v lands in psi[T] and matches w up to "
      "one unit:")
u, v = lvl.images
print("  moore:", moore_pair(F, u, v), "  weil:", ctx.pair(u, v))
print()

# equivariance under all of GL_2(F_3)
R = lvl.R
M = MatrixRing(R)
_, mu1, _ = weil_map(tor.phi_ext, lvl, ctx=ctx)
bad = 0
for a, b, c, d in itertools.product(list(R.elements()), repeat=4):
    s = ((a, b), (c, d))
    det = M.det(s)
    if not R.is_unit(det):
        continue
    _, mus, _ = weil_map(tor.phi_ext, lvl.compose(s), ctx=ctx)
    if mus != ctx.psi.image(trim(det)).eval(mu1, ydom=F):
        bad += 1
print("equivariance mu(1) -> psi_det(mu(1)) over all 48 sigma:",
      "all hold" if bad == 0 else "%d failures" % bad)
