"""Drinfeld modules for A = F_q[T]: construction, torsion, level
structures, twists, the Carlitz module and its cyclotomic polynomials,
and the universal rank-1 module with mu(1) = 1.

A Drinfeld module is stored by the single skew polynomial phi_T (the
ring map A -> K{tau} is determined by it since A = F_q[T]).  The
characteristic is described by theta = gamma(T), the constant term of
phi_T.
"""

from .fields import ExtField
from .poly import PolyRing, ResidueRing, LocalizedRing, FunctionField, trim
from .skew import SkewPoly, skew_kernel
from . import linalg

DEFAULT_TORSION_BOUND = 12


class RankError(ValueError):
    pass


class CharacteristicError(ValueError):
    """f is not away from the characteristic."""


class DrinfeldModule:
    """phi: A -> dom{tau}, phi_T = theta + a_1 tau + ... + a_r tau^r."""

    def __init__(self, A, dom, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == dom.zero():
            coeffs.pop()
        if len(coeffs) < 2:
            raise RankError("rank 0: phi_T must have a tau-term")
        if not dom.is_unit(coeffs[-1]):
            raise RankError("leading coefficient of phi_T must be a unit")
        self.A = A
        self.dom = dom
        self.phi_T = SkewPoly(dom, coeffs)
        self.theta = coeffs[0]
        self.rank = len(coeffs) - 1

    def image(self, a):
        """phi_a for a in A, via a = sum c_i T^i => phi_a = sum c_i phi_T^i."""
        dom = self.dom
        acc = SkewPoly(dom, ())
        power = SkewPoly.one(dom)
        for i, c in enumerate(a):
            if i > 0:
                power = power.mul(self.phi_T)
            if c != 0:
                acc = acc.add(power.scalar_mul(dom.scalar(c)))
        return acc

    def char_of(self, a):
        """gamma(a) = a(theta)."""
        return self.A.eval(a, self.theta, dom=self.dom,
                           embed_scalar=self.dom.scalar)

    def twist(self, xi):
        """The conjugate xi * phi * xi^-1; coefficient i becomes
        xi^(1-q^i) a_i.  Torsion points scale by xi."""
        dom = self.dom
        if not dom.is_unit(xi):
            raise ValueError("twist by a non-unit")
        xi_inv = dom.inv(xi)
        out = []
        for i, c in enumerate(self.phi_T.coeffs):
            out.append(dom.mul(dom.mul(xi, c), dom.qpow(xi_inv, i)))
        return DrinfeldModule(self.A, dom, out)

    def map_coeffs(self, fn, newdom, newA=None):
        return DrinfeldModule(newA if newA is not None else self.A, newdom,
                              [fn(c) for c in self.phi_T.coeffs])

    def __eq__(self, other):
        return (isinstance(other, DrinfeldModule) and other.dom == self.dom
                and other.phi_T == self.phi_T)

    def __repr__(self):
        return "DrinfeldModule(rank %d, phi_T = %r)" % (self.rank, self.phi_T)


def dm_make(A, dom, theta, coeffs):
    coeffs = list(coeffs)
    if coeffs and coeffs[0] != theta:
        raise ValueError("constant coefficient must equal theta")
    return DrinfeldModule(A, dom, coeffs)


def dm_image(phi, a):
    return phi.image(a)


def dm_twist(phi, xi):
    return phi.twist(xi)


class TorsionModule:
    """The f-torsion of phi, realized over an explicit extension field."""

    def __init__(self, phi, f, ext_degree, field, phi_ext, points):
        self.phi = phi
        self.f = f
        self.m = ext_degree
        self.field = field
        self.phi_ext = phi_ext
        self.points = points

    def __len__(self):
        return len(self.points)


def dm_torsion(phi, f, search_bound=DEFAULT_TORSION_BOUND):
    """Smallest extension F_{q^m} containing all f-torsion, with points.

    Requires f away from the characteristic: gamma(f) must be a unit.
    """
    f = trim(f)
    A = phi.A
    base = phi.dom
    gamma_f = phi.char_of(f)
    if not base.is_unit(gamma_f):
        raise CharacteristicError("characteristic divides f")
    want = base.q ** (phi.rank * (len(f) - 1))
    m0 = 1
    while base.q ** m0 < base.size:
        m0 += 1
    for m in range(1, search_bound + 1):
        if m % m0 != 0:
            continue
        # base embeds into ExtField(base, k) as the single-digit encodings
        try:
            Fm = base if m == m0 else ExtField(base, m // m0, q=base.q)
        except ValueError:
            break  # field size bound reached
        phi_m = phi if m == m0 else phi.map_coeffs(lambda a: a, Fm)
        pts = skew_kernel(phi_m.image(f))
        if len(pts) == want:
            return TorsionModule(phi, f, m, Fm, phi_m, pts)
    raise ValueError("torsion not split within the search bound")


class LevelStructure:
    """A level f-structure: images of the standard basis of (A/fA)^r.

    ``canon`` maps a point to a hashable canonical key (identity for
    field elements; a truncation key for series points).
    """

    def __init__(self, phi, f, images, canon=None, validate=True):
        self.phi = phi
        self.f = trim(f)
        self.images = tuple(images)
        self.A = phi.A
        self.R = ResidueRing(phi.A, self.f)
        self.canon = canon or (lambda x: x)
        self._span = None
        if len(self.images) != phi.rank:
            raise ValueError("need exactly rank-many images")
        if validate:
            self.validate()

    def map(self, vec):
        """lambda(vec) for vec a tuple of residue representatives."""
        dom = self.phi.dom
        acc = dom.zero()
        for v, u in zip(vec, self.images):
            pa = self.phi.image(trim(v))
            acc = dom.add(acc, pa.eval(u, ydom=dom, embed=lambda c: c))
        return acc

    def span(self):
        """dict canonical-key -> coordinate vector, over all of (A/fA)^r."""
        if self._span is None:
            out = {}
            R = self.R
            for idx in range(R.size ** self.phi.rank):
                vec = []
                k = idx
                for _ in range(self.phi.rank):
                    vec.append(R.from_index(k % R.size))
                    k //= R.size
                out[self.canon(self.map(tuple(vec)))] = tuple(vec)
            self._span = out
        return self._span

    def coordinates(self, point):
        key = self.canon(point)
        sp = self.span()
        if key not in sp:
            raise ValueError("point is not in the f-torsion span")
        return sp[key]

    def validate(self):
        dom = self.phi.dom
        phif = self.phi.image(self.f)
        for u in self.images:
            if self.canon(phif.eval(u, ydom=dom)) != self.canon(dom.zero()):
                raise ValueError("image is not f-torsion")
        want = dom.q ** (self.phi.rank * self.A.deg(self.f))
        if len(self.span()) != want:
            raise ValueError("not a basis: images generate a proper "
                             "submodule (%d of %d points)"
                             % (len(self.span()), want))

    def compose(self, sigma):
        """The level structure lambda .sigma: v -> lambda(v*sigma), for
        sigma a 2x2 matrix over A/fA (rank 2 only)."""
        if self.phi.rank != 2:
            raise ValueError("matrix action implemented for rank 2")
        R = self.R
        (a, b), (c, d) = sigma
        e1 = (a, b)  # (1,0) * sigma
        e2 = (c, d)  # (0,1) * sigma
        return LevelStructure(
            self.phi, self.f,
            (self.map(e1), self.map(e2)),
            canon=self.canon, validate=False)


def level_make(phi, f, images, canon=None):
    return LevelStructure(phi, f, images, canon=canon, validate=True)


def torsion_basis(tor):
    """A deterministic level structure on the split torsion module.

    Filters for points of full order first (cheap), then validates the
    span; for rank 2 the first full-order pair that spans wins.
    """
    phi_m = tor.phi_ext
    A = phi_m.A
    f = trim(tor.f)
    killers = [phi_m.image(A.divexact(f, p)) for p, _ in A.factor(f)]
    full = [u for u in tor.points
            if u != phi_m.dom.zero()
            and all(k.eval(u) != phi_m.dom.zero() for k in killers)]
    if phi_m.rank == 1:
        return LevelStructure(phi_m, f, (full[0],))
    for u in full:
        for v in full:
            try:
                return LevelStructure(phi_m, f, (u, v))
            except ValueError:
                continue
    raise ValueError("no torsion basis found")


# -- Carlitz module and cyclotomic polynomials ---------------------------


def carlitz_module(A):
    """The Carlitz module C_T = T + tau over A itself (theta = T)."""
    return DrinfeldModule(A, A, (A.gen(), A.one()))


def _skew_to_commutative(A, sp):
    """Additive polynomial sum a_i X^(q^i) as a dense polynomial in X
    over A (a tuple of A-elements)."""
    q = A.q
    if sp.is_zero():
        return ()
    n = q ** sp.deg() + 1
    out = [A.zero()] * n
    for i, c in enumerate(sp.coeffs):
        out[q ** i] = c
    return tuple(out)


def carlitz_cyclotomic(A, f):
    """The Carlitz cyclotomic polynomial Phi_f(X) over A.

    Phi_f(X) = prod over monic g | f of C_(f/g)(X)^moebius(g), computed by
    exact division in A[X]; deg Phi_f = #(A/fA)^* and Phi_f | C_f.
    """
    f = A.monic(trim(f))
    if A.deg(f) < 1:
        raise ValueError("f must be non-constant")
    C = carlitz_module(A)
    AX = PolyRing(A, var="X")
    num = AX.one()
    den = AX.one()
    for g, mu in A.squarefree_monic_divisors(f):
        if mu == 0:
            continue
        part = _skew_to_commutative(A, C.image(A.divexact(f, g)))
        if mu == 1:
            num = AX.mul(num, part)
        else:
            den = AX.mul(den, part)
    phi = AX.divexact(num, den)  # exact or it is a bug
    return phi


# -- the universal rank 1 module over R' ----------------------------------


class CyclotomicRing:
    """R' = A_f[lam]/(Phi_f(lam)): coefficients of the universal rank-1
    Drinfeld module with mu(1) = 1 live here.

    Elements are tuples of length deg(Phi_f) over A_f (the lam-power
    basis).  The subring fixed by lam -> c*lam (c in F_q^*) is the base
    ring the rank-1 moduli actually live over; membership is simply
    'coordinates vanish outside indices divisible by q-1'.
    """

    def __init__(self, K, f):
        A = PolyRing(K)
        f = A.monic(trim(f))
        self.K = K
        self.A = A
        self.f = f
        self.Af = LocalizedRing(A, f)
        self.q = A.q
        self.char = K.char
        phi_raw = carlitz_cyclotomic(A, f)
        self.d = len(phi_raw) - 1
        Af = self.Af
        self.phi_f_vec = [Af.from_poly(c) for c in phi_raw]
        self._lampow = {}  # lam^j reduced mod Phi_f, extended on demand

    def reduce_power(self, j):
        """lam^j as a lam-power-basis vector, cached."""
        Af = self.Af
        d = self.d
        if j < d:
            v = [Af.zero()] * d
            v[j] = Af.one()
            return v
        top_known = max(self._lampow) if self._lampow else d - 1
        for k in range(top_known + 1, j + 1):
            if k == d:
                vec = [Af.neg(self.phi_f_vec[i]) for i in range(d)]
            else:
                prev = self._lampow[k - 1] if k - 1 >= d else \
                    self.reduce_power(k - 1)
                vec = [Af.zero()] + list(prev[:-1])
                top = prev[-1]
                if top != Af.zero():
                    for i in range(d):
                        vec[i] = Af.sub(vec[i],
                                        Af.mul(top, self.phi_f_vec[i]))
            self._lampow[k] = vec
        return list(self._lampow[j])

    def zero(self):
        return (self.Af.zero(),) * self.d

    def one(self):
        return self.from_af(self.Af.one())

    def from_af(self, a):
        return (a,) + (self.Af.zero(),) * (self.d - 1)

    def scalar(self, c):
        return self.from_af(self.Af.scalar(c))

    def theta(self):
        return self.from_af(self.Af.from_poly(self.A.gen()))

    def lam(self):
        if self.d == 1:
            return tuple(self.reduce_power(1))
        v = [self.Af.zero()] * self.d
        v[1] = self.Af.one()
        return tuple(v)

    def add(self, a, b):
        Af = self.Af
        return tuple(Af.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.Af.neg(x) for x in a)

    def sub(self, a, b):
        return tuple(self.Af.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        Af = self.Af
        d = self.d
        conv = [Af.zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == Af.zero():
                continue
            for j, y in enumerate(b):
                if y == Af.zero():
                    continue
                conv[i + j] = Af.add(conv[i + j], Af.mul(x, y))
        out = list(conv[:d])
        for j in range(d, 2 * d - 1):
            c = conv[j]
            if c != Af.zero():
                red = self.reduce_power(j)
                for i in range(d):
                    out[i] = Af.add(out[i], Af.mul(c, red[i]))
        return tuple(out)

    def pow(self, a, n):
        r = self.one()
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def qpow(self, a, k=1):
        Af = self.Af
        for _ in range(k):
            out = [Af.zero()] * self.d
            for i, c in enumerate(a):
                if c == Af.zero():
                    continue
                cq = Af.qpow(c, 1)
                red = self.reduce_power(self.q * i)
                for t in range(self.d):
                    out[t] = Af.add(out[t], Af.mul(cq, red[t]))
            a = tuple(out)
        return a

    def _ff(self):
        return FunctionField(self.A)

    def _af_to_ff(self, a):
        num, k = a
        return (num, self.A.pow(self.f, k)) if num else ((), (1,))

    def _ff_to_af(self, x):
        num, den = x
        if not num:
            return self.Af.zero()
        fe = self.A.one()
        for e in range(self.A.deg(den) + 1):
            b, r = self.A.divmod(fe, den)
            if r == ():
                return self.Af.make(self.A.mul(num, b), e)
            fe = self.A.mul(fe, self.f)
        raise ZeroDivisionError("element does not lie in A_f")

    def is_unit(self, a):
        try:
            self.inv(a)
            return True
        except ZeroDivisionError:
            return False

    def inv(self, a):
        """Inverse via the multiplication matrix over Frac(A); the result
        must have f-power denominators or a is not a unit of R'."""
        FF = self._ff()
        d = self.d
        cols = []
        for j in range(d):
            basis = tuple(self.Af.one() if i == j else self.Af.zero()
                          for i in range(d))
            cols.append(self.mul(a, basis))
        M = [[self._af_to_ff(cols[j][i]) for j in range(d)]
             for i in range(d)]
        rhs = [FF.one()] + [FF.zero()] * (d - 1)
        x = linalg.solve(FF, M, rhs)
        if x is None:
            raise ZeroDivisionError("zero divisor in R'")
        return tuple(self._ff_to_af(c) for c in x)

    def in_invariant_subring(self, a):
        """True when a lies in the F_q^*-invariant subring A_f[lam^(q-1)]
        (coordinates vanish off indices divisible by q-1)."""
        for i, c in enumerate(a):
            if i % (self.q - 1) != 0 and c != self.Af.zero():
                return False
        return True

    def galois(self, a_res):
        """The automorphism lam -> C_{a}(lam) for a unit residue a_res;
        returns a callable on ring elements."""
        C = carlitz_module(self.A)
        img = C.image(trim(a_res))
        lam_img = [self.Af.zero()] * self.d
        # evaluate sum c_i lam^(q^i) inside R'
        for i, c in enumerate(img.coeffs):
            if c == self.A.zero():
                continue
            red = self.reduce_power(self.q ** i)
            cf = self.Af.from_poly(c)
            for t in range(self.d):
                lam_img[t] = self.Af.add(lam_img[t],
                                         self.Af.mul(cf, red[t]))
        lam_img = tuple(lam_img)
        powers = [self.one()]
        for _ in range(self.d - 1):
            powers.append(self.mul(powers[-1], lam_img))

        def apply(z):
            out = [self.Af.zero()] * self.d
            for i, c in enumerate(z):
                if c == self.Af.zero():
                    continue
                for t in range(self.d):
                    out[t] = self.Af.add(out[t],
                                         self.Af.mul(c, powers[i][t]))
            return tuple(out)

        return apply

    def rand(self, rng):
        return tuple(self.Af.rand(rng, 2) for _ in range(self.d))

    def repr_elem(self, a):
        parts = []
        for i, c in enumerate(a):
            if c == self.Af.zero():
                continue
            s = self.Af.repr_elem(c)
            parts.append(s if i == 0 else "(%s)*lam^%d" % (s, i))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return "A_f[lam]/(Phi_f), f=%s" % (self.A.repr_elem(self.f),)

    def __eq__(self, other):
        return (isinstance(other, CyclotomicRing) and other.K == self.K
                and other.f == self.f)

    def __hash__(self):
        return hash(("CyclotomicRing", self.K, self.f))


class UniversalRank1:
    """The rank-1 module psi_T = theta + lam^(q-1) tau over R', with the
    level structure mu(1) = 1."""

    def __init__(self, K, f, validate=True):
        self.ring = CyclotomicRing(K, f)
        R = self.ring
        self.f = R.f
        w = R.pow(R.lam(), R.q - 1)
        self.psi = DrinfeldModule(R.A, R, (R.theta(), w))
        self.w = w
        self.mu1 = R.one()
        if validate:
            psif = self.psi.image(self.f)
            val = psif.eval(self.mu1, ydom=R)
            if val != R.zero():
                raise AssertionError("mu(1)=1 failed to be f-torsion; "
                                     "cyclotomic construction is broken")

    def torsion_point(self, a_res):
        """mu(a) = psi_a(1) for a residue representative a."""
        return self.psi.image(trim(a_res)).eval(self.mu1, ydom=self.ring)


def rank1_universal(K, f):
    return UniversalRank1(K, f)
