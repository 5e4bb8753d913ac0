"""Exact arithmetic for the finite field tower F_p < F_q < F_{q^m}.

Field elements are plain integers.  An element of an extension of degree d
over a base field of size B is the integer sum(digit_i * B**i) where
(digit_0, ..., digit_{d-1}) are its coordinates in the power basis,
little-endian.  With this encoding the base field sits inside every
extension as the integers 0..B-1, so embeddings along the tower are the
identity on encodings and integer order gives a fixed, total enumeration
order on every field.

Every field object carries a designated twist order ``q`` (the size of the
F_q that acts as scalars everywhere else in the package).  Arithmetic is
table-driven for small fields and schoolbook polynomial arithmetic over the
base field otherwise.  No floating point, no randomness.
"""

import os

DEFAULT_MAX_Q = 3 ** 10

_TABLE_LIMIT = 256  # build full mul tables up to this field size


def _max_field_size():
    return int(os.environ.get("DFORGE_MAX_Q", DEFAULT_MAX_Q))


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """F_p with elements 0..p-1."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("characteristic must be prime, got %r" % (p,))
        self.p = p
        self.char = p
        self.size = p
        self.q = p
        self.degree = 1  # over itself
        self.base = None
        self.name = "F%d" % p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in %s" % self.name)
        return pow(a, self.p - 2, self.p)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        return pow(a, n, self.p)

    def qpow(self, a, k=1):
        # a^(q^k) with q = p: Frobenius is the identity on the prime field
        return a % self.p

    def frobenius(self, a):
        return a % self.p

    def elements(self):
        return range(self.p)

    def units(self):
        return range(1, self.p)

    def rand(self, rng):
        return rng.randrange(self.p)

    def scalar(self, c):
        return c % self.p

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


# -- minimal polynomial helpers over an arbitrary field object, used only --
# -- for finding/validating extension moduli (tuples of field elements,   --
# -- little-endian, trimmed).                                             --

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(F, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return _ptrim(out)


def _pmod(F, a, m):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c != 0:
            k = len(a) - 1 - dm
            for j in range(len(m)):
                a[k + j] = F.sub(a[k + j], F.mul(c, m[j]))
        a.pop()
    return _ptrim(a)


def _pgcd(F, a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        # make b monic so _pmod applies
        lead = b[-1]
        if lead != 1:
            il = F.inv(lead)
            b = tuple(F.mul(c, il) for c in b)
        a, b = b, _pmod(F, a, b)
    return a


def _ppowmod(F, a, n, m):
    r = (1,)
    a = _pmod(F, a, m)
    while n:
        if n & 1:
            r = _pmod(F, _pmul(F, r, a), m)
        a = _pmod(F, _pmul(F, a, a), m)
        n >>= 1
    return r


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(F, m):
    """Rabin test for a monic polynomial m over the field object F."""
    d = len(m) - 1
    if d < 1:
        return False
    B = F.size
    x = (0, 1)
    # x^(B^d) == x mod m
    xq = _ppowmod(F, x, B ** d, m)
    diff = list(xq) + [0] * max(0, 2 - len(xq))
    diff[1] = F.sub(diff[1], 1)
    if _ptrim(diff) != ():
        return False
    for ell in _prime_divisors(d):
        xe = _ppowmod(F, x, B ** (d // ell), m)
        diff = list(xe) + [0] * max(0, 2 - len(xe))
        diff[1] = F.sub(diff[1], 1)
        if _pgcd(F, _ptrim(diff), m) != (1,):
            return False
    return True


def least_irreducible(F, d):
    """Smallest-encoding monic irreducible of degree d over F.

    Candidates are ordered by the integer encoding of their lower
    coefficient vector, so the choice is deterministic and reproducible.
    """
    B = F.size
    if d == 1:
        return (0, 1)
    for code in range(B ** d):
        lower = []
        c = code
        for _ in range(d):
            lower.append(c % B)
            c //= B
        m = tuple(lower) + (1,)
        if _is_irreducible(F, m):
            return m
    raise RuntimeError("no irreducible of degree %d over %s" % (d, F))


class ExtField:
    """Extension of degree d over a base field, elements encoded as ints."""

    def __init__(self, base, degree, modulus=None, q=None):
        self.base = base
        self.degree = degree
        self.char = base.char
        self.size = base.size ** degree
        self.q = q if q is not None else base.q
        if self.size > _max_field_size():
            raise ValueError(
                "field size %d exceeds bound %d (set DFORGE_MAX_Q to raise)"
                % (self.size, _max_field_size()))
        if modulus is None:
            modulus = least_irreducible(base, degree)
        if len(modulus) - 1 != degree or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree %d" % degree)
        if not _is_irreducible(base, tuple(modulus)):
            raise ValueError("reducible modulus supplied")
        self.modulus = tuple(modulus)
        self.name = "F%d" % self.size
        self._B = base.size
        # reduction table: z^k mod modulus for k = degree .. 2*degree-2
        red = []
        cur = tuple(base.neg(c) for c in self.modulus[:-1])  # z^degree
        red.append(cur)
        for _ in range(degree - 2):
            cur = self._shift_reduce(cur)
            red.append(cur)
        self._red = red
        self._mul_table = None
        self._frob_table = None
        if self.size <= _TABLE_LIMIT:
            self._build_tables()

    # -- encoding helpers --

    def vec(self, a):
        digits = []
        for _ in range(self.degree):
            digits.append(a % self._B)
            a //= self._B
        return digits

    def unvec(self, v):
        a = 0
        for d in reversed(v):
            a = a * self._B + d
        return a

    def _shift_reduce(self, v):
        # v * z reduced, v a full-length vector
        b = self.base
        out = [0] + list(v[:-1])
        top = v[-1]
        if top != 0:
            for i, mi in enumerate(self.modulus[:-1]):
                out[i] = b.sub(out[i], b.mul(top, mi))
        return tuple(out)

    def _build_tables(self):
        n = self.size
        self._mul_table = [[self._mul_raw(a, b) for b in range(n)]
                           for a in range(n)]
        self._frob_table = [self.pow(a, self.q) for a in range(n)]

    # -- ring operations --

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        bb = self.base
        va, vb = self.vec(a), self.vec(b)
        return self.unvec([bb.add(x, y) for x, y in zip(va, vb)])

    def neg(self, a):
        bb = self.base
        return self.unvec([bb.neg(x) for x in self.vec(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_raw(self, a, b):
        bb = self.base
        va, vb = self.vec(a), self.vec(b)
        conv = [0] * (2 * self.degree - 1)
        for i, x in enumerate(va):
            if x == 0:
                continue
            for j, y in enumerate(vb):
                conv[i + j] = bb.add(conv[i + j], bb.mul(x, y))
        acc = conv[:self.degree]
        for k in range(self.degree, 2 * self.degree - 1):
            c = conv[k]
            if c != 0:
                red = self._red[k - self.degree]
                acc = [bb.add(u, bb.mul(c, r)) for u, r in zip(acc, red)]
        return self.unvec(acc)

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_raw(a, b)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r, base = 1, a
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in %s" % self.name)
        return self.pow(a, self.size - 2)

    def frobenius(self, a):
        """a -> a^q for the designated twist order q."""
        if self._frob_table is not None:
            return self._frob_table[a]
        return self.pow(a, self.q)

    def qpow(self, a, k=1):
        # the Frobenius x -> x^q has order log_q(size) on this field
        order = 1
        t = self.q
        while t < self.size:
            t *= self.q
            order += 1
        for _ in range(k % order):
            a = self.frobenius(a)
        return a

    def elements(self):
        return range(self.size)

    def units(self):
        return range(1, self.size)

    def rand(self, rng):
        return rng.randrange(self.size)

    def scalar(self, c):
        # encodings 0..q-1 are the subfield F_q along the tower
        return c

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return (isinstance(other, ExtField) and other.size == self.size
                and other.modulus == self.modulus and other.base == self.base)

    def __hash__(self):
        return hash(("ExtField", self.size, self.modulus))


def field_make(p, e, m=1):
    """Build F_{q^m} for q = p^e, with the twist order q attached.

    Returns a field object whose ``frobenius`` is x -> x^q and for which
    the subfield F_q consists of the encodings 0..q-1 when m > 1 (the
    power-basis encoding makes the inclusion the identity on integers).
    """
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if e < 1 or m < 1:
        raise ValueError("e and m must be >= 1")
    if p ** (e * m) > _max_field_size():
        raise ValueError(
            "requested field F_%d^%d exceeds size bound %d"
            % (p ** e, m, _max_field_size()))
    if e == 1:
        Fq = PrimeField(p)
    else:
        Fq = ExtField(PrimeField(p), e)
        Fq.q = Fq.size
    if m == 1:
        return Fq
    return ExtField(Fq, m, q=Fq.size)


def embed(src, dst):
    """Embedding of src into dst along the tower over the common F_q.

    Both fields must be extensions of the same base field (or src may be
    the base itself).  Returns a callable on encodings.  The image of the
    power-basis generator is the least root in dst of src's modulus, so
    the embedding is deterministic.
    """
    if src == dst:
        return lambda a: a
    base = getattr(src, "base", None)
    if base is None or src.degree == 1:
        return lambda a: a
    if getattr(dst, "base", None) != src.base:
        raise ValueError("fields are not towers over a common base")
    # find least root of src.modulus in dst
    mod = src.modulus
    root = None
    for cand in dst.elements():
        acc = 0
        for c in reversed(mod):
            acc = dst.add(dst.mul(acc, cand), c)
        if acc == 0:
            root = cand
            break
    if root is None:
        raise ValueError("%s does not embed in %s" % (src, dst))
    powers = [1]
    for _ in range(src.degree - 1):
        powers.append(dst.mul(powers[-1], root))

    def phi(a):
        out = 0
        for d, pw in zip(src.vec(a), powers):
            if d:
                out = dst.add(out, dst.mul(d, pw))
        return out

    return phi
