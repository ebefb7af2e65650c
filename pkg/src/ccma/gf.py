"""Exact arithmetic in F_{p^k} and in univariate polynomial rings over it.

Elements of F_{p^k} are encoded as integers in [0, p^k): the coefficient
tuple (c_0, ..., c_{k-1}) in the power basis of the defining polynomial is
packed little-endian in base p.  Polynomials carry their coefficient field
and store trimmed little-endian coefficient tuples of such integers.

The canonical total order on monic polynomials of one degree is ascending
integer value sum(c_i * q^i); defining irreducibles are always the least
monic irreducible of their degree in this order.
"""

from .errors import (
    CcmaError,
    DegreeOverflow,
    FieldMismatch,
    NonCoprimeModuli,
    PoleAtPlace,
)
from .guard import check_guard

_MUL_TABLE_MAX_Q = 512


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _moebius(n):
    result = 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            result = -result
        f += 1
    if n > 1:
        result = -result
    return result


def count_irreducibles(q, d):
    """Number of monic irreducible polynomials of degree d over F_q."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _moebius(e) * q ** (d // e)
    return total // d


class FieldSpec:
    """The field F_{p^k} with a fixed monic irreducible defining polynomial.

    Element arithmetic works on the integer encoding; small fields use a
    precomputed multiplication table, larger ones reduce on the fly.
    """

    _cache = {}
    zero = 0
    one = 1

    def __init__(self, p, k=1, poly=None):
        if not is_prime(p):
            raise CcmaError(f"characteristic {p} is not prime")
        if k < 1:
            raise CcmaError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p ** k
        if k == 1:
            if poly is not None:
                raise CcmaError("prime fields take no defining polynomial")
            self.poly = None
        else:
            if poly is None:
                poly = _least_irreducible_prime(p, k)
            poly = tuple(c % p for c in poly)
            if len(poly) != k + 1 or poly[-1] != 1:
                raise CcmaError("defining polynomial must be monic of degree k")
            if not _prime_poly_irreducible(p, poly):
                raise CcmaError("defining polynomial is reducible")
            self.poly = poly
        self._red = self._reduction_rows() if k > 1 else None
        self._mul = None
        self._inv = None
        if self.q <= _MUL_TABLE_MAX_Q:
            self._build_tables()

    @classmethod
    def get(cls, p, k=1, poly=None):
        """Canonical cached spec; same arguments give the same object."""
        key = (p, k, tuple(poly) if poly is not None else None)
        spec = cls._cache.get(key)
        if spec is None:
            spec = cls(p, k, poly)
            self_key = (p, k, spec.poly)
            spec = cls._cache.setdefault(self_key, spec)
            cls._cache[key] = spec
        return spec

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.k == other.k
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.p, self.k, self.poly))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- encoding ----------------------------------------------------------

    def encode(self, coeffs):
        if len(coeffs) != self.k:
            raise CcmaError("coefficient tuple has wrong length")
        val = 0
        for c in reversed(coeffs):
            val = val * self.p + (c % self.p)
        return val

    def decode(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def elements(self):
        return range(self.q)

    # -- arithmetic on encodings -------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mul = 1
        while a or b:
            out += ((a + b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    def neg(self, a):
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mul = 1
        while a:
            out += ((p - a % p) % p) * mul
            a //= p
            mul *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_generic(a, b)

    def _mul_generic(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        ca = self.decode(a)
        cb = self.decode(b)
        p = self.p
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        out = list(prod[: self.k])
        for j in range(self.k, 2 * self.k - 1):
            c = prod[j]
            if c:
                row = self._red[j - self.k]
                for i in range(self.k):
                    out[i] = (out[i] + c * row[i]) % p
        return self.encode(out)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._inv is not None:
            return self._inv[a]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def scalar(self, c):
        """Embed an integer (prime subfield element) into the field."""
        return c % self.p

    def embed_base(self, c):
        return c

    def _reduction_rows(self):
        # x^(k+j) mod poly for j = 0..k-2, as coefficient rows of length k
        p, k = self.p, self.k
        rows = []
        cur = [(-c) % p for c in self.poly[:k]]  # x^k
        rows.append(tuple(cur))
        for _ in range(k - 2):
            nxt = [0] + cur[: k - 1]
            top = cur[k - 1]
            if top:
                for i in range(k):
                    nxt[i] = (nxt[i] + top * rows[0][i]) % p
            cur = nxt
            rows.append(tuple(cur))
        return rows

    def _build_tables(self):
        q = self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            row = mul[a]
            for b in range(a, q):
                v = self._mul_generic(a, b)
                row[b] = v
                mul[b][a] = v
        self._mul = mul
        inv = [0] * q
        for a in range(1, q):
            if inv[a]:
                continue
            b = self.pow(a, q - 2)
            inv[a] = b
            inv[b] = a
        self._inv = inv


class FieldElement:
    """Wrapper pairing a FieldSpec with one encoded element."""

    __slots__ = ("spec", "val")

    def __init__(self, spec, val):
        self.spec = spec
        self.val = val % spec.q if isinstance(val, int) else spec.encode(val)

    @property
    def coeffs(self):
        return self.spec.decode(self.val)

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise FieldMismatch("operands live in different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.add(self.val, other.val))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.val, other.val))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.val))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.val, other.val))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.div(self.val, other.val))

    def __pow__(self, e):
        return FieldElement(self.spec, self.spec.pow(self.val, e))

    def inverse(self):
        return FieldElement(self.spec, self.spec.inv(self.val))

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.val == other.val
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.val))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"FieldElement({self.spec!r}, {self.coeffs})"


# -- prime-field polynomial helpers (used before a FieldSpec exists) --------


def _prime_poly_mulmod(p, a, b, mod):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    return _prime_poly_mod(p, prod, mod)


def _prime_poly_mod(p, a, mod):
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    while len(a) > dm:
        a.pop()
    while len(a) < dm:
        a.append(0)
    return a


def _prime_poly_gcd_nontrivial(p, a, mod):
    a = list(a)
    b = list(mod)

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a = trim(a)
    b = trim(b)
    while a:
        # b mod a
        inv_lead = pow(a[-1], p - 2, p)
        b = list(b)
        for i in range(len(b) - 1, len(a) - 2, -1):
            c = (b[i] * inv_lead) % p
            if c:
                for j in range(len(a)):
                    b[i - len(a) + 1 + j] = (b[i - len(a) + 1 + j] - c * a[j]) % p
        b = trim(b)
        a, b = b, a
    return len(b) - 1 > 0  # gcd degree > 0


def _prime_poly_irreducible(p, poly):
    """Rabin test for a monic polynomial over F_p given as a tuple."""
    d = len(poly) - 1
    if d == 0:
        return False
    if d == 1:
        return True
    if poly[0] == 0:
        return False
    x = [0, 1]
    # x^(p^d) mod poly == x
    cur = _prime_poly_mod(p, x, poly)
    for _ in range(d):
        cur = _prime_poly_powp(p, cur, poly)
    xx = _prime_poly_mod(p, x, poly)
    if cur != xx:
        return False
    primes = _prime_divisors(d)
    for r in primes:
        cur = _prime_poly_mod(p, x, poly)
        for _ in range(d // r):
            cur = _prime_poly_powp(p, cur, poly)
        diff = [(cur[i] - xx[i]) % p for i in range(len(cur))]
        if any(diff) and _prime_poly_gcd_nontrivial(p, diff, poly):
            return False
        if not any(diff):
            return False
    return True


def _prime_poly_powp(p, a, mod):
    result = None
    base = a
    e = p
    while e:
        if e & 1:
            result = base if result is None else _prime_poly_mulmod(p, result, base, mod)
        e >>= 1
        if e:
            base = _prime_poly_mulmod(p, base, base, mod)
    return result


def _prime_divisors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _least_irreducible_prime(p, d):
    """Least monic irreducible of degree d over F_p in the canonical order."""
    for m in range(p ** d):
        coeffs = []
        v = m
        for _ in range(d):
            coeffs.append(v % p)
            v //= p
        cand = tuple(coeffs) + (1,)
        if _prime_poly_irreducible(p, cand):
            return cand
    raise CcmaError("unreachable: irreducibles of every degree exist")


# -- polynomials over a FieldSpec -------------------------------------------


class Poly:
    """Univariate polynomial over a FieldSpec, coefficients little-endian."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.spec = spec
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, spec):
        return cls(spec, ())

    @classmethod
    def one(cls, spec):
        return cls(spec, (1,))

    @classmethod
    def x(cls, spec):
        return cls(spec, (0, 1))

    @classmethod
    def constant(cls, spec, c):
        return cls(spec, (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def _check(self, other):
        if self.spec != other.spec:
            raise FieldMismatch("polynomials over different fields")

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.coeffs))

    def __add__(self, other):
        self._check(other)
        sp = self.spec
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(sp, [sp.add(self[i], other[i]) for i in range(n)])

    def __sub__(self, other):
        self._check(other)
        sp = self.spec
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(sp, [sp.sub(self[i], other[i]) for i in range(n)])

    def __neg__(self):
        sp = self.spec
        return Poly(sp, [sp.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        sp = self.spec
        if self.is_zero() or other.is_zero():
            return Poly.zero(sp)
        prod = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        prod[i + j] = sp.add(prod[i + j], sp.mul(x, y))
        return Poly(sp, prod)

    def scale(self, c):
        sp = self.spec
        return Poly(sp, [sp.mul(c, v) for v in self.coeffs])

    def shift(self, m):
        """Multiply by x^m."""
        if self.is_zero():
            return self
        return Poly(self.spec, (0,) * m + self.coeffs)

    def divmod(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        sp = self.spec
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(sp), self
        quot = [0] * (dq + 1)
        inv_lead = sp.inv(other.coeffs[-1])
        db = other.degree
        for i in range(len(rem) - 1, db - 1, -1):
            c = sp.mul(rem[i], inv_lead)
            if c:
                quot[i - db] = c
                for j, y in enumerate(other.coeffs):
                    rem[i - db + j] = sp.sub(rem[i - db + j], sp.mul(c, y))
        return Poly(sp, quot), Poly(sp, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self):
        if self.is_zero() or self.coeffs[-1] == 1:
            return self
        return self.scale(self.spec.inv(self.coeffs[-1]))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        sp = self.spec
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            s = 0
            for _ in range(i % sp.p):
                s = sp.add(s, c)
            out.append(s)
        return Poly(sp, out)

    def evaluate(self, point):
        """Horner evaluation at a base-field element (encoded int)."""
        sp = self.spec
        acc = 0
        for c in reversed(self.coeffs):
            acc = sp.add(sp.mul(acc, point), c)
        return acc

    def eval_in(self, ring, point):
        """Horner evaluation at an element of an ExtensionRing over spec."""
        acc = ring.zero
        for c in reversed(self.coeffs):
            acc = ring.add(ring.mul(acc, point), ring.embed_base(c))
        return acc

    def pow_mod(self, e, mod):
        result = Poly.one(self.spec)
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def order_key(self):
        """Canonical total-order key: ascending sum(c_i q^i)."""
        val = 0
        for c in reversed(self.coeffs):
            val = val * self.spec.q + c
        return (self.degree, val)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}*x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return "Poly(" + " + ".join(terms) + ")"


def is_irreducible(poly):
    """Rabin irreducibility test over the polynomial's coefficient field."""
    d = poly.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    if poly[0] == 0:
        return False
    sp = poly.spec
    poly = poly.monic()
    x = Poly.x(sp)
    xq = x.pow_mod(sp.q, poly)
    cur = xq
    for _ in range(d - 1):
        cur = _frob_compose(cur, xq, poly)
    if cur != x % poly:
        return False
    for r in _prime_divisors(d):
        steps = d // r
        cur = x % poly
        for _ in range(steps):
            cur = _frob_compose(cur, xq, poly)
        diff = cur - (x % poly)
        if diff.is_zero():
            return False
        if diff.gcd(poly).degree > 0:
            return False
    return True


def _frob_compose(f, xq, mod):
    """f(x)^q mod `mod`, via composition with x^q (q = field size)."""
    sp = f.spec
    acc = Poly.zero(sp)
    for c in reversed(f.coeffs):
        acc = (acc * xq) % mod
        acc = acc + Poly.constant(sp, sp.pow(c, sp.q))
    return acc


def iter_monic(spec, d):
    """All monic degree-d polynomials in the canonical ascending order."""
    q = spec.q
    for m in range(q ** d):
        coeffs = []
        v = m
        for _ in range(d):
            coeffs.append(v % q)
            v //= q
        yield Poly(spec, tuple(coeffs) + (1,))


def iter_irreducibles(spec, d):
    """Lazy ascending stream of monic irreducibles of degree d."""
    for cand in iter_monic(spec, d):
        if is_irreducible(cand):
            yield cand


def irreducibles(spec, d, limit=None):
    """Complete sorted list of monic irreducibles of degree d (guarded)."""
    if d < 1:
        raise CcmaError("degree must be >= 1")
    check_guard(spec.q ** d, f"irreducibles over {spec!r} of degree {d}", limit)
    return list(iter_irreducibles(spec, d))


def lex_least_irreducible(spec, d):
    return next(iter_irreducibles(spec, d))


# -- field extensions --------------------------------------------------------

_EMBED_CACHE = {}


def field_extend(spec, m, limit=None):
    """The field F_{q^m} realized over the prime field, canonically.

    Returns a FieldSpec of degree k*m over F_p whose defining polynomial is
    the least monic irreducible of that degree.  The deterministic embedding
    of `spec` is available through `embed_map`.
    """
    if m < 1:
        raise CcmaError("extension degree must be >= 1")
    if m == 1:
        return spec
    big = FieldSpec.get(spec.p, spec.k * m)
    embed_map(spec, big, limit)  # force determinism check early
    return big


def embed_map(sub, big, limit=None):
    """Images of 1, g, g^2, ..., g^{k-1} of `sub` inside `big` (encoded).

    g is the power-basis generator of `sub`; its image is the least root of
    sub's defining polynomial in `big`.  Returns a list of length sub.k.
    """
    key = (sub, big)
    cached = _EMBED_CACHE.get(key)
    if cached is not None:
        return cached
    if big.p != sub.p or big.k % sub.k != 0:
        raise FieldMismatch("no embedding: incompatible degrees")
    if sub.k == 1:
        images = [1]
        _EMBED_CACHE[key] = images
        return images
    check_guard(big.q, f"embedding search in {big!r}", limit)
    target = Poly(FieldSpec.get(sub.p), [c for c in sub.poly])
    root = None
    for a in range(big.q):
        acc = 0
        for c in reversed(sub.poly):
            acc = big.add(big.mul(acc, a), c % big.p)
        if acc == 0:
            root = a
            break
    if root is None:
        raise CcmaError(f"no root of {target!r} in {big!r}")
    images = [1]
    for _ in range(sub.k - 1):
        images.append(big.mul(images[-1], root))
    _EMBED_CACHE[key] = images
    return images


def embed_element(sub, big, a):
    images = embed_map(sub, big)
    coeffs = sub.decode(a)
    out = 0
    for c, img in zip(coeffs, images):
        out = big.add(out, big.mul(c % big.p, img))
    return out


# -- quotient rings F_q[x]/(f) ----------------------------------------------


class ExtensionRing:
    """F_q[x]/(f) for a monic modulus f; elements are coefficient tuples.

    The modulus need not be irreducible (t^l and P^u moduli are used for
    truncated algebras and local rings); `inv` fails on non-units.
    """

    def __init__(self, spec, modulus):
        if not modulus.is_monic() or modulus.degree < 1:
            raise CcmaError("modulus must be monic of degree >= 1")
        self.spec = spec
        self.modulus = modulus
        self.dim = modulus.degree
        self.zero = (0,) * self.dim
        one = [0] * self.dim
        one[0] = 1
        self.one = tuple(one)
        d = self.dim
        rows = []
        cur = [spec.neg(modulus[i]) for i in range(d)]
        rows.append(tuple(cur))
        for _ in range(d - 2):
            nxt = [0] + cur[: d - 1]
            top = cur[d - 1]
            if top:
                for i in range(d):
                    nxt[i] = spec.add(nxt[i], spec.mul(top, rows[0][i]))
            cur = nxt
            rows.append(tuple(cur))
        self._red = rows

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionRing)
            and self.spec == other.spec
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.spec, self.modulus))

    def __repr__(self):
        return f"ExtensionRing({self.spec!r}, {self.modulus!r})"

    def embed_base(self, c):
        out = [0] * self.dim
        out[0] = c
        return tuple(out)

    def gen(self):
        out = [0] * self.dim
        if self.dim == 1:
            return self.embed_base(self.modulus_root_constant())
        out[1] = 1
        return tuple(out)

    def modulus_root_constant(self):
        # dim 1: x == -f0
        return self.spec.neg(self.modulus[0])

    def add(self, a, b):
        sp = self.spec
        return tuple(sp.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sp = self.spec
        return tuple(sp.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        sp = self.spec
        return tuple(sp.neg(x) for x in a)

    def scale(self, c, a):
        sp = self.spec
        return tuple(sp.mul(c, x) for x in a)

    def mul(self, a, b):
        sp = self.spec
        d = self.dim
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = sp.add(prod[i + j], sp.mul(x, y))
        out = prod[:d]
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c:
                row = self._red[j - d]
                for i in range(d):
                    out[i] = sp.add(out[i], sp.mul(c, row[i]))
        return tuple(out)

    def pow(self, a, e):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_unit(self, a):
        return Poly(self.spec, a).gcd(self.modulus).degree == 0

    def inv(self, a):
        # extended Euclid against the modulus
        sp = self.spec
        r0, r1 = self.modulus, Poly(sp, a)
        s0, s1 = Poly.zero(sp), Poly.one(sp)
        while not r1.is_zero():
            qpoly, rem = r0.divmod(r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - qpoly * s1
        if r0.degree != 0:
            raise ZeroDivisionError("non-unit in quotient ring")
        inv_c = sp.inv(r0.coeffs[0])
        res = s0.scale(inv_c) % self.modulus
        return self.from_poly(res)

    def from_poly(self, poly):
        poly = poly % self.modulus
        out = [0] * self.dim
        for i, c in enumerate(poly.coeffs):
            out[i] = c
        return tuple(out)

    def to_poly(self, a):
        return Poly(self.spec, a)

    def elements(self, limit=None):
        check_guard(self.spec.q ** self.dim, f"enumeration of {self!r}", limit)
        q = self.spec.q
        for m in range(q ** self.dim):
            coeffs = []
            v = m
            for _ in range(self.dim):
                coeffs.append(v % q)
                v //= q
            yield tuple(coeffs)

    def encode(self, a):
        val = 0
        for c in reversed(a):
            val = val * self.spec.q + c
        return val

    def find_root(self, poly, limit=None):
        """Least root of a base-coefficient polynomial in this ring, or None."""
        check_guard(self.spec.q ** self.dim, f"root search in {self!r}", limit)
        best = None
        for a in self.elements(limit=limit):
            if poly.eval_in(self, a) == self.zero:
                if best is None or self.encode(a) < self.encode(best):
                    return a  # elements() is ascending already
        return best



# -- local rings F_q[x]/(P^u) and their truncated-algebra coordinates -------


class PrimePowerLocal:
    """Coordinates of F_q[x]/(P^u) as a truncated algebra over F_q[x]/(P).

    The Hensel lift of the residue field inside the local ring makes the
    coefficient map multiplicative; digits are residue-field elements.
    """

    def __init__(self, place_poly, u):
        if not is_irreducible(place_poly):
            raise CcmaError("local ring needs an irreducible place polynomial")
        self.spec = place_poly.spec
        self.P = place_poly.monic()
        self.u = u
        self.d = self.P.degree
        self.modulus = _poly_power(self.P, u)
        self.ring = ExtensionRing(self.spec, self.modulus)
        self.residue = ExtensionRing(self.spec, self.P)
        self._lift_root = self._hensel_root() if u > 1 else None

    def _hensel_root(self):
        ring = self.ring
        deriv = self.P.derivative()
        xi = ring.from_poly(Poly.x(self.spec))
        steps = 0
        prec = 1
        while prec < self.u:
            prec *= 2
            steps += 1
        for _ in range(steps):
            val = self.P.eval_in(ring, xi)
            dval = deriv.eval_in(ring, xi)
            xi = ring.sub(xi, ring.mul(val, ring.inv(dval)))
        assert self.P.eval_in(ring, xi) == ring.zero
        return xi

    def lift(self, z):
        """Hensel lift of a residue-field element into F_q[x]/(P^u)."""
        if self.u == 1:
            return Poly(self.spec, z)
        zp = Poly(self.spec, z)
        acc = self.ring.zero
        for c in reversed(zp.coeffs):
            acc = self.ring.add(
                self.ring.mul(acc, self._lift_root), self.ring.embed_base(c)
            )
        return self.ring.to_poly(acc)

    def to_coords(self, f):
        """Digits (z_0, ..., z_{u-1}) of f mod P^u, each in the residue field."""
        f = f % self.modulus
        digits = []
        for _ in range(self.u):
            z = self.residue.from_poly(f % self.P)
            digits.append(z)
            f = (f - self.lift(z)).divmod(self.P)[0]
        return digits

    def from_coords(self, digits):
        out = Poly.zero(self.spec)
        power = Poly.one(self.spec)
        for z in digits:
            out = out + self.lift(z) * power
            power = power * self.P
        return out % self.modulus


def _poly_power(poly, e):
    out = Poly.one(poly.spec)
    for _ in range(e):
        out = out * poly
    return out


# -- CRT and local expansions (public module operations) --------------------

INFINITY = "infinity"


def crt_reconstruct(pairs):
    """Unique polynomial below the product degree matching all residues.

    `pairs` is a list of (modulus, residue); moduli must be powers of
    pairwise distinct irreducibles and residues must fit below them.
    """
    if not pairs:
        raise CcmaError("need at least one modulus")
    spec = pairs[0][0].spec
    for mod, res in pairs:
        if mod.spec != spec or res.spec != spec:
            raise FieldMismatch("mixed coefficient fields in CRT input")
        if mod.degree < 1:
            raise CcmaError("modulus must have degree >= 1")
        if res.degree >= mod.degree:
            raise DegreeOverflow("residue degree not below modulus degree")
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if pairs[i][0].gcd(pairs[j][0]).degree > 0:
                raise NonCoprimeModuli("moduli share a factor")
    total = Poly.one(spec)
    for mod, _ in pairs:
        total = total * mod.monic()
    acc = Poly.zero(spec)
    for mod, res in pairs:
        mod = mod.monic()
        rest = total.divmod(mod)[0]
        ring = ExtensionRing(spec, mod)
        inv = ring.inv(ring.from_poly(rest))
        term = rest * (ring.to_poly(inv) * res % mod)
        acc = (acc + term) % total
    return acc


def local_expansion(num, den, place, order, normalize=False):
    """First `order` coefficients of the expansion of num/den at a place.

    Finite place: digits in the residue field F_q[x]/(P) with uniformizer P.
    Infinite place: coefficients in F_q with uniformizer 1/x.  With
    `normalize`, a pole is allowed and (pole_order, coeffs) is returned.
    """
    if order < 1:
        raise CcmaError("order must be >= 1")
    spec = num.spec
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if place == INFINITY:
        if num.is_zero():
            out = (0,) * order
            return (0, out) if normalize else out
        m = num.degree - den.degree  # pole order at infinity (if positive)
        pole = max(m, 0)
        if pole and not normalize:
            raise PoleAtPlace("pole at infinity")
        shift = pole - m  # t-adic valuation of x^{-pole} * num/den
        rn = Poly(spec, tuple(reversed([num[i] for i in range(num.degree + 1)])))
        rd = Poly(spec, tuple(reversed([den[i] for i in range(den.degree + 1)])))
        series = _series_div(spec, rn, rd, max(order - shift, 0))
        out = tuple(([0] * shift + series)[:order])
        return (pole, out) if normalize else out
    local = PrimePowerLocal(place, order)
    dmod = den % local.modulus
    if den.gcd(place).degree > 0:
        # valuation bookkeeping: strip common P factors from num and den
        v = 0
        nn, dd = num, den
        while dd.gcd(place).degree > 0:
            q, r = dd.divmod(place)
            if not r.is_zero():
                break
            dd = q
            v += 1
        nv = 0
        while nv < v and not nn.is_zero():
            q, r = nn.divmod(place)
            if not r.is_zero():
                break
            nn = q
            nv += 1
        if nv < v:
            if not normalize:
                raise PoleAtPlace(f"pole of order {v - nv} at {place!r}")
            pole = v - nv
            ring = ExtensionRing(spec, local.modulus)
            val = ring.mul(ring.from_poly(nn), ring.inv(ring.from_poly(dd)))
            return (pole, tuple(local.to_coords(ring.to_poly(val))))
        num, den = nn, dd
        dmod = den % local.modulus
    ring = ExtensionRing(spec, local.modulus)
    val = ring.mul(ring.from_poly(num), ring.inv(ring.from_poly(dmod)))
    coeffs = tuple(local.to_coords(ring.to_poly(val)))
    return (0, coeffs) if normalize else coeffs


def _series_div(spec, num, den, prec):
    """Coefficients of num/den as a power series (den(0) must be a unit)."""
    if den[0] == 0:
        raise PoleAtPlace("series division by non-unit")
    inv0 = spec.inv(den[0])
    out = []
    rem = list(num.coeffs) + [0] * prec
    for i in range(prec):
        c = spec.mul(rem[i], inv0)
        out.append(c)
        if c:
            for j in range(min(den.degree, prec - i) + 1):
                rem[i + j] = spec.sub(rem[i + j], spec.mul(c, den[j]))
    return out
