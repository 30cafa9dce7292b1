"""Exact coefficient fields: the rationals, number fields and finite fields.

Finite fields F_{p^n} are realised as single quotients F_p[a]/(m) of the
prime field, never as towers.  The modulus ``m`` of F_{p^n} is the first
monic primitive polynomial of degree n in the order of its integer code
``c_0 + c_1 p + ... + c_{n-1} p^{n-1}``, so every field is canonical and
``finite_field(p, n)`` always returns the same object.  Embeddings between
fields are computed on demand by root finding.

Three finite-field implementations share one interface:

* ``PrimeField``: integers modulo p.
* ``ZechField``: small extensions; elements are codes (0 is zero, ``k + 1``
  stands for ``g**k`` with g a root of the modulus) and arithmetic is done
  with logarithm and Zech tables.
* ``PolyField``: large extensions of characteristic 2; elements are the
  bit vectors of their coordinates and multiplication is carry-less.
* ``PackedField``: large extensions of odd characteristic; coordinates are
  packed into 64-bit slots of one integer.

Characteristic 0 uses ``Rationals`` (``fractions.Fraction`` elements) and
``NumberField`` (residues modulo an irreducible rational polynomial, stored
as tuples of Fractions).  Number fields are limited to degree
``NUMBER_FIELD_DEGREE_BOUND``.
"""

import array as _array
import math
import random as _random
from fractions import Fraction
from functools import lru_cache

import sympy

from genrat.algebra import upoly
from genrat.errors import ParseError, UnsupportedError

NUMBER_FIELD_DEGREE_BOUND = 8
ZECH_TABLE_LIMIT = 1 << 20
EMBEDDING_TABLE_LIMIT = 1 << 16


class Field:
    """Shared helpers; subclasses supply the arithmetic."""

    characteristic = 0
    degree = 1
    is_finite = False

    @property
    def char_exponent(self):
        return self.characteristic if self.characteristic else 1

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_zero(self, a):
        return a == self.zero

    def __repr__(self):
        return f"<field {self.descriptor}>"


# ---------------------------------------------------------------- finite fields

class FiniteField(Field):
    is_finite = True

    def __init__(self, p, n, modulus):
        self.characteristic = p
        self.degree = n
        self.q = p ** n
        self.modulus = tuple(modulus)
        self.zero = 0
        self.one = 1

    @property
    def descriptor(self):
        p, n = self.characteristic, self.degree
        return f"fp:{p}" if n == 1 else f"fp:{p}^{n}"

    @property
    def prime_field(self):
        return finite_field(self.characteristic, 1)

    def random(self, rng):
        return self.from_key(rng.randrange(self.q))

    def elements(self):
        """All elements, ordered by their vector code."""
        return [self.from_key(k) for k in range(self.q)]

    def nonzero_elements(self):
        return [self.from_key(k) for k in range(1, self.q)]

    def pth_root(self, a):
        p, n = self.characteristic, self.degree
        return self.pow(a, p ** (n - 1)) if n > 1 else a

    def frobenius(self, a, times=1):
        return self.pow(a, self.characteristic ** (times % self.degree))

    def fmt(self, a):
        return _fmt_vec(self.to_vec(a))

    def factor_squarefree(self, f):
        return upoly.factor_squarefree_finite(self, f)

    def from_key(self, k):
        p = self.characteristic
        vec = []
        for _ in range(self.degree):
            k, r = divmod(k, p)
            vec.append(r)
        return self.from_vec(vec)

    def element_degree(self, a):
        """Degree over F_p of the smallest subfield containing a."""
        for d in _divisors(self.degree):
            if self.frobenius(a, d) == a:
                return d
        return self.degree


class PrimeField(FiniteField):
    def __init__(self, p):
        super().__init__(p, 1, (0, 1))
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, k):
        return k % self.p

    def key(self, a):
        return a

    def to_vec(self, a):
        return [a]

    def from_vec(self, v):
        return v[0] % self.p if v else 0

    def from_key(self, k):
        return k

    def fmt(self, a):
        return str(a)

    def random(self, rng):
        return rng.randrange(self.p)

    def pth_root(self, a):
        return a


def _fmt_vec(vec):
    parts = []
    for i in range(len(vec) - 1, -1, -1):
        c = vec[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mon = "a" if i == 1 else f"a^{i}"
            parts.append(mon if c == 1 else f"{c}*{mon}")
    return "+".join(parts) if parts else "0"


def _vec_to_key(vec, p):
    k = 0
    for c in reversed(vec):
        k = k * p + c
    return k


class ZechField(FiniteField):
    """Extension field with table-driven arithmetic on logarithm codes."""

    def __init__(self, p, n, modulus):
        super().__init__(p, n, modulus)
        q = self.q
        self._order = q - 1
        # exp_key[k] = vector code of g^k
        exp_key = [0] * (q - 1)
        log = [0] * q
        vec = [1] + [0] * (n - 1)
        mod = modulus
        for k in range(q - 1):
            code = _vec_to_key(vec, p)
            exp_key[k] = code
            log[code] = k
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(n):
                    vec[i] = (vec[i] - top * mod[i]) % p
        self._exp_key = exp_key
        self._log = log
        # zech[d] = code of 1 + g^d
        zech = [0] * (q - 1)
        for d in range(q - 1):
            code = exp_key[d]
            c0 = code % p
            plus_one = code - c0 + (c0 + 1) % p
            zech[d] = 0 if plus_one == 0 else log[plus_one] + 1
        self._zech = zech
        self._half = 0 if p == 2 else (q - 1) // 2

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        if b < a:
            a, b = b, a
        z = self._zech[b - a]
        if z == 0:
            return 0
        return (a + z - 2) % self._order + 1

    def neg(self, a):
        if a == 0 or self._half == 0:
            return a
        return (a - 1 + self._half) % self._order + 1

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return (a + b - 2) % self._order + 1

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return (1 - a) % self._order + 1

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return (a - b) % self._order + 1

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return (a - 1) * e % self._order + 1

    def from_int(self, k):
        k %= self.characteristic
        return 0 if k == 0 else self._log[k] + 1

    def key(self, a):
        return 0 if a == 0 else self._exp_key[a - 1]

    def from_key(self, k):
        return 0 if k == 0 else self._log[k] + 1

    def to_vec(self, a):
        k = self.key(a)
        p = self.characteristic
        vec = []
        for _ in range(self.degree):
            k, r = divmod(k, p)
            vec.append(r)
        return vec

    def from_vec(self, v):
        p = self.characteristic
        return self.from_key(_vec_to_key([c % p for c in v[: self.degree]], p))

    def generator(self):
        return 2


class PolyField(FiniteField):
    """Extension field with elements stored as coordinate-vector codes."""

    def __init__(self, p, n, modulus):
        super().__init__(p, n, modulus)
        if p == 2:
            self._mod_bits = sum(1 << i for i, c in enumerate(modulus) if c)

    def to_vec(self, a):
        p = self.characteristic
        vec = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            vec.append(r)
        return vec

    def from_vec(self, v):
        p = self.characteristic
        return _vec_to_key([c % p for c in v[: self.degree]] +
                           [0] * max(0, self.degree - len(v)), p)

    def key(self, a):
        return a

    def from_key(self, k):
        return k

    def from_int(self, k):
        return k % self.characteristic

    def add(self, a, b):
        if self.characteristic == 2:
            return a ^ b
        p = self.characteristic
        va, vb = self.to_vec(a), self.to_vec(b)
        return _vec_to_key([(x + y) % p for x, y in zip(va, vb)], p)

    def neg(self, a):
        if self.characteristic == 2:
            return a
        p = self.characteristic
        return _vec_to_key([-x % p for x in self.to_vec(a)], p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        n = self.degree
        if self.characteristic == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> n & 1:
                    a ^= self._mod_bits
            return r
        p = self.characteristic
        va, vb = self.to_vec(a), self.to_vec(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    if y:
                        prod[i + j] += x * y
        mod = self.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(n):
                    prod[k - n + i] -= c * mod[i]
        return _vec_to_key([c % p for c in prod[:n]], p)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        e %= self.q - 1
        if a == 0:
            return 0 if e else 1
        return Field.pow(self, a, e)


class PackedField(FiniteField):
    """Large extension of odd characteristic with coordinates packed into 64-bit slots.

    An element is the integer sum of c_i * 2^(64 i) with 0 <= c_i < p, so
    addition and polynomial multiplication run as single big-integer
    operations; only the final reduction of each slot modulo p touches the
    coordinates one at a time.  Keys are still the base-p vector codes.
    """

    SLOT = 64

    def __init__(self, p, n, modulus):
        super().__init__(p, n, modulus)
        if (2 * n) * (p - 1) ** 2 * (n + 1) >= 1 << (self.SLOT - 2):
            raise UnsupportedError(f"characteristic {p} too large for packed arithmetic")
        w = self.SLOT
        self._ones = sum(1 << (w * i) for i in range(n))
        self._high = (1 << (w - 1)) - p
        self._guard = sum(self._high << (w * i) for i in range(n))
        self._mask = (1 << w) - 1
        # packed residues of x^k modulo the modulus for k = n .. 2n - 2
        red = []
        vec = [(-c) % p for c in modulus[:n]]
        for _ in range(n - 1):
            red.append(self._pack(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                vec = [(v - top * m) % p for v, m in zip(vec, modulus)]
        self._red = red

    def _pack(self, vec):
        w = self.SLOT
        out = 0
        for i, c in enumerate(vec):
            if c:
                out |= c << (w * i)
        return out

    def _unpack(self, a, count):
        slots = _array.array("Q")
        slots.frombytes(a.to_bytes(8 * count, "little"))
        return slots.tolist()

    def _reduce_slots(self, s):
        """Map slots in [0, 2p) to [0, p)."""
        hi = ((s + self._guard) >> (self.SLOT - 1)) & self._ones
        return s - hi * self.characteristic

    def to_vec(self, a):
        return self._unpack(a, self.degree)

    def from_vec(self, v):
        p = self.characteristic
        v = [c % p for c in v[: self.degree]]
        return self._pack(v)

    def key(self, a):
        return _vec_to_key(self.to_vec(a), self.characteristic)

    def from_int(self, k):
        return k % self.characteristic

    def add(self, a, b):
        return self._reduce_slots(a + b)

    def neg(self, a):
        if a == 0:
            return 0
        return self._reduce_slots(self.characteristic * self._ones - a)

    def sub(self, a, b):
        return self._reduce_slots(a + self.characteristic * self._ones - b)

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        n, p = self.degree, self.characteristic
        prod = a * b
        digits = self._unpack(prod, 2 * n)
        low = prod & ((1 << (self.SLOT * n)) - 1)
        for k in range(n, 2 * n - 1):
            c = digits[k] % p
            if c:
                low += c * self._red[k - n]
        return self._pack([c % p for c in self._unpack(low, n)])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        e %= self.q - 1
        if a == 0:
            return 0 if e else 1
        return Field.pow(self, a, e)


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _int_poly(code, p, n):
    vec = []
    for _ in range(n):
        code, r = divmod(code, p)
        vec.append(r)
    return vec + [1]


def _is_irreducible_mod_p(F, m):
    """Rabin's test over the prime field F for monic m."""
    n = len(m) - 1
    p = F.p
    x = [0, 1]
    if upoly.powmod(F, x, p ** n, m) != upoly.rem(F, x, m):
        return False
    for r in sympy.primefactors(n):
        h = upoly.sub(F, upoly.powmod(F, x, p ** (n // r), m), x)
        if len(upoly.gcd(F, h, m)) != 1:
            return False
    return True


def _is_primitive(F, m, q):
    x = [0, 1]
    for r in sympy.primefactors(q - 1):
        if upoly.powmod(F, x, (q - 1) // r, m) == [1]:
            return False
    return True


@lru_cache(maxsize=None)
def canonical_modulus(p, n):
    """First monic primitive polynomial of degree n over F_p (integer-code order)."""
    F = PrimeField(p)
    q = p ** n
    for code in range(1, p ** n):
        m = _int_poly(code, p, n)
        if m[0] == 0:
            continue
        if _is_irreducible_mod_p(F, m) and _is_primitive(F, m, q):
            return tuple(m)
    raise AssertionError("no primitive polynomial found")


@lru_cache(maxsize=None)
def finite_field(p, n=1):
    if n < 1:
        raise ValueError("extension degree must be positive")
    if n == 1:
        return PrimeField(p)
    m = canonical_modulus(p, n)
    if p ** n <= ZECH_TABLE_LIMIT:
        return ZechField(p, n, m)
    if p == 2:
        return PolyField(p, n, m)
    return PackedField(p, n, m)


# ---------------------------------------------------------------- characteristic 0

class Rationals(Field):
    characteristic = 0
    degree = 1
    q = None
    zero = Fraction(0)
    one = Fraction(1)
    modulus = (Fraction(0), Fraction(1))
    descriptor = "q"

    @property
    def prime_field(self):
        return self

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def pow(self, a, e):
        return a ** e

    def from_int(self, k):
        return Fraction(k)

    def key(self, a):
        return (abs(a.numerator) + a.denominator, a.denominator, a.numerator)

    def fmt(self, a):
        return str(a)

    def to_vec(self, a):
        return [a]

    def from_vec(self, v):
        return Fraction(v[0]) if v else Fraction(0)

    def random(self, rng):
        return Fraction(rng.randint(-10 ** 6, 10 ** 6))

    def factor_squarefree(self, f):
        return factor_rational(f)


QQ = Rationals()


def factor_rational(f):
    """Monic irreducible factors over Q of a squarefree rational polynomial."""
    x = sympy.Symbol("x")
    expr = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator)
                                     for c in f])), x, domain="QQ")
    _, facs = expr.factor_list()
    out = []
    for g, e in facs:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())]
        out.append(upoly.monic(QQ, coeffs))
    out.sort(key=lambda a: upoly.key(QQ, a))
    return out


class NumberField(Field):
    """Q[a]/(m) with m monic irreducible over Q; elements are tuples of Fractions."""

    characteristic = 0
    q = None

    def __init__(self, modulus):
        m = upoly.monic(QQ, [Fraction(c) for c in modulus])
        self.modulus = tuple(m)
        self.degree = len(m) - 1
        if self.degree > NUMBER_FIELD_DEGREE_BOUND:
            raise UnsupportedError(
                f"number field of degree {self.degree} exceeds the bound "
                f"{NUMBER_FIELD_DEGREE_BOUND}")
        self.zero = ()
        self.one = (Fraction(1),)

    @property
    def descriptor(self):
        return f"q[a]/({upoly.to_str(QQ, list(self.modulus), 'a')})"

    @property
    def prime_field(self):
        return QQ

    def _norm(self, a):
        return tuple(upoly.rem(QQ, list(a), list(self.modulus)))

    def add(self, a, b):
        return tuple(upoly.add(QQ, list(a), list(b)))

    def sub(self, a, b):
        return tuple(upoly.sub(QQ, list(a), list(b)))

    def neg(self, a):
        return tuple(-c for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        return self._norm(upoly.mul(QQ, list(a), list(b)))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return tuple(upoly.invmod(QQ, list(a), list(self.modulus)))

    def from_int(self, k):
        return (Fraction(k),) if k else ()

    def from_rational(self, c):
        return (Fraction(c),) if c else ()

    def key(self, a):
        return tuple(QQ.key(c) for c in a)

    def fmt(self, a):
        return upoly.to_str(QQ, list(a), "a")

    def to_vec(self, a):
        return list(a) + [Fraction(0)] * (self.degree - len(a))

    def from_vec(self, v):
        return tuple(upoly.trim(QQ, [Fraction(c) for c in v]))

    def random(self, rng):
        return self.from_int(rng.randint(-10 ** 6, 10 ** 6))

    def generator(self):
        return (Fraction(0), Fraction(1))

    def factor_squarefree(self, f):
        return factor_number_field(self, f)


# ---------------------------------------------------------------- embeddings

class Embedding:
    """Field homomorphism src -> dst determined by the image of the generator."""

    def __init__(self, src, dst, gen_image=None):
        self.src = src
        self.dst = dst
        self.gen_image = gen_image
        self._table = None
        self._inverse = None
        self._basis = None
        if src is dst:
            return
        if src.is_finite and src.degree > 1:
            powers = [dst.one]
            for _ in range(src.degree - 1):
                powers.append(dst.mul(powers[-1], gen_image))
            self._basis = powers
            if src.q <= EMBEDDING_TABLE_LIMIT:
                table = {}
                for k in range(src.q):
                    a = src.from_key(k)
                    table[a] = self._apply_vec(src.to_vec(a))
                self._table = table
        elif isinstance(src, NumberField):
            powers = [dst.one]
            for _ in range(src.degree - 1):
                powers.append(dst.mul(powers[-1], gen_image))
            self._basis = powers

    def _apply_vec(self, vec):
        dst = self.dst
        acc = dst.zero
        for c, b in zip(vec, self._basis):
            if c:
                acc = dst.add(acc, dst.mul(_prime_to(dst, c), b))
        return acc

    @property
    def is_identity(self):
        return self.src is self.dst

    def __call__(self, a):
        if self.src is self.dst:
            return a
        if self._table is not None:
            return self._table[a]
        if self._basis is not None:
            return self._apply_vec(self.src.to_vec(a))
        return _prime_to(self.dst, a)

    def poly(self, f):
        return upoly.trim(self.dst, [self(c) for c in f])

    def preimage(self, b):
        """Return a with self(a) == b, or raise ValueError."""
        if self.src is self.dst:
            return b
        if self._table is not None:
            if self._inverse is None:
                self._inverse = {v: k for k, v in self._table.items()}
            try:
                return self._inverse[b]
            except KeyError:
                raise ValueError("element not in the image of the embedding")
        basis = self._basis or [self.dst.one]
        cols = [self.dst.to_vec(v) for v in basis]
        sol = _solve_prime(self.dst.prime_field, cols, self.dst.to_vec(b))
        if sol is None:
            raise ValueError("element not in the image of the embedding")
        if self._basis is None:
            return sol[0]
        return self.src.from_vec(sol)

    def in_image(self, b):
        try:
            self.preimage(b)
            return True
        except ValueError:
            return False

    def preimage_poly(self, f):
        return upoly.trim(self.src, [self.preimage(c) for c in f])

    def then(self, other):
        """Composition: first self, then other."""
        if self.src is self.dst:
            return other
        if other.src is other.dst:
            return self
        if self.gen_image is None:
            return Embedding(self.src, other.dst)
        return Embedding(self.src, other.dst, other(self.gen_image))


def _prime_to(K, c):
    """Map an element of the prime field (int or Fraction) into K."""
    if K.characteristic:
        return K.from_int(c)
    if isinstance(K, NumberField):
        return K.from_rational(c)
    return Fraction(c)


def _solve_prime(F, cols, target):
    """Solve sum x_j cols[j] = target over the prime field F; None if inconsistent."""
    rows = len(target)
    ncols = len(cols)
    mat = [[cols[j][i] for j in range(ncols)] + [target[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, rows):
            if mat[i][c] != F.zero:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv(mat[r][c])
        mat[r] = [F.mul(v, inv) for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != F.zero:
                f = mat[i][c]
                mat[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if mat[i][ncols] != F.zero:
            return None
    sol = [F.zero] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = mat[i][ncols]
    return sol


@lru_cache(maxsize=None)
def finite_embedding(src, dst):
    """Canonical embedding F_{p^a} -> F_{p^b} (a | b)."""
    if src is dst:
        return Embedding(src, dst)
    if src.characteristic != dst.characteristic or dst.degree % src.degree:
        raise ValueError(f"no embedding {src.descriptor} -> {dst.descriptor}")
    if src.degree == 1:
        return Embedding(src, dst)
    m = [dst.from_int(c) for c in src.modulus]
    root = upoly.roots_finite(dst, m)[0]
    return Embedding(src, dst, root)


def embedding(src, dst):
    if src is dst:
        return Embedding(src, dst)
    if src.is_finite:
        return finite_embedding(src, dst)
    if src is QQ:
        return Embedding(src, dst)
    raise ValueError("number-field embeddings are produced by adjoin_root only")


def extend_field(K, factor):
    """Return (L, emb) with [L:K] = factor."""
    if factor < 1:
        raise ValueError("extension factor must be positive")
    if factor == 1:
        return K, Embedding(K, K)
    if K.is_finite:
        L = finite_field(K.characteristic, K.degree * factor)
        return L, finite_embedding(K, L)
    # characteristic 0: adjoin a root of an irreducible polynomial of that degree
    g = [K.from_int(-2)] + [K.zero] * (factor - 1) + [K.one]
    shift = 2
    while not upoly.is_irreducible(K, g):
        shift += 1
        g = [K.from_int(-shift)] + [K.zero] * (factor - 1) + [K.one]
    L, emb, _ = adjoin_root(K, g)
    return L, emb


def common_field(K1, K2):
    """Smallest canonical finite field containing both (finite fields only)."""
    p = K1.characteristic
    L = finite_field(p, math.lcm(K1.degree, K2.degree))
    return L, finite_embedding(K1, L), finite_embedding(K2, L)


def adjoin_root(K, g):
    """Adjoin a root of the monic irreducible g over K.

    Returns (L, emb, roots) where emb: K -> L and roots lists the roots of
    g in L sorted by key (all of them for finite fields; one for number
    fields).
    """
    g = upoly.monic(K, g)
    k = len(g) - 1
    if k < 1:
        raise ValueError("cannot adjoin a root of a constant")
    if k == 1:
        return K, Embedding(K, K), [K.neg(g[0])]
    if K.is_finite:
        L = finite_field(K.characteristic, K.degree * k)
        emb = finite_embedding(K, L)
        return L, emb, upoly.roots_finite(L, emb.poly(g))
    return _adjoin_number_field(K, g)


# ---------------------------------------------------------------- number fields

def _poly_over_q(K, g):
    """Coefficients of g in K as polynomials (lists of Fractions) in the generator."""
    if K is QQ:
        return [[c] if c else [] for c in g]
    return [list(c) for c in g]


def _bivariate_resultant_q(m, G, shift):
    """Res_t(m(t), G(x - shift*t, t)) over Q, as a univariate polynomial in x.

    G is given as a list over powers of x of polynomials in t.
    """
    x, t = sympy.symbols("x t")
    mt = sum(sympy.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(m))
    expr = 0
    arg = x - shift * t
    for i, coeff in enumerate(G):
        ct = sum(sympy.Rational(c.numerator, c.denominator) * t ** j for j, c in enumerate(coeff))
        expr += ct * arg ** i
    res = sympy.resultant(sympy.Poly(mt, t), sympy.Poly(sympy.expand(expr), t))
    poly = sympy.Poly(res, x, domain="QQ")
    return [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]


def _norm_shifted(K, g, shift):
    m = list(K.modulus)
    return _bivariate_resultant_q(m, _poly_over_q(K, g), shift)


def factor_number_field(K, f):
    """Trager factorization of a monic squarefree f over the number field K."""
    f = upoly.monic(K, f)
    if len(f) <= 2:
        return [f]
    gen = K.generator()
    for s in range(0, 60):
        N = _norm_shifted(K, f, s)
        if upoly.is_squarefree(QQ, N):
            break
    else:
        raise UnsupportedError("no squarefree norm found")
    shift_elt = K.mul(K.from_int(s), gen)
    out = []
    rest = f
    for h in factor_rational(N):
        if len(rest) <= 1:
            break
        hk = [K.from_rational(c) for c in h]
        # h(x + s*a) over K
        hk = upoly.taylor_shift(K, hk, shift_elt)
        d = upoly.gcd(K, rest, hk)
        if len(d) > 1:
            out.append(d)
            rest = upoly.exact_quo(K, rest, d)
    if len(rest) > 1:
        out.append(upoly.monic(K, rest))
    out.sort(key=lambda a: upoly.key(K, a))
    return out


def _adjoin_number_field(K, g):
    base_deg = K.degree
    k = len(g) - 1
    if base_deg * k > NUMBER_FIELD_DEGREE_BOUND:
        raise UnsupportedError(
            f"algebraic data of degree {base_deg * k} exceeds the number-field "
            f"bound {NUMBER_FIELD_DEGREE_BOUND}")
    if K is QQ:
        L = NumberField(g)
        return L, Embedding(QQ, L), [L.generator()]
    # primitive element gamma = beta + s*alpha
    for s in range(1, 60):
        N = _norm_shifted(K, g, s)
        if upoly.is_squarefree(QQ, N):
            break
    else:
        raise UnsupportedError("no primitive element found")
    L = NumberField(N)
    gamma = L.generator()
    # alpha is the common root of m(t) and g(gamma - s t) over L
    m_L = [L.from_rational(c) for c in K.modulus]
    polys = _poly_over_q(K, g)
    # build g(gamma - s*t, t) as polynomial in t over L
    acc = []
    lin = [gamma, L.from_int(-s)]
    for i in range(len(polys) - 1, -1, -1):
        coeff_t = [L.from_rational(c) for c in polys[i]]
        acc = upoly.add(L, upoly.mul(L, acc, lin), coeff_t)
    h = upoly.gcd(L, m_L, upoly.rem(L, acc, m_L) if len(acc) >= len(m_L) else acc)
    if len(h) != 2:
        raise AssertionError("primitive element construction failed")
    alpha = L.neg(h[0])
    emb = Embedding(K, L, alpha)
    beta = L.sub(gamma, L.mul(L.from_int(s), alpha))
    return L, emb, [beta]


# ---------------------------------------------------------------- descriptors

def parse_field(text):
    """Parse ``q``, ``fp:<p>`` or ``fp:<p>^<k>``."""
    s = text.strip()
    if s == "q":
        return QQ
    if not s.startswith("fp:"):
        raise ParseError(f"unknown field descriptor {text!r}", 0)
    body = s[3:]
    if "^" in body:
        ps, ks = body.split("^", 1)
    else:
        ps, ks = body, "1"
    try:
        p, k = int(ps), int(ks)
    except ValueError:
        raise ParseError(f"malformed field descriptor {text!r}", 3)
    if p < 2 or not sympy.isprime(p):
        raise ParseError(f"characteristic {p} is not prime", 3)
    if k < 1:
        raise ParseError(f"extension degree {k} must be positive", 3)
    return finite_field(p, k)


def make_rng(seed):
    return _random.Random(seed)


# ---------------------------------------------------------------- minimal data

def minimal_polynomial(L, a):
    """Monic minimal polynomial over the prime field of a in L (prime-field coefficients)."""
    F = L.prime_field
    if L is F:
        return [F.neg(a), F.one]
    if L.is_finite:
        p = L.characteristic
        conj = [a]
        c = L.pow(a, p)
        while c != a:
            conj.append(c)
            c = L.pow(c, p)
        poly = [L.one]
        for c in conj:
            poly = upoly.mul(L, poly, [L.neg(c), L.one])
        emb = finite_embedding(F, L)
        return [emb.preimage(x) for x in poly]
    powers = [L.one]
    while True:
        cur = L.mul(powers[-1], a)
        sol = _solve_prime(F, [L.to_vec(v) for v in powers], L.to_vec(cur))
        if sol is not None:
            return [F.neg(s) for s in sol] + [F.one]
        powers.append(cur)


def canonical_conjugates(L, a):
    """For finite L: (M, [conjugates of a in M]) with M = F_{p^k} the smallest field containing a.

    The conjugates are sorted by key; M is the canonical field of that degree.
    """
    m = minimal_polynomial(L, a)
    k = len(m) - 1
    M = finite_field(L.characteristic, k)
    roots = upoly.roots_finite(M, [M.from_int(c) for c in m])
    return M, roots


def descend_to_prime_field(f):
    """Rewrite a BiPoly whose coefficients lie in the prime field over that field."""
    from genrat.algebra.bipoly import BiPoly
    K = f.K
    F = K.prime_field
    if K is F:
        return f
    emb = finite_embedding(F, K) if K.is_finite else Embedding(F, K)
    return BiPoly(F, {e: emb.preimage(c) for e, c in f.terms.items()})


def field_with_at_least(K, n):
    """(L, emb) with L an extension of K having at least n elements (K finite)."""
    if not K.is_finite:
        return K, Embedding(K, K)
    k = 1
    while K.q ** k < n:
        k += 1
    return extend_field(K, k)
