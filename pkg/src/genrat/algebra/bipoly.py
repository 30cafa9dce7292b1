"""Sparse bivariate polynomials, ternary forms and the polynomial parser."""

from genrat.algebra import upoly
from genrat.errors import ParseError, PreconditionError

MAX_PARSED_DEGREE = 400


class BiPoly:
    """Immutable sparse polynomial in X, Y over the field K.

    ``terms`` maps exponent pairs (i, j) to nonzero coefficients of X^i Y^j.
    """

    __slots__ = ("K", "terms", "_hash")

    def __init__(self, K, terms=None, _clean=False):
        self.K = K
        if terms is None:
            terms = {}
        if not _clean:
            z = K.zero
            terms = {e: c for e, c in terms.items() if c != z}
        self.terms = terms
        self._hash = None

    # -------------------------------------------------------- constructors
    @classmethod
    def const(cls, K, c):
        return cls(K, {(0, 0): c})

    @classmethod
    def x(cls, K):
        return cls(K, {(1, 0): K.one}, True)

    @classmethod
    def y(cls, K):
        return cls(K, {(0, 1): K.one}, True)

    @classmethod
    def from_ylist(cls, K, rows):
        """Build from a list over powers of Y of univariate polynomials in X."""
        terms = {}
        for j, row in enumerate(rows):
            for i, c in enumerate(row):
                if c != K.zero:
                    terms[(i, j)] = c
        return cls(K, terms, True)

    @classmethod
    def from_xlist(cls, K, rows):
        terms = {}
        for i, row in enumerate(rows):
            for j, c in enumerate(row):
                if c != K.zero:
                    terms[(i, j)] = c
        return cls(K, terms, True)

    # -------------------------------------------------------- basic data
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(e == (0, 0) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0, 0), self.K.zero)

    @property
    def deg_x(self):
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self):
        return max((j for _, j in self.terms), default=-1)

    @property
    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def order(self):
        """Lowest total degree of a term (multiplicity at the origin)."""
        return min((i + j for i, j in self.terms), default=-1)

    def form(self, d):
        """Homogeneous component of degree d."""
        return BiPoly(self.K, {e: c for e, c in self.terms.items() if sum(e) == d}, True)

    def leading_form(self):
        return self.form(self.total_degree)

    def coeff(self, i, j):
        return self.terms.get((i, j), self.K.zero)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.K is other.K and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((e, self.K.key(c)) for e, c in self.terms.items()))
        return self._hash

    def sort_key(self):
        """Deterministic order: degree data, then exponent vectors and coefficient codes."""
        K = self.K
        items = sorted(self.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))
        return (self.total_degree, self.deg_x, len(items),
                tuple((e, K.key(c)) for e, c in items))

    # -------------------------------------------------------- arithmetic
    def __add__(self, other):
        K = self.K
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = K.add(out[e], c)
                if s == K.zero:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return BiPoly(K, out, True)

    def __neg__(self):
        K = self.K
        return BiPoly(K, {e: K.neg(c) for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        K = self.K
        if not isinstance(other, BiPoly):
            return self.scale(other)
        out = {}
        kadd, kmul = K.add, K.mul
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                prod = kmul(c1, c2)
                if e in out:
                    out[e] = kadd(out[e], prod)
                else:
                    out[e] = prod
        return BiPoly(K, out)

    def scale(self, c):
        K = self.K
        if c == K.zero:
            return BiPoly(K)
        return BiPoly(K, {e: K.mul(v, c) for e, v in self.terms.items()}, True)

    def __pow__(self, n):
        result = BiPoly.const(self.K, self.K.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def add_const(self, c):
        return self + BiPoly.const(self.K, c)

    def deriv_x(self):
        K = self.K
        return BiPoly(K, {(i - 1, j): K.mul(K.from_int(i), c)
                          for (i, j), c in self.terms.items() if i > 0})

    def deriv_y(self):
        K = self.K
        return BiPoly(K, {(i, j - 1): K.mul(K.from_int(j), c)
                          for (i, j), c in self.terms.items() if j > 0})

    def evaluate(self, x, y):
        K = self.K
        acc = K.zero
        for (i, j), c in self.terms.items():
            acc = K.add(acc, K.mul(c, K.mul(K.pow(x, i), K.pow(y, j))))
        return acc

    def swap(self):
        return BiPoly(self.K, {(j, i): c for (i, j), c in self.terms.items()}, True)

    def map_coeffs(self, emb):
        """Apply a field embedding (or any coefficient map with a ``dst``)."""
        return BiPoly(emb.dst, {e: emb(c) for e, c in self.terms.items()})

    def monic_scale(self, c):
        """Divide by the nonzero constant c."""
        return self.scale(self.K.inv(c))

    def shift(self, a, b):
        """Return f(X + a, Y + b)."""
        K = self.K
        rows = self.to_ylist()
        rows = [upoly.taylor_shift(K, r, a) for r in rows]
        # shift in y: treat as polynomial in y with coefficients in K[x]
        n = len(rows)
        if b != K.zero:
            for i in range(n - 1):
                for j in range(n - 2, i - 1, -1):
                    rows[j] = upoly.add(K, rows[j], upoly.scale(K, rows[j + 1], b))
        return BiPoly.from_ylist(K, rows)

    # -------------------------------------------------------- conversions
    def to_ylist(self):
        """List over powers of Y of polynomials in X (coefficient lists)."""
        K = self.K
        dy = self.deg_y
        rows = [[] for _ in range(dy + 1)]
        dx = [0] * (dy + 1)
        for (i, j) in self.terms:
            if i + 1 > dx[j]:
                dx[j] = i + 1
        for j in range(dy + 1):
            rows[j] = [K.zero] * dx[j]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        return rows

    def to_xlist(self):
        return self.swap().to_ylist()

    def univariate_x(self):
        """Coefficient list in X; requires deg_y <= 0."""
        if self.deg_y > 0:
            raise PreconditionError("polynomial depends on Y")
        rows = self.to_ylist()
        return rows[0] if rows else []

    def univariate_y(self):
        if self.deg_x > 0:
            raise PreconditionError("polynomial depends on X")
        return self.swap().univariate_x()

    def eval_x(self, a):
        """Specialise X = a; returns a coefficient list in Y."""
        K = self.K
        return upoly.trim(K, [upoly.evaluate(K, r, a) for r in self.to_ylist()])

    def eval_y(self, b):
        return self.swap().eval_x(b)

    def is_pth_power_shape(self, p):
        return all(i % p == 0 and j % p == 0 for i, j in self.terms)

    def __repr__(self):
        return f"BiPoly({self.to_str()})"

    def to_str(self, names=("X", "Y")):
        return format_terms(self.K, {(i, j): c for (i, j), c in self.terms.items()}, names)


def format_terms(K, terms, names):
    if not terms:
        return "0"
    order = sorted(terms, key=lambda e: (-sum(e), tuple(-v for v in e)))
    parts = []
    for e in order:
        c = terms[e]
        mon = "*".join(
            (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k)
        cs = K.fmt(c)
        if not mon:
            parts.append(cs)
        elif c == K.one:
            parts.append(mon)
        else:
            if "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            parts.append(f"{cs}*{mon}")
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


class HomPoly:
    """Homogeneous polynomial of degree d in X, Y, Z (terms keyed by (i, j, l))."""

    __slots__ = ("K", "d", "terms")

    def __init__(self, K, d, terms):
        z = K.zero
        clean = {}
        for e, c in terms.items():
            if c == z:
                continue
            if len(e) != 3 or sum(e) != d or min(e) < 0:
                raise PreconditionError(f"term {e} is not of degree {d}")
            clean[e] = c
        self.K = K
        self.d = d
        self.terms = clean

    def __eq__(self, other):
        return isinstance(other, HomPoly) and self.K is other.K and \
            self.d == other.d and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def evaluate(self, x, y, z):
        K = self.K
        acc = K.zero
        for (i, j, l), c in self.terms.items():
            acc = K.add(acc, K.mul(c, K.mul(K.pow(x, i), K.mul(K.pow(y, j), K.pow(z, l)))))
        return acc

    def partial(self, var):
        K = self.K
        k = "XYZ".index(var)
        out = {}
        for e, c in self.terms.items():
            if e[k] == 0:
                continue
            e2 = list(e)
            e2[k] -= 1
            v = K.mul(K.from_int(e[k]), c)
            if v != K.zero:
                out[tuple(e2)] = v
        return HomPoly(K, self.d - 1, out)

    def map_coeffs(self, emb):
        return HomPoly(emb.dst, self.d, {e: emb(c) for e, c in self.terms.items()})

    def to_str(self):
        return format_terms(self.K, self.terms, ("X", "Y", "Z"))

    def __repr__(self):
        return f"HomPoly({self.to_str()})"


def homogenize(f, d=None):
    """Z^d f(X/Z, Y/Z) with d = total degree of f unless given."""
    if f.is_zero():
        raise PreconditionError("cannot homogenize the zero polynomial")
    if d is None:
        d = f.total_degree
    return HomPoly(f.K, d, {(i, j, d - i - j): c for (i, j), c in f.terms.items()})


CHARTS = ("Z", "X", "Y")


def dehomogenize(h, chart="Z"):
    """Set the chart variable to 1.

    Chart Z gives a polynomial in (X, Y), chart X one in (Y, Z) and chart Y
    one in (X, Z), always in that variable order.
    """
    out = {}
    K = h.K
    for (i, j, l), c in h.terms.items():
        if chart == "Z":
            e = (i, j)
        elif chart == "X":
            e = (j, l)
        elif chart == "Y":
            e = (i, l)
        else:
            raise ValueError(f"unknown chart {chart!r}")
        out[e] = K.add(out.get(e, K.zero), c)
    return BiPoly(K, out)


# ---------------------------------------------------------------- parsing

_OPS = "+-*^()"


def _tokenize(text, variables):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch in variables:
            tokens.append(("var", variables.index(ch), i))
            i += 1
        elif ch in _OPS:
            tokens.append((ch, None, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    """Recursive-descent parser producing integer-coefficient term maps."""

    def __init__(self, text, variables):
        self.nvars = len(variables)
        self.tokens = _tokenize(text, variables)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[0]!r}", tok[2])
        return value

    def expr(self):
        acc = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            acc = _padd(acc, rhs if op == "+" else _pscale(rhs, -1))
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "*":
            self.take()
            acc = _pmul(acc, self.unary(), self.peek()[2])
        return acc

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return _pscale(self.unary(), -1)
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer", tok[2])
            self.take()
            e = tok[1]
            deg = max((sum(k) for k in base), default=0)
            if deg * e > MAX_PARSED_DEGREE:
                raise ParseError(f"degree exceeds {MAX_PARSED_DEGREE}", tok[2])
            result = {(0,) * self.nvars: 1}
            for _ in range(e):
                result = _pmul(result, base, tok[2])
            return result
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return {(0,) * self.nvars: tok[1]} if tok[1] else {}
        if tok[0] == "var":
            self.take()
            e = [0] * self.nvars
            e[tok[1]] = 1
            return {tuple(e): 1}
        if tok[0] == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if tok[0] == "end":
            raise ParseError("unexpected end of input", tok[2])
        raise ParseError(f"unexpected token {tok[0]!r}", tok[2])


def _padd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
        if out[e] == 0:
            del out[e]
    return out


def _pscale(a, k):
    return {e: c * k for e, c in a.items()}


def _pmul(a, b, position):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    out = {e: c for e, c in out.items() if c}
    if out and max(sum(e) for e in out) > MAX_PARSED_DEGREE:
        raise ParseError(f"degree exceeds {MAX_PARSED_DEGREE}", position)
    return out


def parse_polynomial(text, K):
    """Parse a polynomial in X and Y with integer coefficients into K[X, Y]."""
    ints = _Parser(text, "XY").parse()
    return BiPoly(K, {e: K.from_int(c) for e, c in ints.items()})


def parse_homogeneous(text, K):
    """Parse a ternary form in X, Y, Z; homogeneity is checked."""
    ints = _Parser(text, "XYZ").parse()
    terms = {e: K.from_int(c) for e, c in ints.items()}
    terms = {e: c for e, c in terms.items() if c != K.zero}
    if not terms:
        raise ParseError("form is zero over this field", 0)
    degs = {sum(e) for e in terms}
    if len(degs) != 1:
        raise ParseError("polynomial is not homogeneous", 0)
    return HomPoly(K, degs.pop(), terms)


def parse_element(text, K):
    """Parse a field element written as a polynomial in the generator ``a``."""
    ints = _Parser(text, "a").parse()
    if any(e[0] > 0 for e in ints) and getattr(K, "degree", 1) == 1:
        raise ParseError(f"the field {K.descriptor} has no generator a", 0)
    gen = K.from_vec([0, 1]) if any(e[0] > 0 for e in ints) else K.one
    acc = K.zero
    for (i,), c in ints.items():
        acc = K.add(acc, K.mul(K.from_int(c), K.pow(gen, i)))
    return acc
