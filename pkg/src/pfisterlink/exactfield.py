"""Exact arithmetic kernel: prime fields F_p, finite extensions GF(p^k),
multivariate polynomials and rational functions over them.

Every value is immutable and in a canonical form, so ``==`` decides equality.
Elements of GF(p^k) are stored as integer codes (base-p digit vectors of the
residue polynomial); polynomials as maps from exponent tuples to coefficient
codes; rational functions as gcd-reduced fractions with a monic denominator
under the graded-lex monomial order with x1 < x2 < ... < xm.
"""

from __future__ import annotations

from functools import reduce


class ZeroInverse(ZeroDivisionError):
    """Inversion of the zero element."""


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial or rational function."""


# ---------------------------------------------------------------------------
# univariate helpers over F_p (dense coefficient lists, little endian)


def _upoly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _upoly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _upoly_trim(out)


def _upoly_rem(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        q = (a[-1] * inv_lb) % p
        for i in range(db + 1):
            a[da - db + i] = (a[da - db + i] - q * b[i]) % p
        _upoly_trim(a)
    return a


def _upoly_xgcd(a, b, p):
    # returns (g, s, t) with s*a + t*b = g, all dense lists
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        db, lb = len(r1) - 1, r1[-1]
        inv_lb = pow(lb, p - 2, p)
        q = [0] * (max(len(r0) - len(r1), 0) + 1)
        r = list(r0)
        while r and len(r) - 1 >= db:
            da = len(r) - 1
            c = (r[-1] * inv_lb) % p
            q[da - db] = c
            for i in range(db + 1):
                r[da - db + i] = (r[da - db + i] - c * r1[i]) % p
            _upoly_trim(r)
        _upoly_trim(q)
        r0, r1 = r1, r
        s0, s1 = s1, _upoly_trim([(x - y) % p for x, y in
                                  _zip_pad(s0, _upoly_mul(q, s1, p))])
        t0, t1 = t1, _upoly_trim([(x - y) % p for x, y in
                                  _zip_pad(t0, _upoly_mul(q, t1, p))])
    return r0, s0, t0


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _irreducible(modulus, p):
    """Trial-division irreducibility for the small degrees we support."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] == 0:
        return False
    if k == 1:
        return True
    # try every monic divisor of degree 1..k//2
    for d in range(1, k // 2 + 1):
        for code in range(p ** d):
            div = []
            c = code
            for _ in range(d):
                div.append(c % p)
                c //= p
            div.append(1)
            if not _upoly_rem(modulus, div, p):
                return False
    return True


def _first_irreducible(p, k):
    """Lexicographically first monic irreducible of degree k over F_p."""
    for code in range(p ** k):
        cand = []
        c = code
        for _ in range(k):
            cand.append(c % p)
            c //= p
        cand.append(1)
        if _irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# finite fields


class GF:
    """The finite field GF(p^k), elements encoded as ints in [0, p^k).

    The code of an element is the base-p encoding of its residue polynomial
    in the generator u, so for p = 2 addition is XOR on codes.
    """

    def __init__(self, p, k=1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1 or k > 8:
            raise ValueError("extension degree must be in 1..8")
        if k == 1:
            if modulus is not None and tuple(modulus) != (0, 1):
                raise ValueError("prime field takes no modulus")
            modulus = (0, 1)
        elif modulus is None:
            modulus = _first_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _irreducible(list(modulus), p):
                raise ValueError("modulus is reducible")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        self._mul_table = None
        self._inv_table = None

    # -- code level ---------------------------------------------------

    def _digits(self, code):
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return out

    def _code(self, digits):
        c = 0
        for d in reversed(digits[: self.k]):
            c = c * self.p + (d % self.p)
        return c

    def add_codes(self, a, b):
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._code([(x + y) % self.p for x, y in zip(da, db)])

    def neg_code(self, a):
        if self.p == 2:
            return a
        return self._code([(-x) % self.p for x in self._digits(a)])

    def mul_codes(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.q <= 256:
            if self._mul_table is None:
                self._build_tables()
            return self._mul_table[a][b]
        return self._mul_codes_raw(a, b)

    def _mul_codes_raw(self, a, b):
        prod = _upoly_mul(self._digits(a), self._digits(b), self.p)
        if len(prod) > self.k:
            prod = _upoly_rem(prod, list(self.modulus), self.p)
        return self._code(prod + [0] * self.k)

    def inv_code(self, a):
        if a == 0:
            raise ZeroInverse("cannot invert 0")
        if self.q <= 256:
            if self._inv_table is None:
                self._build_tables()
            return self._inv_table[a]
        g, s, _ = _upoly_xgcd(self._digits(a), list(self.modulus), self.p)
        c = pow(g[0], self.p - 2, self.p)
        return self._code(_upoly_trim([(x * c) % self.p for x in s]) + [0] * self.k)

    def pow_code(self, a, n):
        if n < 0:
            return self.pow_code(self.inv_code(a), -n)
        r, base = 1 % self.q if False else 1, a
        r = self._code([1] + [0] * (self.k - 1))
        while n:
            if n & 1:
                r = self.mul_codes(r, base)
            base = self.mul_codes(base, base)
            n >>= 1
        return r

    def _build_tables(self):
        q = self.q
        tbl = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                v = self._mul_codes_raw(a, b)
                tbl[a][b] = v
                tbl[b][a] = v
        self._mul_table = tbl
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if tbl[a][b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv

    # -- element level --------------------------------------------------

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, int):
            if self.k == 1:
                return FieldElement(self, value % self.p)
            if 0 <= value < self.q:
                return FieldElement(self, value)
            return FieldElement(self, value % self.p)
        raise TypeError(f"cannot coerce {value!r}")

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def gen(self):
        if self.k == 1:
            raise ValueError("prime field has no extension generator")
        return FieldElement(self, self.p)

    def elements(self):
        for c in range(self.q):
            yield FieldElement(self, c)

    def random_element(self, rng):
        return FieldElement(self, rng.randrange(self.q))

    def trace_code(self, a):
        """Absolute trace GF(p^k) -> F_p, returned as an int."""
        acc, cur = 0, a
        for _ in range(self.k):
            acc = self.add_codes(acc, cur)
            cur = self.pow_code(cur, self.p)
        return acc  # lies in the prime subfield, code == value

    def sqrt_code(self, a):
        """Square root (unique in characteristic 2; p odd unsupported)."""
        if self.p != 2:
            raise ValueError("sqrt_code only supported for p = 2")
        return self.pow_code(a, self.q // 2) if self.k > 1 else a

    @property
    def characteristic(self):
        return self.p

    def __eq__(self, other):
        return (isinstance(other, GF) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"


class FieldElement:
    """Immutable element of a GF instance."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def is_zero(self):
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add_codes(self.code, o.code))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_code(self.code))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul_codes(self.code, o.code))

    __rmul__ = __mul__

    def inverse(self):
        if self.code == 0:
            raise ZeroInverse("cannot invert 0")
        return FieldElement(self.field, self.field.inv_code(self.code))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field.element(other) / self

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow_code(self.code, n))

    def trace(self):
        return self.field.trace_code(self.code)

    def sqrt(self):
        return FieldElement(self.field, self.field.sqrt_code(self.code))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == self.field.element(other).code
        return (isinstance(other, FieldElement) and self.field == other.field
                and self.code == other.code)

    def __hash__(self):
        return hash((self.field, self.code))

    def __repr__(self):
        if self.field.k == 1:
            return str(self.code)
        digits = self.field._digits(self.code)
        parts = []
        for i, c in enumerate(digits):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}u" if i == 1 else f"{head}u^{i}")
        return " + ".join(parts) if parts else "0"


def field_inverse(a):
    """Multiplicative inverse; raises ZeroInverse on 0."""
    if isinstance(a, RatFunc):
        return a.inverse()
    return a.inverse()


# ---------------------------------------------------------------------------
# multivariate polynomials


def _grlex_key(e):
    return (sum(e), tuple(reversed(e)))


class PolyRing:
    """F[x1..xm] over a GF coefficient field, graded-lex order, x1 < ... < xm."""

    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const_code(1)

    def const_code(self, code):
        if code == 0:
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: code})

    def const(self, value):
        c = self.field.element(value).code
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def monomial(self, exponents, coeff=1):
        c = self.field.element(coeff).code
        if c == 0:
            return self.zero()
        return Poly(self, {tuple(exponents): c})

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names)

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"


class Poly:
    """Immutable multivariate polynomial; terms: exponent tuple -> nonzero code."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic structure ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1
                                  and not any(next(iter(self.terms))))

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_code(self):
        if not self.terms:
            return 0
        return self.terms[(0,) * self.ring.nvars]

    def leading(self):
        """(exponent, code) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var):
        return max((e[var] for e in self.terms), default=-1)

    def min_exponents(self):
        nv = self.ring.nvars
        mins = [min(e[i] for e in self.terms) for i in range(nv)]
        return tuple(mins)

    def variables(self):
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return used

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = f.add_codes(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        if f.p == 2:
            return self
        return Poly(self.ring, {e: f.neg_code(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if isinstance(other, RatFunc):
            return NotImplemented
        f = self.ring.field
        if not self.terms or not other.terms:
            return Poly(self.ring, {})
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = f.add_codes(out.get(e, 0), f.mul_codes(c1, c2))
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def scale_code(self, c):
        f = self.ring.field
        if c == 0:
            return Poly(self.ring, {})
        if c == 1:
            return self
        return Poly(self.ring, {e: f.mul_codes(v, c) for e, v in self.terms.items()})

    def shift(self, exponents):
        """Multiply by the (possibly Laurent) monomial x^exponents; all
        resulting exponents must stay non-negative."""
        out = {}
        for e, c in self.terms.items():
            ne = tuple(x + y for x, y in zip(e, exponents))
            if any(x < 0 for x in ne):
                raise ValueError("negative exponent after shift")
            out[ne] = c
        return Poly(self.ring, out)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        r = self.ring.one()
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def frobenius(self):
        """p-th power, computed term-wise (freshman's dream)."""
        f = self.ring.field
        p = f.p
        return Poly(self.ring, {
            tuple(x * p for x in e): f.pow_code(c, p)
            for e, c in self.terms.items()})

    def sqrt(self):
        """Exact square root in characteristic 2 (raises if not a square)."""
        f = self.ring.field
        if f.p != 2:
            raise ValueError("sqrt only in characteristic 2")
        out = {}
        for e, c in self.terms.items():
            if any(x % 2 for x in e):
                raise ValueError("not a perfect square")
            out[tuple(x // 2 for x in e)] = f.sqrt_code(c)
        return Poly(self.ring, out)

    def derivative(self, var):
        f = self.ring.field
        p = f.p
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k % p == 0:
                continue
            ne = list(e)
            ne[var] = k - 1
            v = f.mul_codes(c, k % p)
            ne = tuple(ne)
            w = f.add_codes(out.get(ne, 0), v)
            if w:
                out[ne] = w
            else:
                out.pop(ne, None)
        return Poly(self.ring, out)

    def monic(self):
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        _, lc = self.leading()
        if lc == 1:
            return self
        return self.scale_code(self.ring.field.inv_code(lc))

    # -- division & gcd ---------------------------------------------------

    def divexact(self, other):
        """Exact division; raises ValueError if the division is not exact."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if other.is_constant():
            return self.scale_code(self.ring.field.inv_code(other.constant_code()))
        f = self.ring.field
        rem = dict(self.terms)
        le, lc = other.leading()
        inv_lc = f.inv_code(lc)
        out = {}
        while rem:
            e = max(rem, key=_grlex_key)
            q = tuple(x - y for x, y in zip(e, le))
            if any(x < 0 for x in q):
                raise ValueError("inexact polynomial division")
            c = f.mul_codes(rem[e], inv_lc)
            out[q] = c
            for e2, c2 in other.terms.items():
                t = tuple(x + y for x, y in zip(q, e2))
                v = f.add_codes(rem.get(t, 0), f.neg_code(f.mul_codes(c, c2)))
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Poly(self.ring, out)

    def substitute(self, var, value):
        """Evaluate at x_var := value (a RatFunc over the same ring),
        by Horner's rule in that variable."""
        ctx = value.ctx
        by_deg = {}
        for e, c in self.terms.items():
            k = e[var]
            ne = list(e)
            ne[var] = 0
            by_deg.setdefault(k, {})[tuple(ne)] = c
        result = ctx.zero()
        prev = None
        for k in sorted(by_deg, reverse=True):
            if prev is not None:
                result = result * value ** (prev - k)
            result = result + ctx.from_poly(Poly(self.ring, by_deg[k]))
            prev = k
        if prev is not None and prev != 0:
            result = result * value ** prev
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        k1 = self.ring.field.k == 1
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for i, x in enumerate(e):
                if x == 1:
                    factors.append(names[i])
                elif x > 1:
                    factors.append(f"{names[i]}^{x}")
            cs = repr(FieldElement(self.ring.field, c)) if not k1 else str(c)
            if not factors:
                parts.append(cs)
            elif c == 1:
                parts.append("*".join(factors))
            else:
                cs = cs if k1 else f"({cs})"
                parts.append(cs + "*" + "*".join(factors))
        return " + ".join(parts)


# -- gcd machinery ----------------------------------------------------------


def _monomial_gcd(f, g):
    ef = f.min_exponents()
    eg = g.min_exponents()
    return tuple(min(a, b) for a, b in zip(ef, eg))


def _strip_monomial(f):
    e = f.min_exponents()
    if not any(e):
        return f, e
    return Poly(f.ring, {tuple(x - y for x, y in zip(t, e)): c
                         for t, c in f.terms.items()}), e


def _to_univar(f, var):
    out = {}
    for e, c in f.terms.items():
        k = e[var]
        ne = list(e)
        ne[var] = 0
        out.setdefault(k, {})[tuple(ne)] = c
    return {k: Poly(f.ring, t) for k, t in out.items()}


def _from_univar(ring, coeffs, var):
    terms = {}
    for k, poly in coeffs.items():
        for e, c in poly.terms.items():
            ne = list(e)
            ne[var] = k
            terms[tuple(ne)] = c
    return Poly(ring, terms)


def _univar_content(coeffs):
    polys = [coeffs[k] for k in sorted(coeffs)]
    return reduce(poly_gcd, polys)


def _univar_primitive(ring, coeffs, var):
    cont = _univar_content(coeffs)
    if cont.is_constant():
        return _from_univar(ring, coeffs, var).scale_code(
            ring.field.inv_code(cont.constant_code())), ring.one()
    prim = {k: c.divexact(cont) for k, c in coeffs.items()}
    return _from_univar(ring, prim, var), cont


def _pseudo_rem(f, g, var):
    """Pseudo remainder of f by g as polynomials in x_var."""
    ring = f.ring
    fu = _to_univar(f, var)
    gu = _to_univar(g, var)
    dg = max(gu)
    lg = gu[dg]
    while fu:
        df = max(fu)
        if df < dg:
            break
        lf = fu[df]
        # fu := lg*fu - lf * x^(df-dg) * gu
        new = {}
        for k, c in fu.items():
            new[k] = c * lg
        for k, c in gu.items():
            t = k + df - dg
            v = new.get(t, ring.zero()) - lf * c
            if v.is_zero():
                new.pop(t, None)
            else:
                new[t] = v
        new.pop(df, None)
        fu = {k: v for k, v in new.items() if not v.is_zero()}
    return _from_univar(ring, fu, var)


def poly_gcd(f, g):
    """Multivariate gcd over GF(p^k): recursive content/primitive-part with a
    primitive pseudo-remainder sequence in the last occurring variable.
    The result is monic under graded lex."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    sf, ef = _strip_monomial(f)
    sg, eg = _strip_monomial(g)
    mono = tuple(min(a, b) for a, b in zip(ef, eg))
    if sf.is_monomial() or sg.is_monomial():
        base = f.ring.monomial(mono)
        return base
    vars_used = sf.variables() | sg.variables()
    res = _poly_gcd_prim(sf, sg, max(vars_used))
    if any(mono):
        res = res.shift(mono)
    return res.monic()


def _poly_gcd_prim(f, g, var):
    ring = f.ring
    if f.degree_in(var) < 1 and g.degree_in(var) < 1:
        # variable not actually present; fall back on remaining ones
        rest = f.variables() | g.variables()
        if not rest:
            return ring.one()
        return poly_gcd(f, g) if max(rest) != var else ring.one()
    fu = _to_univar(f, var)
    gu = _to_univar(g, var)
    pf, cf = _univar_primitive(ring, fu, var)
    pg, cg = _univar_primitive(ring, gu, var)
    cont = poly_gcd(cf, cg)
    a, b = pf, pg
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, var)
        if r.is_zero():
            break
        if r.degree_in(var) == 0:
            b = ring.one()
            break
        r, _ = _univar_primitive(ring, _to_univar(r, var), var)
        a, b = b, r
    g0 = b
    if not g0.is_constant():
        g0, _ = _univar_primitive(ring, _to_univar(g0, var), var)
    return (cont * g0).monic()


# ---------------------------------------------------------------------------
# rational function fields


class RationalFunctionField:
    """F(x1,..,xm) with F = GF(p^k); elements are canonical RatFunc values."""

    def __init__(self, field, names):
        self.field = field
        self.ring = PolyRing(field, names)
        self.names = self.ring.names
        self.nvars = self.ring.nvars

    def zero(self):
        return RatFunc(self, self.ring.zero(), self.ring.one(), _normalized=True)

    def one(self):
        return RatFunc(self, self.ring.one(), self.ring.one(), _normalized=True)

    def const(self, value):
        return RatFunc(self, self.ring.const(value), self.ring.one(),
                       _normalized=True)

    def var(self, i):
        return RatFunc(self, self.ring.var(i), self.ring.one(), _normalized=True)

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def from_poly(self, p):
        return RatFunc(self, p, self.ring.one(), _normalized=True)

    def coerce(self, value):
        if isinstance(value, RatFunc):
            if value.ctx != self:
                raise ValueError("rational function from a different field")
            return value
        if isinstance(value, Poly):
            return self.from_poly(value)
        if isinstance(value, (int, FieldElement)):
            return self.const(value)
        raise TypeError(f"cannot coerce {value!r}")

    def monomial(self, exponents, coeff=1):
        """Laurent monomial with integer exponents of either sign."""
        num = [max(e, 0) for e in exponents]
        den = [max(-e, 0) for e in exponents]
        return RatFunc(self, self.ring.monomial(num, coeff),
                       self.ring.monomial(den), _normalized=True)

    @property
    def characteristic(self):
        return self.field.p

    def random_element(self, rng, max_terms=3, max_deg=2):
        num = self.ring.zero()
        for _ in range(rng.randint(1, max_terms)):
            e = tuple(rng.randint(0, max_deg) for _ in range(self.nvars))
            num = num + self.ring.monomial(e, rng.randrange(1, self.field.q))
        den = self.ring.zero()
        while den.is_zero():
            den = self.ring.zero()
            for _ in range(rng.randint(1, max_terms)):
                e = tuple(rng.randint(0, max_deg) for _ in range(self.nvars))
                den = den + self.ring.monomial(e, rng.randrange(self.field.q))
        return RatFunc(self, num, den)

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField)
                and self.ring == other.ring)

    def __hash__(self):
        return hash(("RFF", self.ring))

    def __repr__(self):
        return f"{self.field}({','.join(self.names)})"


class RatFunc:
    """Canonical fraction num/den: gcd 1, den monic graded-lex, zero = 0/1."""

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self, ctx, num, den, _normalized=False):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _normalized:
            num, den = _reduce_fraction(num, den)
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None

    # -- structure -------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self.num == self.ctx.ring.one() and self.den == self.ctx.ring.one()

    def is_polynomial(self):
        return self.den.is_constant()

    def is_monomial(self):
        return self.num.is_monomial() and self.den.is_monomial()

    def laurent_terms(self):
        """Terms as a map Z^m exponent -> coefficient code.

        Only valid when the denominator is a monomial."""
        if not self.den.is_monomial():
            raise ValueError("denominator is not a monomial")
        (de, dc), = self.den.terms.items()
        f = self.ctx.field
        inv = f.inv_code(dc)
        return {tuple(a - b for a, b in zip(e, de)): f.mul_codes(c, inv)
                for e, c in self.num.terms.items()}

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, FieldElement, Poly)):
            return self.ctx.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.ctx, self.num + o.num, self.den)
        return RatFunc(self.ctx, self.num * o.den + o.num * self.den,
                       self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ctx, -self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return self.ctx.zero()
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = self.num if g1.is_constant() else self.num.divexact(g1)
        d2 = o.den if g1.is_constant() else o.den.divexact(g1)
        n2 = o.num if g2.is_constant() else o.num.divexact(g2)
        d1 = self.den if g2.is_constant() else self.den.divexact(g2)
        num, den = n1 * n2, d1 * d2
        lead = den.leading()[1]
        if lead != 1:
            inv = self.ctx.field.inv_code(lead)
            num, den = num.scale_code(inv), den.scale_code(inv)
        return RatFunc(self.ctx, num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroInverse("cannot invert 0")
        return RatFunc(self.ctx, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = self.ctx.one()
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def frobenius(self):
        """The p-th power f^p, term-wise exact."""
        return RatFunc(self.ctx, self.num.frobenius(), self.den.frobenius(),
                       _normalized=True)

    def derivative(self, var):
        n, dd = self.num, self.den
        if dd.is_constant():
            return RatFunc(self.ctx, self.num.derivative(var), dd)
        return RatFunc(self.ctx,
                       n.derivative(var) * dd - n * dd.derivative(var),
                       dd * dd)

    def substitute(self, var, value):
        """Substitute x_var := value; raises DivisionByZero if the
        denominator vanishes under the substitution."""
        num = self.num.substitute(var, value)
        den = self.den.substitute(var, value)
        return num / den

    def square_decompose(self):
        """Write f = sum over square-free monomials mu of mu * g_mu^2
        (characteristic 2); returns {parity tuple: g_mu as RatFunc}."""
        f = self.ctx.field
        if f.p != 2:
            raise ValueError("square decomposition needs characteristic 2")
        work = self.num * self.den  # f = (num*den) / den^2
        buckets = {}
        for e, c in work.terms.items():
            eps = tuple(x % 2 for x in e)
            half = tuple((x - y) // 2 for x, y in zip(e, eps))
            buckets.setdefault(eps, {})[half] = f.sqrt_code(c)
        den = self.ctx.from_poly(self.den)
        out = {}
        for eps, terms in buckets.items():
            g = RatFunc(self.ctx, Poly(self.ctx.ring, terms), self.den)
            if not g.is_zero():
                out[eps] = g
        return out

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement, Poly)):
            other = self.ctx.coerce(other)
        return (isinstance(other, RatFunc) and self.ctx == other.ctx
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        if self.den == self.ctx.ring.one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _reduce_fraction(num, den):
    ring = num.ring
    if num.is_zero():
        return ring.zero(), ring.one()
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = num.divexact(g)
        den = den.divexact(g)
    lead = den.leading()[1]
    if lead != 1:
        inv = ring.field.inv_code(lead)
        num, den = num.scale_code(inv), den.scale_code(inv)
    return num, den


def ratfunc_normalize(num, den, ctx=None):
    """Canonical reduced rational function from a numerator/denominator pair."""
    if ctx is None:
        ctx = RationalFunctionField(num.ring.field, num.ring.names)
    return RatFunc(ctx, num, den)


def frobenius(f):
    """f^p for a rational function or finite-field element."""
    if isinstance(f, RatFunc):
        return f.frobenius()
    return f ** f.field.p
