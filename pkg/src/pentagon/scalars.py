"""Exact arithmetic in Q and in cyclotomic fields Q(zeta_m).

An element of Q(zeta_m) is stored as integer numerators over one positive
common denominator, in the power basis 1, z, ..., z^(phi(m)-1) reduced
modulo the m-th cyclotomic polynomial.  The stored form is canonical, so
equality and hashing are coefficient-wise.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ConductorMismatch, DivisionByZero, NotADivisor


# -- integer polynomial helpers (lists, lowest degree first) ---------------

def _poly_divexact(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(out) - 1, -1, -1):
        q = a[i + len(b) - 1] // lead
        out[i] = q
        if q:
            for j, bj in enumerate(b):
                a[i + j] -= q * bj
    assert not any(a), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_table(m):
    """x^k mod Phi_m as integer vectors, for 0 <= k < max(2*phi(m) - 1, m)."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(2 * deg - 1, m)):
        rows.append(tuple(cur))
        # multiply by x, then reduce the overflow using the monic Phi_m
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def totient(m):
    return len(cyclotomic_poly(m)) - 1


# -- rational polynomial helpers used only for inversion ------------------

def _fp_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _fp_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(_fp_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
    return _fp_trim(q), a


def _fp_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_trim(out)


def _fp_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _fp_trim(out)


def _poly_inverse_mod(a, mod):
    """Inverse of a modulo mod by the extended Euclidean algorithm."""
    r0, r1 = [Fraction(c) for c in mod], _fp_trim([Fraction(c) for c in a])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _fp_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _fp_sub(s0, _fp_mul(q, s1))
    if not r1:
        raise DivisionByZero("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


# -- the field element -----------------------------------------------------

class Cyc:
    """An element of Q(zeta_m)."""

    __slots__ = ("m", "num", "den", "_hash")

    def __init__(self, m, num, den=1, _canonical=False):
        self.m = m
        if _canonical:
            self.num = num
            self.den = den
        else:
            num = tuple(int(c) for c in num)
            if len(num) != totient(m):
                raise ValueError("expected %d coefficients" % totient(m))
            if den < 0:
                num, den = tuple(-c for c in num), -den
            g = gcd(den, *num)
            if g > 1:
                num = tuple(c // g for c in num)
                den //= g
            if not any(num):
                den = 1
            self.num = num
            self.den = den
        self._hash = None

    # constructors
    @classmethod
    def rational(cls, q, m=1):
        q = Fraction(q)
        d = totient(m)
        return cls(m, (q.numerator,) + (0,) * (d - 1), q.denominator)

    @classmethod
    def zero(cls, m=1):
        return cls(m, (0,) * totient(m), 1, True)

    @classmethod
    def one(cls, m=1):
        return cls.rational(1, m)

    @classmethod
    def root(cls, m, k=1):
        """zeta_m ** k."""
        return cls(m, _reduction_table(m)[k % m], 1, True)

    @classmethod
    def from_fractions(cls, m, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(m, [c.numerator * (den // c.denominator) for c in coeffs], den)

    # views
    @property
    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self):
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.m != self.m:
                if other.m == 1 and other.is_rational():
                    return Cyc.rational(other.to_fraction(), self.m)
                if self.m == 1 and self.is_rational():
                    return other
                raise ConductorMismatch("conductors %d and %d" % (self.m, other.m))
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.rational(other, self.m)
        return NotImplemented

    def _lifted_self(self, other):
        # a conductor-1 rational paired with a higher conductor adopts it
        if self.m != other.m and self.m == 1:
            return Cyc.rational(self.to_fraction(), other.m)
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a = self._lifted_self(other)
        if a.den == other.den:
            return Cyc(a.m, [x + y for x, y in zip(a.num, other.num)], a.den)
        return Cyc(a.m, [x * other.den + y * a.den for x, y in zip(a.num, other.num)],
                   a.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.m, tuple(-c for c in self.num), self.den, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a = self._lifted_self(other)
        m = a.m
        if len(a.num) == 1:
            return Cyc(m, (a.num[0] * other.num[0],), a.den * other.den)
        if a.is_rational():
            c = a.num[0]
            return Cyc(m, [c * y for y in other.num], a.den * other.den)
        if other.is_rational():
            c = other.num[0]
            return Cyc(m, [c * y for y in a.num], a.den * other.den)
        d = len(a.num)
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(other.num):
                    if y:
                        conv[i + j] += x * y
        out = list(conv[:d])
        table = _reduction_table(m)
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = table[k]
                for i in range(d):
                    out[i] += c * row[i]
        return Cyc(m, out, a.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by zero")
        if self.is_rational():
            return Cyc.rational(Fraction(self.den, self.num[0]), self.m)
        inv = _poly_inverse_mod([Fraction(c, self.den) for c in self.num], cyclotomic_poly(self.m))
        inv = inv + [Fraction(0)] * (totient(self.m) - len(inv))
        return Cyc.from_fractions(self.m, inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyc.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison
    def __eq__(self, other):
        if isinstance(other, Cyc):
            if other.m == self.m:
                return self.num == other.num and self.den == other.den
            if self.is_rational() and other.is_rational():
                return self.num[0] == other.num[0] and self.den == other.den
            return False
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.m, self.num, self.den))
        return self._hash

    def __repr__(self):
        return "Cyc(%s)" % render(self)

    def __str__(self):
        return render(self)


# -- public operations -----------------------------------------------------

def field_arith(a, b, op):
    if a.m != b.m:
        raise ConductorMismatch("conductors %d and %d" % (a.m, b.m))
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def lift_conductor(a, m2):
    """Express a in Q(zeta_m2); requires conductor(a) to divide m2."""
    if m2 % a.m:
        raise NotADivisor("%d does not divide %d" % (a.m, m2))
    if m2 == a.m:
        return a
    step = m2 // a.m
    table = _reduction_table(m2)
    out = [0] * totient(m2)
    for k, c in enumerate(a.num):
        if c:
            row = table[(k * step) % m2]
            for i in range(len(out)):
                out[i] += c * row[i]
    return Cyc(m2, out, a.den)


def reduce_conductor(a, m2):
    """Inverse of lift_conductor when a lies in the subfield Q(zeta_m2)."""
    if a.m % m2:
        raise NotADivisor("%d does not divide %d" % (m2, a.m))
    d = totient(m2)
    # solve a = sum c_k lift(z^k) by matching coordinates
    from .linalg import solve_in_span
    basis = [[Cyc.rational(x) for x in lift_conductor(Cyc.root(m2, k), a.m).num] for k in range(d)]
    target = [Cyc.rational(x) for x in a.coeffs]
    sol = solve_in_span(basis, target)
    if sol is None:
        raise NotADivisor("element does not lie in Q(zeta_%d)" % m2)
    return Cyc.from_fractions(m2, [c.to_fraction() for c in sol])


def as_nonnegative_rational(a):
    """The rational value of a when a is rational and >= 0, else None."""
    if not isinstance(a, Cyc):
        a = Cyc.rational(a)
    if a.is_rational() and a.num[0] >= 0:
        return Fraction(a.num[0], a.den)
    return None


def positivity_status(a):
    """Diagnostic companion to as_nonnegative_rational."""
    if not a.is_rational():
        return "irrational"
    return "nonnegative" if a.num[0] >= 0 else "negative"


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


# -- text and JSON forms ---------------------------------------------------

def render(a):
    """Human form: a sum of p/q*z^k terms, z a primitive m-th root of unity."""
    terms = []
    for k, c in enumerate(a.coeffs):
        if c == 0:
            continue
        s = str(c)
        if k == 1:
            s += "*z"
        elif k > 1:
            s += "*z^%d" % k
        terms.append(s)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
    return out


def to_json(a):
    return {"m": a.m, "c": [[str(c.numerator), str(c.denominator)] for c in a.coeffs]}


def from_json(obj, m=None):
    """Parse a scalar; accepts the canonical dict, an int, or a 'p/q' string."""
    if isinstance(obj, dict):
        val = Cyc.from_fractions(int(obj["m"]), [Fraction(int(n), int(d)) for n, d in obj["c"]])
    else:
        val = Cyc.rational(Fraction(obj) if isinstance(obj, str) else obj)
    if m is not None and val.m != m:
        val = lift_conductor(val, m) if m % val.m == 0 else val
    return val


def to_cyc(x, m=1):
    if isinstance(x, Cyc):
        return lift_conductor(x, m) if x.m != m and m % x.m == 0 else x
    return Cyc.rational(x, m)
