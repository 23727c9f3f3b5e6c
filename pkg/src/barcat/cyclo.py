"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Scalars are vectors of rationals over the power basis 1, z, ..., z^(d-1)
of Q(zeta_N), d = deg Phi_N, always kept reduced mod Phi_N so equality is
coefficient equality.  Conjugation is the field automorphism z -> z^(N-1).
No floating point anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class ConductorMismatch(ArithmeticError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class BadOrder(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomials, low degree first
# ---------------------------------------------------------------------------

def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[i - dd] = q
        for j, dj in enumerate(den):
            num[i - dd + j] -= q * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division (remainder)")
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of Phi_n, via exact division of
    x^n - 1 by the product of Phi_d over proper divisors d of n."""
    if n < 1:
        raise BadOrder(f"conductor must be >= 1, got {n}")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    return tuple(_poly_div_exact(num, den))


# ---------------------------------------------------------------------------
# per-conductor field data
# ---------------------------------------------------------------------------

class _Field:
    __slots__ = ("n", "degree", "phi", "red", "pow", "zero", "one")

    def __init__(self, n: int):
        self.n = n
        phi = cyclotomic_polynomial(n)
        d = len(phi) - 1
        self.degree = d
        self.phi = phi
        # x^e mod Phi_n for e = d .. 2d-2 (needed to reduce products)
        red = []
        row = [Fraction(-c) for c in phi[:d]]  # x^d
        red.append(tuple(row))
        for _ in range(d, 2 * d - 2):
            top = row[-1]
            row = [Fraction(0)] + row[:-1]
            if top:
                first = red[0]
                row = [row[i] + top * first[i] for i in range(d)]
            red.append(tuple(row))
        self.red = tuple(red)
        # x^k mod Phi_n for k = 0 .. n-1 (for conjugation / zeta powers)
        pw = []
        cur = [Fraction(0)] * d
        cur[0] = Fraction(1)
        for _ in range(n):
            pw.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                first = self.red[0] if d > 1 else None
                if d > 1:
                    cur = [cur[i] + top * first[i] for i in range(d)]
                else:
                    # d == 1: x = root itself, reduce via phi: x ≡ -phi[0]
                    cur = [top * Fraction(-self.phi[0])]
        self.pow = tuple(pw)
        self.zero = CycloScalar(n, tuple([Fraction(0)] * d))
        self.one = CycloScalar(n, self.pow[0])


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into a rational")


class CycloScalar:
    """Element of Q(zeta_N), reduced mod Phi_N."""

    __slots__ = ("N", "c")

    def __init__(self, conductor: int, coeffs: tuple[Fraction, ...]):
        self.N = conductor
        self.c = coeffs

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rational(x) -> "CycloScalar":
        return CycloScalar(1, (_as_fraction(x),))

    @staticmethod
    def zeta(n: int, power: int = 1) -> "CycloScalar":
        if n == 1:
            return CycloScalar.rational(1)
        if n == 2:
            return CycloScalar.rational(-1 if power % 2 else 1)
        f = _field(n)
        return CycloScalar(n, f.pow[power % n])

    @staticmethod
    def zero(n: int = 1) -> "CycloScalar":
        return _field(n).zero

    @staticmethod
    def one(n: int = 1) -> "CycloScalar":
        return _field(n).one

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not any(self.c)

    @property
    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def embed(self, n: int) -> "CycloScalar":
        """Embed into Q(zeta_n); only rationals embed across conductors."""
        if n == self.N:
            return self
        if self.is_rational:
            f = _field(n)
            d = f.degree
            out = [Fraction(0)] * d
            out[0] = self.c[0]
            return CycloScalar(n, tuple(out))
        raise ConductorMismatch(
            f"cannot embed conductor-{self.N} scalar into conductor {n}")

    def _pair(self, other) -> tuple["CycloScalar", "CycloScalar"]:
        if isinstance(other, (int, Fraction)):
            other = CycloScalar.rational(other)
        if not isinstance(other, CycloScalar):
            return NotImplemented, NotImplemented
        if self.N == other.N:
            return self, other
        if self.is_rational:
            return CycloScalar.rational(self.c[0]).embed(other.N), other
        if other.is_rational:
            return self, CycloScalar.rational(other.c[0]).embed(self.N)
        raise ConductorMismatch(
            f"mixed conductors {self.N} and {other.N}")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloScalar(a.N, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloScalar(a.N, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycloScalar(self.N, tuple(-x for x in self.c))

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        n = a.N
        f = _field(n)
        d = f.degree
        ac, bc = a.c, b.c
        if d == 1:
            return CycloScalar(n, (ac[0] * bc[0],))
        if d == 2:
            a0, a1 = ac
            b0, b1 = bc
            c2 = a1 * b1
            if c2:
                r0, r1 = f.red[0]
                return CycloScalar(n, (a0 * b0 + c2 * r0,
                                       a0 * b1 + a1 * b0 + c2 * r1))
            return CycloScalar(n, (a0 * b0, a0 * b1 + a1 * b0))
        conv = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(ac):
            if ai:
                for j, bj in enumerate(bc):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:d]
        red = f.red
        for e in range(d, 2 * d - 1):
            ce = conv[e]
            if ce:
                row = red[e - d]
                for i in range(d):
                    if row[i]:
                        out[i] += ce * row[i]
        return CycloScalar(n, tuple(out))

    __rmul__ = __mul__

    def inv(self) -> "CycloScalar":
        """Multiplicative inverse via extended Euclid mod Phi_N."""
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        if self.is_rational:
            out = [Fraction(0)] * len(self.c)
            out[0] = 1 / self.c[0]
            return CycloScalar(self.N, tuple(out))
        f = _field(self.N)
        # polynomial xgcd of a(x) and Phi_N(x) over Q
        a = list(self.c)
        b = [Fraction(c) for c in f.phi]
        s0, s1 = [Fraction(1)], [Fraction(0)]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        def sub_scaled(p, q, c, shift):
            out = list(p) + [Fraction(0)] * max(0, deg(q) + shift + 1 - len(p))
            for i in range(deg(q) + 1):
                if q[i]:
                    out[i + shift] -= c * q[i]
            return out

        while deg(b) > 0:
            while deg(a) >= deg(b):
                da, db = deg(a), deg(b)
                c = a[da] / b[db]
                a = sub_scaled(a, b, c, da - db)
                s0 = sub_scaled(s0, s1, c, da - db)
            a, b = b, a
            s0, s1 = s1, s0
        if deg(b) != 0:
            raise DivisionByZero("scalar not invertible (gcd not constant)")
        # now b is a nonzero constant and s1 * self ≡ b mod Phi
        scale = 1 / b[0]
        d = f.degree
        coeffs = [Fraction(0)] * d
        for i in range(min(len(s1), d)):
            coeffs[i] = s1[i] * scale
        res = CycloScalar(self.N, tuple(coeffs))
        assert (res * self) == CycloScalar.one(self.N)
        return res

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloScalar.rational(other)
        return self * other.inv()

    def __pow__(self, e: int) -> "CycloScalar":
        if e < 0:
            return self.inv() ** (-e)
        acc = CycloScalar.one(self.N)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def conjugate(self) -> "CycloScalar":
        """Image under zeta -> zeta^(N-1); fixes rationals, involutive."""
        if self.N == 1 or self.is_rational:
            return self
        f = _field(self.N)
        d = f.degree
        out = [Fraction(0)] * d
        for i, ci in enumerate(self.c):
            if ci:
                row = f.pow[(-i) % self.N]
                for j in range(d):
                    if row[j]:
                        out[j] += ci * row[j]
        return CycloScalar(self.N, tuple(out))

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloScalar.rational(other)
        if not isinstance(other, CycloScalar):
            return NotImplemented
        if self.N == other.N:
            return self.c == other.c
        sr, orr = self.is_rational, other.is_rational
        if sr and orr:
            return self.c[0] == other.c[0]
        if sr != orr:
            return False
        raise ConductorMismatch(
            f"comparing irrational scalars of conductors {self.N}, {other.N}")

    def __hash__(self):
        if self.is_rational:
            return hash(self.c[0])
        return hash((self.N, self.c))

    def __repr__(self):
        if self.is_rational:
            return str(self.c[0])
        terms = []
        for i, ci in enumerate(self.c):
            if ci:
                if i == 0:
                    terms.append(str(ci))
                else:
                    z = f"z{self.N}" + (f"^{i}" if i > 1 else "")
                    terms.append(f"({ci})*{z}" if ci != 1 else z)
        return " + ".join(terms) if terms else "0"

    def approx(self) -> complex:
        """Float approximation, for debug printing only."""
        import cmath
        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(complex(c) * z ** i for i, c in enumerate(self.c))


# ---------------------------------------------------------------------------
# convenience
# ---------------------------------------------------------------------------

def rat(p, q: int = 1) -> CycloScalar:
    return CycloScalar.rational(Fraction(p, q))


def zeta(n: int, power: int = 1) -> CycloScalar:
    return CycloScalar.zeta(n, power)


def root_power(l: int, half: bool) -> CycloScalar:
    """q = zeta_l, or its square root q^(k+1) (l = 2k+1), which squares to q."""
    if l <= 1 or l % 2 == 0:
        raise BadOrder(f"need an odd order > 1, got {l}")
    if not half:
        return zeta(l)
    k = (l - 1) // 2
    return zeta(l, k + 1)
