"""Exact arithmetic over Q(j)(q).

Coefficients of everything in this package live in the field of rational
functions in one indeterminate q over the cyclotomic field Q(j), where j
is a primitive cube root of unity.  Representation, bottom up:

    QJ             a + b*j with rational a, b; products reduced via j*j = -1 - j
    QJPoly         dense tuple of QJ coefficients, constant term first
    CycloRational  num/den pair of QJPoly with den monic and gcd(num, den) = 1

All three are immutable and canonical, so == is structural equality and
values can key dictionaries.  q never becomes a float: evaluation at a
rational point happens only through specialize_q, which raises PoleError
when the denominator vanishes there.
"""

from __future__ import annotations

from fractions import Fraction


class PoleError(ArithmeticError):
    """Denominator vanishes at the requested q."""


# ---------------------------------------------------------------------------
# Q(j)


class QJ:
    """a + b*j with a, b exact rationals; j*j = -1 - j."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)

    def is_zero(self):
        return not self.a and not self.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        return isinstance(other, QJ) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __add__(self, other):
        return QJ(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return QJ(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return QJ(-self.a, -self.b)

    def __mul__(self, other):
        a0, a1, b0, b1 = self.a, self.b, other.a, other.b
        x = a1 * b1
        return QJ(a0 * b0 - x, a0 * b1 + a1 * b0 - x)

    def inv(self):
        # conjugate a - b - b*j gives norm a^2 - a*b + b^2, positive unless zero
        n = self.a * self.a - self.a * self.b + self.b * self.b
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(j)")
        return QJ((self.a - self.b) / n, -self.b / n)

    def __repr__(self):
        return "QJ(%s, %s)" % (self.a, self.b)


QJ_ZERO = QJ(0, 0)
QJ_ONE = QJ(1, 0)
QJ_J = QJ(0, 1)
QJ_J2 = QJ(-1, -1)


# ---------------------------------------------------------------------------
# Q(j)[q]


class QJPoly:
    """Dense polynomial in q over Q(j); coeffs[k] multiplies q^k."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.c = tuple(c)

    @staticmethod
    def const(v):
        return QJPoly((v,)) if not v.is_zero() else P_ZERO

    def is_zero(self):
        return not self.c

    def degree(self):
        return len(self.c) - 1

    def is_const(self):
        return len(self.c) <= 1

    def const_value(self):
        return self.c[0] if self.c else QJ_ZERO

    def valuation(self):
        """Index of the lowest nonzero coefficient (0 for the zero poly)."""
        for i, v in enumerate(self.c):
            if not v.is_zero():
                return i
        return 0

    def shift_down(self, k):
        return QJPoly(self.c[k:]) if k else self

    def __eq__(self, other):
        return isinstance(other, QJPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return QJPoly(out)

    def __neg__(self):
        return QJPoly(tuple(-v for v in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.c, other.c
        if not a or not b:
            return P_ZERO
        if len(a) == 1:
            u = a[0]
            return QJPoly(tuple(u * v for v in b))
        if len(b) == 1:
            u = b[0]
            return QJPoly(tuple(v * u for v in a))
        out = [QJ_ZERO] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u.is_zero():
                continue
            for k, v in enumerate(b):
                if not v.is_zero():
                    out[i + k] = out[i + k] + u * v
        return QJPoly(out)

    def scale(self, u):
        if u.is_zero():
            return P_ZERO
        return QJPoly(tuple(u * v for v in self.c))

    def divmod(self, other):
        """Exact long division over the coefficient field."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        d = other.degree()
        lead = other.c[-1].inv()
        if len(rem) - 1 < d:
            return P_ZERO, self
        quo = [QJ_ZERO] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            f = rem[i] * lead
            if f.is_zero():
                continue
            quo[i - d] = f
            for k, v in enumerate(other.c):
                rem[i - d + k] = rem[i - d + k] - f * v
        return QJPoly(quo), QJPoly(rem)

    def monic(self):
        if self.is_zero():
            return self
        lc = self.c[-1]
        if lc == QJ_ONE:
            return self
        return self.scale(lc.inv())

    def eval_at(self, q0):
        """Value at q = q0 (a Fraction), as a QJ."""
        acc = QJ_ZERO
        f = QJ(q0, 0)
        for v in reversed(self.c):
            acc = acc * f + v
        return acc

    def __repr__(self):
        return "QJPoly(%r)" % (self.c,)


P_ZERO = QJPoly(())
P_ONE = QJPoly((QJ_ONE,))
P_Q = QJPoly((QJ_ZERO, QJ_ONE))


def poly_gcd(a, b):
    """Monic gcd via Euclid; constants short-circuit to 1."""
    while not b.is_zero():
        if b.is_const():
            return P_ONE
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_const() else P_ONE


# ---------------------------------------------------------------------------
# Q(j)(q)


class CycloRational:
    """num/den of QJPoly; den monic, num/den coprime, zero is 0/1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den
            return
        num, den = _reduce(num, den)
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == P_ONE and self.den == P_ONE

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, CycloRational)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num.c, self.den.c))

    def __add__(self, other):
        if self.den == P_ONE and other.den == P_ONE:
            return CycloRational(self.num + other.num, P_ONE)
        return CycloRational(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        if self.den == P_ONE and other.den == P_ONE:
            return CycloRational(self.num - other.num, P_ONE)
        return CycloRational(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return CycloRational(-self.num, self.den, _canonical=True)

    def __mul__(self, other):
        if self.den == P_ONE and other.den == P_ONE:
            return CycloRational(self.num * other.num, P_ONE)
        return CycloRational(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        return self * other.inv()

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        return CycloRational(self.den, self.num)

    def __repr__(self):
        return "CycloRational(%s)" % scalar_str(self)


def _reduce(num, den):
    """Canonical form: den monic, common factors (incl. powers of q) removed."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return P_ZERO, P_ONE
    v = min(num.valuation(), den.valuation())
    if v:
        num = num.shift_down(v)
        den = den.shift_down(v)
    if den.is_const():
        u = den.const_value()
        if u == QJ_ONE:
            return num, P_ONE
        return num.scale(u.inv()), P_ONE
    if not num.is_const():
        g = poly_gcd(num, den)
        if not g.is_const():
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
            if den.is_const():
                return _reduce(num, den)
    lc = den.c[-1]
    if lc != QJ_ONE:
        u = lc.inv()
        num = num.scale(u)
        den = den.scale(u)
    return num, den


def normalize(num, den=P_ONE):
    """Public constructor from an unreduced fraction of j-polynomials."""
    return CycloRational(num, den)


def specialize_q(s, q0):
    """Value of s at q = q0 (exact rational), j kept symbolic."""
    q0 = Fraction(q0)
    d = s.den.eval_at(q0)
    if d.is_zero():
        raise PoleError("pole at q = %s" % q0)
    v = s.num.eval_at(q0) * d.inv()
    return CycloRational(QJPoly.const(v), P_ONE)


# ---------------------------------------------------------------------------
# constants and small builders

ZERO = CycloRational(P_ZERO, P_ONE, _canonical=True)
ONE = CycloRational(P_ONE, P_ONE, _canonical=True)
J = CycloRational(QJPoly((QJ_J,)), P_ONE, _canonical=True)
J2 = CycloRational(QJPoly((QJ_J2,)), P_ONE, _canonical=True)
Q = CycloRational(P_Q, P_ONE, _canonical=True)
MINUS_ONE = CycloRational(QJPoly((QJ(-1, 0),)), P_ONE, _canonical=True)


def rational(x):
    """Embed an int or Fraction."""
    return CycloRational(QJPoly.const(QJ(Fraction(x), 0)))


def qj_scalar(a, b=0):
    """Embed a + b*j."""
    return CycloRational(QJPoly.const(QJ(Fraction(a), Fraction(b))))


def jpow(k):
    return (ONE, J, J2)[k % 3]


def qpow(k):
    """q**k for any integer k."""
    if k >= 0:
        return CycloRational(QJPoly((QJ_ZERO,) * k + (QJ_ONE,)))
    return CycloRational(P_ONE, QJPoly((QJ_ZERO,) * (-k) + (QJ_ONE,)))


# ---------------------------------------------------------------------------
# printing
#
# scalar_factor returns (sign, body, needs_parens): sign is +1/-1, body the
# printable magnitude, needs_parens whether body must be wrapped when used as
# a multiplicative prefix.  Unit coefficients print as 1 / j / j^2; a QJ with
# both components is shown in whichever of the bases {1, j}, {1, j^2} has the
# smaller magnitude, ties to {1, j}.


def _frac_str(f):
    return str(f)


def _qj_factor(v):
    a, b = v.a, v.b
    if abs(a - b) < abs(a):
        parts = [(a - b, ""), (-b, "j^2")]
    else:
        parts = [(a, ""), (b, "j")]
    parts = [(r, tag) for r, tag in parts if r]
    if not parts:
        return 1, "0", False
    if len(parts) == 1:
        r, tag = parts[0]
        sign = 1 if r > 0 else -1
        m = abs(r)
        if not tag:
            return sign, _frac_str(m), False
        if m == 1:
            return sign, tag, False
        return sign, _frac_str(m) + "*" + tag, False
    (r0, _), (r1, tag1) = parts
    sign = 1 if r0 > 0 else -1
    r0, r1 = r0 * sign, r1 * sign
    head = _frac_str(r0)
    op = " + " if r1 > 0 else " - "
    m = abs(r1)
    tail = tag1 if m == 1 else _frac_str(m) + "*" + tag1
    return sign, head + op + tail, True


def _qterm(k):
    if k == 0:
        return ""
    if k == 1:
        return "q"
    return "q^%d" % k


def _poly_factor(p):
    if p.is_zero():
        return 1, "0", False
    terms = [(k, v) for k, v in enumerate(p.c) if not v.is_zero()]
    if len(terms) == 1:
        k, v = terms[0]
        sign, body, comp = _qj_factor(v)
        qpart = _qterm(k)
        if not qpart:
            return sign, body, comp
        if body == "1":
            return sign, qpart, False
        if comp:
            body = "(" + body + ")"
        return sign, body + "*" + qpart, False
    # multi-term: highest degree first, overall sign from the leading term
    terms.reverse()
    lead_sign = 1 if _qj_factor(terms[0][1])[0] > 0 else -1
    chunks = []
    for k, v in terms:
        if lead_sign < 0:
            v = -v
        sign, body, comp = _qj_factor(v)
        qpart = _qterm(k)
        if qpart:
            if body == "1":
                body = qpart
            else:
                if comp:
                    body = "(" + body + ")"
                body = body + "*" + qpart
        elif comp:
            body = "(" + body + ")"
        if not chunks:
            chunks.append(body if sign > 0 else "-" + body)
        else:
            chunks.append((" + " if sign > 0 else " - ") + body)
    return lead_sign, "".join(chunks), True


def scalar_factor(s):
    sign, ntext, npar = _poly_factor(s.num)
    if s.den == P_ONE:
        return sign, ntext, npar
    _, dtext, dpar = _poly_factor(s.den)
    if npar:
        ntext = "(" + ntext + ")"
    if dpar:
        dtext = "(" + dtext + ")"
    return sign, ntext + "/" + dtext, False


def scalar_str(s):
    sign, body, par = scalar_factor(s)
    if sign >= 0:
        return body
    # composite bodies must keep their grouping under the global sign,
    # -(1 - j^2) is not -1 - j^2
    return "-(" + body + ")" if par else "-" + body
