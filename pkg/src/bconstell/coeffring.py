"""Exact scalar arithmetic for the engine.

A :class:`Coeff` is a multivariate polynomial with rational coefficients in
the deformation parameter ``b`` and the model parameters ``u1, u2, u3, q1,
q2, q3``, divided by a power of ``(1+b)``.  This is the only denominator the
engine ever needs; there is deliberately no general division, so any
computation that would require another denominator fails at construction
time instead of producing an approximation.

Values are immutable and kept in canonical form: the numerator is not
divisible by ``(1+b)`` unless the denominator power is zero.
"""

import re
from fractions import Fraction
from math import comb

VARS = ("b", "u1", "u2", "u3", "q1", "q2", "q3")
NVARS = len(VARS)
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}
_ZERO_EXP = (0,) * NVARS

_F0 = Fraction(0)
_F1 = Fraction(1)


def _poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        s = out.get(e, _F0) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e, _F0) + c1 * c2
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _poly_scale(p, f):
    if not f:
        return {}
    return {e: c * f for e, c in p.items()}


def _div_one_plus_b(num):
    """Divide by (1+b) as a polynomial in b; return the quotient or None."""
    groups = {}
    for exps, c in num.items():
        groups.setdefault(exps[1:], {})[exps[0]] = c
    quot = {}
    for rest, coeffs in groups.items():
        d = max(coeffs)
        if d == 0:
            return None
        # c(b) = (1+b) q(b) + r; reading coefficients from the top.
        q = {}
        qk = coeffs[d]
        q[d - 1] = qk
        for k in range(d - 1, 0, -1):
            qk = coeffs.get(k, _F0) - qk
            q[k - 1] = qk
        if coeffs.get(0, _F0) - q[0] != 0:
            return None
        for k, c in q.items():
            if c:
                quot[(k,) + rest] = c
    return quot


class Coeff:
    """Exact scalar: polynomial in b, u1..u3, q1..q3 over a power of (1+b)."""

    __slots__ = ("num", "dp")

    def __init__(self, num=None, dp=0):
        num = dict(num) if num else {}
        while dp > 0 and num:
            quot = _div_one_plus_b(num)
            if quot is None:
                break
            num = quot
            dp -= 1
        if not num:
            dp = 0
        self.num = num
        self.dp = dp

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({_ZERO_EXP: _F1})

    @classmethod
    def from_rational(cls, x):
        x = Fraction(x)
        return cls({_ZERO_EXP: x} if x else {})

    @classmethod
    def var(cls, name):
        exps = [0] * NVARS
        exps[_VAR_INDEX[name]] = 1
        return cls({tuple(exps): _F1})

    @classmethod
    def inv_one_plus_b(cls, power=1):
        """1/(1+b)^power."""
        return cls({_ZERO_EXP: _F1}, power)

    @classmethod
    def one_plus_b(cls):
        return cls.one() + cls.var("b")

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Coeff):
            return x
        if isinstance(x, (int, Fraction)):
            return Coeff.from_rational(x)
        return NotImplemented

    def __add__(self, other):
        other = Coeff._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = max(self.dp, other.dp)
        a = self.num
        if e > self.dp:
            a = _poly_mul(a, _one_plus_b_pow(e - self.dp))
        b = other.num
        if e > other.dp:
            b = _poly_mul(b, _one_plus_b_pow(e - other.dp))
        return Coeff(_poly_add(a, b), e)

    __radd__ = __add__

    def __neg__(self):
        return Coeff({e: -c for e, c in self.num.items()}, self.dp)

    def __sub__(self, other):
        other = Coeff._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Coeff(_poly_scale(self.num, Fraction(other)), self.dp)
        if not isinstance(other, Coeff):
            return NotImplemented
        return Coeff(_poly_mul(self.num, other.num), self.dp + other.dp)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = Coeff.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def __eq__(self, other):
        other = Coeff._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.dp == other.dp and self.num == other.num

    def __hash__(self):
        return hash((self.dp, frozenset(self.num.items())))

    # -- evaluation --------------------------------------------------------

    def eval(self, assignment):
        """Evaluate with every variable assigned a rational value."""
        vals = [Fraction(assignment[v]) for v in VARS]
        if self.dp and vals[0] == -1:
            raise ZeroDivisionError("evaluation at b = -1 with a (1+b) denominator")
        total = _F0
        for exps, c in self.num.items():
            t = c
            for v, e in zip(vals, exps):
                if e:
                    t *= v ** e
            total += t
        if self.dp:
            total /= (1 + vals[0]) ** self.dp
        return total

    def subs(self, assignment):
        """Substitute rationals for a subset of the variables."""
        vals = {_VAR_INDEX[v]: Fraction(x) for v, x in assignment.items()}
        num = {}
        for exps, c in self.num.items():
            t = c
            new = list(exps)
            for idx, v in vals.items():
                e = exps[idx]
                if e:
                    t *= v ** e
                    new[idx] = 0
            if t:
                key = tuple(new)
                s = num.get(key, _F0) + t
                if s:
                    num[key] = s
                elif key in num:
                    del num[key]
        dp = self.dp
        if 0 in vals and dp:
            scale = 1 + vals[0]
            if scale == 0:
                raise ZeroDivisionError("substituting b = -1 with a (1+b) denominator")
            num = _poly_scale(num, _F1 / scale ** dp)
            dp = 0
        return Coeff(num, dp)

    def max_degree(self):
        """Total numerator degree, -1 for zero."""
        if not self.num:
            return -1
        return max(sum(e) for e in self.num)

    # -- serialization -----------------------------------------------------

    def __str__(self):
        if not self.num:
            return "0"
        parts = []
        for exps in sorted(self.num, reverse=True):
            c = self.num[exps]
            factors = [
                v if e == 1 else "%s^%d" % (v, e)
                for v, e in zip(VARS, exps)
                if e
            ]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        num_s = "".join(parts)
        if not self.dp:
            return num_s
        if len(self.num) > 1 or num_s.startswith("-"):
            num_s = "(" + num_s + ")"
        return "%s/(1+b)^%d" % (num_s, self.dp)

    __repr__ = __str__

    _DENOM_RE = re.compile(r"^(.*?)/\(1\+b\)\^(\d+)$")
    _MONO_RE = re.compile(r"^(b|u[123]|q[123])(?:\^(\d+))?$")

    @classmethod
    def parse(cls, s):
        """Parse the textual form produced by str(); round-trips exactly."""
        s = s.strip().replace(" ", "")
        m = cls._DENOM_RE.match(s)
        dp = 0
        if m:
            s, dp = m.group(1), int(m.group(2))
            if s.startswith("(") and s.endswith(")"):
                s = s[1:-1]
        num = {}
        for term in re.findall(r"[+-]?[^+-]+", s):
            sign = _F1
            if term.startswith("-"):
                sign, term = -_F1, term[1:]
            elif term.startswith("+"):
                term = term[1:]
            coeff = sign
            exps = [0] * NVARS
            for factor in term.split("*"):
                mono = cls._MONO_RE.match(factor)
                if mono:
                    exps[_VAR_INDEX[mono.group(1)]] += int(mono.group(2) or 1)
                else:
                    coeff *= Fraction(factor)
            if coeff:
                key = tuple(exps)
                t = num.get(key, _F0) + coeff
                if t:
                    num[key] = t
                elif key in num:
                    del num[key]
        return cls(num, dp)


def _one_plus_b_pow(e):
    exps = [0] * NVARS
    out = {}
    for k in range(e + 1):
        exps[0] = k
        out[tuple(exps)] = Fraction(comb(e, k))
    return out


ZERO = Coeff.zero()
ONE = Coeff.one()
B = Coeff.var("b")
ONE_PLUS_B = Coeff.one_plus_b()
INV_1PB = Coeff.inv_one_plus_b()
U = [None, Coeff.var("u1"), Coeff.var("u2"), Coeff.var("u3")]
Q = [None, Coeff.var("q1"), Coeff.var("q2"), Coeff.var("q3")]
