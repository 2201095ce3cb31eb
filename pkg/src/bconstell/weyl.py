"""Normal-ordered differential operators on PPoly.

A WeylOp is a finite Coeff-linear combination of terms p^alpha (p*)^beta,
where p_i* denotes i * d/dp_i, stored with all multiplications to the left
of all derivatives.  The defining contraction is [p_i*, p_j] = i delta_ij.

Truncation contract: an operator with working_degree D acts exactly on every
polynomial of degree <= D.  Terms whose derivative part exceeds degree D are
dropped (they act as zero within the contract).  Composition propagates the
tightest working degree that keeps the result exact: composing O1 after O2
yields min(D2, D1 - jump(O2)) where jump(O2) is the largest degree raise O2
can produce.  A DegreeBudgetError means the requested computation cannot be
certified at any degree.
"""

from fractions import Fraction
from itertools import product
from math import comb, factorial

from .coeffring import Coeff
from .ppoly import EMPTY, PPoly, pm_degree, pm_mul, pm_sort_key


class DegreeBudgetError(Exception):
    """Raised when an operation exceeds its truncation contract."""


def _pm_sub(a, b):
    d = dict(a)
    for i, e in b:
        r = d[i] - e
        if r:
            d[i] = r
        else:
            del d[i]
    return tuple(sorted(d.items()))


class WeylOp:
    """Truncated normal-ordered operator: sum of c * p^alpha (p*)^beta."""

    __slots__ = ("terms", "working_degree", "_jump")

    def __init__(self, terms=None, working_degree=0):
        if working_degree < 0:
            raise DegreeBudgetError("working degree must be non-negative")
        self.working_degree = working_degree
        self.terms = {
            key: c
            for key, c in (terms or {}).items()
            if c and pm_degree(key[1]) <= working_degree
        }
        self._jump = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, working_degree):
        return cls({}, working_degree)

    @classmethod
    def scalar(cls, c, working_degree):
        if isinstance(c, (int, Fraction)):
            c = Coeff.from_rational(c)
        return cls({(EMPTY, EMPTY): c}, working_degree)

    @classmethod
    def identity(cls, working_degree):
        return cls.scalar(Coeff.one(), working_degree)

    @classmethod
    def creation(cls, mono, working_degree, coeff=None):
        """Multiplication by the monomial p^mono; zero if any index <= 0."""
        merged = {}
        for i, e in mono:
            if e:
                if i <= 0:
                    return cls.zero(working_degree)
                merged[i] = merged.get(i, 0) + e
        mono = tuple(sorted(merged.items()))
        return cls(
            {(mono, EMPTY): Coeff.one() if coeff is None else coeff}, working_degree
        )

    @classmethod
    def p(cls, i, working_degree, coeff=None):
        if i <= 0:
            return cls.zero(working_degree)
        return cls.creation(((i, 1),), working_degree, coeff)

    @classmethod
    def p_star(cls, i, working_degree, coeff=None):
        """p_i* = i d/dp_i; zero for i <= 0."""
        if i <= 0:
            return cls.zero(working_degree)
        return cls(
            {(EMPTY, ((i, 1),)): Coeff.one() if coeff is None else coeff},
            working_degree,
        )

    # -- structure ---------------------------------------------------------

    def max_jump(self):
        """Largest degree increase any stored term can produce (>= 0)."""
        if self._jump is None:
            self._jump = max(
                (pm_degree(cr) - pm_degree(an) for cr, an in self.terms), default=0
            )
            self._jump = max(self._jump, 0)
        return self._jump

    def homogeneous_degree(self):
        """Common creation-minus-derivative degree, or None if mixed/zero."""
        degs = {pm_degree(cr) - pm_degree(an) for cr, an in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_zero(self):
        return not self.terms

    def truncated(self, d):
        if d > self.working_degree:
            raise DegreeBudgetError(
                "cannot extend working degree %d to %d" % (self.working_degree, d)
            )
        return WeylOp(self.terms, d)

    def map_coeff(self, fn):
        return WeylOp({k: fn(c) for k, c in self.terms.items()}, self.working_degree)

    # -- linear operations -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, WeylOp):
            return NotImplemented
        d = min(self.working_degree, other.working_degree)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Coeff.zero()) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return WeylOp(out, d)

    def __neg__(self):
        return WeylOp({k: -c for k, c in self.terms.items()}, self.working_degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = Coeff.from_rational(c)
        if not c:
            return WeylOp.zero(self.working_degree)
        return WeylOp({k: v * c for k, v in self.terms.items()}, self.working_degree)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    # -- action and composition ---------------------------------------------

    def apply(self, f):
        """Image of the polynomial f; requires degree(f) <= working_degree."""
        if f.degree() > self.working_degree:
            raise DegreeBudgetError(
                "polynomial degree %d exceeds working degree %d"
                % (f.degree(), self.working_degree)
            )
        out = {}
        for (cr, an), c in self.terms.items():
            for mono, mc in f.terms.items():
                md = dict(mono)
                factor = 1
                ok = True
                for i, e in an:
                    have = md.get(i, 0)
                    if have < e:
                        ok = False
                        break
                    for k in range(e):
                        factor *= i * (have - k)
                    if have == e:
                        del md[i]
                    else:
                        md[i] = have - e
                if not ok:
                    continue
                key = pm_mul(tuple(sorted(md.items())), cr)
                s = out.get(key, Coeff.zero()) + c * mc * factor
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return PPoly(out)

    def compose(self, other):
        """Normal-ordered product self . other (self acts second)."""
        if not isinstance(other, WeylOp):
            raise TypeError("compose expects a WeylOp")
        new_d = min(
            other.working_degree, self.working_degree - other.max_jump()
        )
        if new_d < 0:
            raise DegreeBudgetError(
                "composition budget exhausted (degrees %d and %d, jump %d)"
                % (self.working_degree, other.working_degree, other.max_jump())
            )
        out = {}
        for (cr1, an1), c1 in self.terms.items():
            an1d = dict(an1)
            for (cr2, an2), c2 in other.terms.items():
                cr2d = dict(cr2)
                common = [i for i in an1d if i in cr2d]
                base = c1 * c2
                ranges = [range(min(an1d[i], cr2d[i]) + 1) for i in common]
                for gammas in product(*ranges):
                    factor = 1
                    for i, g in zip(common, gammas):
                        if g:
                            factor *= (
                                comb(an1d[i], g) * comb(cr2d[i], g) * factorial(g) * i ** g
                            )
                    gm = tuple(
                        (i, g) for i, g in sorted(zip(common, gammas)) if g
                    )
                    an = pm_mul(_pm_sub(an1, gm), an2)
                    if pm_degree(an) > new_d:
                        continue
                    cr = pm_mul(cr1, _pm_sub(cr2, gm))
                    key = (cr, an)
                    s = out.get(key, Coeff.zero()) + base * factor
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
        return WeylOp(out, new_d)

    def commutator(self, other):
        return self.compose(other) - other.compose(self)

    # -- comparison ----------------------------------------------------------

    def _trunc_terms(self, d):
        return {k: c for k, c in self.terms.items() if pm_degree(k[1]) <= d}

    def equal_up_to(self, other, d):
        """Exact equality as operators on all polynomials of degree <= d."""
        if d > min(self.working_degree, other.working_degree):
            raise DegreeBudgetError(
                "comparison degree %d exceeds working degrees (%d, %d)"
                % (d, self.working_degree, other.working_degree)
            )
        return self._trunc_terms(d) == other._trunc_terms(d)

    def diff_up_to(self, other, d):
        """Sorted mismatching terms of self - other at degree <= d."""
        diff = self - other
        out = []
        for (cr, an), c in diff._trunc_terms(d).items():
            out.append((cr, an, c))
        out.sort(key=lambda t: (pm_sort_key(t[1]), pm_sort_key(t[0])))
        return out

    # -- serialization -------------------------------------------------------

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kc: (pm_sort_key(kc[0][1]), pm_sort_key(kc[0][0])),
        )

    def to_json_obj(self):
        return {
            "working_degree": self.working_degree,
            "homogeneous_degree": self.homogeneous_degree(),
            "terms": [
                {
                    "create": [[i, e] for i, e in cr],
                    "annihilate": [[i, e] for i, e in an],
                    "coeff": str(c),
                }
                for (cr, an), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_obj(cls, obj):
        terms = {}
        for t in obj["terms"]:
            cr = tuple((int(i), int(e)) for i, e in t["create"])
            an = tuple((int(i), int(e)) for i, e in t["annihilate"])
            terms[(cr, an)] = Coeff.parse(t["coeff"])
        return cls(terms, int(obj["working_degree"]))

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for (cr, an), c in self.sorted_terms():
            fac = ["p%d" % i if e == 1 else "p%d^%d" % (i, e) for i, e in cr]
            fac += ["p%d*" % i if e == 1 else "p%d*^%d" % (i, e) for i, e in an]
            body = "*".join(fac) if fac else "1"
            cs = str(c)
            chunks.append(body if cs == "1" else "(%s)*%s" % (cs, body))
        return " + ".join(chunks)

    __repr__ = __str__
