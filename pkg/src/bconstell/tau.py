"""Tau series: order-by-order integration and the checks that live on it.

The generating series tau satisfies t d(tau)/dt = sum_m t^m M^(m) tau with
M^(m) = q_m sum_i p_i M^(k,m)_i, which pins every coefficient recursively:

    n [t^n] tau = sum_{m=1}^{min(n,r)} M^(m) [t^{n-m}] tau.

Each [t^n] tau is homogeneous of degree n, so the whole computation happens
inside the truncated operator algebra at working degree N.

H = (1+b) log tau collects connected objects; the rooted fixed point checks
that extracting a marked face out of H reproduces i dH/dp_i when the
transfer operator is fed the rooted series back.
"""

from fractions import Fraction

from .coeffring import Coeff, B, INV_1PB, ONE_PLUS_B
from .constraints import build_L
from .currents import build_M
from .ppoly import PPoly
from .weyl import WeylOp


class TauSeries:
    """Coefficients [t^n] tau for 0 <= n <= order; entry n is homogeneous of degree n."""

    __slots__ = ("model", "order", "coeffs")

    def __init__(self, model, coeffs):
        self.model = model
        self.coeffs = list(coeffs)
        self.order = len(self.coeffs) - 1

    def coeff(self, n):
        if 0 <= n <= self.order:
            return self.coeffs[n]
        return PPoly.zero()

    def map_coeff(self, fn):
        return TauSeries(self.model, [c.map_coeff(fn) for c in self.coeffs])

    def denom_pow_profile(self):
        """Observed maximal (1+b)-denominator power per order."""
        out = []
        for c in self.coeffs:
            out.append(max((v.dp for v in c.terms.values()), default=0))
        return out

    def to_json_obj(self):
        return {
            "model": self.model.name,
            "order": self.order,
            "coeffs": [c.to_json_obj() for c in self.coeffs],
        }


class HSeries:
    """Coefficients [t^n] H of the connected series H = (1+b) log tau."""

    __slots__ = ("model", "order", "coeffs")

    def __init__(self, model, coeffs):
        self.model = model
        self.coeffs = list(coeffs)
        self.order = len(self.coeffs) - 1

    def coeff(self, n):
        if 0 <= n <= self.order:
            return self.coeffs[n]
        return PPoly.zero()


def _transfer_operator(model, m, order):
    """M^(m) = sum_i p_i M^(k,m)_i materialized at working degree = order."""
    acc = WeylOp.zero(order)
    for i in range(1, order + 1):
        mode = build_M(model.k, m, i, order)
        if mode.is_zero():
            continue
        lead = WeylOp.p(i, order + max(0, m - i))
        acc = acc + lead.compose(mode)
    return acc


def tau_evolve(model, order):
    """Integrate the evolution equation up to t^order, exactly."""
    if order < 0:
        raise ValueError("order must be non-negative")
    coeffs = [PPoly.one()]
    transfer = {
        m: _transfer_operator(model, m, order) for m in model.q_weights()
    } if order else {}
    qs = model.q_weights()
    for n in range(1, order + 1):
        acc = PPoly.zero()
        for m, op in transfer.items():
            if m > n:
                continue
            acc = acc + op.apply(coeffs[n - m]) * qs[m]
        term = acc * Coeff.from_rational(Fraction(1, n))
        if not term.is_homogeneous(n):
            raise AssertionError("[t^%d] tau is not homogeneous of degree %d" % (n, n))
        coeffs.append(term)
    return TauSeries(model, coeffs)


def check_constraints(tau, i_max, subs=None):
    """Check [t^n](L_i tau) = 0 for all i <= i_max and n <= tau.order.

    Also asserts the homogeneity of every slice before it is tested for
    cancellation.  With subs, parameters are substituted first (used for the
    specializations of the vertex-degree weights).
    """
    model = tau.model
    N = tau.order
    series = tau.map_coeff(lambda c: c.subs(subs)) if subs else tau
    items = []
    ok_all = True
    denom_flags = []
    for n, c in enumerate(series.coeffs):
        bound = max((v.dp for v in c.terms.values()), default=0)
        if bound > n:
            denom_flags.append({"order": n, "denom_pow": bound})
    for i in range(1, i_max + 1):
        L = build_L(model, i, N)
        if subs:
            L = L.map_coeff(lambda c: c.subs(subs))
        for n in range(0, N + 1):
            slice_sum = PPoly.zero()
            for m, piece in L.pieces.items():
                if m > n:
                    continue
                part = piece.apply(series.coeff(n - m))
                if not part.is_homogeneous(n - i):
                    items.append(
                        {
                            "i": i,
                            "n": n,
                            "status": "fail",
                            "reason": "t^%d piece is not homogeneous of degree %d"
                            % (m, n - i),
                        }
                    )
                    ok_all = False
                slice_sum = slice_sum + part
            if slice_sum:
                items.append(
                    {
                        "i": i,
                        "n": n,
                        "status": "fail",
                        "first_nonzero": str(
                            PPoly({min(slice_sum.terms): slice_sum.terms[min(slice_sum.terms)]})
                        ),
                    }
                )
                ok_all = False
            else:
                items.append({"i": i, "n": n, "status": "pass"})
    return {
        "params": {"model": model.name, "imax": i_max, "order": N,
                   "subs": {k: str(v) for k, v in (subs or {}).items()}},
        "items": items,
        "denominator_flags": denom_flags,
        "ok": ok_all,
    }


def h_series(tau):
    """H = (1+b) log tau, term by term; requires [t^0] tau = 1."""
    if tau.coeff(0) != PPoly.one():
        raise ValueError("log requires a series with constant term 1")
    N = tau.order
    logs = [PPoly.zero()]
    for n in range(1, N + 1):
        acc = tau.coeff(n) * n
        for j in range(1, n):
            acc = acc - logs[j] * tau.coeff(n - j) * j
        logs.append(acc * Coeff.from_rational(Fraction(1, n)))
    return HSeries(tau.model, [c * ONE_PLUS_B for c in logs])


def tau_from_h(h):
    """exp(H/(1+b)) back from an HSeries; inverse of h_series."""
    N = h.order
    s = [c * INV_1PB for c in h.coeffs]
    coeffs = [PPoly.one()]
    for n in range(1, N + 1):
        acc = PPoly.zero()
        for j in range(1, n + 1):
            acc = acc + s[j] * coeffs[n - j] * j
        coeffs.append(acc * Coeff.from_rational(Fraction(1, n)))
    return TauSeries(h.model, coeffs)


# -- rooted fixed point ------------------------------------------------------


class TSeries:
    """Truncated series in t with PPoly coefficients (plain container)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order=None):
        coeffs = list(coeffs)
        if order is not None:
            coeffs = coeffs[: order + 1]
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order):
        return cls([PPoly.zero()] * (order + 1))

    @classmethod
    def one(cls, order):
        return cls([PPoly.one()] + [PPoly.zero()] * order)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        return TSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        return TSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def mul_series(self, other):
        N = self.order
        out = [PPoly.zero() for _ in range(N + 1)]
        for a, ca in enumerate(self.coeffs):
            if not ca:
                continue
            for bidx in range(0, N - a + 1):
                cb = other.coeffs[bidx]
                if cb:
                    out[a + bidx] = out[a + bidx] + ca * cb
        return TSeries(out)

    def map(self, fn):
        return TSeries([fn(c) for c in self.coeffs])

    def scale(self, c):
        return TSeries([x * c for x in self.coeffs])

    def tshift(self, k):
        N = self.order
        return TSeries([PPoly.zero()] * k + self.coeffs, N)

    def is_zero(self):
        return not any(self.coeffs)


def _j_act(delta, series, charge):
    """Action of the current J_delta on a truncated series, slice by slice."""
    if delta < 0:
        return series.map(lambda c: c * PPoly.gen(-delta))
    if delta > 0:
        return series.map(lambda c: c.dp(delta) * (ONE_PLUS_B * delta))
    return series.scale(charge)


def _lambda_series(entries, order, shift, charge, feedback):
    """Transfer step on a y-vector of truncated series, with rooted feedback.

    feedback maps a >= 1 to the rooted series G_a = a dH/dp_a; the feedback
    term moves the marked degree up by a while multiplying by G_a.
    """
    out = {}

    def accumulate(m, s):
        if s.is_zero():
            return
        out[m] = out[m] + s if m in out else s

    for j, s in entries.items():
        for delta in range(-j, order + 1):
            if delta == 0 and not charge:
                continue
            accumulate(j + delta, _j_act(delta, s, charge))
    for j, s in entries.items():
        c = B * j if shift is None else B * j + shift
        if c:
            accumulate(j, s.scale(c))
        for a, g in feedback.items():
            accumulate(j + a, s.mul_series(g))
    return out


def check_rooted_fixed_point(model, tau, i_max, order=None):
    """Check i dH/dp_i against the rooted transfer formula, order by order."""
    h = h_series(tau)
    N = tau.order if order is None else min(order, tau.order)
    feedback = {}
    for a in range(1, N + 1):
        g = TSeries([h.coeff(n).dp(a) * a for n in range(N + 1)])
        if not g.is_zero():
            feedback[a] = g
    charge = model.charge()
    shifts = [None] if model.k == 1 else [Coeff.var("u%d" % c) for c in range(1, model.k + 1)]
    qs = model.q_weights()

    entries = {0: TSeries.one(N)}
    per_round = []
    for _ in range(1, model.r + 1):
        for shift in shifts:
            entries = _lambda_series(entries, N, shift, charge, feedback)
        entries = {j + 1: s for j, s in entries.items()}
        per_round.append(dict(entries))

    items = []
    ok_all = True
    for i in range(1, i_max + 1):
        lhs = TSeries([h.coeff(n).dp(i) * i for n in range(N + 1)])
        rhs = TSeries.zero(N)
        for m in range(1, model.r + 1):
            entry = per_round[m - 1].get(i)
            if entry is not None:
                rhs = rhs + entry.scale(qs[m]).tshift(m)
        diff = lhs - rhs
        for n in range(N + 1):
            if diff.coeffs[n]:
                items.append(
                    {"i": i, "n": n, "status": "fail", "first_mismatch": str(diff.coeffs[n])}
                )
                ok_all = False
            else:
                items.append({"i": i, "n": n, "status": "pass"})
    return {
        "params": {"model": model.name, "imax": i_max, "order": N},
        "items": items,
        "ok": ok_all,
    }
