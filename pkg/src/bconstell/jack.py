"""Independent tau oracle through deformed symmetric functions.

The series is reassembled from scratch: for each size n, sum over
partitions of n the product of the one-parameter deformed polynomials in
the face variables and in the vertex-degree variables, weighted by a
content product and divided by the squared norm.  Nothing here touches the
evolution engine, so exact agreement of the two series is a real check.

The deformed polynomials are constructed by Gram-Schmidt against the
dominance order over the alpha-deformed power-sum pairing, normalized so
the coefficient of p_1^n is 1.  The internal scalar field is the exact
rational function field Q(alpha, u1, u2, u3, q1, q2, q3); the engine's
scalar ring cannot host the intermediate norms (their denominators are not
powers of 1+b), and keeping the oracle on a separate arithmetic stack is
the point.

The deformed content of a box is a convention to calibrate, not to assume:
c(row r, column c) = alpha*(c-1) - (r-1) ("standard") or its transpose
with the deformation on rows ("transpose").  calibrate_convention settles
it empirically against the evolution engine at sizes <= 2 and the caller
is told which one matched.
"""

from fractions import Fraction
from functools import lru_cache

from .coeffring import Coeff, ONE_PLUS_B, U as COEFF_U, Q as COEFF_Q
from .ppoly import PPoly


JACK_BOUND = 6


class JackBoundError(ValueError):
    """Requested partition size exceeds the configured bound."""


class OracleDenominatorError(ArithmeticError):
    """A series coefficient did not reduce to a power of (1+b)."""


class OracleCalibrationError(ArithmeticError):
    """Neither content convention reproduced the engine series."""


# -- partitions --------------------------------------------------------------


@lru_cache(maxsize=None)
def partitions(n):
    """All partitions of n as weakly decreasing tuples, decreasing-lex order."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)

    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(n, n))


def dominance_leq(mu, lam):
    """mu <= lam in dominance order (same size)."""
    if sum(mu) != sum(lam):
        raise ValueError("dominance compares partitions of equal size")
    total_mu = total_lam = 0
    for k in range(max(len(mu), len(lam))):
        total_mu += mu[k] if k < len(mu) else 0
        total_lam += lam[k] if k < len(lam) else 0
        if total_mu > total_lam:
            return False
    return True


def z_of(lam):
    """The symmetry factor prod_i i^{m_i} m_i!."""
    z = 1
    mult = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    for part, m in mult.items():
        z *= part ** m
        for k in range(1, m + 1):
            z *= k
    return z


def alpha_inner(lam, mu):
    """Pairing of power-sum basis elements, deformation evaluated at 1+b."""
    if sum(lam) != sum(mu):
        raise ValueError("the pairing needs partitions of equal size")
    if tuple(lam) != tuple(mu):
        return Coeff.zero()
    return (ONE_PLUS_B ** len(lam)) * z_of(lam)


# -- exact field and basis conversions ---------------------------------------


@lru_cache(maxsize=1)
def _field():
    from sympy import symbols
    from sympy.polys.domains import QQ

    syms = symbols("alpha u1 u2 u3 q1 q2 q3")
    field = QQ.frac_field(*syms)
    gens = dict(zip(("alpha", "u1", "u2", "u3", "q1", "q2", "q3"), field.gens))
    return field, gens


def _fld(x):
    field, _ = _field()
    x = Fraction(x)
    return field(x.numerator) / field(x.denominator)


@lru_cache(maxsize=None)
def _p_in_m(n):
    """Coefficient of each monomial basis element inside each p_lam (integers)."""
    parts = partitions(n)
    table = {}
    for lam in parts:
        expansion = {(0,) * n: 1}
        for r in lam:
            new = {}
            for exps, c in expansion.items():
                for i in range(n):
                    key = exps[:i] + (exps[i] + r,) + exps[i + 1:]
                    new[key] = new.get(key, 0) + c
            expansion = new
        row = {}
        for mu in parts:
            key = tuple(sorted(mu, reverse=True)) + (0,) * (n - len(mu))
            row[mu] = expansion.get(key, 0)
        table[lam] = row
    return table


@lru_cache(maxsize=None)
def _m_in_p(n):
    """Inverse transition: each monomial basis element over the p basis."""
    parts = partitions(n)
    size = len(parts)
    fwd = _p_in_m(n)
    mat = [[Fraction(fwd[lam][mu]) for mu in parts] for lam in parts]
    inv = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if mat[r][col])
        mat[col], mat[pivot] = mat[pivot], mat[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        pv = mat[col][col]
        mat[col] = [x / pv for x in mat[col]]
        inv[col] = [x / pv for x in inv[col]]
        for r in range(size):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
                inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
    # row mu of the inverse expresses m_mu over the p basis
    return {
        mu: {lam: inv[c][r] for r, lam in enumerate(parts)}
        for c, mu in enumerate(parts)
    }


def _inner_field(f, g):
    """alpha-deformed pairing of two p-coordinate vectors over the field."""
    field, gens = _field()
    alpha = gens["alpha"]
    acc = field.zero
    for lam, cf in f.items():
        cg = g.get(lam)
        if cg:
            acc += cf * cg * alpha ** len(lam) * z_of(lam)
    return acc


@lru_cache(maxsize=None)
def _jack_table(n):
    """All deformed polynomials of size n as p-coordinate vectors."""
    if n > JACK_BOUND:
        raise JackBoundError("size %d exceeds the configured bound %d" % (n, JACK_BOUND))
    field, _ = _field()
    if n == 0:
        return {(): {(): field.one}}
    parts = partitions(n)
    m_in_p = _m_in_p(n)
    done = []
    table = {}
    # increasing lexicographic order refines dominance upward
    for lam in reversed(parts):
        v = {mu: _fld(c) for mu, c in m_in_p[lam].items() if c}
        for g, norm in done:
            c = _inner_field(v, g) / norm
            if c:
                v = {
                    mu: v.get(mu, field.zero) - c * g.get(mu, field.zero)
                    for mu in set(v) | set(g)
                }
                v = {mu: x for mu, x in v.items() if x}
        done.append((v, _inner_field(v, v)))
        ones = (1,) * n
        lead = v[ones]
        table[lam] = {mu: x / lead for mu, x in v.items()}
    return table


def jack(lam):
    """The deformed polynomial indexed by lam, as {partition: field coeff}."""
    lam = tuple(sorted(lam, reverse=True))
    if any(part <= 0 for part in lam):
        raise ValueError("partitions have positive parts")
    return _jack_table(sum(lam))[lam]


def jack_norm(lam):
    """Squared norm of the deformed polynomial under the pairing."""
    v = jack(lam)
    return _inner_field(v, v)


def _field_to_coeff(elem):
    """Convert a field element to Coeff with alpha -> 1+b; loud on failure."""
    field, _ = _field()
    numer, denom = elem.numer, elem.denom
    dterms = list(denom.terms())
    if len(dterms) != 1 or any(e for e in dterms[0][0][1:]):
        raise OracleDenominatorError(
            "series coefficient has a non-(1+b) denominator: %s; this is a "
            "finding to report, not to patch" % (denom,)
        )
    (dexps, dcoeff), = dterms
    e = dexps[0]
    out = Coeff.zero()
    params = [None, COEFF_U[1], COEFF_U[2], COEFF_U[3], COEFF_Q[1], COEFF_Q[2], COEFF_Q[3]]
    for exps, c in numer.terms():
        term = Coeff.from_rational(Fraction(c.numerator, c.denominator))
        if exps[0]:
            term = term * ONE_PLUS_B ** exps[0]
        for idx in range(1, 7):
            if exps[idx]:
                term = term * params[idx] ** exps[idx]
        out = out + term
    scale = Fraction(dcoeff.numerator, dcoeff.denominator)
    return out * (1 / scale) * Coeff.inv_one_plus_b(e) if e else out * (1 / scale)


def jack_to_ppoly(lam):
    """The deformed polynomial as a PPoly with alpha evaluated at 1+b."""
    out = {}
    for mu, c in jack(lam).items():
        counts = {}
        for part in mu:
            counts[part] = counts.get(part, 0) + 1
        out[tuple(sorted(counts.items()))] = _field_to_coeff(c)
    return PPoly(out)


# -- the oracle series -------------------------------------------------------


def content_product(lam, k, convention="standard"):
    """Product over boxes and colors of (u_l + deformed content)."""
    field, gens = _field()
    alpha = gens["alpha"]
    us = [gens["u1"], gens["u2"], gens["u3"]][:k]
    acc = field.one
    for r, row_len in enumerate(lam, start=1):
        for c in range(1, row_len + 1):
            if convention == "standard":
                content = alpha * (c - 1) - (r - 1)
            elif convention == "transpose":
                content = alpha * (r - 1) - (c - 1)
            else:
                raise ValueError("unknown content convention %r" % (convention,))
            for u in us:
                acc *= u + content
    return acc


def content_product_coeff(lam, k, convention="standard"):
    """Same product converted to Coeff (alpha -> 1+b)."""
    return _field_to_coeff(content_product(lam, k, convention))


def _vertex_weight(lam, model):
    """The vertex-side evaluation of the deformed polynomial."""
    field, gens = _field()
    if model.r == 1:
        # q_j = [j == 1]: only the p_1^n coordinate survives, which is 1
        return field.one
    acc = field.zero
    qs = [None, gens["q1"], gens["q2"], gens["q3"]]
    for mu, c in jack(lam).items():
        if mu and max(mu) > 3:
            continue
        term = c
        for part in mu:
            term *= qs[part]
        acc += term
    return acc


def tau_jack(model, order, convention="standard"):
    """The oracle series up to t^order as a TauSeries."""
    from .tau import TauSeries

    if order > JACK_BOUND:
        raise JackBoundError(
            "order %d exceeds the configured bound %d" % (order, JACK_BOUND)
        )
    coeffs = [PPoly.one()]
    for n in range(1, order + 1):
        vec = {}
        for lam in partitions(n):
            weight = (
                content_product(lam, model.k, convention)
                * _vertex_weight(lam, model)
                / jack_norm(lam)
            )
            if not weight:
                continue
            for mu, c in jack(lam).items():
                vec[mu] = vec.get(mu, 0) + c * weight
        terms = {}
        for mu, c in vec.items():
            if not c:
                continue
            counts = {}
            for part in mu:
                counts[part] = counts.get(part, 0) + 1
            terms[tuple(sorted(counts.items()))] = _field_to_coeff(c)
        coeffs.append(PPoly(terms))
    return TauSeries(model, coeffs)


def calibrate_convention(model, order=2):
    """Pick the content convention that matches the evolution engine.

    Tries sizes up to `order` (2 is enough to separate the conventions) and
    returns the matching convention name.  Raises if neither matches; that
    situation is a finding about the series itself and must be reported.
    """
    from .tau import tau_evolve

    reference = tau_evolve(model, order)
    matched = []
    for convention in ("standard", "transpose"):
        series = tau_jack(model, order, convention)
        if all(series.coeff(n) == reference.coeff(n) for n in range(order + 1)):
            matched.append(convention)
    if not matched:
        raise OracleCalibrationError(
            "no content convention reproduces the engine series up to order %d"
            % (order,)
        )
    return matched[0]


def compare_with_engine(model, order, convention=None):
    """Full oracle comparison; returns a report dict."""
    from .tau import tau_evolve

    if convention is None:
        convention = calibrate_convention(model)
    engine = tau_evolve(model, order)
    oracle = tau_jack(model, order, convention)
    first_diff = None
    for n in range(order + 1):
        diff = engine.coeff(n) - oracle.coeff(n)
        if diff:
            mono, coeff = diff.sorted_terms()[0]
            first_diff = {
                "order": n,
                "monomial": [[i, e] for i, e in mono],
                "engine_minus_oracle": str(coeff),
            }
            break
    return {
        "params": {"model": model.name, "order": order, "convention": convention},
        "ok": first_diff is None,
        "first_mismatch": first_diff,
    }
