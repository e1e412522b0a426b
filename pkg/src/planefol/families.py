"""Generator zoo with checkable expected values.

Four constructions: diagonal linear fields carrying monomial first
integrals, a quartic family whose first-integral degrees are unbounded
in the parameter, Riccati fields attached to the hypergeometric equation
together with their polynomial invariant curves, and pullbacks of a
foliation under the coordinate power map.  A census routine counts the
singular points whose reduction meets a dicritical blow-up.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import gcd

from .algebraic import zero_split
from .blowup import BlowupUnavailableError, reduce_local_field
from .curves import PlaneCurve
from .foliation import Foliation, make_foliation
from .mpoly import MPoly
from .singularities import (
    NON_REDUCED,
    UNDETERMINED,
    ExactnessError,
    SingularPoint,
    _tau_mod,
    classify_singularity,
    singular_points,
)


class CensusUndetermined(Exception):
    """A singular point resisted exact classification; the census would lie."""


class BudgetExceeded(Exception):
    """The census passed its wall-clock allowance."""


# -- diagonal linear fields ------------------------------------------------------


def linear_family(p, q):
    """The field q*x d/dx + p*y d/dy, which has the first integral y^q / x^p.

    Returns the foliation and the degree of that integral as a reduced
    rational map: max(p, q) when p/q > 0, |p| + |q| otherwise.  Requires
    coprime integers with p*q != 0.
    """
    if q == 0:
        raise ValueError("q must be nonzero")
    if p == 0:
        raise ValueError("the ratio p/q must be nonzero")
    if gcd(abs(p), abs(q)) != 1:
        raise ValueError("p and q must be coprime")
    if q < 0:
        p, q = -p, -q
    vars2 = ("x", "y")
    x = MPoly.variable("x", vars2)
    y = MPoly.variable("y", vars2)
    F = make_foliation(q * x, p * y)
    expected = max(p, q) if p > 0 else abs(p) + abs(q)
    return F, expected


def linear_first_integral(p, q):
    """(numerator, denominator) of the monomial first integral of
    linear_family(p, q)."""
    if q < 0:
        p, q = -p, -q
    vars2 = ("x", "y")
    x = MPoly.variable("x", vars2)
    y = MPoly.variable("y", vars2)
    if p > 0:
        return y ** q, x ** p
    return x ** (-p) * y ** q, MPoly.const(vars2, 1)


# -- the quartic family with unbounded integral degrees ---------------------------


def lins_neto(alpha):
    """(x^3 - 1)(x - a*y^2) d/dx + (y^3 - 1)(y - a*x^2) d/dy, degree 4 for
    every parameter value."""
    a = Fraction(alpha)
    vars2 = ("x", "y")
    x = MPoly.variable("x", vars2)
    y = MPoly.variable("y", vars2)
    one = MPoly.const(vars2, 1)
    P = (x ** 3 - one) * (x - a * y * y)
    Q = (y ** 3 - one) * (y - a * x * x)
    return make_foliation(P, Q)


# -- hypergeometric series and Riccati fields --------------------------------------


def _pochhammer(p, n):
    out = Fraction(1)
    for i in range(n):
        out *= p + i
    return out


class HypergeometricPoly:
    """The terminating series F(1-k, b, c; z): coefficient of z^n is
    (1-k)_n (b)_n / ((c)_n n!), zero from n = k on."""

    __slots__ = ("k", "b", "c", "poly")

    def __init__(self, k, b, c, poly):
        self.k = k
        self.b = b
        self.c = c
        self.poly = poly

    @property
    def coefficients(self):
        return self.poly.scalar_coeffs()

    def __repr__(self):
        return f"HypergeometricPoly(k={self.k}, b={self.b}, c={self.c}; {self.poly})"


def hypergeometric_poly(k, b, c):
    if k < 1:
        raise ValueError("k must be a positive integer")
    b = Fraction(b)
    c = Fraction(c)
    a = Fraction(1 - k)
    coeffs = []
    fact = 1
    for n in range(k):
        if n > 0:
            fact *= n
        den = _pochhammer(c, n)
        if den == 0:
            raise ValueError(f"(c)_{n} vanishes for c = {c}")
        coeffs.append(_pochhammer(a, n) * _pochhammer(b, n) / (den * fact))
    poly = MPoly.from_univar("z", coeffs, ("z",))
    return HypergeometricPoly(k, b, c, poly)


def hypergeometric_riccati(a, b, c):
    """The degree-4 Riccati field over the three-punctured line:
    P = z(1-z), Q = -z(1-z)y^2 - (c - (a+b+1)z)y + ab in variables (z, y).

    The sign convention is the one that makes graphs y = w'(z)/w(z) of
    solutions w of the hypergeometric equation invariant; it is the
    convention certified by riccati_invariant_curve.  The lines z = 0 and
    z = 1 are always invariant, and y = 0 is invariant exactly when ab = 0.
    """
    a = Fraction(a)
    b = Fraction(b)
    c = Fraction(c)
    if c.denominator == 1 and c <= 0:
        raise ValueError("c must avoid the nonpositive integers")
    vars2 = ("z", "y")
    z = MPoly.variable("z", vars2)
    y = MPoly.variable("y", vars2)
    one = MPoly.const(vars2, 1)
    zz = z * (one - z)
    P = zz
    Q = -zz * y * y - (c * one - (a + b + 1) * z) * y + a * b * one
    return make_foliation(P, Q)


def riccati_invariant_curve(k, b, c):
    """The curve y*F(x) - F'(x) for F = hypergeometric_poly(k, b, c), in
    variables (x, y) with x playing the role of z.  It is invariant for
    hypergeometric_riccati(1-k, b, c); k = 1 gives the line y."""
    H = hypergeometric_poly(k, b, c)
    vars2 = ("x", "y")
    Fx = MPoly.from_univar("x", H.coefficients, vars2)
    y = MPoly.variable("y", vars2)
    return PlaneCurve(y * Fx - Fx.diff("x"))


# -- pullback under the coordinate power map ---------------------------------------


def power_pullback(F, r):
    """Pullback of F under (x, y) -> (x^r, y^r), common factors removed.

    The affine field is (y^(r-1) P(x^r, y^r), x^(r-1) Q(x^r, y^r)), read
    off from the pullback of the dual 1-form P dy - Q dx.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    if r == 1:
        return Foliation(F.P, F.Q)
    x, y = F.vars
    xv = MPoly.variable(x, F.vars)
    yv = MPoly.variable(y, F.vars)
    Pr = F.P.subs({x: xv ** r, y: yv ** r})
    Qr = F.Q.subs({x: xv ** r, y: yv ** r})
    return make_foliation(yv ** (r - 1) * Pr, xv ** (r - 1) * Qr)


# -- dicritical census --------------------------------------------------------------


def _heartbeat(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("dicritical census ran past its time budget")


def _tau_coeff_polys(p, tau):
    """The tau-coefficient polynomial of each (x, y)-monomial of p."""
    ti = p.vars.index(tau)
    bucket = {}
    for e, cval in p.terms.items():
        key = tuple(v for i, v in enumerate(e) if i != ti)
        bucket.setdefault(key, {})[(e[ti],)] = cval
    return [MPoly((tau,), terms) for terms in bucket.values()]


def _xy_parts(p, tau):
    """p split into its (x, y)-homogeneous layers, tau left alone."""
    ti = p.vars.index(tau)
    layers = {}
    for e, cval in p.terms.items():
        d = sum(v for i, v in enumerate(e) if i != ti)
        layers.setdefault(d, {})[e] = cval
    return {d: MPoly(p.vars, terms) for d, terms in layers.items()}


def _census(field, chart, f, xt, yt, deadline):
    """Dicritical points within one non-reduced cluster.

    The first blow-up at a point is dicritical exactly when the tangent
    cone x*Q_nu - y*P_nu vanishes there. Where it does not, the census
    walks the full local reduction, which needs exact coordinates; those
    exist for clusters of degree at most 2 only.
    """
    _heartbeat(deadline)
    tau = f.vars[0]
    x, y = field.vars
    vars3 = (tau, x, y)
    X = MPoly.variable(x, vars3) + xt.with_vars(vars3)
    Y = MPoly.variable(y, vars3) + yt.with_vars(vars3)
    PT = _tau_mod(field.P.with_vars(vars3).subs({x: X, y: Y}), f, tau)
    QT = _tau_mod(field.Q.with_vars(vars3).subs({x: X, y: Y}), f, tau)
    pparts = _xy_parts(PT, tau)
    qparts = _xy_parts(QT, tau)

    def split_off(h, c):
        return (_census(field, chart, h, xt, yt, deadline)
                + _census(field, chart, c, xt, yt, deadline))

    # lowest (x, y)-order of the translated field on this cluster
    nu = None
    for d in sorted(set(pparts) | set(qparts)):
        coeffs = []
        if d in pparts:
            coeffs += _tau_coeff_polys(pparts[d], tau)
        if d in qparts:
            coeffs += _tau_coeff_polys(qparts[d], tau)
        statuses = [zero_split(cf, f, tau) for cf in coeffs]
        if any(st == "none" for st, _ in statuses):
            nu = d
            break
        for st, payload in statuses:
            if st == "split":
                return split_off(*payload)
        # every coefficient vanishes on the whole cluster: not the order yet
    if nu is None:
        raise ArithmeticError("field vanished identically along a cluster")
    if nu == 0:
        raise ArithmeticError("census reached a regular point")

    zero3 = MPoly.zero(vars3)
    Pnu = pparts.get(nu, zero3)
    Qnu = qparts.get(nu, zero3)
    T = _tau_mod(
        MPoly.variable(x, vars3) * Qnu - MPoly.variable(y, vars3) * Pnu, f, tau
    )
    coeffs = _tau_coeff_polys(T, tau)
    statuses = [zero_split(cf, f, tau) for cf in coeffs]
    if all(st == "all" for st, _ in statuses):
        # tangent cone vanishes on the whole cluster: dicritical first blow-up
        return f.deg_in(tau)
    if not any(st == "none" for st, _ in statuses):
        for st, payload in statuses:
            if st == "split":
                return split_off(*payload)
    # the cone is nonzero at every point of the cluster; walk each reduction
    sub = SingularPoint(chart, field, f, xt, yt)
    try:
        points = sub.exact_coords()
    except ExactnessError as e:
        raise BlowupUnavailableError(
            f"census needs exact coordinates to walk {sub}: {e}"
        ) from e
    total = 0
    for pt in points:
        _heartbeat(deadline)
        tree = reduce_local_field((field.P, field.Q), pt)
        if any(node.dicritical for node in tree.walk()):
            total += 1
    return total


def dicritical_count(F, budget_seconds=None):
    """Number of singular points of F whose reduction contains at least one
    dicritical blow-up.

    Reduced singular points never count: their single permitted blow-up is
    never dicritical.  Raises CensusUndetermined when a point resists
    classification, BlowupUnavailableError when a deep walk would need
    coordinates beyond quadratic irrationals, and BudgetExceeded when
    budget_seconds runs out.
    """
    deadline = None
    if budget_seconds is not None:
        deadline = time.monotonic() + budget_seconds
    total = 0
    for sp in singular_points(F, with_milnor=False):
        for sub, kind in classify_singularity(sp):
            _heartbeat(deadline)
            if kind == UNDETERMINED:
                raise CensusUndetermined(f"cannot classify {sub}")
            if kind != NON_REDUCED:
                continue
            total += _census(sub.field, sub.chart, sub.modulus, sub.xt, sub.yt,
                             deadline)
    return total


# -- descriptors --------------------------------------------------------------------

FAMILY_TAGS = ("linear", "lins_neto", "riccati_hypergeometric", "power_pullback")


class FamilyDescriptor:
    """A family tag, its parameters, and the expected invariants the family
    is claimed to have.  Claims are cross-checked by the test suite, never
    assumed by the generators."""

    __slots__ = ("family", "parameters", "claimed")

    def __init__(self, family, parameters, claimed):
        if family not in FAMILY_TAGS:
            raise ValueError(f"unknown family {family!r}")
        self.family = family
        self.parameters = dict(parameters)
        self.claimed = dict(claimed)

    def to_json(self):
        return {
            "family": self.family,
            "parameters": {k: str(v) for k, v in self.parameters.items()},
            "claimed": {k: str(v) for k, v in self.claimed.items()},
        }

    def __repr__(self):
        return f"FamilyDescriptor({self.family}, {self.parameters})"


def build_family(tag, params):
    """Instantiate a family by tag with a plain dict of parameters.

    Returns (foliation, descriptor).  The descriptor's claimed block holds
    the expected invariants; callers verify them, the constructor does not.
    """
    if tag == "linear":
        p = int(params["p"])
        q = int(params["q"])
        F, expected = linear_family(p, q)
        claimed = {
            "degree": 0 if (p, q) in ((1, 1), (-1, -1)) else 1,
            "first_integral_degree": expected,
        }
        return F, FamilyDescriptor(tag, {"p": p, "q": q}, claimed)
    if tag == "lins_neto":
        alpha = Fraction(params["alpha"])
        return lins_neto(alpha), FamilyDescriptor(
            tag, {"alpha": alpha}, {"degree": 4}
        )
    if tag == "riccati_hypergeometric":
        a = Fraction(params["a"])
        b = Fraction(params["b"])
        c = Fraction(params["c"])
        return hypergeometric_riccati(a, b, c), FamilyDescriptor(
            tag, {"a": a, "b": b, "c": c}, {"degree": 4}
        )
    if tag == "power_pullback":
        alpha = Fraction(params["alpha"])
        r = int(params["r"])
        F = power_pullback(lins_neto(alpha), r)
        claimed = {
            "degree": 3 * r + 1,
            "dicritical_count": 3 * r * r + 6 * r + 3,
        }
        return F, FamilyDescriptor(tag, {"alpha": alpha, "r": r}, claimed)
    raise ValueError(f"unknown family {tag!r}")
