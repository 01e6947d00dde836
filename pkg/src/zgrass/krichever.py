"""Dictionary between curve-like function rings and frame points.

One direction: from generators of a ring of functions with poles at a
single marked point (optionally acting on module generators), build the
frame of their span.  The certification is finite: enumerate monomial
products down to the window floor, read off which pole orders the span
achieves, and look for an unbroken run of orders long enough that one
generator can walk it forward indefinitely.  When every order in the run
is achieved by an exact monomial and the resulting frame is closed under
multiplication by the generators, the frame is the span, exactly.  If the
monomial check fails, the span within the window is returned as an
approximate frame; if no run can be certified at all, NotClosed.

Other direction: diagnostics that recognize frames of ring origin --
multiplicative closure, the stabilizer ring of a point, the dimension
profile of its flow orbit (whose stable value counts the gaps of the pole
semigroup), the even-variable quotient of a sign-invariant ring point, and
the coordinate normalization that turns an involution into the sign flip.
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import (
    NotClosed,
    NotInvolution,
    NotNormalizable,
    NotRingPoint,
    WindowTooSmall,
    ZgrassError,
)
from .grassmann import DEFAULT_WINDOW, FramePoint
from .linalg import nullspace
from .series import LaurentSeries, SubstitutionMap


class CurveData(NamedTuple):
    """Generating data for a span: ring generators, optional module
    generators (empty means the ring itself), an optional involution of the
    local coordinate, and a display label."""

    ring_gens: tuple
    module_gens: tuple = ()
    involution: object = None
    label: str = ""


def _expand(cur, gens, budget, out):
    if not gens:
        out.append(cur)
        return
    g, rest = gens[0], gens[1:]
    order = -g.valuation()
    acc, left = cur, budget
    while True:
        _expand(acc, rest, left, out)
        if left < order:
            return
        acc = acc * g
        left -= order


def _cert_need(g):
    """Run length letting g extend verified monomials to all deeper orders.

    Multiplying z^-j by g lands on z^-(j+ord) plus corrections no deeper
    than ord + top positions above; a verified run that long closes the
    induction.
    """
    exps = sorted(g.coeffs)
    order = -exps[0]
    top = exps[-1]
    return order + max(0, top) if len(exps) > 1 else order


def _closed_under(u, gens):
    for g in gens:
        for r in u.rows:
            if not u.contains(r * g):
                return False
        top = max(g.coeffs)
        for j in range(u.tail_j + 1, u.tail_j + 1 + max(0, top)):
            if not u.contains(g.shift(-j)):
                return False
    return True


def span_closure(gens, window=DEFAULT_WINDOW, module_gens=()):
    """Frame of the span of the ring (or module) generated below the window.

    Returns an exact frame when the window certifies the monomial tail and
    the frame is closed under the generators; an approximate frame (rows
    certified above the window floor only) when the span provably differs
    from any monomial-tail form within view; raises NotClosed when the
    achieved pole orders never run long enough to certify anything.
    """
    if isinstance(gens, CurveData):
        module_gens = gens.module_gens or ()
        gens = gens.ring_gens
    gens = list(gens)
    if not gens:
        raise NotClosed("no ring generators")
    for g in gens:
        if not isinstance(g, LaurentSeries) or not g.exact:
            raise ZgrassError("generators must be exact series")
        if not g or g.valuation() >= 0:
            raise ZgrassError("ring generators must have a pole")
    mods = list(module_gens) or [LaurentSeries.one()]
    lo, hi = int(window[0]), int(window[1])
    depth = -lo
    products = []
    for m in mods:
        if not isinstance(m, LaurentSeries) or not m.exact or not m:
            raise ZgrassError("module generators must be nonzero exact series")
        budget = depth + m.valuation()
        if budget < 0:
            raise WindowTooSmall("module generator has a pole below the window")
        _expand(m, gens, budget, products)
    full = FramePoint.from_gens(products, depth, window, allow_dependent=True)
    achieved = {-p for p in full.pivots} | set(
        range(full.tail_j + 1, depth + 1)
    )
    top = max(achieved)
    jstar = top
    while jstar - 1 in achieved:
        jstar -= 1
    need = min(_cert_need(g) for g in gens)
    if top - jstar + 1 < need:
        raise NotClosed(
            f"achieved orders run [{jstar}, {top}], shorter than the "
            f"certification length {need}; widen the window"
        )
    clean = all(
        full.contains(LaurentSeries.monomial(-j))
        for j in range(jstar, top + 1)
    )
    if clean:
        point = FramePoint.from_gens(
            products, jstar - 1, window, allow_dependent=True
        )
        if _closed_under(point, gens):
            return point
    return FramePoint(
        full.rows, full.pivots, full.tail_j, window, exact=False, row_floor=lo
    )


# -- recognizing ring points ---------------------------------------------------


def is_ring_point(u):
    """Whether the subspace contains 1 and is closed under multiplication.

    Finitely many products decide it: row by row, and rows against the few
    tail monomials shallow enough that the product could stick out of the
    tail.  Needs an exact frame.
    """
    if not u.exact:
        raise ZgrassError("ring test needs an exact frame")
    if not u.contains(LaurentSeries.one()):
        return False
    for i, r in enumerate(u.rows):
        for s in u.rows[i:]:
            if not u.contains(r * s):
                return False
        top = max(r.coeffs) if r.coeffs else 0
        for j in range(u.tail_j + 1, u.tail_j + 1 + max(0, top)):
            if not u.contains(r.shift(-j)):
                return False
    return True


class PrymReport(NamedTuple):
    ring: bool
    sigma_invariant: bool
    isotropic: bool | None
    parity: int | None
    member: bool


def p0_membership(u):
    """Ring structure, sign invariance, and isotropy in one verdict.

    Isotropy is only defined at index zero; elsewhere it reports None and
    membership fails.
    """
    ring = is_ring_point(u)
    sigma = u.is_sigma_invariant()
    if u.charge == 0:
        rep = u.isotropy()
        iso, parity = rep.isotropic, rep.parity
    else:
        iso, parity = None, None
    return PrymReport(ring, sigma, iso, parity,
                      bool(ring and sigma and iso))


def stabilizer(u, n):
    """Basis of {f in span{z^-n..z^n} : f U inside U}, exactly.

    Constraints are linear: for every row and every shallow tail monomial,
    the reduction of z^e times it must leave nothing visible.  Deeper tail
    monomials cannot escape the tail and impose nothing.
    """
    if not u.exact:
        raise ZgrassError("stabilizer needs an exact frame")
    exps = list(range(-n, n + 1))
    targets = list(u.rows) + [
        LaurentSeries.monomial(-j)
        for j in range(u.tail_j + 1, u.tail_j + n + 1)
    ]
    crows = []
    for b in targets:
        rems = [u.reduce(b.shift(e)) for e in exps]
        seen = sorted(
            {ex for r in rems for ex in r.coeffs if ex >= -u.tail_j}
        )
        for ex in seen:
            crows.append([r.coeffs.get(ex, Fraction(0)) for r in rems])
    basis = nullspace(crows, len(exps))
    return [
        LaurentSeries({e: c for e, c in zip(exps, v) if c}) for v in basis
    ]


class OrbitProfile(NamedTuple):
    dims: tuple
    verdict: str  # "stable" | "inconclusive"
    value: int | None


def orbit_profile(u, nmax=12, odd_only=False):
    """Independent flow directions modulo the stabilizer, level by level.

    At level n the flows are z^-1..z^-n (odd exponents only on request);
    directions lying in the stabilizer act trivially and are quotiented
    away.  The profile of a ring point stabilizes at the number of gaps of
    its pole semigroup; the verdict is "stable" after three equal trailing
    values and never extrapolates beyond nmax.
    """
    dims = []
    for n in range(1, nmax + 1):
        stab = stabilizer(u, n)
        flows = [i for i in range(1, n + 1) if not (odd_only and i % 2 == 0)]
        keep = {-i for i in flows}
        crows = [
            [s.coeffs.get(e, Fraction(0)) for s in stab]
            for e in range(-n, n + 1)
            if e not in keep
        ]
        overlap = len(nullspace(crows, len(stab))) if stab else 0
        dims.append(len(flows) - overlap)
    stable = len(dims) >= 3 and dims[-1] == dims[-2] == dims[-3]
    return OrbitProfile(
        tuple(dims),
        "stable" if stable else "inconclusive",
        dims[-1] if stable else None,
    )


def quotient_ring(u):
    """Even part of a sign-invariant ring point, in the halved variable.

    The result is the frame of the subring fixed by the sign flip, with
    z^2 rewritten as the new coordinate.
    """
    if not is_ring_point(u):
        raise NotRingPoint("subspace is not multiplicatively closed")
    even, _ = u.split_even_odd()
    return even


# -- involution normal form ----------------------------------------------------


def normalize_involution(s, prec=16):
    """Coordinate w(z) in which the involution becomes the sign flip.

    Requires linear part exactly -1 (any other involution fixing the origin
    is the identity) and verifies s(s(z)) = z on the sound range.  Solved
    order by order: even orders are corrected, odd orders must already
    cancel -- the returned w is the unique solution with vanishing odd
    coefficients past the first.
    """
    if isinstance(s, LaurentSeries):
        s = SubstitutionMap(s)
    if s.image.coeff(1) != -1:
        raise NotNormalizable("involution must have linear coefficient -1")
    s.check_involution()
    w = LaurentSeries.monomial(1)
    for k in range(2, prec + 1):
        delta = (w.substitute(s, prec=prec + 2) + w).coeff(k)
        if k % 2 == 0:
            if delta:
                w = w + LaurentSeries({k: -delta / 2})
        elif delta:
            raise NotNormalizable(
                f"odd-order obstruction {delta} at z^{k}"
            )
    return SubstitutionMap(w)
