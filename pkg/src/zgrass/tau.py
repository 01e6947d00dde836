"""Tau polynomials of frame points, square-root normal forms, Baker series.

The tau polynomial of a point collects its minors against the Schur basis:
tau_U = sum over partitions of plucker(lam) * schur_lam.  For an exact frame
the sum is finite -- the support sits in an explicit box -- and flowing the
point by the universal unit exp(sum t_k z^-k) turns the vacuum minor into the
same polynomial, which is the consistency this module lets callers check.

The square-root normal form factors the odd-times restriction of tau as
scale * root^2 through a chosen weight; it exists exactly when tau does not
vanish at the origin, i.e. when the point has even parity.

The Baker series of a point pairs its basis rows with the universal
polynomial blocks p_i(t): psi(z, t) = z * sum_i u_i(z) p_i(t).  Pairing a
point's Baker series against the one of its residue-dual gives two bilinear
residuals: the first vanishes identically by duality, and the second --
evaluated at -z -- vanishes precisely on sign-invariant points, so its
lowest monomial is an honest obstruction witness.
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import NotIsotropic, OddParity, ZgrassError
from .series import LaurentSeries, pair_std, residue, sigma0
from .symfun import (
    Partition,
    TimePolynomial,
    partitions_in_box,
    partitions_upto,
    schur,
    schur_p,
    sqrt_series,
)


def plucker_support(u):
    """All (partition, coordinate) pairs with nonzero coordinate.

    Exact frames only.  A nonzero minor must match every implicit tail row
    with its own column and sample columns inside the row support, so the
    support lives in the box: at most len(rows) parts, parts at most
    maxtop + 1 - charge.
    """
    if not u.exact:
        raise ZgrassError("the support box needs an exact frame")
    if not u.rows:
        return [(Partition(()), Fraction(1))]
    width = max(r.top for r in u.rows) + 1 - u.charge
    out = []
    for lam in partitions_in_box(len(u.rows), width):
        v = u.plucker(lam)
        if v:
            out.append((lam, v))
    return out


def tau_function(u, fam="t", cap=None):
    """The tau polynomial of the point in the times of one family.

    Exact frames give the exact finite polynomial (optionally capped
    afterwards).  Approximate frames require a cap and sum over all
    partitions up to that weight.
    """
    if u.exact:
        acc = TimePolynomial()
        for lam, v in plucker_support(u):
            acc = acc + schur(lam.parts, fam) * v
        return acc if cap is None else acc.with_cap(cap)
    if cap is None:
        raise ZgrassError("tau of an approximate frame needs a weight cap")
    acc = TimePolynomial({}, cap)
    for lam in partitions_upto(cap):
        v = u.plucker(lam)
        if v:
            acc = acc + schur(lam.parts, fam).with_cap(cap) * v
    return acc


def times_flow(cap, floor, fam="t"):
    """exp(sum_k t_k z^-k) down to the floor, coefficient weights capped.

    The z^-n coefficient is the complete homogeneous generating polynomial
    p_n of the family, which has weight n; since p_n is homogeneous, every
    coefficient past the cap is dropped entirely.
    """
    deep = min(cap, -floor)
    return LaurentSeries(
        {-n: schur_p(n, fam).with_cap(cap) for n in range(0, deep + 1)}
    )


def tau_flow_consistency(u, cap, fam="t"):
    """(vacuum minor after the universal flow, capped tau) -- should agree."""
    moved = u.flow(times_flow(cap, u.window[0], fam))
    return moved.plucker(()), tau_function(u, fam, cap=cap)


def odd_part(tau, fam="t"):
    """Restriction to the odd-index times: t_2 = t_4 = ... = 0 in one family.

    Variables of other families (parameters, second time sets) pass through
    untouched.
    """
    data = {
        m: c
        for m, c in tau.terms.items()
        if all(f != fam or k % 2 == 1 for (f, k), _ in m)
    }
    return TimePolynomial(data, tau.maxweight)


class TauBar(NamedTuple):
    scale: Fraction
    root: TimePolynomial


def taubar(tau, weight, fam="t", point=None):
    """Square-root normal form of the odd-times restriction of tau.

    Returns (scale, root) with tau|odd = scale * root^2 through the weight
    and root(0) = 1.  A tau vanishing at the origin has no such form; that is
    the odd-parity case and raises.  Passing the source point checks the
    isotropy hypothesis the factorization belongs to.
    """
    if point is not None and not point.isotropy().isotropic:
        raise NotIsotropic("square-root normal form needs an isotropic point")
    restricted = odd_part(tau, fam)
    c = restricted.constant_term()
    if c == 0:
        raise OddParity("tau vanishes at the origin")
    u = restricted * (Fraction(1) / c)
    return TauBar(c, sqrt_series(u, weight))


# -- Baker series and bilinear residuals --------------------------------------


def _basis(u, count):
    if not u.exact:
        raise ZgrassError("residual pairings need exact frames on both sides")
    rows, _ = u.materialized(-(u.tail_j + max(0, count - len(u.rows))))
    if len(rows) < count:
        raise ZgrassError(f"frame yields only {len(rows)} basis rows")
    return rows[:count]


def baker(u, weight, fam="t"):
    """Baker series of the point, as (basis row, polynomial block) pairs.

    Block i is the universal polynomial p_i in the given family, capped at
    the weight; rows run through the canonical basis in materialized order
    (explicit rows by descending pivot, then tail monomials).  Blocks beyond
    the weight are homogeneous of too-high weight and are omitted.  The full
    object is psi(z, t) = z * sum_i row_i(z) * block_i(t).
    """
    rows = _basis(u, weight)
    return tuple(
        (rows[i], schur_p(i + 1, fam).with_cap(weight)) for i in range(weight)
    )


def baker_adjoint(u, weight, fam="s"):
    """Baker series of the residue-orthogonal point, conventionally in a
    second time family."""
    return baker(u.orthogonal(), weight, fam)


def baker_residual_matrices(u, count=None, dual=None):
    """First and second bilinear residual matrices against the dual point.

    first[i][j] = Res u_i w_j vanishes identically because the dual point is
    the residue orthogonal; second[i][j] = -Res (flip u_i) w_j vanishes
    exactly when the point is stable under the sign flip, and otherwise its
    lowest nonzero entry is an honest obstruction witness.
    """
    w = dual if dual is not None else u.orthogonal()
    if count is None:
        count = len(u.rows) + 2
    ub = _basis(u, count)
    wb = _basis(w, count)
    flip = sigma0()
    first = [[pair_std(a, b) for b in wb] for a in ub]
    second = [[-pair_std(a.substitute(flip), b) for b in wb] for a in ub]
    return first, second


def _assemble(pairs):
    acc = LaurentSeries.zero()
    for row, block in pairs:
        if block:
            acc = acc + row * block
    return LaurentSeries.monomial(1) * acc


def bilinear_residues(u, weight, fams=("t", "s"), dual=None):
    """The two bilinear residuals Res psi(+-z, t) psi*(z, t') dz / z^2.

    Literal route: assemble both Baker series and read the residues off the
    products.  The first residual vanishes identically (duality); the second
    vanishes exactly when the point is sign-invariant -- its lowest nonzero
    monomial in (t, t') is the obstruction witness.  Entries agree with
    sum_ij first/second[i][j] p_i(t) p_j(t') over the residual matrices.
    """
    ft, fs = fams
    w = dual if dual is not None else u.orthogonal()
    psi = _assemble(baker(u, weight, ft))
    phi = _assemble(baker(w, weight, fs))
    form = LaurentSeries.monomial(-2)
    r1 = residue(psi * phi * form)
    r2 = residue(psi.substitute(sigma0()) * phi * form)
    z = TimePolynomial({}, weight)
    return (z + r1 if r1 else z, z + r2 if r2 else z)
