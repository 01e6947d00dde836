"""Constraint families cutting out the invariant loci in tau coordinates.

Every constraint is a finite multilinear functional on the coefficients of a
tau polynomial, built from one extraction shape: pair tau against the
operator sum_{beta - alpha = e} p_beta * D_{lam, alpha}, where D_{lam, alpha}
is the sum of Schur polynomials over horizontal alpha-strips of lam and one
of the two factors carries negated times.  Each such operator is homogeneous
of weight |lam| + e, so pairing extracts a single weight component of tau.

Three families:

  GR0    quadratic, indexed by two diagrams: couples extraction levels
         e and 1 - e over even e.  Zero on sign-invariant points.
  P0TRIPLE  cubic, three diagrams: levels summing to 2, the first even,
         with the negation placed on the strip factor in the first two
         slots and on the p factor in the third.
  CURVE  linear, one diagram: the diagonal level-0 extraction.  Zero on
         multiplication-closed (ring) points.

Values are exact rationals.  Every functional can be evaluated through the
orthogonality pairing of the monomial basis ("hall") or by literally
applying the operator as scaled derivatives and reading the constant term
("diff"); the two routes agree identically and serve as mutual oracles.

For a weight-capped tau a constraint is evaluated only when every extraction
it needs lies within the cap; otherwise it raises UnsoundTruncation (the
suite runner records such entries as skipped rather than guessing).
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import UnsoundTruncation, ZgrassError
from .symfun import (
    Partition,
    TimePolynomial,
    apply_tilde,
    hall,
    partitions_upto,
    schur_p,
    strip_sum,
)

GR0 = "GR0"
P0TRIPLE = "P0TRIPLE"
CURVE = "CURVE"
FAMILIES = (GR0, P0TRIPLE, CURVE)

_op_cache = {}


def extraction_operator(lam, e, negate_p=True, fam="t"):
    """sum over beta - alpha = e of p_beta * D_{lam, alpha}, one side negated.

    negate_p=True negates the times of the p factor, otherwise of the strip
    factor.  Homogeneous of weight |lam| + e; zero when e < -lam_1.
    """
    lam = Partition(lam)
    key = (lam.parts, e, negate_p, fam)
    if key not in _op_cache:
        acc = TimePolynomial()
        top = lam[0] if len(lam) else 0
        for alpha in range(max(0, -e), top + 1):
            beta = alpha + e
            p = schur_p(beta, fam)
            d = strip_sum(lam, alpha, fam)
            if negate_p:
                term = p.negate_times() * d
            else:
                term = p * d.negate_times()
            acc = acc + term
        _op_cache[key] = acc
    return _op_cache[key]


def _pure_family(tau, fam):
    for m in tau.terms:
        for (f, _), _ in m:
            if f != fam:
                raise ZgrassError(
                    f"tau mixes variable families ({f!r} vs {fam!r})"
                )


def _pair(op, tau, route):
    if route == "hall":
        return hall(op, tau)
    if route == "diff":
        return apply_tilde(op, tau).constant_term()
    raise ZgrassError(f"unknown evaluation route {route!r}")


def _extract(lam, e, tau, fam, route, negate_p):
    op = extraction_operator(lam, e, negate_p, fam)
    if not op:
        return Fraction(0)
    return _pair(op, tau, route)


def _check_sound(tau, needed):
    if tau.maxweight is not None and needed > tau.maxweight:
        raise UnsoundTruncation(
            f"constraint needs tau to weight {needed}, cap is {tau.maxweight}"
        )


def gr0_needed_weight(lam1, lam2):
    """Largest tau weight any term of the pair constraint touches."""
    lam1, lam2 = Partition(lam1), Partition(lam2)
    w1 = lam1.weight + 1 + (lam2[0] if len(lam2) else 0)
    w2 = lam2.weight + 1 + (lam1[0] if len(lam1) else 0)
    return max(w1, w2)


def gr0_constraint(lam1, lam2, tau, fam="t", route="hall"):
    """Quadratic constraint of the pair of diagrams on tau.

    Sum over even e of extraction(lam1, e) * extraction(lam2, 1 - e) with
    the p factors negated; e ranges over [-lam1_1, 1 + lam2_1], outside of
    which one factor vanishes identically.
    """
    lam1, lam2 = Partition(lam1), Partition(lam2)
    _pure_family(tau, fam)
    _check_sound(tau, gr0_needed_weight(lam1, lam2))
    top1 = lam1[0] if len(lam1) else 0
    top2 = lam2[0] if len(lam2) else 0
    total = Fraction(0)
    for e in range(-top1, top2 + 2):
        if e % 2:
            continue
        a = _extract(lam1, e, tau, fam, route, negate_p=True)
        if not a:
            continue
        b = _extract(lam2, 1 - e, tau, fam, route, negate_p=True)
        total += a * b
    return total


def p0_needed_weight(lam1, lam2, lam3):
    lams = [Partition(x) for x in (lam1, lam2, lam3)]
    tops = [(x[0] if len(x) else 0) for x in lams]
    return max(
        lams[i].weight + 2 + tops[j] + tops[k]
        for i, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1))
    )


def p0_triple_constraint(lam1, lam2, lam3, tau, fam="t", route="hall",
                         sign_variant=False):
    """Cubic constraint of the diagram triple on tau.

    Sum over level triples (e1, e2, e3) with e1 + e2 + e3 = 2 and e1 even.
    The first two slots negate the strip factor and the third negates the p
    factor; sign_variant=True evaluates the mirrored placement instead, as a
    diagnostic for comparing the two printed sign conventions.
    """
    lams = [Partition(x) for x in (lam1, lam2, lam3)]
    _pure_family(tau, fam)
    _check_sound(tau, p0_needed_weight(*lams))
    tops = [(x[0] if len(x) else 0) for x in lams]
    head = not sign_variant
    total = Fraction(0)
    for e1 in range(-tops[0], 2 + tops[1] + tops[2] + 1):
        if e1 % 2:
            continue
        a = _extract(lams[0], e1, tau, fam, route, negate_p=not head)
        if not a:
            continue
        for e2 in range(-tops[1], 2 - e1 + tops[2] + 1):
            b = _extract(lams[1], e2, tau, fam, route, negate_p=not head)
            if not b:
                continue
            c = _extract(lams[2], 2 - e1 - e2, tau, fam, route,
                         negate_p=head)
            total += a * b * c
    return total


def curve_needed_weight(lam):
    return Partition(lam).weight


def curve_constraint(lam, tau, fam="t", route="hall"):
    """Linear constraint of one diagram: the diagonal level-0 extraction.

    Zero for every diagram exactly when the point's subspace is closed under
    multiplication by its own ring of functions.
    """
    lam = Partition(lam)
    _pure_family(tau, fam)
    _check_sound(tau, curve_needed_weight(lam))
    return _extract(lam, 0, tau, fam, route, negate_p=True)


class SuiteEntry(NamedTuple):
    family: str
    diagrams: tuple
    value: Fraction | None
    needed: int
    status: str  # "zero" | "nonzero" | "unsound"


def _entry(family, diagrams, fn, needed):
    try:
        v = fn()
    except UnsoundTruncation:
        return SuiteEntry(family, diagrams, None, needed, "unsound")
    return SuiteEntry(family, diagrams, v, needed,
                      "zero" if v == 0 else "nonzero")


def constraint_suite(tau, maxsize, families=FAMILIES, fam="t", route="hall"):
    """Evaluate every constraint with diagrams of weight at most maxsize.

    Entries come back in canonical order: family (GR0, P0TRIPLE, CURVE),
    then diagrams ascending in the (weight, lex) partition order.  Capped
    tau values yield "unsound" entries for constraints needing more weight
    than the cap; values are never approximated.
    """
    lams = partitions_upto(maxsize)
    out = []
    if GR0 in families:
        for l1 in lams:
            for l2 in lams:
                out.append(_entry(
                    GR0, (l1, l2),
                    lambda a=l1, b=l2: gr0_constraint(a, b, tau, fam, route),
                    gr0_needed_weight(l1, l2),
                ))
    if P0TRIPLE in families:
        for l1 in lams:
            for l2 in lams:
                for l3 in lams:
                    out.append(_entry(
                        P0TRIPLE, (l1, l2, l3),
                        lambda a=l1, b=l2, c=l3: p0_triple_constraint(
                            a, b, c, tau, fam, route),
                        p0_needed_weight(l1, l2, l3),
                    ))
    if CURVE in families:
        for l1 in lams:
            out.append(_entry(
                CURVE, (l1,),
                lambda a=l1: curve_constraint(a, tau, fam, route),
                curve_needed_weight(l1),
            ))
    return out


def suite_verdict(entries):
    """Per-family summary: 'pass', 'fail', or 'skipped' plus counts."""
    out = {}
    for fam_tag in FAMILIES:
        rows = [x for x in entries if x.family == fam_tag]
        if not rows:
            continue
        bad = [x for x in rows if x.status == "nonzero"]
        skipped = [x for x in rows if x.status == "unsound"]
        verdict = "fail" if bad else ("pass" if len(skipped) < len(rows)
                                      else "skipped")
        out[fam_tag] = {
            "verdict": verdict,
            "checked": len(rows) - len(skipped),
            "skipped": len(skipped),
            "failures": [(x.diagrams, x.value) for x in bad[:5]],
        }
    return out
