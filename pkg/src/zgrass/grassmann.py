"""Finite-window frames for polynomial-type subspaces of Laurent series.

A FramePoint is the subspace

    span(rows) + span{ z^-j : j > tail_j }

of the Laurent series field: finitely many explicit generators sitting on top
of a cofinite monomial tail.  Each row carries a declared pivot exponent;
pivots are strictly decreasing and never dip below -tail_j, and the charge
(the index of the point relative to the reference z^-1 k[z^-1]) is always
len(rows) - tail_j.

Exact points keep a canonical reduced frame: pivots are the row valuations,
rows are monic at their pivot, supported above -tail_j, cross-reduced at each
other's pivots, and trailing monomial rows are absorbed into the tail.  Flowed
points are window-approximate instead: their rows are verbatim products (not
re-normalized -- minor values along an orbit must pull back unscaled), their
declared pivots are bookkeeping rather than valuations, and a minor refuses
to sample below the depth at which the stored rows stop being true, or past
the rows the window let the flow materialize.

The window (lo, hi) is an inclusive exponent range; its floor decides how
much of a tail gets materialized when a point moves, and computations that
would need data the window never certified raise WindowTooSmall rather than
return a number.
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import (
    DependentGenerators,
    IndexMismatch,
    NonzeroIndex,
    NotSigmaInvariant,
    WindowTooSmall,
    ZeroInput,
    ZgrassError,
)
from .linalg import det_field, det_ring, det_unit, nullspace
from .series import LaurentSeries, _inv_coeff, residue, sigma0
from .symfun import Partition

DEFAULT_WINDOW = (-32, 32)


class IsotropyReport(NamedTuple):
    isotropic: bool
    parity: int
    witness: tuple | None


def _is_unit_one(c):
    """True for the scalar 1, including a capped constant polynomial 1."""
    if isinstance(c, (int, Fraction)):
        return c == 1
    terms = getattr(c, "terms", None)
    return terms == {(): Fraction(1)}


class FramePoint:
    def __init__(
        self,
        rows,
        pivots,
        tail_j,
        window=DEFAULT_WINDOW,
        exact=True,
        row_floor=None,
    ):
        self.rows = tuple(rows)
        self.pivots = tuple(pivots)
        self.tail_j = tail_j
        self.window = (int(window[0]), int(window[1]))
        self.exact = exact
        # exponent above which stored row data is trustworthy; None means the
        # rows are true at every depth (exact points, first-generation flows)
        self.row_floor = None if exact else row_floor
        if self.window[0] >= self.window[1]:
            raise ZgrassError("window must satisfy lo < hi")
        if len(self.rows) != len(self.pivots):
            raise IndexMismatch("one pivot per row")
        for r in self.rows:
            if not isinstance(r, LaurentSeries) or not r.exact:
                raise ZgrassError("frame rows must be exact series")
        for a, b in zip(self.pivots, self.pivots[1:]):
            if a <= b:
                raise IndexMismatch("pivots must be strictly decreasing")
        if self.pivots and self.pivots[-1] < -tail_j:
            raise IndexMismatch("pivot below the tail boundary")
        self._minor_cache = {}
        self._mat_cache = {}

    # -- constructors --------------------------------------------------------

    @classmethod
    def vacuum(cls, window=DEFAULT_WINDOW):
        """The reference point z^-1 k[z^-1]: no rows, tail_j = 0, charge 0."""
        return cls((), (), 0, window)

    @classmethod
    def from_gens(
        cls,
        gens,
        tail_j,
        window=DEFAULT_WINDOW,
        allow_dependent=False,
        exact=True,
    ):
        """Canonical frame from explicit generators over the tail.

        Generators are reduced modulo the tail (coefficients at or below
        -(tail_j+1) dropped), brought to reduced echelon form with valuation
        pivots, and trailing monomial rows are absorbed into the tail so the
        frame is minimal.  Dependent generators raise unless allow_dependent
        (projections and closures legitimately produce them).
        """
        by_piv = {}
        for g in gens:
            if not isinstance(g, LaurentSeries) or not g.exact:
                raise ZgrassError("generators must be exact series")
            r = g.drop_below(-tail_j)
            while r.coeffs:
                v = r.valuation()
                if v in by_piv:
                    r = r - by_piv[v] * r.coeff(v)
                else:
                    by_piv[v] = r * _inv_coeff(r.coeff(v))
                    break
            else:
                if not allow_dependent:
                    raise DependentGenerators(
                        "generator lies in the span of the others and the tail"
                    )
        # cross-reduce, lowest pivot first so one pass settles everything
        for p in sorted(by_piv):
            row = by_piv[p]
            for q in sorted(by_piv):
                if q != p and row.coeff(q):
                    row = row - by_piv[q] * row.coeff(q)
            by_piv[p] = row
        pivots = sorted(by_piv, reverse=True)
        rows = [by_piv[p] for p in pivots]
        # absorb trailing pure monomials into the tail
        while rows and pivots[-1] == -tail_j and rows[-1] == LaurentSeries.monomial(-tail_j):
            rows.pop()
            pivots.pop()
            tail_j -= 1
        return cls(rows, pivots, tail_j, window, exact=exact)

    # -- bookkeeping ---------------------------------------------------------

    @property
    def charge(self):
        """Index relative to the reference point; len(rows) - tail_j always."""
        return len(self.rows) - self.tail_j

    def materialized(self, floor=None):
        """Rows plus tail monomials, descending declared pivot, down to floor."""
        if floor is None:
            floor = self.window[0]
        if floor in self._mat_cache:
            return self._mat_cache[floor]
        out = list(self.rows)
        pivs = list(self.pivots)
        j = self.tail_j + 1
        while -j >= floor:
            out.append(LaurentSeries.monomial(-j))
            pivs.append(-j)
            j += 1
        self._mat_cache[floor] = (out, pivs)
        return out, pivs

    def __repr__(self):
        kind = "exact" if self.exact else "approx"
        rs = ", ".join(repr(r) for r in self.rows)
        return (
            f"FramePoint([{rs}], tail_j={self.tail_j}, "
            f"charge={self.charge}, {kind})"
        )

    # -- membership ----------------------------------------------------------

    def reduce(self, f):
        """Remainder of f after clearing the pivot coefficients of every row.

        The visible part of the remainder (exponents above the tail) is what
        obstructs membership.
        """
        r = f
        for row, p in zip(self.rows, self.pivots):
            c = r.coeff(p)
            if c:
                r = r - row * c
        return r

    def contains(self, f):
        """Whether f lies in the subspace.

        Exact for exact frames and exact f; truncated f is accepted when its
        known range clears, since the unknown part can always be completed
        inside the tail -- provided the truncation covers the pivots.
        """
        if not self.exact:
            raise ZgrassError("membership test needs an exact frame")
        r = self.reduce(f)
        return all(e <= -(self.tail_j + 1) for e in r.coeffs)

    def same_subspace(self, other):
        if self.charge != other.charge:
            return False
        for a, b in ((self, other), (other, self)):
            for r in a.rows:
                if not b.contains(r):
                    return False
            # tails must agree above the deeper boundary
            for j in range(min(a.tail_j, b.tail_j) + 1, max(a.tail_j, b.tail_j) + 1):
                if j > a.tail_j and not b.contains(LaurentSeries.monomial(-j)):
                    return False
        return True

    # -- minors ---------------------------------------------------------------

    def minor(self, cols):
        """Determinant of the frame sampled at the given exponent columns.

        Row i is the i-th materialized row (descending declared pivot); the
        entry at column c is its z^c coefficient.  Exact frames may be
        sampled at any depth (the tail really is monomial).  Approximate
        frames sample explicit rows only -- the implicit tail stands in for
        rows the window could not certify -- and refuse columns below the
        row data floor.
        """
        cols = tuple(cols)
        if cols in self._minor_cache:
            return self._minor_cache[cols]
        n = len(cols)
        if n == 0:
            return Fraction(1)
        if self.exact:
            rows, _ = self.materialized(min(min(cols), self.window[0]))
            if len(rows) < n:
                raise WindowTooSmall(
                    f"only {len(rows)} rows above the tail, need {n}"
                )
        else:
            if n > len(self.rows):
                raise WindowTooSmall(
                    f"frame holds {len(self.rows)} certified rows, need {n}"
                )
            if self.row_floor is not None and min(cols) < self.row_floor:
                raise WindowTooSmall(
                    f"column {min(cols)} below the data floor {self.row_floor}"
                )
            rows = self.rows
        mat = [
            [rows[i].coeffs.get(c, Fraction(0)) for c in cols]
            for i in range(n)
        ]
        if all(isinstance(x, Fraction) for row in mat for x in row):
            val = det_field(mat)
        else:
            try:
                val = det_unit(mat)
            except ZgrassError:
                val = det_ring(mat)
        self._minor_cache[cols] = val
        return val

    def plucker(self, lam):
        """Pluecker coordinate of the partition lam in the charge-d chart.

        Columns are d + lam_i - i over enough rows to cover every explicit
        generator.  The value is stable against enlarging the minor: for an
        exact frame the extra row/column pairs are matched monomials, and a
        flow materializes every row with support inside the window, so the
        unsampled remainder always extends the determinant by units on the
        diagonal.
        """
        lam = Partition(lam)
        d = self.charge
        n = max(len(lam), len(self.rows))
        cols = tuple(
            d + (lam[i] if i < len(lam) else 0) - (i + 1) for i in range(n)
        )
        return self.minor(cols)

    # -- flows ----------------------------------------------------------------

    def flow(self, g):
        """Multiply the subspace by an exact unit g.

        The anchor of g -- its largest nonpositive supported exponent, or its
        valuation when the support is entirely positive -- plays the role the
        valuation would play for an honest unit: declared pivots shift by it
        and the charge changes by it.  A monomial flow is an exact shift; any
        other flow produces a window-approximate point whose rows are the
        verbatim products g * (old basis), with enough of the old tail
        materialized that everything supported inside the window is explicit.

        Non-monomial g must have coefficient 1 at its anchor, so that minor
        values along the orbit are pinned rather than rescaled.
        """
        if not isinstance(g, LaurentSeries) or not g.exact:
            raise ZgrassError("flow needs an exact series")
        if not g.coeffs:
            raise ZeroInput("cannot flow by zero")
        supp = sorted(g.coeffs)
        nonpos = [e for e in supp if e <= 0]
        anchor = max(nonpos) if nonpos else supp[0]
        lo, hi = self.window
        if len(supp) == 1:
            n = supp[0]
            rows = tuple(r.shift(n) for r in self.rows)
            pivs = tuple(p + n for p in self.pivots)
            lo2 = lo if self.exact else lo + max(0, n)
            rf = None if self.row_floor is None else self.row_floor + n
            return FramePoint(
                rows, pivs, self.tail_j - n, (lo2, hi),
                exact=self.exact, row_floor=rf,
            )
        if not _is_unit_one(g.coeffs[anchor]):
            raise ZgrassError("non-monomial flow must have coefficient 1 at its anchor")
        top = supp[-1]
        j_max = top - lo
        j_hi = max(self.tail_j, j_max)
        mat_js = range(self.tail_j + 1, j_hi + 1)
        rows = [r * g for r in self.rows] + [g.shift(-j) for j in mat_js]
        pivs = [p + anchor for p in self.pivots] + [anchor - j for j in mat_js]
        lo2 = lo if self.exact else lo + max(0, top)
        # products of true rows stay true at every depth; only drawing on the
        # stand-in tail of an approximate point introduces a data floor
        if self.row_floor is None and (self.exact or j_max <= self.tail_j):
            rf = None
        else:
            rf = lo2
        return FramePoint(rows, pivs, j_hi - anchor, (lo2, hi),
                          exact=False, row_floor=rf)

    # -- orthogonal complement -------------------------------------------------

    def orthogonal(self, sub=None):
        """Orthogonal complement under the residue pairing Res f (s*g) dz.

        sub=None is the plain residue pairing; the sign involution keeps the
        complement polynomial-type and exact.  A general substitution does
        not, so the result is then window-approximate with the tail pinned at
        the window floor.  Either way the complement's charge is minus the
        charge of the point.
        """
        J = self.tail_j
        lo, hi = self.window
        plain = sub is None
        flip = sub is not None and getattr(sub, "sign_flip", False)
        if plain or flip:
            if self.rows:
                maxtop = max(r.top for r in self.rows)
                floor_e = -(maxtop + 1)
            else:
                floor_e = J
            out_exact = self.exact
            if floor_e < lo:
                raise WindowTooSmall("complement tail starts below the window")
        else:
            floor_e = lo
            out_exact = False
        cand = list(range(floor_e, J))
        if plain:
            mat = [
                [row.coeffs.get(-1 - e, Fraction(0)) for e in cand]
                for row in self.rows
            ]
        elif flip:
            mat = [
                [
                    (row.coeffs.get(-1 - e, Fraction(0)) if e % 2 == 0
                     else -row.coeffs.get(-1 - e, Fraction(0)))
                    for e in cand
                ]
                for row in self.rows
            ]
        else:
            img = sub.image
            prec = (hi - lo) + abs(J) + 4
            inv = img.invert(prec)
            mat = []
            for row in self.rows:
                entries = []
                for e in cand:
                    im = img ** e if e >= 0 else inv ** (-e)
                    entries.append(residue(row * im))
                mat.append(entries)
        basis = nullspace(mat, len(cand))
        gens = [
            LaurentSeries({e: v[k] for k, e in enumerate(cand)})
            for v in basis
        ]
        return FramePoint.from_gens(
            gens, -floor_e, self.window, allow_dependent=True, exact=out_exact
        )

    # -- the isotropic locus ----------------------------------------------------

    def isotropy(self, sub=None):
        """Certify that the point pairs to zero with itself under s.

        Requires charge 0 (so the tail is deep enough that tail-with-tail
        pairings vanish identically for the sign involution).  Explicit rows
        are paired with each other and with enough tail monomials to cover
        their support; the parity of the point is the number of nonnegative
        pivots mod 2.
        """
        s = sub if sub is not None else sigma0()
        if self.charge != 0:
            raise NonzeroIndex(f"isotropy needs charge 0, got {self.charge}")
        J = self.tail_j
        lo, _ = self.window
        parity = sum(1 for p in self.pivots if p >= 0) % 2

        def pair(f, g):
            return residue(f * g.substitute(s))

        for i, r in enumerate(self.rows):
            for k in range(i, len(self.rows)):
                v = pair(r, self.rows[k])
                if v:
                    return IsotropyReport(False, parity, ("row", i, "row", k, v))
        flip = getattr(s, "sign_flip", False)
        for i, r in enumerate(self.rows):
            top = r.top if r.top is not None else -(J + 1)
            j_hi = (top + 1) if flip else -lo
            for j in range(J + 1, j_hi + 1):
                v = pair(r, LaurentSeries.monomial(-j))
                if v:
                    return IsotropyReport(
                        False, parity, ("row", i, "tail", -j, v)
                    )
        if not flip:
            # general substitutions do not preserve monomials, so tail pairs
            # must be checked inside the window as well
            for i in range(J + 1, -lo + 1):
                for j in range(i, -lo + 1):
                    v = pair(
                        LaurentSeries.monomial(-i), LaurentSeries.monomial(-j)
                    )
                    if v:
                        return IsotropyReport(
                            False, parity, ("tail", -i, "tail", -j, v)
                        )
        return IsotropyReport(True, parity, None)

    def is_sigma_invariant(self, sub=None):
        """Whether s maps the subspace into itself.

        Exact for the sign involution on exact frames; for other maps the
        verdict is certified on the window only (images are truncated).
        """
        s = sub if sub is not None else sigma0()
        if not self.exact:
            raise ZgrassError("invariance test needs an exact frame")
        for r in self.rows:
            if not self.contains(r.substitute(s)):
                return False
        if not getattr(s, "sign_flip", False):
            lo, _ = self.window
            prec = (self.window[1] - lo) + abs(self.tail_j) + 4
            for j in range(self.tail_j + 1, -lo + 1):
                img = s.image.invert(prec) ** j
                if not self.contains(img):
                    return False
        return True

    # -- even/odd splitting -----------------------------------------------------

    def split_even_odd(self):
        """Split a sign-invariant point into its even and odd components.

        Even exponents z^{2m} are reindexed to w^m; odd exponents z^{2m+1}
        to w^m as well (the odd part is read in the frame z * k[[z^2]]).
        Tail boundaries: floor(J/2) on the even side, ceil(J/2) on the odd.
        """
        if not self.is_sigma_invariant(sigma0()):
            raise NotSigmaInvariant("point is not stable under the sign flip")
        half = Fraction(1, 2)
        ev, od = [], []
        for r in self.rows:
            fl = r.substitute(sigma0())
            plus = (r + fl) * half
            minus = (r - fl) * half
            if plus:
                ev.append(LaurentSeries({e // 2: c for e, c in plus.coeffs.items()}))
            if minus:
                od.append(
                    LaurentSeries({(e - 1) // 2: c for e, c in minus.coeffs.items()})
                )
        lo, hi = self.window
        wwin = (lo // 2, max(hi // 2, lo // 2 + 1))
        J = self.tail_j
        we = FramePoint.from_gens(
            ev, J // 2, wwin, allow_dependent=True, exact=self.exact
        )
        wo = FramePoint.from_gens(
            od, (J + 1) // 2, wwin, allow_dependent=True, exact=self.exact
        )
        if we.charge + wo.charge != self.charge:
            raise IndexMismatch("even/odd charges do not add up")
        return we, wo


def assemble_even_odd(we, wo, window=DEFAULT_WINDOW):
    """Rebuild the z-space point from even and odd w-space components.

    Inverse of split_even_odd: w^m goes back to z^{2m} and z^{2m+1}
    respectively; tail monomials that the combined tail cannot cover become
    explicit generators and are re-absorbed by the canonical frame.
    """
    gens = [
        LaurentSeries({2 * e: c for e, c in r.coeffs.items()}) for r in we.rows
    ] + [
        LaurentSeries({2 * e + 1: c for e, c in r.coeffs.items()})
        for r in wo.rows
    ]
    je, jo = we.tail_j, wo.tail_j
    jz = max(2 * je + 1, 2 * jo)
    for k in range(je + 1, jz // 2 + 1):
        gens.append(LaurentSeries.monomial(-2 * k))
    for i in range(jo + 1, (jz + 1) // 2 + 1):
        gens.append(LaurentSeries.monomial(-(2 * i - 1)))
    return FramePoint.from_gens(
        gens,
        jz,
        window,
        allow_dependent=True,
        exact=we.exact and wo.exact,
    )


def coset_reps(a, b):
    """Representatives of a basis of A/(A intersect B), descending pivot.

    Both points must be exact.  Candidates are A's materialized rows down to
    the deeper of the two tails; a candidate survives when its B-remainder is
    independent of the remainders already taken.
    """
    if not (a.exact and b.exact):
        raise ZgrassError("coset representatives need exact frames")
    jm = max(a.tail_j, b.tail_j)
    cands = list(a.rows) + [
        LaurentSeries.monomial(-j) for j in range(a.tail_j + 1, jm + 1)
    ]
    reps = []
    seen = {}
    for v in cands:
        r = b.reduce(v).drop_below(-b.tail_j)
        while r.coeffs:
            lead = r.valuation()
            if lead in seen:
                r = r - seen[lead] * r.coeff(lead)
            else:
                seen[lead] = r * _inv_coeff(r.coeff(lead))
                reps.append(v)
                break
    return reps


def is_prym_flow(g, sub=None):
    """Whether g is a flow along the involution locus: g * (s*g) = 1.

    The defect is required to vanish on the exponent range the data can
    certify, [val(g) + top(g), ..): a truncated odd exponential passes (its
    defect lives entirely below the sound range), while a generic unit like
    1 + a z fails at the first cross term.
    """
    s = sub if sub is not None else sigma0()
    defect = g * g.substitute(s) - 1
    if not defect.coeffs:
        return True
    v = g.valuation()
    t = g.top
    return all(e < v + t for e in defect.coeffs)


def exchange_defect(u, lam_a, lam_b, slot=0):
    """Single-exchange quadratic relation between two minors of the frame.

    For the column tuples S, T of the two diagrams (padded to a common
    length in the charge chart), the product det(S) det(T) equals the sum
    over positions b of det(S with slot replaced by T[b]) times det(T with
    b replaced by S[slot]); replacements keep their positions, so repeated
    columns kill terms and no re-sorting signs appear.  This returns the
    difference, which vanishes identically on every frame.
    """
    lam_a, lam_b = Partition(lam_a), Partition(lam_b)
    d = u.charge
    n = max(len(lam_a), len(lam_b), len(u.rows), slot + 1)

    def columns(lam):
        return [
            d + (lam[i] if i < len(lam) else 0) - (i + 1) for i in range(n)
        ]

    cs, ct = columns(lam_a), columns(lam_b)
    total = u.minor(cs) * u.minor(ct)
    for b in range(n):
        s2, t2 = list(cs), list(ct)
        s2[slot], t2[b] = ct[b], cs[slot]
        total -= u.minor(s2) * u.minor(t2)
    return total
