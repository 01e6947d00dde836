"""Partitions and polynomials in scaled power-sum time variables.

The time variables t_k carry weight k; a TimePolynomial may be truncated at a
maximum total weight, in which case heavier monomials are unknown rather than
zero (the same reading as LaurentSeries truncation, with weight in place of
exponent).  Variables are keyed by a (family, index) pair so that several
independent sets of times -- flow times, primed times, deformation
parameters -- coexist in one arithmetic.

The Schur polynomial chi_lam lives here, expanded through the coefficients
p_n of exp(sum_k t_k z^k), together with the strip sums D_{lam,alpha}, the
Hall pairing in these coordinates, and the scaled-derivative action f(d~)
with d~_k = (1/k) d/dt_k.
"""

from fractions import Fraction
from math import factorial

from .errors import InsufficientPrecision, ParseError, ZgrassError
from .linalg import det_ring


class Partition:
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        if isinstance(parts, Partition):
            parts = parts.parts
        ps = tuple(int(p) for p in parts if p != 0)
        if any(p < 0 for p in ps):
            raise ParseError(f"negative part in {ps}")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise ParseError(f"parts must be weakly decreasing: {ps}")
        self.parts = ps

    @property
    def weight(self):
        return sum(self.parts)

    def key(self):
        """Total order: by weight, then lexicographically on the parts."""
        return (self.weight, self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return self.key() < Partition(other).key()

    def __repr__(self):
        return f"Partition{self.parts!r}"


def partitions(n):
    """All partitions of n, ascending in the (weight, lex) order."""
    out = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            out.append(Partition(acc))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(n, n, [])
    out.sort(key=Partition.key)
    return out


def partitions_upto(w):
    """All partitions of weight at most w, ascending."""
    return [lam for n in range(w + 1) for lam in partitions(n)]


def partitions_in_box(maxlen, maxwidth):
    """All partitions with at most maxlen parts, each at most maxwidth."""
    out = []

    def rec(i, cap, acc):
        out.append(Partition(acc))
        if i == maxlen:
            return
        for p in range(cap, 0, -1):
            rec(i + 1, p, acc + [p])

    rec(0, maxwidth, [])
    seen = sorted(set(out), key=Partition.key)
    return seen


def horizontal_strips(lam, alpha):
    """Partitions mu <= lam with lam/mu a horizontal strip of size alpha.

    Interlacing condition: lam_{i+1} <= mu_i <= lam_i for every row.  Empty
    for alpha > lam_1 (nothing to remove beyond the first row's overhang).
    """
    lam = Partition(lam)
    parts = lam.parts
    found = []

    def rec(i, remaining, acc):
        if i == len(parts):
            if remaining == 0:
                found.append(Partition(acc))
            return
        lo = parts[i + 1] if i + 1 < len(parts) else 0
        for mu in range(parts[i], lo - 1, -1):
            rem = remaining - (parts[i] - mu)
            if rem < 0:
                break
            rec(i + 1, rem, acc + [mu])

    rec(0, alpha, [])
    return tuple(sorted(set(found), key=Partition.key))


# -- time polynomials --------------------------------------------------------


def _mono_weight(mono):
    return sum(k * m for (_, k), m in mono)


class TimePolynomial:
    """Sparse polynomial in time variables with optional weight truncation.

    terms: {mono: Fraction} with mono a sorted tuple of ((family, k), mult).
    maxweight=None means exact; otherwise monomials of weight > maxweight are
    unknown and operations track the largest sound cap for their result.
    """

    def __init__(self, terms=None, maxweight=None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, c in items:
                if isinstance(c, int):
                    c = Fraction(c)
                mono = tuple(sorted((v, m) for v, m in mono if m))
                if maxweight is not None and _mono_weight(mono) > maxweight:
                    continue
                data[mono] = data[mono] + c if mono in data else c
        self.terms = {m: c for m, c in data.items() if c}
        self.maxweight = maxweight

    # -- inspection ----------------------------------------------------------

    @property
    def exact(self):
        return self.maxweight is None

    def weight(self):
        """Largest weight present in the support (0 for no terms)."""
        return max((_mono_weight(m) for m in self.terms), default=0)

    def coeff(self, mono):
        mono = tuple(sorted((v, m) for v, m in mono if m))
        w = _mono_weight(mono)
        if self.maxweight is not None and w > self.maxweight:
            raise InsufficientPrecision(
                f"monomial of weight {w} beyond cap {self.maxweight}"
            )
        return self.terms.get(mono, Fraction(0))

    def constant_term(self):
        if self.maxweight is not None and self.maxweight < 0:
            raise InsufficientPrecision("even the constant term is unknown")
        return self.terms.get((), Fraction(0))

    def component(self, w):
        """The exact weight-w homogeneous part."""
        if self.maxweight is not None and w > self.maxweight:
            raise InsufficientPrecision(
                f"weight {w} beyond cap {self.maxweight}"
            )
        return TimePolynomial(
            {m: c for m, c in self.terms.items() if _mono_weight(m) == w}
        )

    def with_cap(self, maxweight):
        if self.maxweight is not None and (
            maxweight is None or maxweight > self.maxweight
        ):
            maxweight = self.maxweight
        return TimePolynomial(self.terms, maxweight)

    def is_zero(self):
        return not self.terms and self.maxweight is None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = tconst(other)
        if not isinstance(other, TimePolynomial):
            return NotImplemented
        return self.terms == other.terms and self.maxweight == other.maxweight

    # -- arithmetic ----------------------------------------------------------

    def _cap_with(self, other):
        if self.maxweight is None:
            return other.maxweight
        if other.maxweight is None:
            return self.maxweight
        return min(self.maxweight, other.maxweight)

    def __add__(self, other):
        if not isinstance(other, TimePolynomial):
            other = tconst(other)
        data = dict(self.terms)
        for m, c in other.terms.items():
            data[m] = data[m] + c if m in data else c
        return TimePolynomial(data, self._cap_with(other))

    __radd__ = __add__

    def __neg__(self):
        return TimePolynomial(
            {m: -c for m, c in self.terms.items()}, self.maxweight
        )

    def __sub__(self, other):
        if not isinstance(other, TimePolynomial):
            other = tconst(other)
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if not isinstance(other, TimePolynomial):
            if isinstance(other, int):
                other = Fraction(other)
            if not other:
                return TimePolynomial()
            return TimePolynomial(
                {m: c * other for m, c in self.terms.items()}, self.maxweight
            )
        if self.is_zero() or other.is_zero():
            return TimePolynomial()
        cap = self._cap_with(other)
        data = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                d = dict(d1)
                for v, mult in m2:
                    d[v] = d.get(v, 0) + mult
                m = tuple(sorted(d.items()))
                if cap is not None and _mono_weight(m) > cap:
                    continue
                p = c1 * c2
                data[m] = data[m] + p if m in data else p
        return TimePolynomial(data, cap)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse_unit() ** (-n)
        out = tconst(1)
        for _ in range(n):
            out = out * self
        return out

    # -- structure maps ------------------------------------------------------

    def negate_times(self):
        """Substitute t_k -> -t_k in every family simultaneously."""
        return TimePolynomial(
            {
                m: -c if sum(mult for _, mult in m) % 2 else c
                for m, c in self.terms.items()
            },
            self.maxweight,
        )

    def differentiate(self, fam, k):
        """d/dt_{fam,k}.  Lowers the sound weight cap by k."""
        var = (fam, k)
        cap = None if self.maxweight is None else self.maxweight - k
        data = {}
        for m, c in self.terms.items():
            d = dict(m)
            mult = d.get(var)
            if not mult:
                continue
            if mult == 1:
                del d[var]
            else:
                d[var] = mult - 1
            mono = tuple(sorted(d.items()))
            data[mono] = data.get(mono, Fraction(0)) + mult * c
        return TimePolynomial(data, cap)

    def inverse_unit(self):
        """Inverse of a unit (nonzero constant term).

        Nonconstant input requires a weight cap: the inverse is then the
        terminating geometric series in the augmentation-positive part.
        """
        c0 = self.constant_term()
        if not c0:
            raise ZgrassError("not a unit: zero constant term")
        cinv = Fraction(1) / c0
        q = (self - c0) * cinv
        if not q:
            return tconst(cinv).with_cap(self.maxweight)
        if self.maxweight is None:
            raise ZgrassError("nonconstant polynomial has no polynomial inverse")
        out = tconst(1).with_cap(self.maxweight)
        term = out
        while True:
            term = term * q
            if not term:
                break
            out = out - term
            term = term * q
            if not term:
                break
            out = out + term
        return out * cinv

    def evaluate(self, assign):
        """Evaluate at rational times {(family, k): value}; absent times are 0."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for var, mult in m:
                x = Fraction(assign.get(var, 0))
                if not x:
                    v = Fraction(0)
                    break
                v *= x ** mult
            total += v
        return total

    def __repr__(self):
        if not self.terms and self.maxweight is None:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (_mono_weight(m), m)):
            c = self.terms[m]
            vars_ = "*".join(
                f"{fam}{k}" if mult == 1 else f"{fam}{k}^{mult}"
                for (fam, k), mult in m
            )
            if not vars_:
                bits.append(str(c))
            elif c == 1:
                bits.append(vars_)
            elif c == -1:
                bits.append(f"-{vars_}")
            else:
                bits.append(f"{c}*{vars_}")
        if self.maxweight is not None:
            bits.append(f"O(wt {self.maxweight + 1})")
        out = " + ".join(bits) if bits else "0"
        return out.replace("+ -", "- ")


def tvar(k, fam="t"):
    if k < 1:
        raise ZgrassError("time indices start at 1")
    return TimePolynomial({(((fam, k), 1),): Fraction(1)})


def tconst(c):
    return TimePolynomial({(): c})


# -- Schur calculus ----------------------------------------------------------

_p_cache = {}
_schur_cache = {}
_strip_cache = {}


def schur_p(n, fam="t"):
    """Coefficient p_n of z^n in exp(sum_k t_k z^k); zero for n < 0."""
    if n < 0:
        return TimePolynomial()
    key = (n, fam)
    if key not in _p_cache:
        if n == 0:
            _p_cache[key] = tconst(1)
        else:
            acc = TimePolynomial()
            for k in range(1, n + 1):
                acc = acc + k * tvar(k, fam) * schur_p(n - k, fam)
            _p_cache[key] = acc * Fraction(1, n)
    return _p_cache[key]


def schur(lam, fam="t"):
    """Schur polynomial chi_lam = det(p_{lam_i - i + j}) in the times."""
    lam = Partition(lam)
    key = (lam.parts, fam)
    if key not in _schur_cache:
        n = len(lam)
        rows = [
            [schur_p(lam[i] - (i + 1) + (j + 1), fam) for j in range(n)]
            for i in range(n)
        ]
        _schur_cache[key] = det_ring(rows) if n else tconst(1)
    return _schur_cache[key]


def strip_sum(lam, alpha, fam="t"):
    """Sum of chi_mu over horizontal alpha-strips lam/mu."""
    lam = Partition(lam)
    key = (lam.parts, alpha, fam)
    if key not in _strip_cache:
        acc = TimePolynomial()
        for mu in horizontal_strips(lam, alpha):
            acc = acc + schur(mu, fam)
        _strip_cache[key] = acc
    return _strip_cache[key]


# -- Hall pairing and scaled derivatives --------------------------------------


def _hall_norm(mono):
    v = Fraction(1)
    for (_, k), mult in mono:
        v *= Fraction(factorial(mult), k ** mult)
    return v


def hall(f, g):
    """Hall pairing: <prod t_k^a_k, prod t_k^b_k> = delta_ab prod a_k!/k^a_k.

    Requires each operand's support to sit inside the other's sound weight
    range, since unknown heavy monomials would pair with known ones.
    """
    for a, b in ((f, g), (g, f)):
        if b.maxweight is not None and a.weight() > b.maxweight:
            raise InsufficientPrecision(
                f"pairing needs weight {a.weight()}, cap is {b.maxweight}"
            )
    total = Fraction(0)
    for m, cf in f.terms.items():
        cg = g.terms.get(m)
        if cg:
            total += cf * cg * _hall_norm(m)
    return total


def apply_tilde(op, target):
    """Apply op(d~) to target, where d~_k = (1/k) d/dt_k per variable of op.

    The operator polynomial must be exact; the result cap reflects the
    precision actually lost differentiating the target.
    """
    if op.maxweight is not None:
        raise ZgrassError("operator polynomial must be exact")
    out = TimePolynomial() if target.maxweight is None else TimePolynomial(
        {}, target.maxweight
    )
    for m, c in op.terms.items():
        cur = target
        scale = c
        for (fam, k), mult in m:
            for _ in range(mult):
                cur = cur.differentiate(fam, k)
            scale *= Fraction(1, k ** mult)
        out = out + cur * scale
    return out


def sqrt_series(q, weight):
    """Weight-graded square root of q with q(0) = 1, up to total weight.

    Returns the unique r with r(0) = 1 and r^2 = q through the requested
    weight, as an exact polynomial containing just those components.  The
    input must be known through that weight.
    """
    if q.constant_term() != 1:
        raise ZgrassError("sqrt_series needs constant term exactly 1")
    comps = {0: tconst(1)}
    for w in range(1, weight + 1):
        s = q.component(w)
        for u in range(1, w):
            s = s - comps[u] * comps[w - u]
        comps[w] = s * Fraction(1, 2)
    r = TimePolynomial()
    for w in range(weight + 1):
        r = r + comps[w]
    return r
