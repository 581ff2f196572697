"""Sign-consistent structure constants N_{a,b} for a Weyl basis.

The basis is normalized so that the invariant form pairs opposite root vectors
to 1.  In that normalization the constants satisfy

    N_{a,b} = -N_{b,a},   N_{a,b} = -N_{-a,-b},
    N_{a,b} = N_{b,c} = N_{c,a}          whenever a + b + c = 0,
    N_{a,b}^2 = q(1-p)/2 * <a,a>         with (p, q) the a-string through b.

Only the squares are rational in general; the table stores exact squares plus
a sign, fixing signs by assigning +1 to the extraspecial pair of every
positive root (minimal decomposition in height-then-lex order) and
propagating through the antisymmetries, the zero-sum triple identity, and the
four-term contraction that expresses any other decomposition of a positive
root against its extraspecial one.  Any consistent choice produces the same
squares; determinism here is what makes downstream tables reproducible.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .rootsys import Coeffs, NotARoot, RootSystem, root_string


class SignInconsistency(RuntimeError):
    """Sign propagation contradicted itself; indicates an internal bug."""


class IdentityViolation(AssertionError):
    """An algebraic identity of the constants failed."""


def _neg(c: Coeffs) -> Coeffs:
    return tuple(-x for x in c)


def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Coeffs, b: Coeffs) -> Coeffs:
    return tuple(x - y for x, y in zip(a, b))


def _sqrt_fraction(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative fraction, or None."""
    if q < 0:
        return None
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


class ChevalleyData:
    """Structure-constant table over a root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._pos = [r.coeffs for r in rs.positive_roots]
        # height-then-lex order drives the extraspecial-pair convention
        self._order = {c: k for k, c in enumerate(sorted(self._pos, key=lambda c: (sum(c), c)))}
        self._roots = set(self._pos) | {_neg(c) for c in self._pos}
        self.n_sq: dict[tuple[Coeffs, Coeffs], Fraction] = {}
        self._sign: dict[tuple[Coeffs, Coeffs], int] = {}
        self._extraspecial: dict[Coeffs, tuple[Coeffs, Coeffs]] = {}
        for gamma in self._pos:
            pair = self._minimal_decomposition(gamma)
            if pair is not None:
                self._extraspecial[gamma] = pair
        for a in self._roots:
            for b in self._roots:
                s = _add(a, b)
                if any(s) and s in self._roots:
                    self.n_sq[(a, b)] = self._magnitude_sq(a, b)
        for key in self.n_sq:
            self._sign[key] = self._resolve_sign(*key)

    # -- magnitudes ----------------------------------------------------------

    def _magnitude_sq(self, a: Coeffs, b: Coeffs) -> Fraction:
        p, q = root_string(self.rs, a, b)
        return Fraction(q * (1 - p), 2) * self.rs.norm_sq(a)

    def _minimal_decomposition(self, gamma: Coeffs) -> tuple[Coeffs, Coeffs] | None:
        best = None
        for alpha in self._pos:
            beta = _sub(gamma, alpha)
            if alpha != gamma and beta in self._order:
                if best is None or self._order[alpha] < self._order[best]:
                    best = alpha
        return None if best is None else (best, _sub(gamma, best))

    # -- signs ---------------------------------------------------------------

    def _resolve_sign(self, a: Coeffs, b: Coeffs) -> int:
        key = (a, b)
        if key in self._sign:
            return self._sign[key]
        a_pos = a in self._order
        b_pos = b in self._order
        if a_pos and b_pos:
            s = self._positive_pair_sign(a, b)
        elif not a_pos and not b_pos:
            s = -self._resolve_sign(_neg(a), _neg(b))
        else:
            # one sign each: rotate through the zero-sum triple (a, b, c),
            # c = -(a+b), onto the pair avoiding the mixed signs
            c = _neg(_add(a, b))
            if c in self._order:  # a+b negative
                s = self._resolve_sign(b, c) if b_pos else self._resolve_sign(c, a)
            else:  # a+b positive: land on an all-negative pair, then negate
                s = -self._resolve_sign(_neg(b), _neg(c)) if not b_pos \
                    else -self._resolve_sign(_neg(c), _neg(a))
        self._sign[key] = s
        return s

    def _positive_pair_sign(self, a: Coeffs, b: Coeffs) -> int:
        key = (a, b)
        if key in self._sign:
            return self._sign[key]
        if self._order[a] > self._order[b]:
            s = -self._positive_pair_sign(b, a)
            self._sign[key] = s
            return s
        gamma = _add(a, b)
        eps, eta = self._extraspecial[gamma]
        if (a, b) == (eps, eta):
            s = 1
        else:
            # contract the two decompositions of gamma through E_{-eps}:
            # N_{a,b} N_{gamma,-eps} = -N_{-eps,a} N_{a-eps,b} - N_{b,-eps} N_{b-eps,a}
            t = []
            for x, y in (((_neg(eps), a), (_sub(a, eps), b)),
                         ((b, _neg(eps)), (_sub(b, eps), a))):
                mid = _add(*x)
                if mid in self._roots and any(mid):
                    s1 = self._resolve_sign(*x)
                    s2 = self._resolve_sign(*y)
                    qq = self._lookup_sq(*x) * self._lookup_sq(*y)
                    t.append((s1 * s2, qq))
            if not t:
                raise SignInconsistency(f"no contraction terms for {a}+{b}")
            lhs_sq = self._lookup_sq(a, b) * self._lookup_sq(gamma, _neg(eps))
            if len(t) == 1:
                rhs_sign = -t[0][0]
                rhs_sq = t[0][1]
            else:
                if t[0][0] == t[1][0]:
                    rhs_sign = -t[0][0]
                elif t[0][1] == t[1][1]:
                    raise SignInconsistency(f"cancelling contraction at {a}+{b}")
                else:
                    rhs_sign = -t[0][0] if t[0][1] > t[1][1] else -t[1][0]
                cross = _sqrt_fraction(t[0][1] * t[1][1])
                if cross is None:
                    raise SignInconsistency(f"irrational contraction at {a}+{b}")
                rhs_sq = t[0][1] + t[1][1] + 2 * t[0][0] * t[1][0] * cross
            if rhs_sq != lhs_sq:
                raise SignInconsistency(f"magnitude mismatch at {a}+{b}")
            s = rhs_sign * self._resolve_sign(gamma, _neg(eps))
        self._sign[key] = s
        return s

    def _lookup_sq(self, a: Coeffs, b: Coeffs) -> Fraction:
        if (a, b) not in self.n_sq:
            self.n_sq[(a, b)] = self._magnitude_sq(a, b)
        return self.n_sq[(a, b)]

    # -- public access -------------------------------------------------------

    def n_sign(self, a, b) -> int:
        key = (tuple(a), tuple(b))
        if key not in self._sign:
            raise NotARoot(f"{key[0]} + {key[1]} is not a root")
        return self._sign[key]

    def n_squared(self, a, b) -> Fraction:
        """Exact N^2; zero when a+b is not a root."""
        key = (tuple(a), tuple(b))
        return self.n_sq.get(key, Fraction(0))

    def n_value(self, a, b) -> float:
        """N as a float (exact sign, possibly irrational magnitude)."""
        key = (tuple(a), tuple(b))
        if key not in self.n_sq:
            return 0.0
        return self._sign[key] * math.sqrt(float(self.n_sq[key]))

    def n_exact(self, a, b) -> tuple[int, Fraction]:
        key = (tuple(a), tuple(b))
        if key not in self.n_sq:
            return 0, Fraction(0)
        return self._sign[key], self.n_sq[key]


def build_structure_constants(rs: RootSystem) -> ChevalleyData:
    return ChevalleyData(rs)


def verify_triangle_identity(cd: ChevalleyData) -> int:
    """Check N_{a,b} = N_{b,c} = N_{c,a} on all zero-sum triples; return count."""
    roots = sorted(cd._roots)
    count = 0
    seen = set()
    for a in roots:
        for b in roots:
            if b <= a:
                continue
            c = _neg(_add(a, b))
            if c not in cd._roots or not any(_add(a, b)):
                continue
            triple = tuple(sorted((a, b, c)))
            if triple in seen:
                continue
            seen.add(triple)
            vals = {cd.n_exact(a, b), cd.n_exact(b, c), cd.n_exact(c, a)}
            if len(vals) != 1:
                raise IdentityViolation(f"triple {a}, {b}, {c}: {vals}")
            count += 1
    return count


def verify_square_formula(cd: ChevalleyData) -> int:
    """Recheck every stored square against an independent string scan."""
    rs = cd.rs
    count = 0
    for (a, b), value in cd.n_sq.items():
        p, q = root_string(rs, a, b)
        expect = Fraction(q * (1 - p), 2) * rs.norm_sq(a)
        if value != expect:
            raise IdentityViolation(f"square mismatch at {a}, {b}")
        count += 1
    return count
