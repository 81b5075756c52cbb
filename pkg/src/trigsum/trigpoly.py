"""Exact normal forms for trigonometric rational expressions.

The guarded rewrites used when assembling closed forms all reduce to one
normal form: a quotient N/D of polynomials in (c, s) = (cos B, sin B) over
the field Q(sqrt 3), with s^2 reduced by s^2 = 1 - c^2, where B is a common
base angle discovered from the expression.  In that form,

  * quotient cancellations are univariate gcd computations,
  * the half-angle contractions 1 - cos B = 2 sin^2(B/2) etc. become the
    pattern pairs (1-c, s), (1+c, s), (s, 1-c), (s, 1+c),
  * arccot(tan u) / arccot(cot u) collapses are cross-multiplication
    identities N*c == D*s (mod the circle relation),
  * the points where an identity can fail are exactly the common zeros of
    (N, D) on the unit circle ("0/0 points"), which this module solves in
    closed form as rational-multiple-of-pi angle loci.

arccot carries the convention arccot(t) = pi/2 - arctan(t) with range
(0, pi); collapse rewrites marked "branch" below extend that principal
value continuously across branch jumps, which is the convention under
which the closed forms equal their series sums on the whole validity
interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .expr import (
    Expr, PI, ZERO, ONE,
    add, sub, mul, div, neg, ipow, func, rational, is_rat, rat_value,
)

__all__ = [
    "K3", "TPoly", "AngleLocus", "CollapseResult",
    "split_rational", "find_trig_base", "tpoly_from_expr",
    "collapse_inverse_trig", "collect_terms", "polynomial_in",
]


# ---------------------------------------------------------------------------
# the coefficient field Q(sqrt 3)

class K3:
    """a + b*sqrt(3) with exact rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, o): return K3(self.a + o.a, self.b + o.b)
    def __sub__(self, o): return K3(self.a - o.a, self.b - o.b)
    def __neg__(self): return K3(-self.a, -self.b)

    def __mul__(self, o):
        return K3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    def inv(self) -> "K3":
        d = self.a * self.a - 3 * self.b * self.b
        if d == 0:
            if self.is_zero():
                raise ZeroDivisionError("inverse of zero in Q(sqrt3)")
            # a = +-sqrt(3) b cannot happen for rational a, b both nonzero
            raise ZeroDivisionError("norm zero")
        return K3(self.a / d, -self.b / d)

    def __truediv__(self, o): return self * o.inv()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return (self.b > 0) - (self.b < 0)
        # sign of a + b*sqrt3: compare a^2 with 3 b^2 taking signs into account
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        big_a = self.a * self.a > 3 * self.b * self.b
        if self.a > 0:
            return 1 if big_a else -1
        return -1 if big_a else 1

    def __eq__(self, o):
        return isinstance(o, K3) and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a}+{self.b}*sqrt3)"

    def as_expr(self) -> Expr:
        out = rational(self.a) if self.a != 0 else None
        if self.b != 0:
            root = mul(rational(self.b), func("sqrt", rational(3)))
            out = root if out is None else add(out, root)
        return out if out is not None else ZERO


K_ZERO = K3(0)
K_ONE = K3(1)


# ---------------------------------------------------------------------------
# univariate polynomials over K3 (tuples, low degree first)

def _utrim(p: Tuple[K3, ...]) -> Tuple[K3, ...]:
    n = len(p)
    while n > 0 and p[n - 1].is_zero():
        n -= 1
    return tuple(p[:n])


def _uadd(p, q):
    n = max(len(p), len(q))
    return _utrim(tuple(
        (p[i] if i < len(p) else K_ZERO) + (q[i] if i < len(q) else K_ZERO)
        for i in range(n)))


def _uneg(p):
    return tuple(-x for x in p)


def _umul(p, q):
    if not p or not q:
        return ()
    out = [K_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return _utrim(tuple(out))


def _uscale(p, k: K3):
    if k.is_zero():
        return ()
    return _utrim(tuple(x * k for x in p))


def _udivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [K_ZERO] * max(0, len(p) - len(q) + 1)
    inv_lead = q[-1].inv()
    while len(r) >= len(q) and _utrim(tuple(r)):
        r = list(_utrim(tuple(r)))
        if len(r) < len(q):
            break
        coef = r[-1] * inv_lead
        shift = len(r) - len(q)
        quot[shift] = coef
        for i, b in enumerate(q):
            r[shift + i] = r[shift + i] - coef * b
        r = list(_utrim(tuple(r)))
    return _utrim(tuple(quot)), _utrim(tuple(r))


def _ugcd(p, q):
    p, q = _utrim(tuple(p)), _utrim(tuple(q))
    while q:
        _, r = _udivmod(p, q)
        p, q = q, r
    if p:
        p = _uscale(p, p[-1].inv())  # monic
    return p


def _ueval(p, v: Fraction) -> K3:
    acc = K_ZERO
    for c in reversed(p):
        acc = acc * K3(v) + c
    return acc


def _rational_roots(p) -> List[Fraction]:
    """Rational roots of a K3[c] polynomial.

    Candidates come from the rational-root theorem applied to one nonzero
    component (a root must annihilate the rational and the sqrt3 component
    separately); each candidate is verified against the full polynomial.
    """
    p = _utrim(tuple(p))
    if not p:
        return []
    comp = [x.a for x in p]
    if all(v == 0 for v in comp):
        comp = [x.b for x in p]
    den_lcm = 1
    for c in comp:
        den_lcm = den_lcm * c.denominator // _gcd_int(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in comp]
    while ints and ints[-1] == 0:
        ints.pop()
    out: List[Fraction] = []
    if not ints:
        return out
    shift = 0
    while ints and ints[0] == 0:
        ints = ints[1:]
        shift += 1
    if shift and _ueval(p, Fraction(0)).is_zero():
        out.append(Fraction(0))
    if not ints:
        return out
    lead, const = ints[-1], ints[0]
    for dnum in _divisors(abs(const)):
        for dden in _divisors(abs(lead)):
            for sgn in (1, -1):
                cand = Fraction(sgn * dnum, dden)
                if cand not in out and _ueval(p, cand).is_zero():
                    out.append(cand)
    return out


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> List[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# reduced polynomials in (c, s) with s^2 = 1 - c^2

_CIRCLE = (K_ONE, K_ZERO, -K_ONE)  # 1 - c^2


class TPoly:
    """p0(c) + p1(c)*s in Q(sqrt3)[c, s] / (s^2 + c^2 - 1)."""

    __slots__ = ("p0", "p1")

    def __init__(self, p0=(), p1=()):
        self.p0 = _utrim(tuple(p0))
        self.p1 = _utrim(tuple(p1))

    @classmethod
    def const(cls, k: K3) -> "TPoly":
        return cls((k,), ())

    @classmethod
    def c_poly(cls, p) -> "TPoly":
        return cls(p, ())

    def __add__(self, o): return TPoly(_uadd(self.p0, o.p0), _uadd(self.p1, o.p1))
    def __neg__(self): return TPoly(_uneg(self.p0), _uneg(self.p1))
    def __sub__(self, o): return self + (-o)

    def __mul__(self, o):
        # (a0 + a1 s)(b0 + b1 s) = a0 b0 + a1 b1 (1-c^2) + (a0 b1 + a1 b0) s
        p0 = _uadd(_umul(self.p0, o.p0), _umul(_umul(self.p1, o.p1), _CIRCLE))
        p1 = _uadd(_umul(self.p0, o.p1), _umul(self.p1, o.p0))
        return TPoly(p0, p1)

    def scale(self, k: K3) -> "TPoly":
        return TPoly(_uscale(self.p0, k), _uscale(self.p1, k))

    def is_zero(self) -> bool:
        return not self.p0 and not self.p1

    def is_const(self) -> bool:
        return len(self.p0) <= 1 and not self.p1

    def const_value(self) -> K3:
        assert self.is_const()
        return self.p0[0] if self.p0 else K_ZERO

    def __eq__(self, o):
        return isinstance(o, TPoly) and self.p0 == o.p0 and self.p1 == o.p1

    def __repr__(self):
        return f"TPoly(p0={list(self.p0)}, p1={list(self.p1)})"


def _cheb_T(m: int) -> Tuple[K3, ...]:
    """cos(m u) as a polynomial in c."""
    t_prev, t_cur = (K_ONE,), (K_ZERO, K_ONE)
    if m == 0:
        return t_prev
    for _ in range(m - 1):
        t_prev, t_cur = t_cur, _uadd(_uscale(_umul((K_ZERO, K_ONE), t_cur), K3(2)), _uneg(t_prev))
    return t_cur


def _cheb_U(m: int) -> Tuple[K3, ...]:
    """sin((m+1) u)/sin(u) as a polynomial in c (m >= 0)."""
    u_prev, u_cur = (K_ONE,), (K_ZERO, K3(2))
    if m == 0:
        return u_prev
    for _ in range(m - 1):
        u_prev, u_cur = u_cur, _uadd(_uscale(_umul((K_ZERO, K_ONE), u_cur), K3(2)), _uneg(u_prev))
    return u_cur


# ---------------------------------------------------------------------------
# expression -> TPoly extraction

def split_rational(e: Expr) -> Tuple[Fraction, Tuple[Tuple[str, int], ...]]:
    """Split a product tree into (rational coefficient, canonical factor key).

    The key is a sorted tuple of (printed factor, exponent) for the
    non-rational atoms; pi is just another atom here.
    """
    coeff = Fraction(1)
    factors: Dict[str, Tuple[Expr, int]] = {}

    def walk(x: Expr, exp: int):
        nonlocal coeff
        if x.kind == "rat":
            coeff *= rat_value(x) ** exp
        elif x.kind == "neg":
            coeff *= (-1) ** exp
            walk(x.args[0], exp)
        elif x.kind == "mul":
            walk(x.args[0], exp)
            walk(x.args[1], exp)
        elif x.kind == "div":
            walk(x.args[0], exp)
            walk(x.args[1], -exp)
        elif x.kind == "pow":
            walk(x.args[0], exp * x.value)  # type: ignore[operator]
        else:
            key = str(x)
            prev = factors.get(key)
            factors[key] = (x, (prev[1] if prev else 0) + exp)

    walk(e, 1)
    key = tuple(sorted((k, v[1]) for k, v in factors.items() if v[1] != 0))
    return coeff, key


def _rebuild_from_key(coeff: Fraction,
                      key: Sequence[Tuple[str, int]],
                      atoms: Dict[str, Expr]) -> Expr:
    out = rational(coeff)
    for name, exp in key:
        out = mul(out, ipow(atoms[name], exp))
    return out


def find_trig_base(e: Expr) -> Optional[Tuple[Fraction, Tuple, Expr]]:
    """Discover the common base angle of all sin/cos atoms inside ``e``.

    Returns (base_ratio, symbolic_key, base_expr) where every trig argument
    equals an integer multiple of base_expr = base_ratio * key-product, or
    None when the arguments do not share one symbolic part.
    """
    args: List[Tuple[Fraction, Tuple, Expr]] = []

    def walk(x: Expr):
        if x.kind == "call" and x.value in ("sin", "cos"):
            rho, key = split_rational(x.args[0])
            args.append((rho, key, x.args[0]))
            return
        for a in x.args:
            walk(a)

    walk(e)
    if not args:
        return None
    key0 = args[0][1]
    if any(k != key0 for _, k, _ in args[1:]):
        return None
    ratios = [r for r, _, _ in args]
    if any(r <= 0 for r in ratios):
        # fold sin(-u) style signs before extraction; bail here
        return None
    g = ratios[0]
    for r in ratios[1:]:
        g = Fraction(_gcd_int(g.numerator * r.denominator, r.numerator * g.denominator),
                     g.denominator * r.denominator)
    atoms: Dict[str, Expr] = {}

    def collect_atoms(x: Expr):
        if x.kind in ("mul", "div", "neg"):
            for a in x.args:
                collect_atoms(a)
        elif x.kind == "pow":
            collect_atoms(x.args[0])
        elif x.kind != "rat":
            atoms[str(x)] = x

    collect_atoms(args[0][2])
    base_expr = _rebuild_from_key(g, key0, atoms)
    return g, key0, base_expr


def tpoly_from_expr(e: Expr, base_ratio: Fraction, base_key: Tuple) -> Optional[TPoly]:
    """Extract ``e`` as a TPoly in the base angle, or None if unsupported."""
    if e.kind == "rat":
        return TPoly.const(K3(rat_value(e)))
    if e.kind == "neg":
        inner = tpoly_from_expr(e.args[0], base_ratio, base_key)
        return None if inner is None else -inner
    if e.kind == "add":
        a = tpoly_from_expr(e.args[0], base_ratio, base_key)
        b = tpoly_from_expr(e.args[1], base_ratio, base_key)
        return None if a is None or b is None else a + b
    if e.kind == "mul":
        a = tpoly_from_expr(e.args[0], base_ratio, base_key)
        b = tpoly_from_expr(e.args[1], base_ratio, base_key)
        return None if a is None or b is None else a * b
    if e.kind == "div":
        a = tpoly_from_expr(e.args[0], base_ratio, base_key)
        b = tpoly_from_expr(e.args[1], base_ratio, base_key)
        if a is None or b is None or not b.is_const() or b.const_value().is_zero():
            return None
        return a.scale(b.const_value().inv())
    if e.kind == "pow":
        n = e.value
        base = tpoly_from_expr(e.args[0], base_ratio, base_key)
        if base is None:
            return None
        if n < 0:
            if not base.is_const() or base.const_value().is_zero():
                return None
            return TPoly.const(_k3_ipow(base.const_value().inv(), -n))
        out = TPoly.const(K_ONE)
        for _ in range(n):
            out = out * base
        return out
    if e.kind == "call":
        name = e.value
        if name == "sqrt" and is_rat(e.args[0]) and rat_value(e.args[0]) == 3:
            return TPoly.const(K3(0, 1))
        if name in ("sin", "cos"):
            rho, key = split_rational(e.args[0])
            if key != base_key or rho <= 0:
                return None
            m_frac = rho / base_ratio
            if m_frac.denominator != 1:
                return None
            m = m_frac.numerator
            if name == "cos":
                return TPoly.c_poly(_cheb_T(m))
            return TPoly((), _cheb_U(m - 1)) if m >= 1 else TPoly()
        return None
    return None


def _k3_ipow(k: K3, n: int) -> K3:
    out = K_ONE
    for _ in range(n):
        out = out * k
    return out


# ---------------------------------------------------------------------------
# angle loci (solutions of polynomial conditions on the unit circle)

_ACOS_TABLE = {Fraction(1, 2): Fraction(1, 3), Fraction(-1, 2): Fraction(2, 3)}


@dataclass(frozen=True)
class AngleLocus:
    """Base-angle solutions B = (offset + k*modulus) * pi, k in Z."""
    offset: Fraction
    modulus: Fraction

    def points_in(self, lo: Fraction, hi: Fraction) -> List[Fraction]:
        """All solutions (in units of pi) with lo <= t <= hi."""
        out = []
        k0 = int((lo - self.offset) / self.modulus) - 2
        t = self.offset + k0 * self.modulus
        while t <= hi:
            if t >= lo:
                out.append(t)
            t += self.modulus
        return out


class UnsolvableLocusError(Exception):
    """A guard polynomial has zeros not expressible as rational pi multiples."""


def _common_zero_loci(N: TPoly, D: TPoly) -> List[AngleLocus]:
    """Common zeros of N and D on the unit circle, as angle loci.

    These are the 0/0 points of N/D, i.e. the candidate non-analytical
    points of an identity built from the quotient.
    """
    def vanishes_at(P: TPoly, c: Fraction, s: Optional[int]) -> bool:
        v0, v1 = _ueval(P.p0, c), _ueval(P.p1, c)
        if s is None:  # s irrational: need both components zero
            return v0.is_zero() and v1.is_zero()
        return (v0 + v1 * K3(s)).is_zero()

    loci: List[AngleLocus] = []
    at_one = vanishes_at(N, Fraction(1), 0) and vanishes_at(D, Fraction(1), 0)
    at_minus_one = vanishes_at(N, Fraction(-1), 0) and vanishes_at(D, Fraction(-1), 0)
    if at_one and at_minus_one:
        loci.append(AngleLocus(Fraction(0), Fraction(1)))
    elif at_one:
        loci.append(AngleLocus(Fraction(0), Fraction(2)))
    elif at_minus_one:
        loci.append(AngleLocus(Fraction(1), Fraction(2)))
    up = vanishes_at(N, Fraction(0), 1) and vanishes_at(D, Fraction(0), 1)
    down = vanishes_at(N, Fraction(0), -1) and vanishes_at(D, Fraction(0), -1)
    if up and down:
        loci.append(AngleLocus(Fraction(1, 2), Fraction(1)))
    elif up:
        loci.append(AngleLocus(Fraction(1, 2), Fraction(2)))
    elif down:
        loci.append(AngleLocus(Fraction(-1, 2), Fraction(2)))
    # interior rational cos values: common rational roots of all components
    g = _ugcd(_ugcd(N.p0, N.p1), _ugcd(D.p0, D.p1))
    if g and len(g) > 1:
        for v in _rational_roots(g):
            if -1 < v < 1 and v != 0:
                t = _ACOS_TABLE.get(v)
                if t is None:
                    raise UnsolvableLocusError(
                        f"cos(base) = {v} has no rational-pi solution in the table")
                loci.append(AngleLocus(t, Fraction(2)))
                loci.append(AngleLocus(-t, Fraction(2)))
        # a nontrivial common factor with no usable rational root means
        # zeros we cannot place exactly
        if not _rational_roots(g):
            raise UnsolvableLocusError("common factor with no rational cos root")
    return loci


def _zero_loci_single(P: TPoly) -> List[AngleLocus]:
    """Zero locus of one polynomial on the circle (used when D == 0)."""
    return _common_zero_loci(P, P)


# ---------------------------------------------------------------------------
# inverse-trig collapse

@dataclass
class CollapseResult:
    expr: Expr
    guards: List[AngleLocus]
    branch: bool  # True when an odd-convention arccot sign pull was used


def _pattern_result(name: str, which: str, base: Expr) -> Expr:
    half_pi = div(PI, rational(2))
    half_base = mul(rational(1, 2), base)
    if name == "arccot":
        table = {
            "tan": sub(half_pi, base),
            "cot": base,
            "tan_half": sub(half_pi, half_base),
            "cot_half": half_base,
        }
    else:
        table = {
            "tan": base,
            "cot": sub(half_pi, base),
            "tan_half": half_base,
            "cot_half": sub(half_pi, half_base),
        }
    return table[which]


_S = TPoly((), (K_ONE,))
_C = TPoly((K_ZERO, K_ONE), ())
_ONE_PLUS_C = TPoly((K_ONE, K_ONE), ())
_ONE_MINUS_C = TPoly((K_ONE, -K_ONE), ())

_PATTERNS = (
    ("tan", _S, _C),
    ("cot", _C, _S),
    ("tan_half", _ONE_MINUS_C, _S),
    ("tan_half", _S, _ONE_PLUS_C),
    ("cot_half", _ONE_PLUS_C, _S),
    ("cot_half", _S, _ONE_MINUS_C),
)

_ARCTAN_CONSTS = {K3(1): Fraction(1, 4), K3(0, 1): Fraction(1, 3),
                  K3(0, Fraction(1, 3)): Fraction(1, 6)}
_ARCCOT_CONSTS = {K3(1): Fraction(1, 4), K3(0, 1): Fraction(1, 6),
                  K3(0, Fraction(1, 3)): Fraction(1, 3), K3(0): Fraction(1, 2)}


def collapse_inverse_trig(name: str, argument: Expr) -> Optional[CollapseResult]:
    """Collapse arccot/arctan of a trig-rational argument to closed form.

    Returns None when the argument is outside the supported normal form or
    matches no pattern; raises UnsolvableLocusError when a guard zero falls
    outside the exact table.  The recorded guards are the common-zero locus
    of numerator and denominator (the 0/0 points), which for the supported
    rewrites are exactly the points where the collapsed identity can fail.
    """
    if name not in ("arccot", "arctan"):
        return None
    if argument.kind == "div":
        num_e, den_e = argument.args
    else:
        num_e, den_e = argument, ONE
    found = find_trig_base(argument)
    if found is None:
        base_ratio, base_key, base_expr = Fraction(1), (), ONE
    else:
        base_ratio, base_key, base_expr = found
    N = tpoly_from_expr(num_e, base_ratio, base_key)
    D = tpoly_from_expr(den_e, base_ratio, base_key)
    if N is None or D is None:
        return None

    if D.is_zero():
        # identically-zero denominator: the quotient is +-infinity away from
        # the zeros of N, so arctan gives +-pi/2 (sign taken just right of
        # the base-angle origin) and arccot gives 0 or pi
        if N.is_zero():
            return None
        guards = _zero_loci_single(N)
        sgn = _sign_near_zero(N, guards)
        if sgn == 0:
            return None
        if name == "arctan":
            result = mul(rational(sgn), div(PI, rational(2)))
        else:
            result = ZERO if sgn > 0 else PI
        return CollapseResult(result, guards, False)

    guards = _common_zero_loci(N, D)

    # constant quotient: N proportional to D
    lam = _lead(N) / _lead(D)
    if N == D.scale(lam):
        table = _ARCTAN_CONSTS if name == "arctan" else _ARCCOT_CONSTS
        for lam_abs, sign in ((lam, 1), (-lam, -1)):
            frac = table.get(lam_abs)
            if frac is not None:
                branch = sign < 0 and name == "arccot"
                return CollapseResult(
                    _apply_sign(mul(rational(frac), PI), sign), guards, branch)
        return None

    # tan / cot / half-angle patterns, up to overall sign; the negative-sign
    # arccot pull uses the odd convention arccot(-t) = -arccot(t) ("branch")
    for which, pn, pd in _PATTERNS:
        for sign in (1, -1):
            if (N * pd - (D * pn).scale(K3(sign))).is_zero():
                result = _pattern_result(name, which, base_expr)
                branch = sign < 0 and name == "arccot"
                return CollapseResult(_apply_sign(result, sign), guards, branch)
    return None


def _lead(P: TPoly) -> K3:
    if P.p1:
        return P.p1[-1]
    return P.p0[-1] if P.p0 else K_ZERO


def fold_const_denominator(num: Expr, den: Expr) -> Optional[Expr]:
    """Replace num/den by a scaled numerator when the denominator is a
    trigonometric polynomial that reduces to a nonzero constant (e.g. the
    Pythagorean denominators (a cos u)^2 + (a sin u)^2 == a^2)."""
    found = find_trig_base(den)
    if found is None:
        return None
    ratio, key, _ = found
    D = tpoly_from_expr(den, ratio, key)
    if D is None or not D.is_const():
        return None
    k = D.const_value()
    if k.is_zero():
        return None
    inv = k.inv()
    if inv.b == 0:
        return mul(rational(inv.a), num)
    return mul(inv.as_expr(), num)


def _apply_sign(e: Expr, sign: int) -> Expr:
    return e if sign >= 0 else neg(e)


def _sign_near_zero(P: TPoly, guards: List[AngleLocus]) -> int:
    """Sign of P(cos B, sin B) just right of B = 0."""
    positive = [t for g in guards for t in g.points_in(Fraction(0), Fraction(4))
                if t > 0] or [Fraction(2)]
    t_mid = min(positive) / 2
    import math
    ang = math.pi * float(t_mid)
    c, s = math.cos(ang), math.sin(ang)
    val = _tpoly_float(P, c, s)
    if abs(val) < 1e-12:
        return 0
    return 1 if val > 0 else -1


def _tpoly_float(P: TPoly, c: float, s: float) -> float:
    def horner(p):
        acc = 0.0
        for k in reversed(p):
            acc = acc * c + float(k.a) + float(k.b) * 1.7320508075688772
        return acc
    return horner(P.p0) + horner(P.p1) * s


# ---------------------------------------------------------------------------
# linear-combination normal form (combining like terms)

_Term = Tuple[Fraction, Dict[str, Tuple[Expr, int]]]

_EXPAND_POW_LIMIT = 6


def _merge_factors(a: Dict[str, Tuple[Expr, int]],
                   b: Dict[str, Tuple[Expr, int]], b_scale: int = 1):
    out = dict(a)
    for k, (atom, exp) in b.items():
        prev = out.get(k)
        out[k] = (atom, (prev[1] if prev else 0) + exp * b_scale)
    return out


def _expand(e: Expr) -> List[_Term]:
    """Multilinear expansion of ``e`` as a list of (coefficient, factors)."""
    if e.kind == "rat":
        return [(rat_value(e), {})]
    if e.kind == "neg":
        return [(-c, f) for c, f in _expand(e.args[0])]
    if e.kind == "add":
        return _expand(e.args[0]) + _expand(e.args[1])
    if e.kind == "mul":
        left, right = _expand(e.args[0]), _expand(e.args[1])
        return [(cl * cr, _merge_factors(fl, fr))
                for cl, fl in left for cr, fr in right]
    if e.kind == "div":
        num = _expand(e.args[0])
        den = _expand(e.args[1])
        if len(den) == 1:
            cd, fd = den[0]
            if cd == 0:
                raise ZeroDivisionError("zero denominator")
            return [(cn / cd, _merge_factors(fn, fd, -1)) for cn, fn in num]
        atom = collect_terms(e.args[1])
        key = str(atom)
        return [(cn, _merge_factors(fn, {key: (atom, -1)})) for cn, fn in num]
    if e.kind == "pow":
        n = e.value
        if 0 <= n <= _EXPAND_POW_LIMIT:
            out: List[_Term] = [(Fraction(1), {})]
            base = _expand(e.args[0])
            for _ in range(n):
                out = [(c1 * c2, _merge_factors(f1, f2))
                       for c1, f1 in out for c2, f2 in base]
            return out
        base = _expand(e.args[0])
        if len(base) == 1:
            c0, f0 = base[0]
            return [(c0 ** n, {k: (a, x * n) for k, (a, x) in f0.items()})]
        atom = collect_terms(e.args[0])
        return [(Fraction(1), {str(atom): (atom, n)})]
    return [(Fraction(1), {str(e): (e, 1)})]


def _reduce_sin_squares(coeff: Fraction,
                        factors: Dict[str, Tuple[Expr, int]]) -> List[_Term]:
    """Rewrite sin(u)^(2m+r) -> (1 - cos(u)^2)^m sin(u)^r within one term,
    expanding binomially; sin keeps exponent 0 or 1 afterwards."""
    for keyname, (atom, exp) in factors.items():
        if (exp >= 2 and atom.kind == "call" and atom.value == "sin"):
            m, r = divmod(exp, 2)
            cos_atom = func("cos", atom.args[0])
            cos_key = str(cos_atom)
            out: List[_Term] = []
            for j in range(m + 1):
                binom = Fraction((-1) ** j) * _comb(m, j)
                new_factors = dict(factors)
                new_factors[keyname] = (atom, r)
                prev = new_factors.get(cos_key)
                new_factors[cos_key] = (cos_atom, (prev[1] if prev else 0) + 2 * j)
                out.extend(_reduce_sin_squares(coeff * binom, new_factors))
            return out
    return [(coeff, factors)]


def _comb(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)


def collect_terms(e: Expr) -> Expr:
    """Expand products over sums, reduce sin^2 -> 1 - cos^2, combine like
    terms with exact rational coefficients, and rebuild deterministically.

    Even powers of sqrt(rational) are absorbed into the coefficient.  The
    result is value-equal to the input.
    """
    terms: Dict[Tuple, Fraction] = {}
    atoms: Dict[str, Expr] = {}

    raw: List[_Term] = []
    for coeff, factors in _expand(e):
        raw.extend(_reduce_sin_squares(coeff, factors))

    for coeff, factors in raw:
        items = []
        for keyname in sorted(factors):
            atom, exp = factors[keyname]
            if exp == 0:
                continue
            if atom.kind == "call" and atom.value == "sqrt" and is_rat(atom.args[0]):
                root_of = rat_value(atom.args[0])
                coeff *= root_of ** (exp // 2)
                exp = exp % 2
                if exp == 0:
                    continue
            items.append((keyname, atom, exp))
        key = tuple((kn, exp) for kn, _, exp in items)
        atoms.update({kn: atom for kn, atom, _ in items})
        terms[key] = terms.get(key, Fraction(0)) + coeff

    ordered = sorted(k for k, v in terms.items() if v != 0)
    out: Optional[Expr] = None
    for key in ordered:
        coeff = terms[key]
        if coeff == -1 and key:
            piece: Optional[Expr] = None
            for keyname, exp in key:
                factor = ipow(atoms[keyname], exp)
                piece = factor if piece is None else mul(piece, factor)
            piece = neg(piece)
        else:
            piece = rational(coeff)
            for keyname, exp in key:
                piece = mul(piece, ipow(atoms[keyname], exp))
        out = piece if out is None else add(out, piece)
    return out if out is not None else ZERO


def _flatten_product(x: Expr) -> Tuple[Fraction, Dict[str, Tuple[Expr, int]]]:
    coeff = Fraction(1)
    factors: Dict[str, Tuple[Expr, int]] = {}

    def walk(y: Expr, exp: int):
        nonlocal coeff
        if y.kind == "rat":
            coeff *= rat_value(y) ** exp
        elif y.kind == "neg":
            coeff *= (-1) ** exp
            walk(y.args[0], exp)
        elif y.kind == "mul":
            walk(y.args[0], exp)
            walk(y.args[1], exp)
        elif y.kind == "div":
            walk(y.args[0], exp)
            walk(y.args[1], -exp)
        elif y.kind == "pow":
            walk(y.args[0], exp * y.value)  # type: ignore[operator]
        else:
            k = str(y)
            prev = factors.get(k)
            factors[k] = (y, (prev[1] if prev else 0) + exp)

    walk(x, 1)
    return coeff, factors


def polynomial_in(e: Expr, var: str) -> Optional[List[Expr]]:
    """Coefficients [a0, a1, ...] if ``e`` is polynomial in ``var`` with
    var-free coefficients, else None."""
    collected = collect_terms(e)
    coeffs: Dict[int, Expr] = {}

    def handle_term(t: Expr):
        coeff, factors = _flatten_product(t)
        power = 0
        rest: Expr = rational(coeff)
        for keyname in sorted(factors):
            atom, exp = factors[keyname]
            if exp == 0:
                continue
            if atom.kind == "sym" and atom.value == var:
                if exp < 0:
                    raise ValueError
                power = exp
            else:
                if var in _free(atom):
                    raise ValueError
                rest = mul(rest, ipow(atom, exp))
        coeffs[power] = add(coeffs.get(power, ZERO), rest)

    def walk_sum(x: Expr):
        if x.kind == "add":
            walk_sum(x.args[0])
            walk_sum(x.args[1])
        else:
            handle_term(x)

    try:
        walk_sum(collected)
    except ValueError:
        return None
    top = max(coeffs) if coeffs else 0
    return [coeffs.get(i, ZERO) for i in range(top + 1)]


def _free(e: Expr) -> frozenset:
    from .expr import free_symbols
    return free_symbols(e)
