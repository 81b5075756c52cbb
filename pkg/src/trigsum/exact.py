"""Exact rational engine: Bernoulli/Euler/harmonic numbers, pi-polynomials,
and the triangular recurrences for the even zeta family and the two signed
odd-denominator Dirichlet series.

Every value here is exact.  ``PiPolynomial`` carries sums of a_K * pi^K with
arbitrary-precision rational a_K; evaluation at a numeric pi is a ring
homomorphism.  Memo tables are write-once caches (idempotent fills), so
concurrent use is safe.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Tuple

import mpmath as mp

__all__ = [
    "ExactRational",
    "PiPolynomial",
    "bernoulli_star",
    "euler_number",
    "harmonic",
    "zeta_even",
    "eta_even",
    "lambda_even",
    "beta_odd",
    "frakD",
    "calD",
]

# Arbitrary-precision rational in canonical form (gcd 1, positive denominator);
# fractions.Fraction guarantees both invariants.
ExactRational = Fraction


class PiPolynomial:
    """An exact value sum(a_K * pi^K) with rational a_K, K >= 0.

    Zero coefficients are never stored.  Supports ring arithmetic, exact
    comparison, scalar multiplication by rationals, and evaluation at a
    numeric pi.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, Fraction] | None = None):
        clean: Dict[int, Fraction] = {}
        for k, v in (coeffs or {}).items():
            if k < 0:
                raise ValueError("pi powers must be non-negative")
            v = Fraction(v)
            if v != 0:
                clean[int(k)] = v
        self.coeffs = clean

    @classmethod
    def monomial(cls, coeff: Fraction | int, power: int) -> "PiPolynomial":
        return cls({power: Fraction(coeff)})

    @classmethod
    def const(cls, coeff: Fraction | int) -> "PiPolynomial":
        return cls({0: Fraction(coeff)})

    def __add__(self, other: "PiPolynomial") -> "PiPolynomial":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return PiPolynomial(out)

    def __sub__(self, other: "PiPolynomial") -> "PiPolynomial":
        return self + (-other)

    def __neg__(self) -> "PiPolynomial":
        return PiPolynomial({k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, PiPolynomial):
            out: Dict[int, Fraction] = {}
            for k1, v1 in self.coeffs.items():
                for k2, v2 in other.coeffs.items():
                    out[k1 + k2] = out.get(k1 + k2, Fraction(0)) + v1 * v2
            return PiPolynomial(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, q) -> "PiPolynomial":
        q = Fraction(q)
        return PiPolynomial({k: v * q for k, v in self.coeffs.items()})

    def shift_pi(self, j: int) -> "PiPolynomial":
        """Multiply by pi^j (j may be negative if every power admits it)."""
        out = {}
        for k, v in self.coeffs.items():
            if k + j < 0:
                raise ValueError("pi power would become negative")
            out[k + j] = v
        return PiPolynomial(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, PiPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def eval(self, digits: int = 30) -> mp.mpf:
        with mp.workdps(digits):
            pi = +mp.pi
            total = mp.mpf(0)
            for k, v in sorted(self.coeffs.items()):
                total += mp.mpf(v.numerator) / v.denominator * pi ** k
            return +total

    def terms(self) -> List[Tuple[int, Fraction]]:
        return sorted(self.coeffs.items())

    def to_json(self) -> str:
        payload = {"terms": [
            {"power": k, "num": str(v.numerator), "den": str(v.denominator)}
            for k, v in self.terms()
        ]}
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "PiPolynomial":
        payload = json.loads(text)
        return cls({int(t["power"]): Fraction(int(t["num"]), int(t["den"]))
                    for t in payload["terms"]})

    def __repr__(self):
        if not self.coeffs:
            return "PiPolynomial(0)"
        parts = []
        for k, v in self.terms():
            if k == 0:
                parts.append(f"{v}")
            elif k == 1:
                parts.append(f"({v})*pi")
            else:
                parts.append(f"({v})*pi^{k}")
        return "PiPolynomial(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# number sequences

_BSTAR: Dict[int, Fraction] = {}
_EULER: Dict[int, int] = {0: 1}
_HARMONIC: Dict[int, Fraction] = {0: Fraction(0)}


def bernoulli_star(k: int) -> Fraction:
    """B_k* (positive Bernoulli convention, B_1* = 1/6) from the triangular
    system sum_{j=0}^{r-1} (-1)^j C(2r+1, 2j+1) B_{j+1}* = 1/2, r = 1..k.

    B_k* equals |B_{2k}| of the classical signed convention.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    for r in range(1, k + 1):
        if r in _BSTAR:
            continue
        acc = Fraction(1, 2)
        for j in range(r - 1):
            acc -= (-1) ** j * comb(2 * r + 1, 2 * j + 1) * _BSTAR[j + 1]
        _BSTAR[r] = acc / ((-1) ** (r - 1) * comb(2 * r + 1, 2 * r - 1))
    return _BSTAR[k]


def euler_number(n: int) -> int:
    """Euler number E_n for even n, from
    sum_{k=0}^{r-1} C(2r, 2k) E_{2r-2k} = -1 with the seed E_0 = 1."""
    if n < 0 or n % 2 != 0:
        raise ValueError("n must be even and >= 0")
    r_target = n // 2
    for r in range(1, r_target + 1):
        if 2 * r in _EULER:
            continue
        acc = -1
        for k in range(1, r):
            acc -= comb(2 * r, 2 * k) * _EULER[2 * r - 2 * k]
        _EULER[2 * r] = acc
    return _EULER[n]


def harmonic(m: int) -> Fraction:
    """Exact harmonic number H_m = sum_{k=1}^m 1/k."""
    if m < 1:
        raise ValueError("m must be >= 1")
    top = max(_HARMONIC)
    if m > top:
        acc = _HARMONIC[top]
        for k in range(top + 1, m + 1):
            acc += Fraction(1, k)
            _HARMONIC[k] = acc
    return _HARMONIC[m]


# ---------------------------------------------------------------------------
# even zeta family

_ZETA_EVEN_METHODS = ("euler", "thm12", "thm13")


def zeta_even(r: int, method: str = "euler") -> PiPolynomial:
    """Exact zeta(2r) = a * pi^(2r).

    method selects the computation path: "euler" uses
    zeta(2n) = 2^(2n-1) B_n* pi^(2n) / (2n)!, "thm12" the recurrence
    sum (-1)^k pi^(2k) zeta(2r-2k)/(2k+1)! = (-1)^(r-1) r pi^(2r)/(2r+1)!,
    "thm13" its x=2c analogue with 2pi powers.  All paths agree exactly.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if method not in _ZETA_EVEN_METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "euler":
        a = Fraction(2 ** (2 * r - 1), factorial(2 * r)) * bernoulli_star(r)
        return PiPolynomial.monomial(a, 2 * r)
    coeffs: Dict[int, Fraction] = {}
    for rr in range(1, r + 1):
        if method == "thm12":
            acc = Fraction((-1) ** (rr - 1) * rr, factorial(2 * rr + 1))
            for k in range(1, rr):
                acc -= (-1) ** k * coeffs[rr - k] / factorial(2 * k + 1)
        else:
            acc = Fraction((-1) ** (rr - 1) * 4 ** rr * (2 * rr - 1),
                           4 * factorial(2 * rr + 1))
            for k in range(1, rr):
                acc -= (-1) ** k * Fraction(4 ** k) * coeffs[rr - k] / factorial(2 * k + 1)
        coeffs[rr] = acc
    return PiPolynomial.monomial(coeffs[r], 2 * r)


def eta_even(r: int) -> PiPolynomial:
    """Exact eta(2r) from the triangular recurrence
    sum_{k=0}^{r-1} (-1)^k pi^(2k) eta(2r-2k)/(2k+1)! = (-1)^(r-1) pi^(2r)/(2 (2r+1)!)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    coeffs: Dict[int, Fraction] = {}
    for rr in range(1, r + 1):
        acc = Fraction((-1) ** (rr - 1), 2 * factorial(2 * rr + 1))
        for k in range(1, rr):
            acc -= (-1) ** k * coeffs[rr - k] / factorial(2 * k + 1)
        coeffs[rr] = acc
    return PiPolynomial.monomial(coeffs[r], 2 * r)


def lambda_even(r: int) -> PiPolynomial:
    """Exact lambda(2r) = (1 - 2^(-2r)) zeta(2r) (odd-denominator zeta)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return zeta_even(r).scale(Fraction(4 ** r - 1, 4 ** r))


def beta_odd(k: int) -> PiPolynomial:
    """Exact beta(2k+1) = (-1)^k E_{2k} pi^(2k+1) / (4^(k+1) (2k)!)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    a = Fraction((-1) ** k * euler_number(2 * k), 4 ** (k + 1) * factorial(2 * k))
    return PiPolynomial.monomial(a, 2 * k + 1)


def _quarter_pi_pow(j: int) -> Fraction:
    # rational coefficient of (pi/4)^j as a pi^j monomial
    return Fraction(1, 4 ** j)


def frakD(r: int, method: str = "lambda") -> PiPolynomial:
    """Exact frakD(2r) = (1/sqrt2) sum (-1)^floor(n/2) (2n-1)^(-2r).

    The 1/sqrt2 normalization makes the value a pure pi-monomial.
    method "lambda" solves sum_{k=0}^{r-1} (-1)^k (pi/4)^(2k)
    frakD(2r-2k)/(2k)! = lambda(2r)/2; method "zeta" the equivalent form
    with (2^(2r)-1)/2^(2r+1) zeta(2r) on the right.  Both agree exactly.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if method not in ("lambda", "zeta"):
        raise ValueError(f"unknown method {method!r}")
    values: Dict[int, PiPolynomial] = {}
    for rr in range(1, r + 1):
        if method == "lambda":
            rhs = lambda_even(rr).scale(Fraction(1, 2))
        else:
            rhs = zeta_even(rr).scale(Fraction(4 ** rr - 1, 2 * 4 ** rr))
        acc = rhs
        for k in range(1, rr):
            term = values[rr - k].shift_pi(2 * k).scale(
                Fraction((-1) ** k, factorial(2 * k)) * _quarter_pi_pow(2 * k))
            acc = acc - term
        values[rr] = acc
    return values[r]


def calD(r: int, method: str = "direct") -> PiPolynomial:
    """Exact calD(2r+1) = (1/sqrt2) sum_{n>=0} (-1)^floor(n/2) (2n+1)^(-2r-1).

    calD(1) = pi/4.  method "direct" uses
    calD(2r+1) = sum_{k=0}^{r-1} (-1)^k (pi/4)^(2k+1) lambda(2r-2k)/(2k+1)!
                 + (-1)^r (pi/4)^(2r+1)/(2r)!;
    method "beta" solves beta(2r+1)/2 = sum_{k=0}^{r} (-1)^k (pi/4)^(2k)
    calD(2r+1-2k)/(2k)! instead.  Both agree exactly.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if method not in ("direct", "beta"):
        raise ValueError(f"unknown method {method!r}")
    if r == 0:
        return PiPolynomial.monomial(Fraction(1, 4), 1)
    if method == "direct":
        acc = PiPolynomial()
        for k in range(r):
            acc = acc + lambda_even(r - k).shift_pi(2 * k + 1).scale(
                Fraction((-1) ** k, factorial(2 * k + 1)) * _quarter_pi_pow(2 * k + 1))
        acc = acc + PiPolynomial.monomial(
            Fraction((-1) ** r, factorial(2 * r)) * _quarter_pi_pow(2 * r + 1),
            2 * r + 1)
        return acc
    values: Dict[int, PiPolynomial] = {0: calD(0)}
    for rr in range(1, r + 1):
        acc = beta_odd(rr).scale(Fraction(1, 2))
        for k in range(1, rr + 1):
            term = values[rr - k].shift_pi(2 * k).scale(
                Fraction((-1) ** k, factorial(2 * k)) * _quarter_pi_pow(2 * k))
            acc = acc - term
        values[rr] = acc
    return values[r]
