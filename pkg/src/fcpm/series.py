"""Series layer: coefficients A_n, Pochhammer symbols, evaluation, domain logic.

The series is sum over n in N^m of A_n x^n with

            (a_1,|n|) ... (a_p,|n|)
  A_n = ------------------------------------ ,      |n| = n_1 + ... + n_m,
        prod_k (b_{1,k},n_k)...(b_{p-1,k},n_k) n_k!

convergent on D = { sum_k |x_k|^{1/p} < 1 }. Evaluation sums by total-degree
shells, where the tail is geometric with ratio r^p, r = sum_k |x_k|^{1/p}.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import BranchError, DomainError, ModeError, ValidationError
from .params import (EXACT, ParameterSet, SolutionLabel, solution_exponents,
                     transform_parameters, validate)
from .rings import GaussianRational, to_complex

DEFAULT_MAX_SHELLS = 500
MAX_SHELLS_ENV = "FCPM_MAX_SHELLS"


def max_shells_cap(explicit=None):
    """Shell cap: explicit argument, else FCPM_MAX_SHELLS, else 500."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(MAX_SHELLS_ENV)
    return int(env) if env else DEFAULT_MAX_SHELLS


class MultiIndex(tuple):
    """A vector of m naturals with its total degree cached.

    >>> MultiIndex((2, 0, 1)).total
    3
    """

    def __new__(cls, entries):
        t = super().__new__(cls, (int(e) for e in entries))
        if any(e < 0 for e in t):
            raise ValidationError(f"negative entry in multi-index {tuple(t)}")
        t._total = sum(t)
        return t

    @property
    def total(self):
        return self._total


def shell_indices(m, d):
    """All multi-indices of total degree d in lexicographic order."""
    if m == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in shell_indices(m - 1, d - first):
            yield (first,) + rest


def all_indices(m, N):
    """All multi-indices with total degree <= N, shell by shell."""
    for d in range(N + 1):
        yield from shell_indices(m, d)


# ---------------------------------------------------------------------------
# Pochhammer symbols

def pochhammer(s, n):
    """Rising factorial s(s+1)...(s+n-1); exact for exact scalars.

    >>> pochhammer(3, 2)
    Fraction(12, 1)
    >>> pochhammer(Fraction(1, 2), 3)
    Fraction(15, 8)
    """
    if n < 0:
        raise ValidationError("pochhammer needs n >= 0")
    if isinstance(s, (int, Fraction)):
        out = Fraction(1)
        s = Fraction(s)
        for i in range(n):
            out *= s + i
        return out
    if isinstance(s, GaussianRational):
        out = GaussianRational(1)
        for i in range(n):
            out = out * (s + i)
        return out
    mant, ex = pochhammer_scaled(s, n)
    return _unscale(mant, ex)


def pochhammer_scaled(s, n):
    """Float Pochhammer as (mantissa, exp2) with |mantissa| kept near 1.

    The value is mantissa * 2**exp2; this survives n large enough that the
    plain product would overflow.
    """
    s = complex(s)
    mant, ex = complex(1), 0
    for i in range(n):
        mant *= s + i
        a = abs(mant)
        if a != 0 and (a > 2.0 ** 64 or a < 2.0 ** -64):
            _, e = math.frexp(a)
            mant = complex(math.ldexp(mant.real, -e), math.ldexp(mant.imag, -e))
            ex += e
    return mant, ex


def _unscale(mant, ex):
    try:
        return complex(math.ldexp(mant.real, ex), math.ldexp(mant.imag, ex))
    except OverflowError:
        return complex(math.inf if mant.real > 0 else -math.inf,
                       math.inf if mant.imag > 0 else -math.inf)


# ---------------------------------------------------------------------------
# coefficients

def _check_valid(ps):
    problems = validate(ps)
    if problems:
        raise ValidationError("; ".join(problems))


def _ratio(ps, n, k, one):
    """A_n / A_{n-e_k} with |n| the total of n itself (n_k >= 1).

    ratio = prod_i (a_i + |n| - 1) / (n_k * prod_{j<p} (b_{j,k} - 1 + n_k)).
    """
    total = sum(n)
    nk = n[k - 1]
    num = one
    for i in range(1, ps.p + 1):
        num = num * (ps.a_i(i) + (total - 1))
    den = one * nk
    for j in range(1, ps.p):
        den = den * (ps.b(j, k) + (nk - 1))
    return num / den


def coefficient(ps, n):
    """The series coefficient A_n.

    Exact mode: direct Pochhammer product. Float mode: one-step ratio walk
    from the origin (numerically tamer than naked factorial products).
    """
    _check_valid(ps)
    n = MultiIndex(n)
    if len(n) != ps.m:
        raise ValidationError(f"multi-index arity {len(n)} != m={ps.m}")
    if ps.is_exact:
        num = Fraction(1)
        for i in range(1, ps.p + 1):
            num = num * pochhammer(ps.a_i(i), n.total)
        den = Fraction(1)
        for k in range(1, ps.m + 1):
            for j in range(1, ps.p):
                den = den * pochhammer(ps.b(j, k), n[k - 1])
            den = den * math.factorial(n[k - 1])
        return num / den
    value = complex(1)
    cur = [0] * ps.m
    for k in range(1, ps.m + 1):
        for step in range(1, n[k - 1] + 1):
            cur[k - 1] = step
            value *= _ratio(ps, cur, k, complex(1))
    return value


def coefficient_table(ps, N):
    """All A_n for |n| <= N via the one-step recurrence, shell by shell.

    Works in either mode; in exact mode this is the recurrence route that
    tests cross-check against the direct product.
    """
    _check_valid(ps)
    one = ps.one()
    table = {MultiIndex((0,) * ps.m): one}
    for d in range(1, N + 1):
        for n in shell_indices(ps.m, d):
            k = next(i + 1 for i, e in enumerate(n) if e > 0)
            prev = list(n)
            prev[k - 1] -= 1
            table[MultiIndex(n)] = table[MultiIndex(prev)] * _ratio(ps, n, k, one)
    return table


# ---------------------------------------------------------------------------
# truncated series

@dataclass
class TruncatedSeries:
    """Coefficients on all |n| <= N plus prefactor exponents (mu for Phi_J).

    Mutable until freeze(); Euler-operator application requires frozen input.
    """

    N: int
    m: int
    coeffs: dict
    prefactor_exponents: tuple
    mode: str
    _frozen: bool = False

    def __post_init__(self):
        want = {MultiIndex(n) for n in all_indices(self.m, self.N)}
        missing = want - set(self.coeffs)
        zero = Fraction(0) if self.mode == EXACT else complex(0)
        for n in missing:
            self.coeffs[n] = zero
        extra = [n for n in self.coeffs if sum(n) > self.N]
        if extra:
            raise ValidationError(f"coefficient beyond truncation order: {extra[0]}")

    def freeze(self):
        self._frozen = True
        return self

    @property
    def frozen(self):
        return self._frozen

    def __getitem__(self, n):
        return self.coeffs[MultiIndex(n)]

    def scale(self, c):
        return TruncatedSeries(self.N, self.m,
                               {n: v * c for n, v in self.coeffs.items()},
                               self.prefactor_exponents, self.mode).freeze()

    def add(self, other):
        if (other.N, other.m, other.prefactor_exponents) != (self.N, self.m, self.prefactor_exponents):
            raise ValidationError("series shapes differ")
        return TruncatedSeries(self.N, self.m,
                               {n: v + other.coeffs[n] for n, v in self.coeffs.items()},
                               self.prefactor_exponents, self.mode).freeze()

    def max_abs(self):
        from .rings import exact_abs
        if self.mode == EXACT:
            return max((exact_abs(v) for v in self.coeffs.values()), default=Fraction(0))
        return max((abs(v) for v in self.coeffs.values()), default=0.0)


def series_table(ps, N):
    """The plain series as a frozen TruncatedSeries (zero prefactor)."""
    zero = ps.zero()
    pref = tuple(zero for _ in range(ps.m))
    return TruncatedSeries(N, ps.m, coefficient_table(ps, N), pref, ps.mode).freeze()


def phi_series(ps, J, N):
    """The J-th fundamental solution as (prefactor exponents, series table).

    Coefficients are those of the eta-transformed parameter set; the
    prefactor exponents are mu_J.
    """
    mu, _ = solution_exponents(ps, J)
    tps = transform_parameters(ps, J)
    return TruncatedSeries(N, ps.m, coefficient_table(tps, N), tuple(mu), ps.mode).freeze()


# ---------------------------------------------------------------------------
# evaluation

def in_domain(x, p):
    """True iff sum_k |x_k|^{1/p} < 1 (strict).

    >>> in_domain((0.04, 0.04), 2)
    True
    >>> in_domain((1.0, 0.0), 2)
    False
    """
    return domain_radius(x, p) < 1.0


def domain_radius(x, p):
    return float(sum(abs(complex(v)) ** (1.0 / p) for v in x))


@dataclass(frozen=True)
class EvalResult:
    value: complex
    N_used: int
    tail_bound: float


def evaluate(ps, x, tol=1e-10, max_shells=None):
    """Sum the series at x by total-degree shells.

    Stops at the first shell where shell_abs * q/(1-q) < tol, q = r^p,
    r = sum |x_k|^{1/p}; that estimate is returned as tail_bound. Raises
    DomainError outside D. A hard shell cap (default 500, override with
    max_shells or FCPM_MAX_SHELLS) bounds the work; if the cap is hit the
    result is returned with whatever tail_bound was last computed, so
    callers can reject.
    """
    _check_valid(ps)
    x = tuple(complex(v) for v in x)
    if len(x) != ps.m:
        raise ValidationError(f"point arity {len(x)} != m={ps.m}")
    r = domain_radius(x, ps.p)
    if r >= 1.0:
        raise DomainError(f"sum |x_k|^(1/p) = {r:.6g} >= 1: outside the convergence domain")
    q = r ** ps.p
    geom = q / (1.0 - q)
    pf = ps.as_float()
    cap = max_shells_cap(max_shells)

    shell = {(0,) * ps.m: complex(1)}
    value = complex(1)
    tail = 1.0 * geom
    used = 0
    d = 0
    while tail >= tol and d < cap:
        d += 1
        new = {}
        shell_abs = 0.0
        for n in shell_indices(ps.m, d):
            k = next(i + 1 for i, e in enumerate(n) if e > 0)
            prev = list(n)
            prev[k - 1] -= 1
            t = shell[tuple(prev)] * x[k - 1] * _ratio(pf, n, k, complex(1))
            new[n] = t
            shell_abs += abs(t)
        value += sum(new.values())
        shell = new
        tail = shell_abs * geom
        used = d
    return EvalResult(value, used, tail)


def evaluate_phi(ps, J, x, tol=1e-10, max_shells=None):
    """Evaluate the fundamental solution Phi_J at x (principal branches).

    Phi_J = (prod_k x_k^{mu_k}) * F(a + sigma*1, eta-transformed B; x).
    Every coordinate carrying a nonzero exponent must avoid the branch
    cut (-infinity, 0].
    """
    if not isinstance(J, SolutionLabel):
        J = SolutionLabel(ps.p, tuple(J))
    mu, _ = solution_exponents(ps, J)
    x = tuple(complex(v) for v in x)
    pref = complex(1)
    for k, (mk, xk) in enumerate(zip(mu, x), start=1):
        mkc = to_complex(mk)
        if mkc == 0:
            continue
        if xk.imag == 0 and xk.real <= 0:
            raise BranchError(f"x_{k} = {xk} lies on the branch cut (-inf, 0] "
                              f"with exponent mu_{k} = {mkc}")
        pref *= cmath.exp(mkc * cmath.log(xk))
    tps = transform_parameters(ps, J)
    return pref * evaluate(tps, x, tol, max_shells).value


@dataclass(frozen=True)
class ProbeResult:
    max_term: float
    growing: bool


def divergence_probe(ps, x, shells=60):
    """Scan |A_n x^n| for |n| <= shells.

    growing is true iff the largest term on the last shell is at least 10
    times the largest on shell 0 (which is 1). Useful as evidence of
    divergence outside the domain; inside, terms decay geometrically.
    """
    _check_valid(ps)
    x = tuple(complex(v) for v in x)
    pf = ps.as_float()
    shell = {(0,) * ps.m: complex(1)}
    first = 1.0
    overall = 1.0
    last = 1.0
    for d in range(1, shells + 1):
        new = {}
        for n in shell_indices(ps.m, d):
            k = next(i + 1 for i, e in enumerate(n) if e > 0)
            prev = list(n)
            prev[k - 1] -= 1
            new[n] = shell[tuple(prev)] * x[k - 1] * _ratio(pf, n, k, complex(1))
        shell = new
        last = max(abs(t) for t in shell.values())
        overall = max(overall, last)
    return ProbeResult(overall, last >= 10.0 * first)


def lauricella_fc_coefficient(a1, a2, c_cols, n):
    """Independent p=2 cross-check: (a1,|n|)(a2,|n|) / prod_k (c_k,n_k) n_k!.

    The classical m-variable coefficient with denominators c_k = b_{1,k}.
    Exact for exact inputs.
    """
    n = MultiIndex(n)
    num = pochhammer(a1, n.total) * pochhammer(a2, n.total)
    den = Fraction(1)
    for ck, nk in zip(c_cols, n):
        den = den * pochhammer(ck, nk) * math.factorial(nk)
    return num / den
