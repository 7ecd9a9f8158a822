"""Closed-form quantities: thresholds, first-moment expectations, the
domination probability, and the non-convergence witness sequences.

Expectations are carried as LogReal (sign plus natural-log magnitude)
because the values overflow floats long before interesting parameters.

Window-membership certificates never trust floats: an integer s(a) is
placed against a window endpoint q * f(x) + add (q, add rational, x a
positive integer, f(x) = x^alpha * ln x) by outward-rounded interval
arithmetic at escalating precision, falling back to an explicit
UndecidableComparisonError instead of guessing.  Purely rational
comparisons (the part-2 power inequalities) are done on exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import iv

from .witness import omega, w_vertex_count, w_star_vertex_count

_PRECISIONS = (80, 160, 320, 640, 1280, 2560, 5120)


class ParameterError(ValueError):
    """Inadmissible alpha/beta/gamma/r combination."""


class UndecidableComparisonError(ArithmeticError):
    """A window comparison stayed ambiguous at the highest precision."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # Decimal literal intent: 0.3 means 3/10, not the binary float.
        return Fraction(str(x))
    return Fraction(x)


# ---------------------------------------------------------------------------
# LogReal

@dataclass(frozen=True)
class LogReal:
    """A real number as sign in {-1, 0, 1} and natural-log magnitude."""

    sign: int
    log: float

    @classmethod
    def zero(cls) -> "LogReal":
        return cls(0, float("-inf"))

    @classmethod
    def one(cls) -> "LogReal":
        return cls(1, 0.0)

    @classmethod
    def from_log(cls, log: float, sign: int = 1) -> "LogReal":
        return cls.zero() if log == float("-inf") else cls(sign, log)

    @classmethod
    def from_float(cls, x: float) -> "LogReal":
        if x == 0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_int(cls, x: int) -> "LogReal":
        if x == 0:
            return cls.zero()
        # math.log accepts arbitrarily large Python ints.
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log)
        except OverflowError:
            return self.sign * math.inf

    def __mul__(self, other: "LogReal") -> "LogReal":
        if self.sign == 0 or other.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.log + other.log)

    def __truediv__(self, other: "LogReal") -> "LogReal":
        if other.sign == 0:
            raise ZeroDivisionError("LogReal division by zero")
        if self.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.log - other.log)

    def __pow__(self, e) -> "LogReal":
        if self.sign == 0:
            return LogReal.one() if e == 0 else LogReal.zero()
        if self.sign < 0:
            if isinstance(e, int):
                return LogReal(-1 if e % 2 else 1, self.log * e)
            raise ValueError("non-integer power of a negative LogReal")
        return LogReal(1, self.log * e)

    def __neg__(self) -> "LogReal":
        return LogReal(-self.sign, self.log)

    def __abs__(self) -> "LogReal":
        return LogReal(abs(self.sign), self.log)

    def __add__(self, other: "LogReal") -> "LogReal":
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        hi, lo = (self, other) if self.log >= other.log else (other, self)
        d = lo.log - hi.log  # <= 0
        if self.sign == other.sign:
            return LogReal(self.sign, hi.log + math.log1p(math.exp(d)))
        if d == 0.0:
            return LogReal.zero()
        return LogReal(hi.sign, hi.log + math.log1p(-math.exp(d)))

    def __sub__(self, other: "LogReal") -> "LogReal":
        return self + (-other)

    def __lt__(self, other: "LogReal") -> bool:
        if self.sign != other.sign:
            return self.sign < other.sign
        if self.sign == 0:
            return False
        return self.log < other.log if self.sign > 0 else self.log > other.log

    def __le__(self, other: "LogReal") -> bool:
        return self == other or self < other

    def __repr__(self) -> str:
        return f"LogReal(sign={self.sign}, log={self.log!r})"


# ---------------------------------------------------------------------------
# Threshold scalars

def k_gamma(gamma: int, alpha: float) -> float:
    """2 * (1 - alpha * (gamma + 2) / (gamma + 1))."""
    if gamma < 0:
        raise ParameterError("gamma must be nonnegative")
    if not 0 < alpha < 1:
        raise ParameterError("alpha must lie in (0, 1)")
    return 2.0 * (1.0 - alpha * (gamma + 2) / (gamma + 1))


def _k_gamma_frac(gamma: int, alpha: Fraction) -> Fraction:
    return 2 * (1 - alpha * (gamma + 2) / (gamma + 1))


def f(x: float, alpha: float) -> float:
    """x^alpha * ln x, strictly increasing on [1, inf)."""
    if x < 1:
        raise ValueError("f is defined on [1, inf)")
    lx = math.log(x)  # accepts arbitrarily large ints
    try:
        return math.exp(alpha * lx) * lx
    except OverflowError:
        return math.inf


def inverse_f(target: float, alpha: float, rtol: float = 1e-12) -> float:
    """Unique x >= 1 with f(x) = target, by bisection."""
    if target < 0:
        raise ValueError("target must be nonnegative")
    if target == 0:
        return 1.0
    hi = 2.0
    while f(hi, alpha) < target:
        hi *= 2.0
    lo = max(1.0, hi / 2.0)
    with mpmath.workdps(40):
        a, b = mpmath.mpf(lo), mpmath.mpf(hi)
        al = mpmath.mpf(repr(alpha))
        for _ in range(200):
            mid = (a + b) / 2
            if mid**al * mpmath.log(mid) < target:
                a = mid
            else:
                b = mid
            if b - a <= rtol * a:
                break
        return float((a + b) / 2)


# ---------------------------------------------------------------------------
# Exact window comparisons

def _iv_fraction(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _iv_f(x: int, alpha: Fraction):
    xv = iv.mpf(x)
    ln = iv.log(xv)
    return iv.exp(_iv_fraction(alpha) * ln) * ln


def compare_to_window_endpoint(
    s, q: Fraction, x: int, alpha, add: Fraction = Fraction(0)
) -> int:
    """Sign of s - (q * f(x) + add) with s rational, decided rigorously.

    f(1) = 0 makes the endpoint rational and the comparison exact; for
    x >= 2 intervals are escalated until they separate.
    """
    s = _as_fraction(s)
    alpha = _as_fraction(alpha)
    if x < 1:
        raise ValueError("endpoint argument x must be >= 1")
    if x == 1 or q == 0:
        return (s > add) - (s < add)
    saved = iv.prec
    try:
        for prec in _PRECISIONS:
            iv.prec = prec
            endpoint = _iv_fraction(q) * _iv_f(x, alpha) + _iv_fraction(add)
            sv = _iv_fraction(s)
            if sv.b < endpoint.a:
                return -1
            if sv.a > endpoint.b:
                return 1
    finally:
        iv.prec = saved
    raise UndecidableComparisonError(
        f"comparison of {s} against {q}*f({x})+{add} undecided at max precision"
    )


def _iroot(x: int, p: int) -> int:
    """floor(x ** (1/p)) for nonnegative integer x, exact."""
    if x < 0 or p < 1:
        raise ValueError("need x >= 0 and p >= 1")
    if x in (0, 1) or p == 1:
        return x
    guess = 1 << ((x.bit_length() + p - 1) // p)
    while True:
        nxt = ((p - 1) * guess + x // guess ** (p - 1)) // p
        if nxt >= guess:
            break
        guess = nxt
    while guess**p > x:
        guess -= 1
    while (guess + 1) ** p <= x:
        guess += 1
    return guess


# ---------------------------------------------------------------------------
# Expectations

def _lgamma(x) -> float:
    if x < 1e15:
        return math.lgamma(x)
    with mpmath.workdps(40):
        return float(mpmath.loggamma(x))


def _log_binomial(n, s) -> float:
    return _lgamma(n + 1) - _lgamma(s + 1) - _lgamma(n - s + 1)


def _log_factorial(s) -> float:
    return _lgamma(s + 1)


def _xlogy(e, y: float) -> float:
    """e * ln y with the 0 * ln 0 = 0 convention used by p-exponents."""
    if e == 0:
        return 0.0
    if y == 0.0:
        return float("-inf")
    return e * math.log(y)


def expected_W(n: int, p: float, a: int, gamma: int) -> LogReal:
    """First moment of labeled induced W(a) copies (r = 4):

        C(n, s) * s! / 24^((omega(a)-1)/4) * p^E * (1-p)^(C(s,2)-E)

    with s = a + (gamma+1) * omega(a) and E = a + (gamma+2) * omega(a) - 2.
    """
    w = omega(a, 4)
    s = a + (gamma + 1) * w
    if s > n:
        raise ParameterError(f"pattern size s={s} exceeds n={n}")
    div_exp, rem = divmod(w - 1, 4)
    assert rem == 0, "divisor exponent must be integral"
    e_s = a + (gamma + 2) * w - 2
    log = (
        _log_binomial(n, s)
        + _log_factorial(s)
        - div_exp * math.log(24.0)
        + _xlogy(e_s, p)
        + _xlogy(s * (s - 1) // 2 - e_s, 1.0 - p)
    )
    return LogReal.from_log(log)


def _log_domination_factor(n: int, s: int, p: float) -> float:
    """(n - s) * ln(1 - (1-p)^s), stable for small p."""
    if n == s:
        return 0.0
    if p == 0.0 or s == 0:
        return float("-inf")
    if p == 1.0:
        return 0.0
    log_q_pow = s * math.log1p(-p)  # ln (1-p)^s
    return (n - s) * math.log1p(-math.exp(log_q_pow))


def expected_W_dominating(n: int, p: float, a: int, gamma: int) -> LogReal:
    """expected_W scaled by the probability (1 - (1-p)^s)^(n-s) that a
    fixed s-set dominates the rest."""
    base = expected_W(n, p, a, gamma)
    s = a + (gamma + 1) * omega(a, 4)
    return base * LogReal.from_log(_log_domination_factor(n, s, p))


def expected_W_star(n: int, p: float, a: int, gamma: int, r: int) -> LogReal:
    """First moment of labeled induced W*(a) copies:

        C(n, s) * s! / (r!)^((omega(omega(a))-1)/r) * p^E * (1-p)^(C(s,2)-E)
    """
    s = w_star_vertex_count(a, gamma, r)
    if s > n:
        raise ParameterError(f"pattern size s={s} exceeds n={n}")
    ww = omega(omega(a, r), r)
    div_exp, rem = divmod(ww - 1, r)
    if rem:
        raise ParameterError("divisor exponent is not integral")
    e_s = a + 2 * (gamma + 2) * omega(a, r) + (gamma + 2) * ww - 4
    log = (
        _log_binomial(n, s)
        + _log_factorial(s)
        - div_exp * _log_factorial(r)
        + _xlogy(e_s, p)
        + _xlogy(s * (s - 1) // 2 - e_s, 1.0 - p)
    )
    return LogReal.from_log(log)


def domination_probability(n: int, p: float, k: int) -> float:
    """Probability that a fixed k-set dominates G(n, p)."""
    if not 0 <= k <= n:
        raise ParameterError(f"k={k} out of range for n={n}")
    if k == n:
        return 1.0
    return math.exp(_log_domination_factor(n, k, p))


# ---------------------------------------------------------------------------
# Part-1 sequences (r = 4 family)

def s_part1(a: int, gamma: int, r: int = 4) -> int:
    return a + (gamma + 1) * omega(a, r)


@dataclass(frozen=True)
class Part1Constants:
    alpha: Fraction
    gamma: int
    k: Fraction
    c: Fraction
    epsilon: Fraction
    C1: Fraction
    C2: Fraction
    C: Fraction


def part1_constants(
    alpha, gamma: int, C1=None, C2=None, C=None, c=None, epsilon=1
) -> Part1Constants:
    alpha = _as_fraction(alpha)
    if not 0 < alpha < 1:
        raise ParameterError("alpha must lie in (0, 1)")
    k = _k_gamma_frac(gamma, alpha)
    if k <= 0:
        raise ParameterError("k_gamma must be positive (gamma too small for alpha)")
    bound = (1 - alpha) / k
    C1 = bound + Fraction(1, 20) if C1 is None else _as_fraction(C1)
    C2 = Fraction(19, 20) if C2 is None else _as_fraction(C2)
    C = (C1 + C2) / 2 if C is None else _as_fraction(C)
    c = Fraction(4, 5) * bound if c is None else _as_fraction(c)
    epsilon = _as_fraction(epsilon)
    if not bound < C < 1:
        raise ParameterError(f"need (1-alpha)/k < C < 1, got C={C}, bound={bound}")
    if not C1 < C < C2:
        raise ParameterError("need C1 < C < C2")
    if not 0 < c < bound:
        raise ParameterError("need 0 < c < (1-alpha)/k_gamma")
    return Part1Constants(alpha, gamma, k, c, epsilon, C1, C2, C)


def _floor_of_f_preimage(target: Fraction, alpha: Fraction) -> int:
    """Largest integer m with f(m) <= target (target > 0)."""
    est = int(inverse_f(float(target), float(alpha)))
    m = max(1, est - 2)
    while compare_to_window_endpoint(target, Fraction(1), m + 1, alpha) >= 0:
        m += 1
    while m > 1 and compare_to_window_endpoint(target, Fraction(1), m, alpha) < 0:
        m -= 1
    return m


@dataclass(frozen=True)
class Part1Row:
    i: int
    m_i: int
    n_i: int
    constants: Part1Constants
    gap_certificate: bool
    gap_violators: tuple[int, ...]
    existence_certificate: bool
    existence_a: tuple[int, ...]


def _candidate_as(gamma: int, upper: float) -> list[int]:
    if not math.isfinite(upper):
        raise ParameterError("candidate window bound is not finite")
    out = []
    a = 1
    while s_part1(a, gamma) <= upper:
        out.append(a)
        a += 1
    return out


def sequence_part1(
    i: int, alpha, gamma: int, C1=None, C2=None, C=None, c=None, epsilon=1
) -> Part1Row:
    """Witness pair (m_i, n_i) for the part-1 gap/existence windows.

    m_i = floor(y_i) with 3(1-alpha) f(y_i) = 4^i / 3; its certificate
    states that NO integer a has s(a) strictly inside
    (c k f(m_i), k f(m_i) + epsilon).

    n_i = floor(x_i) with f(x_i) = s(i) / (C k); its certificate states
    that SOME integer a has s(a) in [C1 k f(n_i), C2 k f(n_i)].
    """
    if i < 1:
        raise ParameterError("i must be >= 1")
    if gamma <= 9:
        raise ParameterError("part 1 requires gamma > 9")
    consts = part1_constants(alpha, gamma, C1, C2, C, c, epsilon)
    al, k = consts.alpha, consts.k

    m_target = Fraction(4**i, 9) / (1 - al)
    m_i = _floor_of_f_preimage(m_target, al)
    n_target = Fraction(s_part1(i, gamma)) / (consts.C * k)
    n_i = _floor_of_f_preimage(n_target, al)

    # Gap certificate: open window around f(m_i).
    upper_est = float(k) * f(m_i, float(al)) + float(consts.epsilon)
    violators = []
    for a in _candidate_as(gamma, upper_est * 1.01 + 4):
        s = s_part1(a, gamma)
        below = compare_to_window_endpoint(s, consts.c * k, m_i, al) <= 0
        above = (
            compare_to_window_endpoint(s, k, m_i, al, add=consts.epsilon) >= 0
        )
        if not (below or above):
            violators.append(a)

    # Existence certificate: closed window around f(n_i).
    high_est = float(consts.C2 * k) * f(n_i, float(al))
    inside = []
    for a in _candidate_as(gamma, high_est * 1.01 + 4):
        s = s_part1(a, gamma)
        ge_low = compare_to_window_endpoint(s, consts.C1 * k, n_i, al) >= 0
        le_high = compare_to_window_endpoint(s, consts.C2 * k, n_i, al) <= 0
        if ge_low and le_high:
            inside.append(a)

    return Part1Row(
        i=i,
        m_i=m_i,
        n_i=n_i,
        constants=consts,
        gap_certificate=not violators,
        gap_violators=tuple(violators),
        existence_certificate=bool(inside),
        existence_a=tuple(inside),
    )


# ---------------------------------------------------------------------------
# Part-2 sequences

def part2_check_params(alpha: Fraction, beta: Fraction, gamma: int, r: int) -> None:
    if not 0 < alpha < 1:
        raise ParameterError("alpha must lie in (0, 1)")
    if not 0 < beta < min(alpha, Fraction(2, 3) * (1 - alpha)):
        raise ParameterError("need 0 < beta < min(alpha, 2(1-alpha)/3)")
    if _k_gamma_frac(gamma, alpha) <= 0:
        raise ParameterError("k_gamma must be positive")
    if (gamma + 1) * (1 - alpha) <= 3 * alpha:
        raise ParameterError("need gamma + 1 > 3 alpha / (1 - alpha)")
    if r < 2:
        raise ParameterError("r must be >= 2")


@dataclass(frozen=True)
class Part2Certificate:
    a: int
    size_ok: bool       # V(a) <= x^beta
    growth_ok: bool     # V(a+1) > k x^alpha ln x + epsilon

    @property
    def holds(self) -> bool:
        return self.size_ok and self.growth_ok


@dataclass(frozen=True)
class Part2Row:
    i: int
    n_i: int
    m_i: int
    log_n_i: float
    log_m_i: float
    a1: int
    a2: int
    n_certificate: Part2Certificate
    m_certificate: Part2Certificate


def _part2_value(a: int, gamma: int, r: int, beta: Fraction) -> int:
    """2 * floor(B^(1/beta)) with B = (gamma+1) * omega(omega(a))."""
    B = (gamma + 1) * omega(omega(a, r), r)
    return 2 * _iroot(B**beta.denominator, beta.numerator)


def _power_leq(v: int, x: int, beta: Fraction) -> bool:
    """v <= x^beta on exact integers."""
    return v**beta.denominator <= x**beta.numerator


def _growth_exceeds(
    v: int, x: int, k: Fraction, alpha: Fraction, epsilon: Fraction
) -> bool:
    """v > k * x^alpha * ln x + epsilon, decided by escalating intervals."""
    saved = iv.prec
    try:
        for prec in _PRECISIONS:
            iv.prec = prec
            rhs = _iv_fraction(k) * _iv_f(x, alpha) + _iv_fraction(epsilon)
            lhs = iv.mpf(v)
            if lhs.a > rhs.b:
                return True
            if lhs.b < rhs.a:
                return False
    finally:
        iv.prec = saved
    raise UndecidableComparisonError(
        f"{v} vs k*f({x})+eps undecided at max precision"
    )


def sequence_part2(i: int, alpha, beta, gamma: int, r: int, epsilon=1) -> Part2Row:
    """Witness pair (n_i, m_i) for the part-2 floors a1 = 2i (even, for
    n_i) and a2 = 2i + 1 (odd, for m_i), with the log-space certificates

        V(a) <= x^beta   and   V(a+1) > k_gamma x^alpha ln x + epsilon.
    """
    if i < 1:
        raise ParameterError("i must be >= 1")
    alpha, beta, epsilon = _as_fraction(alpha), _as_fraction(beta), _as_fraction(epsilon)
    part2_check_params(alpha, beta, gamma, r)
    k = _k_gamma_frac(gamma, alpha)
    a1, a2 = 2 * i, 2 * i + 1
    n_i = _part2_value(a1, gamma, r, beta)
    m_i = _part2_value(a2, gamma, r, beta)

    def certificate(a: int, x: int) -> Part2Certificate:
        v_now = w_star_vertex_count(a, gamma, r)
        v_next = w_star_vertex_count(a + 1, gamma, r)
        return Part2Certificate(
            a=a,
            size_ok=_power_leq(v_now, x, beta),
            growth_ok=_growth_exceeds(v_next, x, k, alpha, epsilon),
        )

    def log_of(x: int) -> float:
        with mpmath.workdps(30):
            return float(mpmath.log(mpmath.mpf(x)))

    return Part2Row(
        i=i,
        n_i=n_i,
        m_i=m_i,
        log_n_i=log_of(n_i),
        log_m_i=log_of(m_i),
        a1=a1,
        a2=a2,
        n_certificate=certificate(a1, n_i),
        m_certificate=certificate(a2, m_i),
    )


# ---------------------------------------------------------------------------
# Window reports

@dataclass(frozen=True)
class ThresholdReport:
    alpha: float
    gamma: int
    r: int
    k_gamma: float
    f_n: float
    window: str
    window_low: float
    window_high: float
    admissible_a: tuple[int, ...]

    @property
    def empty(self) -> bool:
        return not self.admissible_a

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "gamma": self.gamma,
            "r": self.r,
            "k_gamma": self.k_gamma,
            "f_n": self.f_n,
            "window": self.window,
            "window_low": self.window_low,
            "window_high": self.window_high,
            "admissible_a": list(self.admissible_a),
        }


def window_report(
    n: int,
    alpha,
    gamma: int,
    r: int = 4,
    mode: str = "part1",
    window: str = "existence",
    beta=None,
    C1=None,
    C2=None,
    C=None,
    c=None,
    epsilon=1,
) -> ThresholdReport:
    """Which floors a are admissible at size n.

    part1/existence: closed window [C1 k f(n), C2 k f(n)] on s(a).
    part1/gap: open window (c k f(n), k f(n) + epsilon) on s(a).
    part2: a admissible when V(a) <= n^beta; window_high reports the
    growth threshold k n^alpha ln n + epsilon.
    """
    al = _as_fraction(alpha)
    if mode == "part1":
        consts = part1_constants(al, gamma, C1, C2, C, c, epsilon)
        k = consts.k
        fn = f(n, float(al))
        if window == "existence":
            low_q, high_q, add = consts.C1 * k, consts.C2 * k, Fraction(0)
            closed = True
        elif window == "gap":
            low_q, high_q, add = consts.c * k, k, consts.epsilon
            closed = False
        else:
            raise ValueError(f"unknown window {window!r}")
        admissible = []
        for a in _candidate_as(gamma, float(high_q) * fn + float(add) + 4):
            s = a + (gamma + 1) * omega(a, r)
            lo_cmp = compare_to_window_endpoint(s, low_q, n, al)
            hi_cmp = compare_to_window_endpoint(s, high_q, n, al, add=add)
            inside = (lo_cmp >= 0 and hi_cmp <= 0) if closed else (
                lo_cmp > 0 and hi_cmp < 0
            )
            if inside:
                admissible.append(a)
        return ThresholdReport(
            alpha=float(al), gamma=gamma, r=r, k_gamma=float(k), f_n=fn,
            window=window,
            window_low=float(low_q) * fn,
            window_high=float(high_q) * fn + float(add),
            admissible_a=tuple(admissible),
        )
    if mode != "part2":
        raise ValueError(f"unknown mode {mode!r}")
    if beta is None:
        raise ParameterError("part2 window report requires beta")
    be = _as_fraction(beta)
    part2_check_params(al, be, gamma, r)
    k = _k_gamma_frac(gamma, al)
    admissible = []
    a = 1
    while True:
        v = w_star_vertex_count(a, gamma, r)
        if not _power_leq(v, n, be):
            # V grows doubly exponentially; no larger a can fit.
            break
        admissible.append(a)
        a += 1
    fn = f(n, float(al))
    try:
        low = math.exp(float(be) * math.log(n))
    except OverflowError:
        low = math.inf
    return ThresholdReport(
        alpha=float(al), gamma=gamma, r=r, k_gamma=float(k), f_n=fn,
        window="part2",
        window_low=low,
        window_high=float(k) * fn + float(epsilon) if math.isfinite(fn) else math.inf,
        admissible_a=tuple(admissible),
    )
