"""Certified derivation of the square-count reduction constants.

For an area factor F > 1 the chain of constants is

    c      positive root of 5 c^2 + 3 c = F - 1,
           i.e. sqrt((3/10)^2 + (F - 1)/5) - 3/10
    delta  (F - 1) / (10 F / c^2 + 1/10)          (worst admissible edge)
    N0     max(1, floor(1 / delta^2))             (simple form)
    N0'    1 + floor( integral of delta(V)^-2 dV over [c^2, 1] )
    N1     floor(max(N0, (10 F + 1/10)^2, 100 c^2))
    N      floor(e^2 * N1)

with delta(V) = (F - 1) / (10 F / V + 1/10).

Everything feeding a floor is evaluated in outward-rounded interval
arithmetic (mpmath's ``iv`` context) starting at 50 decimal digits and
doubling up to 200 until the enclosure no longer straddles an integer;
:class:`~moserpack.errors.FloorUncertified` is raised past that point.
The integral form is additionally cross-checked against adaptive
quadrature before flooring, and e^2 comes from the exponential series
with an explicit truncation bound rather than a library constant.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from mpmath import iv, mp, mpf
import mpmath
from scipy.integrate import quad

from .errors import FloorUncertified, MoserpackError, QuadratureDisagreement
from .geometry import Instance

Factor = Union[str, float, int, mpf]

#: Symbolic factor name accepted everywhere a factor is: (2 + sqrt(3))/3.
NOVOTNY = "novotny"

_ROOT_TOL = 1e-12


@contextmanager
def _workdps(dps: int):
    old_mp, old_iv = mp.dps, iv.dps
    mp.dps = dps
    iv.dps = dps
    try:
        yield
    finally:
        mp.dps = old_mp
        iv.dps = old_iv


def resolve_factor(F: Factor) -> mpf:
    """Evaluate a factor spec at the current working precision.

    Accepts the symbolic name ``"novotny"`` for (2 + sqrt(3))/3, a decimal
    string, or a number.  The factor must exceed 1.
    """
    if isinstance(F, str):
        if F.strip().lower() == NOVOTNY:
            val = (2 + mp.sqrt(3)) / 3
        else:
            val = mp.mpf(F)
    else:
        val = mp.mpf(F)
    if not val > 1:
        raise ValueError(f"area factor must exceed 1, got {F!r}")
    return val


def factor_float(F: Factor) -> float:
    """Float64 value of a factor spec (accepts ``"novotny"``)."""
    with _workdps(50):
        return float(resolve_factor(F))


def _factor_interval(F: Factor):
    """Interval enclosure of a factor spec in the current ``iv`` context."""
    if isinstance(F, str):
        if F.strip().lower() == NOVOTNY:
            val = (2 + iv.sqrt(3)) / 3
        else:
            val = iv.mpf(F)
    else:
        val = iv.mpf(F)
    if not mp.mpf(val.b) > 1:
        raise ValueError(f"area factor must exceed 1, got {F!r}")
    return val


def _c_of(F):
    """c from F; works for both mpf and interval operands."""
    ctx = iv if isinstance(F, iv.mpf) else mp
    three_tenths = ctx.mpf(3) / 10
    return ctx.sqrt(three_tenths ** 2 + (F - 1) / 5) - three_tenths


def compute_c(F: Factor, dps: int = 50) -> mpf:
    """The constant c: positive root of 5 c^2 + 3 c = F - 1."""
    with _workdps(dps):
        return _c_of(resolve_factor(F))


def delta_simple(F: Factor, dps: int = 50) -> mpf:
    """Edge bound delta = (F - 1) / (10 F / c^2 + 1/10)."""
    with _workdps(dps):
        Fv = resolve_factor(F)
        c = _c_of(Fv)
        return (Fv - 1) / (10 * Fv / (c * c) + mp.mpf(1) / 10)


def delta_of_V(F: Factor, V: float, dps: int = 50) -> mpf:
    """Per-area edge bound delta(V) = (F - 1) / (10 F / V + 1/10).

    The tail area V must lie in [c^2, 1].
    """
    with _workdps(dps):
        Fv = resolve_factor(F)
        c = _c_of(Fv)
        Vv = mp.mpf(V)
        if Vv < c * c - _ROOT_TOL or Vv > 1 + _ROOT_TOL:
            raise ValueError(f"V={V} outside [c^2, 1] = [{float(c * c)}, 1]")
        return (Fv - 1) / (10 * Fv / Vv + mp.mpf(1) / 10)


# --- certified floors -------------------------------------------------------


def _certified_floor(make: Callable[[], object], what: str,
                     start_dps: int = 50, max_dps: int = 200) -> int:
    """Floor of an interval-valued computation, certified unambiguous.

    ``make`` is re-run with mp/iv precision doubling from ``start_dps`` to
    ``max_dps`` until the enclosure [lo, hi] satisfies
    floor(lo) == floor(hi), i.e. it cannot straddle an integer.
    """
    dps = start_dps
    while True:
        with _workdps(dps):
            val = make()
            lo, hi = mp.mpf(val.a), mp.mpf(val.b)
            f_lo, f_hi = mp.floor(lo), mp.floor(hi)
            if f_lo == f_hi:
                return int(f_lo)
        if dps >= max_dps:
            raise FloorUncertified(
                f"{what}: enclosure [{lo}, {hi}] straddles an integer at {dps} digits"
            )
        dps = min(2 * dps, max_dps)


def _e2_interval():
    """Enclosure of e^2 from the exponential series with truncation bound."""
    total = iv.mpf(1)
    term = iv.mpf(1)
    k = 0
    tiny = mpf(10) ** (-(mp.dps + 10))
    while True:
        k += 1
        term = term * 2 / k
        total += term
        # remainder after term k:  sum_{j>k} 2^j/j!  <  t_k * (2/(k+1)) / (1 - 2/(k+2))
        if k > 4:
            rem = mp.mpf(term.b) * (mpf(2) / (k + 1)) / (1 - mpf(2) / (k + 2))
            if rem < tiny:
                return total + iv.mpf([0, rem])


def n0_simple(F: Factor) -> int:
    """max(1, floor(1/delta^2)) with the floor interval-certified."""

    def make():
        Fi = _factor_interval(F)
        c = _c_of(Fi)
        d = (Fi - 1) / (10 * Fi / (c * c) + iv.mpf(1) / 10)
        return 1 / (d * d)

    return max(1, _certified_floor(make, "n0_simple"))


def n0_integral(F: Factor, quad_rel_tol: float = 1e-6) -> int:
    """1 + floor of the integral of delta(V)^-2 over [c^2, 1].

    The integrand expands to ((10F/V)^2 + 2F/V + 1/100) / (F-1)^2, whose
    antiderivative is (-100 F^2 / V + 2 F log V + V/100) / (F-1)^2.  The
    closed form (interval arithmetic) and adaptive quadrature (float) must
    agree to ``quad_rel_tol`` relative before the floor is taken.
    """

    def make():
        Fi = _factor_interval(F)
        a = _c_of(Fi) ** 2
        return (100 * Fi ** 2 * (1 / a - 1) + 2 * Fi * iv.log(1 / a) + (1 - a) / 100) / (Fi - 1) ** 2

    with _workdps(50):
        closed = make()
        mid = float((mp.mpf(closed.a) + mp.mpf(closed.b)) / 2)
        Ff = float(resolve_factor(F))
        cf = float(_c_of(resolve_factor(F)))
    q, _err = quad(
        lambda V: (10 * Ff / V + 0.1) ** 2 / (Ff - 1) ** 2,
        cf * cf,
        1.0,
        limit=200,
    )
    if abs(q - mid) > quad_rel_tol * abs(mid):
        raise QuadratureDisagreement(
            f"closed form {mid} vs quadrature {q} beyond {quad_rel_tol} relative"
        )
    return 1 + _certified_floor(make, "n0_integral")


def harmonic_range_sum(lo: int, hi: int) -> float:
    """Direct summation of 1/i for i in [lo, hi], compensated across chunks."""
    if hi < lo:
        return 0.0
    parts = []
    chunk = 8_000_000
    i = lo
    while i <= hi:
        j = min(i + chunk - 1, hi)
        parts.append(float(np.reciprocal(np.arange(i, j + 1, dtype=np.float64)).sum()))
        i = j + 1
    return math.fsum(parts)


def harmonic_bounds(n: int) -> tuple[float, float, float]:
    """(ln(n+1), H_n, ln(n) + 1): the harmonic number with its log bounds."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return (math.log(n + 1), harmonic_range_sum(1, n), math.log(n) + 1.0)


def derive_N(F: Factor, N0: int, *, check_harmonic: bool = True) -> tuple[int, int]:
    """(N1, N) from N0: the two outer floors, interval-certified.

    N1 = floor(max(N0, (10F + 1/10)^2, 100 c^2)) and N = floor(e^2 N1).
    With ``check_harmonic`` the guarantee sum_{i=N1+1}^{N} 1/i >= 1 is
    asserted by direct summation (it ensures an index with edge below
    c/sqrt(n) exists in (N1, N] whenever the tail area is below c^2).
    """
    if N0 < 1:
        raise ValueError(f"N0 must be >= 1, got {N0}")

    def make_n1():
        Fi = _factor_interval(F)
        c = _c_of(Fi)
        cands = [iv.mpf(N0), (10 * Fi + iv.mpf(1) / 10) ** 2, 100 * c * c]
        lo = max(mp.mpf(x.a) for x in cands)
        hi = max(mp.mpf(x.b) for x in cands)
        return iv.mpf([lo, hi])

    N1 = _certified_floor(make_n1, "N1")

    def make_n():
        return _e2_interval() * N1

    N = _certified_floor(make_n, "N")

    if check_harmonic:
        s = harmonic_range_sum(N1 + 1, N)
        if s < 1.0:
            raise MoserpackError(
                f"harmonic certificate failed: sum over ({N1}, {N}] = {s} < 1"
            )
    return N1, N


def find_small_index(inst: Instance, c: float, N1: int, N: int) -> Optional[int]:
    """Smallest n in (N1, N] with s_n < c / sqrt(n), treating missing sides as 0.

    Returns None when no such index exists (possible only if the instance
    carries at least N positive-or-zero sides all at or above the bound).
    """
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if not 0 <= N1 < N:
        raise ValueError(f"need 0 <= N1 < N, got N1={N1}, N={N}")
    sides = inst.sides
    m = len(sides)
    hi = min(N, m)
    if N1 + 1 <= hi:
        idx = np.arange(N1 + 1, hi + 1, dtype=np.float64)
        vals = np.asarray(sides[N1:hi], dtype=np.float64)
        hits = np.nonzero(vals < c / np.sqrt(idx))[0]
        if hits.size:
            return N1 + 1 + int(hits[0])
    if m < N:
        return max(N1 + 1, m + 1)
    return None


# --- refined edge bound over the compact K ----------------------------------


@dataclass(frozen=True)
class KSample:
    """A point of the feasibility set K with its threshold value f(V, H)."""

    V: float
    H: float
    fval: float


def _f_refined(F, V, H):
    """Smaller root of x^2 + (H - x)(F V / H - x) = V; context-generic."""
    ctx = iv if isinstance(V, iv.mpf) else mp
    q = (H + F * V / H) / 4
    disc = q * q - (F - 1) * V / 2
    return q - ctx.sqrt(disc)


def _k_membership_float(F: float, V: np.ndarray, H: np.ndarray):
    q = (H + F * V / H) / 4.0
    disc = q * q - (F - 1.0) * V / 2.0
    ok = (V >= 0) & (H >= np.sqrt(F * V)) & (H <= 10 * F) & (disc >= 0)
    return ok, q, disc


def k_sample_grid(F: float, count: int, c2: float) -> list[KSample]:
    """Deterministic grid of K members, roughly ``count`` samples."""
    side = max(2, int(math.isqrt(count)))
    V = np.linspace(c2, 1.0, side)
    H = np.linspace(math.sqrt(F * c2), 10 * F, side)
    VV, HH = np.meshgrid(V, H, indexing="ij")
    ok, q, disc = _k_membership_float(F, VV, HH)
    f = np.where(ok, q - np.sqrt(np.maximum(disc, 0.0)), np.inf)
    out = []
    for i, j in zip(*np.nonzero(ok)):
        out.append(KSample(float(VV[i, j]), float(HH[i, j]), float(f[i, j])))
    return out


def delta_refined(F: Factor, dps: int = 50, grid_n: int = 512,
                  verify_samples: int = 10_000) -> mpf:
    """min(delta_1, c^2 / 10) where delta_1 minimizes f over K.

    K is the compact set c^2 <= V <= 1, sqrt(F V) <= H <= 10 F with
    non-negative discriminant, and f(V, H) is the smaller root of
    x^2 + (H - x)(F V / H - x) = V.  The minimizing cell is located on a
    ``grid_n`` x ``grid_n`` float grid, sharpened by coordinate descent in
    extended precision, rounded down, and finally re-checked as a valid
    threshold on a ``verify_samples`` grid over K.
    """
    with _workdps(dps):
        Fv = resolve_factor(F)
        Ff = float(Fv)
        cf = float(_c_of(Fv))
        c2f = cf * cf

        V = np.linspace(c2f, 1.0, grid_n)
        H = np.linspace(math.sqrt(Ff * c2f), 10 * Ff, grid_n)
        VV, HH = np.meshgrid(V, H, indexing="ij")
        ok, q, disc = _k_membership_float(Ff, VV, HH)
        if not ok.any():
            delta1 = mp.mpf(1)
        else:
            f = np.where(ok, q - np.sqrt(np.maximum(disc, 0.0)), np.inf)
            i, j = np.unravel_index(int(np.argmin(f)), f.shape)
            v_cur, h_cur = mp.mpf(float(VV[i, j])), mp.mpf(float(HH[i, j]))
            dv = mp.mpf(float(V[1] - V[0])) if grid_n > 1 else mp.mpf(1)
            dh = mp.mpf(float(H[1] - H[0])) if grid_n > 1 else mp.mpf(1)
            c2 = _c_of(Fv) ** 2

            def eval_f(v, h):
                if v < c2 or v > 1 or h < mp.sqrt(Fv * v) or h > 10 * Fv:
                    return mp.inf
                qq = (h + Fv * v / h) / 4
                dd = qq * qq - (Fv - 1) * v / 2
                if dd < 0:
                    return mp.inf
                return qq - mp.sqrt(dd)

            def line_min(fixed, lo, hi, along_v):
                a, b = lo, hi
                for _ in range(200):
                    m1 = a + (b - a) / 3
                    m2 = b - (b - a) / 3
                    f1 = eval_f(m1, fixed) if along_v else eval_f(fixed, m1)
                    f2 = eval_f(m2, fixed) if along_v else eval_f(fixed, m2)
                    if f1 <= f2:
                        b = m2
                    else:
                        a = m1
                return (a + b) / 2

            for _ in range(6):
                v_cur = line_min(h_cur, max(c2, v_cur - dv), min(mp.mpf(1), v_cur + dv), True)
                h_cur = line_min(v_cur, max(mp.sqrt(Fv * v_cur), h_cur - dh), min(10 * Fv, h_cur + dh), False)
            delta1 = eval_f(v_cur, h_cur)
            # round down so the reported threshold stays on the safe side
            delta1 = delta1 * (1 - mpf(10) ** (-(dps - 20)))

        result = min(delta1, _c_of(Fv) ** 2 / 10)

        # re-check the threshold on a verification grid over K
        x = float(result)
        for smp in k_sample_grid(Ff, verify_samples, c2f):
            w = Ff * smp.V / smp.H
            g = x * x + (smp.H - x) * (w - x) - smp.V
            if g < -1e-12:
                raise MoserpackError(
                    f"refined threshold {x} fails at V={smp.V}, H={smp.H}: {g}"
                )
        return result


# --- two-square lower bound --------------------------------------------------


def two_square_worst_case() -> tuple[float, float]:
    """Worst pair of squares with total area 1 for a snug rectangle.

    For s1 in (1/sqrt(2), 1) the two squares s1 >= s2 = sqrt(1 - s1^2)
    must stand side by side, needing area s1 (s1 + s2).  Ternary search
    returns (argmax, max); the max is (1 + sqrt(2))/2 at s1 = cos(pi/8).
    """
    a, b = 1 / math.sqrt(2), 1.0

    def g(s: float) -> float:
        return s * (s + math.sqrt(max(0.0, 1.0 - s * s)))

    for _ in range(200):
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        if g(m1) <= g(m2):
            a = m1
        else:
            b = m2
    s = (a + b) / 2
    return s, g(s)


# --- report ------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantsReport:
    """All constants for one factor, decimal strings plus exact integers."""

    F: str
    c: str
    delta_simple: str
    delta_refined: Optional[str]
    N0_simple: int
    N0_integral: int
    N1: int
    N: int
    use_integral_n0: bool
    floor_certificates: dict


def build_report(F: Factor, *, refined: bool = False, use_integral_n0: bool = False,
                 check_harmonic: bool = True, dps: int = 50) -> ConstantsReport:
    """Run the full pipeline for one factor and package the results.

    ``use_integral_n0`` selects which N0 feeds the N1/N chain; both N0
    forms are always computed and reported.  Root and sanity identities
    are re-checked before the report is returned.
    """
    with _workdps(dps):
        Fv = resolve_factor(F)
        c = _c_of(Fv)
        if not (0 < c < 1):
            raise MoserpackError(f"c = {c} outside (0, 1)")
        if not 4 * c * c <= Fv:
            raise MoserpackError(f"4 c^2 = {4 * c * c} exceeds F = {Fv}")
        root_resid = abs(5 * c * c + 3 * c - (Fv - 1))
        if root_resid > _ROOT_TOL:
            raise MoserpackError(f"root identity residual {root_resid}")
        d_simple = (Fv - 1) / (10 * Fv / (c * c) + mp.mpf(1) / 10)
        f_str = mp.nstr(Fv, 30)
        c_str = mp.nstr(c, 30)
        d_str = mp.nstr(d_simple, 30)

    d_ref_str = mp.nstr(delta_refined(F, dps=dps), 30) if refined else None
    n0s = n0_simple(F)
    n0i = n0_integral(F)
    if n0i > n0s:
        raise MoserpackError(f"integral N0 {n0i} exceeds simple N0 {n0s}")
    chosen = n0i if use_integral_n0 else n0s
    N1, N = derive_N(F, chosen, check_harmonic=check_harmonic)
    certs = {"N0_simple": True, "N0_integral": True, "N1": True, "N": True}
    return ConstantsReport(
        F=f_str, c=c_str, delta_simple=d_str, delta_refined=d_ref_str,
        N0_simple=n0s, N0_integral=n0i, N1=N1, N=N,
        use_integral_n0=use_integral_n0, floor_certificates=certs,
    )


def report_to_dict(report: ConstantsReport) -> dict:
    return {
        "F": report.F,
        "c": report.c,
        "delta_simple": report.delta_simple,
        "delta_refined": report.delta_refined,
        "N0_simple": report.N0_simple,
        "N0_integral": report.N0_integral,
        "N1": report.N1,
        "N": report.N,
        "use_integral_n0": report.use_integral_n0,
        "floor_certificates": dict(report.floor_certificates),
    }
