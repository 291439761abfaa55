"""Identity registry, seeded parameter sampling, suite runner and reports.

A case names an evaluator from :data:`EVALUATORS` plus a tuple of parameter
strings, so cases pickle cleanly for the process pool and print
reproducibly.  Every case runs under its own fresh
:class:`~eulerlab.numerics.PrecisionContext`.

A case passes when its residual and its declared error bound both stay
within its tolerance: 10^-(digits-5) by default, or the per-case value
given for reduced-precision paths.
"""

from __future__ import annotations

import json
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import CapExceeded, EulerLabError, PrecisionLossError
from .numerics import PrecisionContext, SeriesValue, closed, parse_complex
from . import conjecture as conj
from . import mzv as Z
from . import parametric as P
from . import reduction as R

__all__ = [
    "SplitMix64",
    "IdentityCase",
    "Outcome",
    "CaseResult",
    "VerificationReport",
    "EVALUATORS",
    "SUITES",
    "build_suite",
    "evaluate_case",
    "run_suite",
    "run_cases",
    "render_report",
    "honesty_check",
    "sample_points",
]

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea and Flood); identical output on every platform."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * (self.next_u64() >> 11) / float(1 << 53)


def _stream(seed: int, family: str) -> SplitMix64:
    return SplitMix64(seed ^ (zlib.crc32(family.encode()) << 16))


# -- pole sets used to reject samples -------------------------------------------

def _near_positive_integer(z: complex, tol=1e-3) -> bool:
    k = max(1, round(z.real))
    return abs(z - k) < tol


def _near_nonzero_integer(z: complex, tol=1e-3) -> bool:
    k = round(z.real)
    if k == 0:
        k = 1 if z.real >= 0 else -1
    return abs(z - k) < tol


def _reject_eu(x):
    return _near_positive_integer(x[0])


def _reject_gf2(p):
    x, y = p
    return (_near_positive_integer(x * x) or _near_positive_integer(y * y)
            or _near_nonzero_integer(x + y) or _near_nonzero_integer(x - y)
            or abs(x) < 1e-3 or abs(y) < 1e-3)


def _reject_thm2(p):
    x, y = p
    return (_near_positive_integer(-x * x) or _near_positive_integer(-y * y)
            or _near_nonzero_integer(1j * (x + y)) or _near_nonzero_integer(1j * (x - y)))


def _fmt(z: complex, real: bool) -> str:
    if real:
        return f"{z.real:.6f}"
    return f"{z.real:.6f}{z.imag:+.6f}i"


SAMPLERS = {
    # family: (dimension, real-part range, imag-part range, reject)
    "eu-dual": (1, (-2.5, 3.5), (-1.5, 1.5), _reject_eu),
    "z-gen": (1, (-2.0, 3.0), (-1.0, 1.0), _reject_eu),
    "s-suite": (1, (-1.5, 2.5), (-1.0, 1.0), _reject_eu),
    "sumg": (1, (-1.5, 2.5), (-0.8, 0.8), _reject_eu),
    "log": (1, (-2.0, 0.95), (-1.0, 1.0), _reject_eu),
    "gf2": (2, (-1.4, 1.4), (-0.5, 0.5), _reject_gf2),
    "thm2": (2, (-1.0, 1.0), (-0.45, 0.45), _reject_thm2),
    "gf2-3": (1, (0.0, 2.0), (0.0, 0.0), lambda p: p[0].real == 0.0),
}


def sample_points(family: str, count: int, seed: int, *, real: bool = False) -> list:
    """``count`` parameter tuples (as strings) for a family, rejecting near-pole draws."""
    dim, (rlo, rhi), (ilo, ihi), reject = SAMPLERS[family]
    rng = _stream(seed, family + (":real" if real else ""))
    out = []
    while len(out) < count:
        pt = []
        for _ in range(dim):
            re_ = rng.uniform(rlo, rhi)
            im_ = 0.0 if real or ihi == ilo else rng.uniform(ilo, ihi)
            pt.append(complex(round(re_, 6), round(im_, 6)))
        if family == "gf2-3":
            pt = [complex(rhi - (pt[0].real - rlo), 0.0)]  # draw from (0, 2]
        if reject(pt):
            continue
        out.append(tuple(_fmt(z, real or ihi == ilo) for z in pt))
    return out


# -- outcomes and cases ------------------------------------------------------------

@dataclass(frozen=True)
class Outcome:
    lhs: object
    rhs: object
    lhs_bound: object
    rhs_bound: object
    method: str = "closed_form"
    residual: object = None

    def resid(self):
        return abs(self.lhs - self.rhs) if self.residual is None else self.residual


def _pair(p) -> Outcome:
    return _sv(p.lhs, p.rhs)


def _sv(a: SeriesValue, b: SeriesValue) -> Outcome:
    method = max(a.method, b.method, key=("closed_form", "euler_maclaurin", "alternating_accel", "direct").index)
    return Outcome(a.value, b.value, a.error_bound, b.error_bound, method)


@dataclass(frozen=True)
class IdentityCase:
    id: str
    evaluator: str
    params: tuple = ()
    tolerance: Optional[str] = None  # None: 10^-(digits-5)

    def sort_key(self):
        return (self.id, self.params)


@dataclass(frozen=True)
class CaseResult:
    case: IdentityCase
    lhs: str = ""
    rhs: str = ""
    residual: str = ""
    bound: str = ""
    tolerance: str = ""
    method: str = ""
    passed: bool = False
    error: Optional[str] = None
    precision_error: bool = False

    def as_dict(self):
        return {
            "id": self.case.id,
            "params": list(self.case.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "bound": self.bound,
            "tolerance": self.tolerance,
            "method": self.method,
            "pass": self.passed,
            "error": self.error,
        }


@dataclass
class VerificationReport:
    suite: str
    digits: int
    seed: int
    results: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def summary(self):
        n_err = sum(1 for r in self.results if r.error is not None)
        n_pass = sum(1 for r in self.results if r.passed)
        return {"pass": n_pass, "fail": len(self.results) - n_pass - n_err, "error": n_err}

    @property
    def exit_code(self) -> int:
        if any(r.precision_error for r in self.results):
            return 3
        return 0 if all(r.passed for r in self.results) else 1


# -- evaluators ----------------------------------------------------------------------

def _c(ctx, v):
    return closed(v, ctx)


def _ev_gf2_parity(p, ctx):
    """gf2 is even in x and odd in y; both members are checked against the flipped point."""
    x, y = parse_complex(p[0], ctx), parse_complex(p[1], ctx)
    base = P.gf2_sides(x, y, ctx)
    if p[2] == "x":
        other, sgn = P.gf2_sides(-x, y, ctx), 1
    else:
        other, sgn = P.gf2_sides(x, -y, ctx), -1
    resid = max(abs(other.lhs.value - sgn * base.lhs.value), abs(other.rhs.value - sgn * base.rhs.value))
    return Outcome(other.lhs.value, sgn * base.lhs.value, other.bound, base.bound, "euler_maclaurin", resid)


def _ev_sigma(p, ctx):
    rec = P.sigma_closed(p[0], p[1], ctx, limit=True)
    k = int(p[2]) - 1
    a, b = rec.closed_forms[k], rec.series_terms[k]
    return _sv(a, b)


def _ev_half_half(p, ctx):
    mp = ctx.mp
    pair = P.gf2_sides("1/2", "1/2", ctx, limit=True)
    side = pair.lhs if p[0] == "series" else pair.rhs
    return _sv(side * (mp.one / 8), _c(ctx, mp.pi ** 2 / 64 - mp.one / 16))


def _ev_tangent(p, ctx):
    ts = P.tangent_sums(ctx)
    if p[0] == "1":
        return _pair(ts.pair1)
    if p[0] == "2":
        return _pair(ts.pair2)
    d = ts.double_sums
    if p[0] == "double-re":
        return Outcome(ctx.mp.re(d.value), ts.pair1.lhs.value, d.error_bound, ts.pair1.lhs.error_bound,
                       "euler_maclaurin")
    return Outcome(ctx.mp.im(d.value), ts.pair2.lhs.value, d.error_bound, ts.pair2.lhs.error_bound,
                   "euler_maclaurin")


def _ev_arctan(p, ctx):
    a = P.arctan_triple(ctx)
    if p[0] == "v2-v3":
        return _sv(a.arctan_sum, a.zeta_series)
    return _sv(a.double_sum, a.arctan_sum)


def _ev_deriv(p, ctx):
    k = int(p[0])
    c = P.eu_dual_coefficients(ctx, [k])[0]
    return _sv(c.lhs, c.rhs)


def _ev_deriv_z4(p, ctx):
    mp = ctx.mp
    c = P.eu_dual_coefficients(ctx, [1])[0]
    if p[0] == "z31+z22":
        ref = Z.mzv_eval(Z.MZVIndex.of(3, 1), ctx) + Z.mzv_eval(Z.MZVIndex.of(2, 2), ctx)
        return _sv(c.lhs, ref)
    return _sv(c.rhs, _c(ctx, mp.zeta(4)))


_MZV_REFERENCES = {
    "2,1": lambda mp: mp.zeta(3),
    "3,1": lambda mp: mp.pi ** 4 / 360,
    "2~,1": lambda mp: mp.zeta(3) / 8,
    "2,2": lambda mp: (mp.zeta(2) ** 2 - mp.zeta(4)) / 2,
    "2,1,1": lambda mp: mp.zeta(4),
    "3,3": lambda mp: (mp.zeta(3) ** 2 - mp.zeta(6)) / 2,
}


def _ev_mzv_value(p, ctx):
    return _sv(Z.mzv_eval(p[0], ctx), _c(ctx, _MZV_REFERENCES[p[0]](ctx.mp)))


def _ev_refl(p, ctx):
    s, t = int(p[0]), int(p[1])
    mp = ctx.mp
    lhs = Z.mzv_eval(Z.MZVIndex.of(s, t), ctx) + Z.mzv_eval(Z.MZVIndex.of(t, s), ctx) + _c(ctx, mp.zeta(s + t))
    return _sv(lhs, _c(ctx, mp.zeta(s) * mp.zeta(t)))


def _ev_sum_formula(p, ctx):
    r, s = int(p[0]), int(p[1])
    total = None
    for idx in R.sum_formula_compositions(r, s):
        v = Z.mzv_eval(idx, ctx)
        total = v if total is None else total + v
    return _sv(total, _c(ctx, ctx.mp.zeta(r + s + 1)))


def _ev_block(p, ctx):
    kind, n = p[0], int(p[1])
    if kind == "two_block":
        idx = Z.MZVIndex.of(*([2] * n))
    else:
        idx = Z.MZVIndex.of(*([3, 1] * n))
    return _sv(Z.mzv_eval(idx, ctx), Z.block_closed_form(kind, n, ctx))


def _ev_zagier(p, ctx):
    rec = Z.zagier_gf_sides(p[0], ctx)
    a, b = {"series-closed": (rec.series, rec.closed_form),
            "closed-2f1": (rec.closed_form, rec.hypergeometric),
            "series-2f1": (rec.series, rec.hypergeometric)}[p[1]]
    return _sv(a, b)


def _ev_cube_x6(p, ctx):
    mp = ctx.mp
    expected = mp.zeta(3) ** 2 / 2 - mp.mpf(8) / 21 * mp.pi ** 6 / mp.factorial(6)
    if p[0] == "newton":
        v = Z.cube_gamma_coefficients(2, ctx)[2]
    else:
        v = Z.cube_gamma_taylor(6, ctx)[6]
    return _sv(_c(ctx, v), _c(ctx, expected))


def _ev_open(p, ctx):
    return _pair(Z.open_conj_sides(int(p[0]), ctx))


def _ev_depth4(p, ctx):
    rec = Z.depth4_check(ctx)
    a = {"plain": rec.plain, "alt": rec.alternating64}[p[0]]
    return _sv(a, rec.zeta33)


def _ev_reduce_consistency(p, ctx):
    a, b = int(p[0]), int(p[1])
    same = R.reflect(a, b, formal=True) == R.reduce_even_odd(a, b) + R.reduce_swap(b, a)
    return Outcome(0 if same else 1, 0, 0, 0, "closed_form")


def _ev_reduce_numeric(p, ctx):
    kind, a, b = p[0], int(p[1]), int(p[2])
    if kind == "even-odd":
        return _sv(R.expr_eval(R.reduce_even_odd(a, b), ctx), Z.mzv_eval(Z.MZVIndex.of(a, b), ctx))
    if kind == "swap":
        return _sv(R.expr_eval(R.reduce_swap(a, b), ctx), Z.mzv_eval(Z.MZVIndex.of(a, b), ctx))
    return _sv(R.expr_eval(R.reduce_s1(a), ctx), Z.mzv_eval(Z.MZVIndex.of(a, 1), ctx))


def _ev_conj_recurrence(p, ctx):
    bad = sum(1 for n in range(1, int(p[0]) + 1) if not conj.recurrence_residual(n).is_zero())
    return Outcome(bad, 0, 0, 0, "closed_form")


def _ev_conj_hand(p, ctx):
    from fractions import Fraction
    n = int(p[0])
    hand = {1: (0, 1), 2: (0, 1), 3: (0, 1, Fraction(1, 4)), 4: (0, 1, Fraction(1, 12))}[n]
    ok = conj.a_poly(n) == conj.CubicPoly(hand)
    return Outcome(0 if ok else 1, 0, 0, 0, "closed_form")


def _ev_conj_decay(p, ctx):
    mp = ctx.mp
    t = p[0]
    ns = [10, 100, 1000]
    lim = conj.product_limit(t, ctx)
    gaps = [abs(conj.a_eval(n, t, ctx) - lim.value) for n in ns]
    ratios = [gaps[i + 1] / gaps[i] for i in range(len(ns) - 1)]
    worst = max(ratios)
    e = lim.error_bound + mp.mpf(10) ** (-(ctx.working_dps - 3)) * ns[-1]
    bound = worst * sum(e / g for g in gaps)
    return Outcome(worst, mp.zero, bound, mp.zero, "direct", residual=worst)


def _ev_conj_gamma(p, ctx):
    mp = ctx.mp
    t = parse_complex(p[0], ctx)
    x = t / 2
    g = mp.rgamma(1 + x) * mp.rgamma(1 + x * mp.expjpi(mp.mpf(2) / 3)) * mp.rgamma(1 + x * mp.expjpi(mp.mpf(4) / 3))
    if mp.im(t) == 0:
        g = mp.re(g)
    return _sv(conj.product_limit(t, ctx), _c(ctx, t ** 3 * g))


EVALUATORS: dict = {
    "eu-dual": lambda p, c: _pair(P.eu_dual_sides(p[0], c)),
    "eu-dual-zeta3": lambda p, c: _sv(P.eu_dual_sides(0, c).lhs, _c(c, c.mp.zeta(3))),
    "z-gen": lambda p, c: _pair(P.z_gen(p[0], c)),
    "zetas1": lambda p, c: _pair(P.zetas1_gf_sides(p[0], c)),
    "s-suite": lambda p, c: _sv(P.s_suite(p[0], c).combination, _c(c, c.mp.zero)),
    "sumg": lambda p, c: _pair(P.sum_formula_sides(int(p[0]), p[1], c)),
    "log": lambda p, c: _pair(P.log_identity_sides(p[0], c)),
    "tangent": _ev_tangent,
    "arctan": _ev_arctan,
    "half-half": _ev_half_half,
    "gf2": lambda p, c: _pair(P.gf2_sides(p[0], p[1], c)),
    "gf2-parity": _ev_gf2_parity,
    "sigma": _ev_sigma,
    "thm2": lambda p, c: _pair(P.thm2_sides(p[0], p[1], c)),
    "gf2-3": lambda p, c: _pair(P.gf2_3_sides(p[0], c)),
    "fixed-b": lambda p, c: _pair(P.fixed_b_gf_sides(p[1], int(p[0]), c)),
    "cot": lambda p, c: _pair(P.cot_expansion_sides(p[0], c)),
    "deriv-coef": _ev_deriv,
    "deriv-z4": _ev_deriv_z4,
    "mzv-value": _ev_mzv_value,
    "refl": _ev_refl,
    "sum-formula": _ev_sum_formula,
    "block": _ev_block,
    "zagier": _ev_zagier,
    "sin-product": lambda p, c: _pair(Z.sin_product_sides(p[0], c)),
    "cube-gamma": lambda p, c: _pair(Z.cube_gamma_sides(p[0], c)),
    "cube-gamma-x6": _ev_cube_x6,
    "open": _ev_open,
    "depth4": _ev_depth4,
    "reduce-consistency": _ev_reduce_consistency,
    "reduce-numeric": _ev_reduce_numeric,
    "conj-recurrence": _ev_conj_recurrence,
    "conj-hand": _ev_conj_hand,
    "conj-decay": _ev_conj_decay,
    "conj-gamma": _ev_conj_gamma,
}


# -- suites ----------------------------------------------------------------------------

def _core(seed):
    cases = [IdentityCase("eu-dual", "eu-dual", p) for p in sample_points("eu-dual", 5, seed)]
    cases.append(IdentityCase("eu-dual", "eu-dual", ("0",)))
    cases.append(IdentityCase("eu-dual-zeta3", "eu-dual-zeta3"))
    cases += [IdentityCase("z-gen", "z-gen", p) for p in sample_points("z-gen", 3, seed)]
    cases += [IdentityCase("s-suite", "s-suite", p) for p in sample_points("s-suite", 3, seed)]
    cases += [IdentityCase("tangent", "tangent", (k,)) for k in ("1", "2", "double-re", "double-im")]
    cases.append(IdentityCase("arctan", "arctan", ("v2-v3",)))
    cases.append(IdentityCase("arctan", "arctan", ("v1-v2",), "1e-8"))
    cases += [IdentityCase("half-half", "half-half", (k,)) for k in ("series", "limit")]
    cases += [IdentityCase("refl", "refl", (str(s), str(t))) for s in range(2, 5) for t in range(s, 5)]
    cases += [IdentityCase("reduce-numeric", "reduce-numeric", ("even-odd", str(a), str(b)))
              for a in (2, 4, 6) for b in (1, 3, 5) if a + b <= 7]
    return cases


def _parametric(seed):
    cases = [IdentityCase("gf2", "gf2", p) for p in sample_points("gf2", 4, seed)]
    for p in sample_points("gf2", 2, seed + 1):
        cases += [IdentityCase("gf2-parity", "gf2-parity", p + (f,)) for f in ("x", "y")]
    for p in sample_points("gf2", 2, seed + 2, real=True):
        cases += [IdentityCase("sigma", "sigma", p + (str(k),)) for k in range(1, 5)]
    cases += [IdentityCase("sigma", "sigma", ("0.3", "0.3", str(k))) for k in range(1, 5)]
    cases += [IdentityCase("thm2", "thm2", p) for p in sample_points("thm2", 3, seed)]
    cases += [IdentityCase("gf2-3", "gf2-3", p) for p in sample_points("gf2-3", 2, seed)]
    cases.append(IdentityCase("gf2-3", "gf2-3", ("0",)))
    cases += [IdentityCase("zetas1", "zetas1", p) for p in sample_points("s-suite", 2, seed + 3)]
    for r in (1, 2):
        cases += [IdentityCase("sumg", "sumg", (str(r),) + p) for p in sample_points("sumg", 2, seed + r)]
    cases.append(IdentityCase("sumg", "sumg", ("3", "0")))
    cases.append(IdentityCase("log", "log", ("i",), "1e-8"))
    cases += [IdentityCase("log", "log", p, "1e-8") for p in sample_points("log", 2, seed, real=True)]
    cases += [IdentityCase("fixed-b", "fixed-b", (str(t), "0.3")) for t in (0, 1)]
    cases.append(IdentityCase("cot", "cot", ("0.3+0.2i",)))
    cases += [IdentityCase("deriv-coef", "deriv-coef", (str(k),)) for k in (0, 1)]
    cases += [IdentityCase("deriv-z4", "deriv-z4", (k,)) for k in ("z31+z22", "z4")]
    return cases


def _mzv(seed):
    cases = [IdentityCase("mzv-value", "mzv-value", (k,)) for k in _MZV_REFERENCES]
    cases += [IdentityCase("refl", "refl", (str(s), str(t))) for s in range(2, 7) for t in range(s, 7)]
    cases += [IdentityCase("sum-formula", "sum-formula", (str(r), str(s)))
              for r in (1, 2, 3) for s in range(0, 5) if r + s + 1 <= 5]
    cases += [IdentityCase("block", "block", ("two_block", str(n))) for n in (1, 2, 3)]
    cases.append(IdentityCase("block", "block", ("three_one_block", "1")))
    cases.append(IdentityCase("block", "block", ("three_one_block", "2"), "1e-6"))
    cases += [IdentityCase("zagier", "zagier", (x, k)) for x in ("1/4", "1/2")
              for k in ("series-closed", "closed-2f1", "series-2f1")]
    cases += [IdentityCase("sin-product", "sin-product", (x,)) for x in ("1/2", "0.3+0.2i")]
    cases += [IdentityCase("cube-gamma", "cube-gamma", (x,)) for x in ("1/2", "-0.7+0.1i")]
    cases += [IdentityCase("cube-gamma-x6", "cube-gamma-x6", (k,)) for k in ("newton", "contour")]
    cases.append(IdentityCase("open", "open", ("1",)))
    cases.append(IdentityCase("open", "open", ("2",), "1e-6"))
    cases += [IdentityCase("depth4", "depth4", (k,), "1e-6") for k in ("plain", "alt")]
    return cases


def _reduction(seed):
    cases = [IdentityCase("reduce-consistency", "reduce-consistency", (str(a), str(b)))
             for a in range(2, 13, 2) for b in range(1, 13, 2) if a + b <= 13]
    cases += [IdentityCase("reduce-numeric", "reduce-numeric", ("even-odd", str(a), str(b)))
              for a in range(2, 9, 2) for b in range(1, 9, 2) if a + b <= 9]
    cases += [IdentityCase("reduce-numeric", "reduce-numeric", ("swap", str(b), str(a)))
              for a in range(2, 9, 2) for b in range(3, 9, 2) if a + b <= 9]
    cases += [IdentityCase("reduce-numeric", "reduce-numeric", ("s1", str(s), "1")) for s in range(2, 7)]
    return cases


def _conjecture(seed):
    cases = [IdentityCase("conj-recurrence", "conj-recurrence", ("200",))]
    cases += [IdentityCase("conj-hand", "conj-hand", (str(n),)) for n in (1, 2, 3, 4)]
    cases += [IdentityCase("conj-decay", "conj-decay", (t,), "0.5") for t in ("1/4", "1/2", "1", "3/2")]
    cases += [IdentityCase("conj-gamma", "conj-gamma", (t,)) for t in ("1", "0.6+0.4i")]
    return cases


SUITES: dict = {
    "core": _core,
    "parametric": _parametric,
    "mzv": _mzv,
    "reduction": _reduction,
    "conjecture": _conjecture,
}


def build_suite(name: str, seed: int) -> list:
    if name == "all":
        cases = [c for key in ("core", "parametric", "mzv", "reduction", "conjecture") for c in SUITES[key](seed)]
    elif name in SUITES:
        cases = SUITES[name](seed)
    else:
        raise ValueError(f"unknown suite {name!r}")
    # the same case may appear in two suites
    uniq = {(c.id, c.params): c for c in cases}
    return sorted(uniq.values(), key=IdentityCase.sort_key)


# -- running ----------------------------------------------------------------------------

def _outcome(case: IdentityCase, ctx: PrecisionContext) -> Outcome:
    return EVALUATORS[case.evaluator](case.params, ctx)


def evaluate_case(case: IdentityCase, digits: int, max_terms: Optional[int] = None) -> CaseResult:
    base = PrecisionContext.from_env(digits=digits)
    ctx = base if max_terms is None else PrecisionContext(digits=digits, max_terms=max_terms)
    mp = ctx.mp
    tol = mp.mpf(case.tolerance) if case.tolerance else mp.mpf(10) ** (-(digits - 5))
    try:
        out = _outcome(case, ctx)
    except (PrecisionLossError, CapExceeded) as exc:
        return CaseResult(case, tolerance=mp.nstr(tol, 3), error=f"{type(exc).__name__}: {exc}",
                          precision_error=True)
    except (EulerLabError, ValueError, ArithmeticError) as exc:
        return CaseResult(case, tolerance=mp.nstr(tol, 3), error=f"{type(exc).__name__}: {exc}")
    resid = out.resid()
    bound = out.lhs_bound + out.rhs_bound
    fmt = lambda v: mp.nstr(v, digits) if not isinstance(v, int) else str(v)
    return CaseResult(
        case,
        lhs=fmt(out.lhs),
        rhs=fmt(out.rhs),
        residual=mp.nstr(resid, 3),
        bound=mp.nstr(bound, 3),
        tolerance=mp.nstr(tol, 3),
        method=out.method,
        passed=bool(resid <= tol and bound <= tol),
    )


def _eval_star(args):
    return evaluate_case(*args)


def run_cases(cases, digits: int, jobs: int = 1, max_terms: Optional[int] = None) -> list:
    work = [(c, digits, max_terms) for c in cases]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_eval_star, work))
    else:
        results = [_eval_star(w) for w in work]
    return sorted(results, key=lambda r: r.case.sort_key())


def run_suite(name: str, digits: int = 30, seed: int = 42, parallelism: int = 1,
              max_terms: Optional[int] = None) -> VerificationReport:
    if digits < 10:
        raise ValueError("suites need digits >= 10")
    t0 = time.perf_counter()
    cases = build_suite(name, seed)
    results = run_cases(cases, digits, parallelism, max_terms)
    return VerificationReport(name, digits, seed, results, time.perf_counter() - t0)


def render_report(r: VerificationReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        doc = {
            "suite": r.suite,
            "digits": r.digits,
            "seed": r.seed,
            "cases": [c.as_dict() for c in r.results],
            "summary": r.summary,
            "wall_time": round(r.wall_time, 3),
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    if fmt == "csv":
        import csv
        import io
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "params", "lhs", "rhs", "residual", "bound", "tolerance", "pass", "error"])
        for c in r.results:
            w.writerow([c.case.id, ";".join(c.case.params), c.lhs, c.rhs, c.residual, c.bound,
                        c.tolerance, "PASS" if c.passed else "FAIL", c.error or ""])
        return buf.getvalue().encode()
    if fmt == "text":
        lines = []
        for c in r.results:
            status = "PASS" if c.passed else ("ERROR" if c.error else "FAIL")
            params = "(" + ",".join(c.case.params) + ")"
            if c.error:
                lines.append(f"{c.case.id} {params} - - {status} {c.error}")
            else:
                lines.append(f"{c.case.id} {params} {c.residual} {c.bound} {status}")
        s = r.summary
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['error']} error")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown report format {fmt!r}")


# -- bound honesty -------------------------------------------------------------------------

@dataclass(frozen=True)
class HonestyResult:
    case: IdentityCase
    honest: bool
    detail: str


def honesty_check(cases, digits: int, extra: int = 10) -> list:
    """Re-evaluate each case with ``extra`` more digits; the new values must sit inside the old bounds."""
    out = []
    for case in cases:
        ctx = PrecisionContext(digits=digits)
        ctx2 = PrecisionContext(digits=digits + extra)
        try:
            a = _outcome(case, ctx)
            b = _outcome(case, ctx2)
        except EulerLabError as exc:
            out.append(HonestyResult(case, True, f"skipped: {type(exc).__name__}"))
            continue
        mp = ctx2.mp
        dl = abs(mp.mpmathify(b.lhs) - mp.mpmathify(a.lhs))
        dr = abs(mp.mpmathify(b.rhs) - mp.mpmathify(a.rhs))
        ok = dl <= a.lhs_bound and dr <= a.rhs_bound
        out.append(HonestyResult(case, bool(ok),
                                 f"dlhs={mp.nstr(dl, 3)}/{mp.nstr(a.lhs_bound, 3)} "
                                 f"drhs={mp.nstr(dr, 3)}/{mp.nstr(a.rhs_bound, 3)}"))
    return out
