"""The check catalogue: each check turns a scenario into report rows."""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np
from scipy import integrate

from .. import circle_kernels as ck
from .. import group_algebra as ga
from .. import hankel as hk
from .. import qfock as qf
from .. import torus as tt
from ..errors import ConfigError, NCVerifyError, UnsupportedExponentError
from .algebras import Algebra, make_algebra
from .randgen import PolySpec, random_polynomial
from .scenario import INF, Scenario

DEFAULT_TOL = 1e-9
QUAD_TOL = 1e-6
STRUCT_TOL = 1e-10


@dataclass(frozen=True)
class RunOptions:
    tol: float = DEFAULT_TOL
    quad_points: int = ck.DEFAULT_QUAD_POINTS
    seed: int | None = None
    hard_inf: bool = False


@dataclass
class ReportRow:
    scenario: str
    check: str
    algebra: str
    params: dict
    p: Any
    t: float | None
    d: int | None
    lhs: float
    rhs: float
    ratio: float
    slack: float
    status: str
    ms: float

    @property
    def hard(self) -> bool:
        return self.status in ("pass", "fail", "error")

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "estimate")


def _slack(lhs: float, rhs: float, direction: str) -> float:
    if direction == "le":
        return rhs - lhs
    if direction == "ge":
        return lhs - rhs
    if direction == "eq":
        return -abs(lhs - rhs)
    raise ValueError(direction)


class Rows:
    """Collects rows for one scenario; ``ms`` is the wall time since the previous row."""

    def __init__(self, s: Scenario, algebra: Algebra | None, opts: RunOptions):
        self.s = s
        self.opts = opts
        self.base = {} if algebra is None else algebra.describe()
        self.rows: list[ReportRow] = []
        self._last = time.perf_counter()

    def add(self, lhs, rhs, direction, tol, *, p=None, t=None, d=None, estimate=False, **params):
        now = time.perf_counter()
        lhs, rhs = float(lhs), float(rhs)
        slack = _slack(lhs, rhs, direction)
        ok = slack >= -tol
        if estimate and not self.opts.hard_inf:
            status = "estimate"
        else:
            status = "pass" if ok else "fail"
        info = dict(self.base)
        info.update(params)
        info["cmp"] = direction
        info["tol"] = tol
        self.rows.append(
            ReportRow(
                scenario=self.s.id,
                check=self.s.check,
                algebra=self.s.algebra,
                params=info,
                p=p,
                t=t,
                d=d,
                lhs=lhs,
                rhs=rhs,
                ratio=lhs / rhs if rhs != 0 else math.nan,
                slack=slack,
                status=status,
                ms=1000.0 * (now - self._last),
            )
        )
        self._last = time.perf_counter()


def _tol(s: Scenario, default: float) -> float:
    return s.tolerance if s.tolerance is not None else default


def _exact_tol(s: Scenario, opts: RunOptions) -> float:
    return _tol(s, opts.tol)


def _quad_points(s: Scenario, opts: RunOptions) -> int:
    return s.quad_points or opts.quad_points


def population(s: Scenario, alg: Algebra, kind: str, opts: RunOptions, holomorphic: bool = True):
    """Instances for a check: ``kind`` is "tail" (degree >= d), "low" (degree <= d) or "any"."""
    if s.literal is not None:
        x = alg.from_literal(s.literal)
        if kind == "tail" and alg.low_degree(x) < s.d:
            raise ConfigError(f"scenario {s.id!r}: polynomial is not in the tail space of degree {s.d}")
        if kind == "low" and alg.degree(x) > s.d:
            raise ConfigError(f"scenario {s.id!r}: polynomial has degree above {s.d}")
        if holomorphic and not alg.is_holomorphic(x):
            raise ConfigError(f"scenario {s.id!r}: check needs a holomorphic polynomial")
        return [({"instance": "literal"}, x)]
    src = s.random
    if src is None:
        raise ConfigError(f"scenario {s.id!r}: check {s.check!r} needs a polynomial source")
    holo = holomorphic if src.holomorphic is None else bool(src.holomorphic)
    if holomorphic and not holo:
        raise ConfigError(f"scenario {s.id!r}: check {s.check!r} needs holomorphic polynomials")
    top = src.max_degree if src.max_degree is not None else s.d + 2
    if kind == "tail":
        lo, hi = max(s.d, src.min_degree), top
    elif kind == "low":
        lo, hi = src.min_degree, min(s.d, top) if src.max_degree is not None else s.d
    else:
        lo, hi = src.min_degree, top
    spec = PolySpec(s.algebra, s.params, lo, hi, src.support_size, holo)
    seed = src.seed if opts.seed is None else opts.seed
    return [({"instance": i, "seed": seed}, random_polynomial([seed, i], spec)) for i in range(src.count)]


def _require_d(s: Scenario, minimum: int = 1) -> None:
    if s.d < minimum:
        raise ConfigError(f"scenario {s.id!r}: check {s.check!r} needs d >= {minimum}")


# -- semigroup and generator inequalities ---------------------------------------------


def check_hs_tail(s, alg, rows, opts):
    tol = _exact_tol(s, opts)
    for label, x in population(s, alg, "tail", opts):
        for p in s.p_list:
            nx = alg.norm(x, p)
            for t in s.t_grid:
                lhs = alg.norm(alg.heat(x, t), p)
                rows.add(lhs, math.exp(-t * s.d) * nx, "le", tol, p=p, t=t, d=s.d, estimate=alg.is_estimate(p),
                         decay=lhs / nx if nx else None, **label)


def _replay_integral(alg, Lx, p, d, T):
    f = lambda s_: alg.norm(alg.heat(Lx, s_), p)
    with warnings.catch_warnings():
        # the integrand is a p-th root of moments; roundoff notices near 1e-12 are expected
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, _ = integrate.quad(f, 0.0, T, epsabs=1e-11, epsrel=1e-10, limit=200)
    return value + math.exp(-T * d) / d * alg.norm(Lx, p)


def check_gap_tail(s, alg, rows, opts):
    _require_d(s)
    tol = _exact_tol(s, opts)
    replay = bool(s.options.get("replay", True))
    T = float(s.options.get("replay_T", 30.0 / s.d))
    for label, x in population(s, alg, "tail", opts):
        Lx = alg.generator(x)
        for p in s.p_list:
            nx, nLx = alg.norm(x, p), alg.norm(Lx, p)
            est = alg.is_estimate(p)
            rows.add(nLx, s.d * nx, "ge", tol, p=p, d=s.d, estimate=est, quantity="generator", **label)
            if replay and p != INF:
                # ||x|| = ||int_0^inf P_s L x ds|| <= int ||P_s L x|| ds
                bound = _replay_integral(alg, Lx, p, s.d, T)
                rows.add(nx, bound, "le", _tol(s, QUAD_TOL), p=p, d=s.d, quantity="integral-replay", T=T, **label)


def check_gap_low(s, alg, rows, opts):
    tol = _exact_tol(s, opts)
    for label, x in population(s, alg, "low", opts):
        Lx = alg.generator(x)
        for p in s.p_list:
            rows.add(alg.norm(Lx, p), s.d * alg.norm(x, p), "le", tol, p=p, d=s.d, estimate=alg.is_estimate(p), **label)


def check_hs_low(s, alg, rows, opts):
    tol = _exact_tol(s, opts)
    for label, x in population(s, alg, "low", opts):
        for p in s.p_list:
            nx = alg.norm(x, p)
            for t in s.t_grid:
                lhs = alg.norm(alg.heat(x, t), p)
                rows.add(lhs, math.exp(-t * s.d) * nx, "ge", tol, p=p, t=t, d=s.d, estimate=alg.is_estimate(p),
                         decay=lhs / nx if nx else None, **label)


def check_sharpness(s, alg, rows, opts):
    tol = _tol(s, STRUCT_TOL)
    x = alg.generator_power(s.d)
    for p in s.p_list:
        nx = alg.norm(x, p)
        est = alg.is_estimate(p)
        for t in s.t_grid:
            ratio = alg.norm(alg.heat(x, t), p) / nx
            rows.add(ratio, math.exp(-t * s.d), "eq", tol, p=p, t=t, d=s.d, estimate=est, quantity="semigroup")
        rows.add(alg.norm(alg.generator(x), p) / nx, s.d, "eq", tol, p=p, d=s.d, estimate=est, quantity="generator")


def check_hc_smoothing(s, alg, rows, opts):
    if s.algebra != "free":
        raise UnsupportedExponentError("hc-smoothing is a free group check")
    tol = _exact_tol(s, opts)
    for label, x in population(s, alg, "tail", opts, holomorphic=False):
        for p in s.p_list:
            if p == INF:
                raise UnsupportedExponentError("hc-smoothing needs a finite even p")
            nx = alg.norm(x, p)
            for t in s.t_grid:
                rhs = math.exp(-(2.0 / p) * s.d * min(t, t * t)) * nx
                rows.add(alg.norm(alg.heat(x, t), p), rhs, "le", tol, p=p, t=t, d=s.d, **label)


def check_sharp_order(s, alg, rows, opts):
    if s.algebra != "free":
        raise UnsupportedExponentError("sharp-order is a free group check")
    _require_d(s)
    tol = _exact_tol(s, opts)
    for label, x in population(s, alg, "tail", opts, holomorphic=False):
        Lx = alg.generator(x)
        for p in s.p_list:
            nx = alg.norm(x, p)
            est = alg.is_estimate(p)
            for t in s.t_grid:
                rhs = hk.semigroup_bound(s.d, t) * nx if t > 0 else nx
                rows.add(alg.norm(alg.heat(x, t), p), rhs, "le", tol, p=p, t=t, d=s.d, estimate=est, quantity="semigroup", **label)
            rows.add(alg.norm(Lx, p), s.d / 4.0 * nx, "ge", tol, p=p, d=s.d, estimate=est, quantity="generator", **label)


def _pairs(s, default):
    pairs = [tuple(int(v) for v in pq) for pq in s.options.get("pairs", default)]
    for p, q in pairs:
        if p < 2 or q < p or p % 2 or q % 2:
            raise UnsupportedExponentError(f"moment pairs need even 2 <= p <= q, got {(p, q)}")
    return pairs


def check_moment_cmp(s, alg, rows, opts):
    if s.algebra != "free":
        raise UnsupportedExponentError("moment-cmp is a free group check; use moment-cmp-q for qgauss")
    tol = _exact_tol(s, opts)
    d = s.d
    for label, x in population(s, alg, "low", opts):
        for p, q in _pairs(s, [(2, 4), (2, 6), (4, 6)]):
            nq, np_ = alg.norm(x, q), alg.norm(x, p)
            c = ((q - 1) / (p - 1)) ** d
            rows.add(nq, c * np_, "le", tol, p=f"{p}->{q}", d=d, case="i", **label)
            if p == 2 and q >= 4:
                rows.add(nq, (q - 1) ** (d / 2) * np_, "le", tol, p=f"{p}->{q}", d=d, case="ii", **label)


def check_moment_cmp_q(s, alg, rows, opts):
    if s.algebra != "qgauss":
        raise UnsupportedExponentError("moment-cmp-q is a q-Gaussian check")
    tol = _exact_tol(s, opts)
    d = s.d
    for label, x in population(s, alg, "low", opts):
        for p, r in _pairs(s, [(2, 4)]):
            nr, np_ = alg.norm(x, r), alg.norm(x, p)
            rows.add(nr, ((r - 1) / (p - 1)) ** (d / 2) * np_, "le", tol, p=f"{p}->{r}", d=d, case="i", **label)
            if p == 2:
                rows.add(nr, (r / 2) ** (d / 2) * np_, "le", tol, p=f"{p}->{r}", d=d, case="ii", **label)


def check_kemp(s, alg, rows, opts):
    if s.algebra != "qgauss":
        raise UnsupportedExponentError("kemp is a q-Gaussian check")
    tol = _exact_tol(s, opts)
    r = int(s.options.get("r", 4))
    if r < 2 or r % 2:
        raise UnsupportedExponentError(f"kemp needs an even r, got {r}")
    t = 0.5 * math.log(r / 2)
    for label, x in population(s, alg, "any", opts):
        rows.add(alg.norm(alg.heat(x, t), r), alg.norm(x, 2), "le", tol, p=f"2->{r}", t=t, **label)


# -- circle kernels and averaging ---------------------------------------------------------


def check_kernel_lemma(s, alg, rows, opts):
    tol = _tol(s, QUAD_TOL)
    N = _quad_points(s, opts)
    ds = [int(v) for v in s.options.get("ds", [s.d])]
    for d in ds:
        for t in s.t_grid:
            mu = ck.shifted_poisson(d, t)
            got = ck.moments(mu, range(d, 2 * d + 1), N)
            for k, m in got.items():
                rows.add(abs(m - math.exp(-t * k)), 0.0, "le", tol, t=t, d=d, kernel="poisson", k=k)
            rows.add(ck.total_variation(mu, N), ck.expected_mass(mu), "eq", tol, t=t, d=d, kernel="poisson", quantity="tv")
        if d >= 1:
            nu = ck.shifted_fejer(d)
            for k, m in ck.moments(nu, range(0, d + 1), N).items():
                rows.add(abs(m - k), 0.0, "le", tol, d=d, kernel="fejer", k=k)
            rows.add(ck.total_variation(nu, N), ck.expected_mass(nu), "eq", tol, d=d, kernel="fejer", quantity="tv")


def check_avg_identity(s, alg, rows, opts):
    _require_d(s)
    tol = _tol(s, QUAD_TOL)
    N = _quad_points(s, opts)
    for label, x in population(s, alg, "tail", opts):
        for t in s.t_grid:
            avg = alg.rotation_average(x, ck.shifted_poisson(s.d, t), N)
            rows.add(alg.l2_distance(avg, alg.heat(x, t)), 0.0, "le", tol, t=t, d=s.d, identity="semigroup", **label)
    for label, x in population(s, alg, "low", opts):
        avg = alg.rotation_average(x, ck.shifted_fejer(s.d), N)
        rows.add(alg.l2_distance(avg, alg.generator(x)), 0.0, "le", tol, d=s.d, identity="generator", **label)


# -- Hankel multiplier -----------------------------------------------------------------------


def check_hankel(s, alg, rows, opts):
    ds = [int(v) for v in s.options.get("ds", [s.d])]
    rs = [float(v) for v in s.options.get("rs", [0.1, 0.3, 0.5, 0.7, 0.9])]
    N = int(s.options.get("N", hk.DEFAULT_N))
    qt = _tol(s, QUAD_TOL)
    for d in ds:
        for r in rs:
            H = hk.hankel_matrix(hk.SharpSequence(d, r), N)
            abc = hk.abc_decomposition(d, r, N)
            nm = abc.norms
            rows.add(hk.trace_norm(H), hk.multiplier_bound(d, r), "le", qt, d=d, r=r, quantity="trace-norm")
            trunc = r**N
            rows.add(nm.B, nm.B_closed, "eq", qt + trunc, d=d, r=r, quantity="B")
            rows.add(nm.C, nm.C_closed, "eq", qt + trunc, d=d, r=r, quantity="C")
            rows.add(nm.tilde_min_eig, 0.0, "ge", STRUCT_TOL * (d + 1), d=d, r=r, quantity="A-tilde-psd")
            rows.add(nm.tilde_trace, nm.tilde_trace_closed, "eq", STRUCT_TOL, d=d, r=r, quantity="A-tilde-trace")
        c = hk.smoothing_constant(d)
        rows.add(c, 4.0 / d, "le", _exact_tol(s, opts), d=d, quantity="smoothing-constant")
        rows.add(c, hk.smoothing_constant_quadrature(d), "eq", qt, d=d, quantity="smoothing-quadrature")


# -- structural checks --------------------------------------------------------------------------


def check_haagerup_psd(s, alg, rows, opts):
    if s.algebra != "free":
        raise UnsupportedExponentError("haagerup-psd is a free group check")
    R = int(s.options.get("R", 3))
    n = int(s.params.get("n", 2))
    for t in s.t_grid:
        G, lam = ga.haagerup_gram(n, t, R)
        rows.add(lam, 0.0, "ge", STRUCT_TOL * G.shape[0], t=t, R=R, quantity="min-eig")


def _qgauss_only(s, name):
    if s.algebra != "qgauss":
        raise UnsupportedExponentError(f"{name} is a q-Gaussian check")


def check_qcr(s, alg, rows, opts):
    _qgauss_only(s, "qcr")
    tol = _tol(s, STRUCT_TOL)
    space = alg.space
    for i in range(1, space.basis.dim + 1):
        for j in range(1, space.basis.dim + 1):
            rows.add(qf.qcr_residual(space, i, j), 0.0, "le", tol, i=i, j=j)


def check_gram_psd(s, alg, rows, opts):
    _qgauss_only(s, "gram-psd")
    qs = s.options.get("qs", [alg.q])
    dims = s.options.get("dimHs", [alg.dim_h])
    Ks = s.options.get("Ks", [min(alg.K, 4)])
    for q in qs:
        for dh in dims:
            for K in Ks:
                lam = qf.QGram(qf.FockBasis(int(dh), int(K)), float(q)).min_eigenvalue()
                rows.add(lam, 0.0, "ge", 0.0, q=q, dimH=dh, K=K, quantity="min-eig")


def check_zq_norms(s, alg, rows, opts):
    _qgauss_only(s, "zq-norms")
    tol = _tol(s, STRUCT_TOL)
    z = qf.HoloPolynomial.monomial([1], [1])
    rows.add(qf.norm_even_q(z, 2, alg.q), 1.0, "eq", tol, p=2, quantity="unit-vector")
    if alg.q == 0.0:
        rows.add(qf.exact_space(z, 4, 0.0).vacuum_moment(z, 2).real, 2.0, "eq", tol, p=4, quantity="free-fourth-moment")
    for p in s.p_list:
        w = qf.HoloPolynomial.monomial([1], [max(s.d, 1)])
        small = qf.exact_space(w, p, alg.q)
        big = qf.QFock(small.dim_h, small.K + 2, alg.q)
        rows.add(small.norm_even(w, p), big.norm_even(w, p), "eq", tol, p=p, d=s.d, quantity="cutoff-independence")


def _window_alpha(rng, spread: int, n: int = 2):
    lo = -2 if spread >= 4 else 0
    return tuple(int(v) for v in rng.integers(lo, lo + min(spread, 4) + 1, size=n))


def check_weyl_xval(s, alg, rows, opts):
    if s.algebra != "qtorus" or alg.weyl is None:
        raise UnsupportedExponentError("weyl-xval needs a qtorus scenario with weyl {a, b}")
    a, b = alg.weyl
    tol = _tol(s, STRUCT_TOL)
    src = s.random
    if src is None:
        raise ConfigError(f"scenario {s.id!r}: weyl-xval needs a random source")
    seed = src.seed if opts.seed is None else opts.seed
    for p in s.p_list:
        if p == INF:
            continue
        spread = (b - 1) // (p // 2)
        for i in range(src.count):
            rng = np.random.default_rng([seed, p, i])
            support = {_window_alpha(rng, spread) for _ in range(src.support_size)}
            vals = rng.uniform(-1, 1, size=(len(support), 2))
            x = tt.TorusPolynomial(2, alg.theta, {al: complex(*v) for al, v in zip(sorted(support), vals)})
            label = {"instance": i, "seed": seed}
            M = tt.weyl_model(a, b, x)
            rows.add(tt.weyl_trace(M).real, tt.trace_theta(x).real, "eq", tol, p=p, quantity="trace-re", **label)
            rows.add(tt.weyl_trace(M).imag, complex(tt.trace_theta(x)).imag, "eq", tol, p=p, quantity="trace-im", **label)
            rows.add(tt.weyl_norm(x, a, b, p), tt.norm_even_theta(x, p), "eq", tol, p=p, quantity="norm", **label)


def check_axioms(s, alg, rows, opts):
    tol = _tol(s, STRUCT_TOL)
    pop = population(s, alg, "any", opts, holomorphic=s.algebra == "qgauss")
    z = complex(np.exp(0.7j))
    for (label, x), (_, y), (_, w) in zip(pop, pop[1:] + pop[:1], pop[2:] + pop[:2]):
        if s.algebra == "qgauss":
            rows.add(alg.l2_distance((x * y) * w, x * (y * w)), 0.0, "le", tol, quantity="associativity", **label)
            space = qf.QFock(max(x.max_index(), y.max_index(), 1), max((x.degree() + y.degree() + 1) // 2, 1), alg.q)
            A, B = space.materialize(x), space.materialize(y).dagger()
            t1, t2 = (A @ B).vacuum_trace(), (B @ A).vacuum_trace()
            rows.add(abs(t1 - t2), 0.0, "le", tol, quantity="traciality", **label)
            m1 = space_moment(x, 2, alg.q)
            m2 = space_moment(qf.rotate_q(x, z), 2, alg.q)
            rows.add(abs(m1 - m2), 0.0, "le", tol * max(1.0, abs(m1)), quantity="rotation-moment", **label)
            continue
        if s.algebra == "free":
            rot = lambda v: ga.rotate(v, z)
            mom = lambda v: ga.moment(v, 2)
        else:
            rot = lambda v: tt.rotate_theta(v, z)
            mom = lambda v: tt.moment_theta(v, 2)
        rows.add(((x * y) * w).distance(x * (y * w)), 0.0, "le", tol, quantity="associativity", **label)
        rows.add(x.adjoint().adjoint().distance(x), 0.0, "le", tol, quantity="involution", **label)
        rows.add((x * y).adjoint().distance(y.adjoint() * x.adjoint()), 0.0, "le", tol, quantity="anti-multiplicative", **label)
        rows.add(abs((x * y).trace() - (y * x).trace()), 0.0, "le", tol, quantity="traciality", **label)
        m1, m2 = mom(x), mom(rot(x))
        rows.add(abs(m1 - m2), 0.0, "le", tol * max(1.0, abs(m1)), quantity="rotation-moment", **label)


def space_moment(x, m, q):
    return qf.QFock(max(x.max_index(), 1), max(m * x.degree(), 1), q).vacuum_moment(x, m)


CHECKS: dict[str, Callable] = {
    "hs-tail": check_hs_tail,
    "gap-tail": check_gap_tail,
    "gap-low": check_gap_low,
    "hs-low": check_hs_low,
    "sharpness": check_sharpness,
    "hc-smoothing": check_hc_smoothing,
    "sharp-order": check_sharp_order,
    "moment-cmp": check_moment_cmp,
    "moment-cmp-q": check_moment_cmp_q,
    "kemp": check_kemp,
    "kernel-lemma": check_kernel_lemma,
    "avg-identity": check_avg_identity,
    "hankel": check_hankel,
    "haagerup-psd": check_haagerup_psd,
    "qcr": check_qcr,
    "gram-psd": check_gram_psd,
    "zq-norms": check_zq_norms,
    "weyl-xval": check_weyl_xval,
    "axioms": check_axioms,
}


def run_check(s: Scenario, opts: RunOptions | None = None) -> list[ReportRow]:
    """Rows for one scenario; library errors become a single ``error`` row."""
    opts = opts or RunOptions()
    if s.check not in CHECKS:
        raise ConfigError(f"scenario {s.id!r}: unknown check {s.check!r}")
    rows = Rows(s, None, opts)
    try:
        alg = make_algebra(s.algebra, s.params)
        rows = Rows(s, alg, opts)
        CHECKS[s.check](s, alg, rows, opts)
    except NCVerifyError as exc:
        rows.rows.append(
            ReportRow(s.id, s.check, s.algebra, {"error": f"{type(exc).__name__}: {exc}"}, None, None, s.d,
                      math.nan, math.nan, math.nan, math.nan, "error", 0.0)
        )
    return rows.rows


def run_scenarios(scenarios, opts: RunOptions | None = None) -> list[ReportRow]:
    out: list[ReportRow] = []
    for s in sorted(scenarios, key=lambda s: s.id):
        out.extend(run_check(s, opts))
    return out
