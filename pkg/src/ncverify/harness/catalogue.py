"""Built-in scenario set run by ``ncverify run --all``."""

from __future__ import annotations

import math

from .scenario import RandomSource, Scenario

TIMES = (0.1, 0.5, 1.0)
QS = (-0.5, 0.0, 0.5)
THETAS = {"t03": 0.3, "t1o5": 0.2, "tsqrt2": math.sqrt(2) / 2}


def _rand(seed, count, max_degree=None, support=5, holomorphic=None):
    return RandomSource(seed=seed, count=count, support_size=support, max_degree=max_degree, holomorphic=holomorphic)


def _suite(prefix, algebra, params, ds, p_list, max_degree, count, seed, replay_count=3):
    out = []
    for d in ds:
        common = dict(algebra=algebra, params=params, d=d, t_grid=TIMES, p_list=p_list)
        out += [
            Scenario(f"{prefix}-hs-tail-d{d}", check="hs-tail", random=_rand(seed + d, count, max_degree), **common),
            Scenario(f"{prefix}-gap-tail-d{d}", check="gap-tail", random=_rand(seed + 10 + d, count, max_degree),
                     options={"replay": False}, **common),
            Scenario(f"{prefix}-gap-replay-d{d}", check="gap-tail", random=_rand(seed + 20 + d, replay_count, max_degree),
                     **common),
            Scenario(f"{prefix}-gap-low-d{d}", check="gap-low", random=_rand(seed + 30 + d, count), **common),
            Scenario(f"{prefix}-hs-low-d{d}", check="hs-low", random=_rand(seed + 40 + d, count), **common),
        ]
    return out


def default_scenarios() -> list[Scenario]:
    sc: list[Scenario] = []

    # free group: holomorphic suite, sharpness, finer free-only estimates
    sc += _suite("c01-free", "free", {"n": 2}, (1, 2, 3), (2, 4, 6), 6, 50, 1000)
    for d in range(1, 6):
        sc.append(Scenario(f"c03-free-sharp-d{d}", "free", "sharpness", {"n": 2}, d, TIMES, (2, 4, 6)))
        sc.append(Scenario(f"c03-qgauss-sharp-d{d}", "qgauss", "sharpness", {"q": 0.5, "dimH": 1, "K": 2 * d}, d, TIMES, (2, 4)))
        sc.append(Scenario(f"c03-qtorus-sharp-d{d}", "qtorus", "sharpness", {"n": 2, "theta12": 0.3}, d, TIMES, (2, 4, 6)))
    sc.append(Scenario("c04-hankel", "free", "hankel", options={"ds": list(range(1, 9)), "N": 200}))
    for d in (1, 2, 3):
        sc.append(Scenario(f"c04-sharp-order-d{d}", "free", "sharp-order", {"n": 2}, d, TIMES, (2, 4),
                           random=_rand(2000 + d, 20, 5, holomorphic=False)))
    sc.append(Scenario("c04-sharp-order-inf", "free", "sharp-order", {"n": 2, "radius": 5}, 2, (0.5,), ("inf",),
                       random=_rand(2100, 2, 3, support=3, holomorphic=False)))
    sc.append(Scenario("c05-kernel-lemma", "free", "kernel-lemma", t_grid=(0.25, 1.0), options={"ds": list(range(1, 9))}))
    for algebra, params in (("free", {"n": 2}), ("qgauss", {"q": 0.5, "dimH": 2, "K": 6}), ("qtorus", {"n": 2, "theta12": 0.3})):
        sc.append(Scenario(f"c05-avg-{algebra}", algebra, "avg-identity", params, 2, (0.25, 1.0), random=_rand(3000, 10, 5)))
    for d in (1, 2, 3):
        sc.append(Scenario(f"c06-hc-smoothing-d{d}", "free", "hc-smoothing", {"n": 2}, d, (0.2, 1.0, 2.0), (4,),
                           random=_rand(4000 + d, 30, 5, holomorphic=False)))
    for d in (1, 2, 3, 4):
        sc.append(Scenario(f"c07-moment-cmp-d{d}", "free", "moment-cmp", {"n": 2}, d, random=_rand(5000 + d, 20)))
    for qi, q in enumerate(QS):
        for d in (1, 2, 3):
            sc.append(Scenario(f"c07-moment-cmp-q{qi}-d{d}", "qgauss", "moment-cmp-q", {"q": q, "dimH": 2, "K": 6}, d,
                               random=_rand(5100 + 10 * qi + d, 10)))

    # q-Gaussian structure and suite
    sc.append(Scenario("c08-gram-psd", "qgauss", "gram-psd",
                       options={"qs": [-0.9, -0.5, 0.0, 0.5, 0.9], "dimHs": [1, 2], "Ks": [1, 2, 3, 4]}))
    for qi, q in enumerate(QS):
        params = {"q": q, "dimH": 2, "K": 6}
        sc.append(Scenario(f"c08-qcr-q{qi}", "qgauss", "qcr", {"q": q, "dimH": 2, "K": 4}))
        sc.append(Scenario(f"c08-zq-norms-q{qi}", "qgauss", "zq-norms", params, 3, p_list=(2, 4)))
        sc.append(Scenario(f"c08-kemp-q{qi}", "qgauss", "kemp", params, random=_rand(6000 + qi, 10, 3)))
        sc += _suite(f"c08-qgauss-q{qi}", "qgauss", params, (1, 2, 3), (2, 4), 3, 10, 6100 + 100 * qi)

    # quantum tori
    for name, th in THETAS.items():
        sc += _suite(f"c09-qtorus-{name}", "qtorus", {"n": 2, "theta12": th}, (1, 2, 3), (2, 4, 6), 5, 10, 7000)
    sc.append(Scenario("c09-weyl-xval", "qtorus", "weyl-xval", {"n": 2, "theta12": 0.2, "weyl": {"a": 1, "b": 5}},
                       p_list=(2, 4, 6), random=_rand(7500, 10, support=6)))
    sc.append(Scenario("c09-qtorus-inf", "qtorus", "hs-tail", {"n": 2, "theta12": 0.2, "weyl": {"a": 1, "b": 5}}, 1,
                       (0.5,), ("inf",), random=_rand(7600, 2, 2, support=3)))

    # structure
    sc.append(Scenario("c10-haagerup", "free", "haagerup-psd", {"n": 2}, t_grid=(0.5, 1.0), options={"R": 3}))
    sc.append(Scenario("c10-axioms-free", "free", "axioms", {"n": 2}, random=_rand(8000, 200, 4, holomorphic=False)))
    sc.append(Scenario("c10-axioms-qtorus", "qtorus", "axioms", {"n": 2, "theta12": 0.3}, random=_rand(8100, 200, 4, holomorphic=False)))
    sc.append(Scenario("c10-axioms-qgauss", "qgauss", "axioms", {"q": 0.5, "dimH": 2, "K": 6}, random=_rand(8200, 200, 3)))
    return sorted(sc, key=lambda s: s.id)
