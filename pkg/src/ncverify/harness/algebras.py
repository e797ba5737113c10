"""Uniform view of the three algebras for the check catalogue."""

from __future__ import annotations

import math
from typing import Any, Mapping

import numpy as np

from .. import group_algebra as ga
from .. import qfock as qf
from .. import torus as tt
from ..errors import ConfigError, UnsupportedExponentError
from .scenario import INF


def theta_from_params(params: Mapping[str, Any]) -> np.ndarray:
    """theta from a row-major skew matrix, or from ``theta12`` when n = 2."""
    n = int(params.get("n", 2))
    if "theta" in params:
        theta = np.array(params["theta"], dtype=float)
        if theta.ndim == 1:
            theta = theta.reshape(n, n)
        return tt.check_theta(theta, n)
    if "theta12" in params and n == 2:
        return tt.theta_2(float(params["theta12"]))
    if n == 1:
        return np.zeros((1, 1))
    raise ConfigError("qtorus scenarios need 'theta' (or 'theta12' for n = 2)")


class Algebra:
    """Operations the checks need; subclasses bind them to one algebra."""

    name = ""

    def norm(self, x, p) -> float:
        raise NotImplementedError

    def is_estimate(self, p) -> bool:
        return p == INF

    def heat(self, x, t: float):
        raise NotImplementedError

    def generator(self, x):
        raise NotImplementedError

    def degree(self, x) -> int:
        return x.degree()

    def low_degree(self, x) -> int:
        return x.low_degree()

    def is_holomorphic(self, x) -> bool:
        raise NotImplementedError

    def generator_power(self, d: int):
        """The sharpness witness: first generator to the power d."""
        raise NotImplementedError

    def rotation_average(self, x, density, quad_points: int):
        raise NotImplementedError

    def l2_distance(self, x, y) -> float:
        raise NotImplementedError

    def from_literal(self, literal):
        raise NotImplementedError

    def describe(self) -> dict:
        return {}


class FreeAlgebra(Algebra):
    name = "free"

    def __init__(self, params: Mapping[str, Any]):
        self.n = int(params.get("n", 2))
        self.radius = int(params.get("radius", 4))
        if self.n < 1:
            raise ConfigError("free group rank must be >= 1")

    def norm(self, x, p):
        if p == INF:
            return ga.op_norm_estimate(x, self.radius)
        return ga.norm_even(x, p)

    def heat(self, x, t):
        return ga.heat(x, t)

    def generator(self, x):
        return ga.generator(x)

    def is_holomorphic(self, x):
        return x.is_holomorphic()

    def generator_power(self, d):
        return ga.GroupPolynomial(self.n, {(1,) * d: 1.0})

    def rotation_average(self, x, density, quad_points):
        return ga.rotation_average(x, density, quad_points)

    def l2_distance(self, x, y):
        return x.distance(y)

    def from_literal(self, literal):
        return ga.GroupPolynomial.from_literal(self.n, literal)

    def describe(self):
        return {"n": self.n}


class QGaussAlgebra(Algebra):
    name = "qgauss"

    def __init__(self, params: Mapping[str, Any]):
        self.q = float(params.get("q", 0.0))
        self.dim_h = int(params.get("dimH", 2))
        self.K = int(params.get("K", 6))
        self.space = qf.QFock(self.dim_h, self.K, self.q)
        self.auto_space = bool(params.get("auto_space", True))
        self._spaces: dict[tuple[int, int], qf.QFock] = {}

    def norm(self, x, p):
        if p == INF:
            raise UnsupportedExponentError("p = inf is not available for q-Gaussian polynomials")
        if self.space.K >= (p // 2) * x.degree() and self.dim_h >= x.max_index():
            return self.space.norm_even(x, p)
        if not self.auto_space:
            return self.space.norm_even(x, p)  # raises the truncation error
        # a larger exact space, built on the generators actually used
        key = (max(x.max_index(), 1), max((p // 2) * x.degree(), 1))
        if key not in self._spaces:
            self._spaces[key] = qf.QFock(key[0], key[1], self.q)
        return self._spaces[key].norm_even(x, p)

    def heat(self, x, t):
        return qf.heat_q(x, t)

    def generator(self, x):
        return qf.generator_q(x)

    def is_holomorphic(self, x):
        return True

    def generator_power(self, d):
        return qf.HoloPolynomial.monomial([1], [d]) if d else qf.HoloPolynomial.constant()

    def rotation_average(self, x, density, quad_points):
        return qf.rotation_average_q(x, density, quad_points)

    def l2_distance(self, x, y):
        # monomial coefficients, the same yardstick as the other algebras
        return math.sqrt((x - y).l2_norm_sq())

    def from_literal(self, literal):
        return qf.HoloPolynomial.from_literal(literal)

    def describe(self):
        return {"q": self.q, "dimH": self.dim_h, "K": self.K}


class TorusAlgebra(Algebra):
    name = "qtorus"

    def __init__(self, params: Mapping[str, Any]):
        self.n = int(params.get("n", 2))
        self.theta = theta_from_params(params)
        weyl = params.get("weyl")
        self.weyl = (int(weyl["a"]), int(weyl["b"])) if weyl else None
        self.grid = int(params.get("twist_grid", 16))

    def norm(self, x, p):
        if p == INF:
            if self.weyl is None:
                raise UnsupportedExponentError("p = inf on the torus needs a rational theta with weyl {a, b}")
            return tt.weyl_sup_norm(x, *self.weyl, grid=self.grid)
        return tt.norm_even_theta(x, p)

    def heat(self, x, t):
        return tt.heat_theta(x, t)

    def generator(self, x):
        return tt.generator_theta(x)

    def is_holomorphic(self, x):
        return x.is_holomorphic()

    def generator_power(self, d):
        return tt.TorusPolynomial(self.n, self.theta, {(d,) + (0,) * (self.n - 1): 1.0})

    def rotation_average(self, x, density, quad_points):
        return tt.rotation_average_theta(x, density, quad_points)

    def l2_distance(self, x, y):
        return x.distance(y)

    def from_literal(self, literal):
        return tt.TorusPolynomial.from_literal(self.n, self.theta, literal)

    def describe(self):
        out = {"n": self.n, "theta": self.theta.ravel().tolist()}
        if self.weyl:
            out["weyl"] = {"a": self.weyl[0], "b": self.weyl[1]}
        return out


def make_algebra(name: str, params: Mapping[str, Any]) -> Algebra:
    if name == "free":
        return FreeAlgebra(params)
    if name == "qgauss":
        return QGaussAlgebra(params)
    if name == "qtorus":
        return TorusAlgebra(params)
    raise ConfigError(f"unknown algebra {name!r}")
