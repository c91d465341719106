"""JSON problem configuration: parsing, validation and round-trip serialization.

Matrices are row-major nested arrays, angles are radians.  Path descriptors
mirror the path classes; see README for the schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.linalg

from .families import SymmetricFamily
from .paths import (
    ConcatPath,
    ConstantPath,
    LagrangianPath,
    PiecewiseLinear,
    ReparametrizedPath,
    ReversedPath,
    RotatedPath,
    RotationPath,
    SymplecticActionPath,
    UnitaryDiagonalPath,
    gamma_nor,
    gamma_nor_prime,
)
from .symplectic import LagrangianFrame, frame_from_basis, l0_frame, l1_frame, standard_J


class ConfigError(Exception):
    """Invalid configuration; the message names the offending field."""


DEFAULT_SOLVER = {
    "steps": 256,
    "tol": 1e-8,
    "max_depth": 40,
    "mu_window": [-np.pi + 0.1, np.pi - 0.1],
}


@dataclass
class SolverSettings:
    steps: int = 256
    tol: float = 1e-8
    max_depth: int = 40
    mu_window: tuple = (-np.pi + 0.1, np.pi - 0.1)

    def to_dict(self):
        return {
            "steps": self.steps,
            "tol": self.tol,
            "max_depth": self.max_depth,
            "mu_window": [float(self.mu_window[0]), float(self.mu_window[1])],
        }


def _expect(cond, where, msg):
    if not cond:
        raise ConfigError(f"{where}: {msg}")


def _parse_frame(spec, n: int, where: str) -> LagrangianFrame:
    if isinstance(spec, str):
        if spec == "l0":
            return l0_frame(n)
        if spec == "l1":
            return l1_frame(n)
        raise ConfigError(f"{where}: unknown frame shorthand {spec!r} (use 'l0' or 'l1')")
    try:
        return frame_from_basis(np.asarray(spec, dtype=float))
    except ValueError as err:
        raise ConfigError(f"{where}: {err}") from err


def _parse_pl(spec, where: str) -> PiecewiseLinear:
    try:
        pts = np.asarray(spec, dtype=float)
        _expect(pts.ndim == 2 and pts.shape[1] == 2, where, "expected [[lambda, value], ...]")
        return PiecewiseLinear(pts[:, 0], pts[:, 1])
    except (ValueError, ConfigError) as err:
        raise ConfigError(f"{where}: {err}") from err


def build_path(desc, n: int, where: str = "path") -> LagrangianPath:
    """Construct a path from its JSON descriptor."""
    _expect(isinstance(desc, dict), where, "descriptor must be an object")
    kind = desc.get("type")
    _expect(isinstance(kind, str), where, "missing 'type'")
    if kind == "normalization":
        which = desc.get("which")
        if which == "gamma_nor":
            return gamma_nor(n)
        if which == "gamma_nor_prime":
            return gamma_nor_prime(n)
        raise ConfigError(f"{where}.which: expected 'gamma_nor' or 'gamma_nor_prime'")
    if kind == "constant":
        return ConstantPath(_parse_frame(desc.get("frame"), n, f"{where}.frame"))
    if kind == "rotation":
        theta = _parse_pl(desc.get("theta"), f"{where}.theta")
        base = _parse_frame(desc.get("frame"), n, f"{where}.frame")
        return RotationPath(base, theta)
    if kind == "unitary_diagonal":
        phases = desc.get("phases")
        _expect(isinstance(phases, list) and len(phases) == n, f"{where}.phases",
                f"expected {n} phase functions")
        return UnitaryDiagonalPath(
            [_parse_pl(p, f"{where}.phases[{i}]") for i, p in enumerate(phases)]
        )
    if kind == "symplectic_action":
        gens = np.asarray(desc.get("generator"), dtype=float)
        _expect(
            gens.ndim == 3 and gens.shape[1:] == (2 * n, 2 * n),
            f"{where}.generator",
            f"expected a list of {2 * n} x {2 * n} symmetric matrices",
        )
        sym_err = max(np.linalg.norm(G - G.T, 2) for G in gens)
        _expect(sym_err <= 1e-12, f"{where}.generator", "matrices must be symmetric")
        base_desc = desc.get("base")
        if isinstance(base_desc, dict):
            base = build_path(base_desc, n, f"{where}.base")
        else:
            base = _parse_frame(base_desc, n, f"{where}.base")
        J = standard_J(n)

        def fn(lam, gens=gens, J=J):
            G = sum(gens[k] * lam**k for k in range(len(gens)))
            return scipy.linalg.expm(J @ G)

        payload = {"type": "symplectic_action", "generator": gens.tolist(),
                   "base": base_desc if isinstance(base_desc, dict) else np.asarray(
                       base.F if isinstance(base, LagrangianFrame) else base.frame(0.0).F
                   ).tolist()}
        return SymplecticActionPath(fn, base, payload=payload)
    if kind == "concat":
        pieces = desc.get("pieces")
        _expect(isinstance(pieces, list) and pieces, f"{where}.pieces", "expected a nonempty list")
        try:
            return ConcatPath(
                [build_path(p, n, f"{where}.pieces[{i}]") for i, p in enumerate(pieces)]
            )
        except ValueError as err:
            raise ConfigError(f"{where}.pieces: {err}") from err
    if kind == "reversed":
        return ReversedPath(build_path(desc.get("path"), n, f"{where}.path"))
    if kind == "rotated":
        angle = desc.get("angle")
        _expect(isinstance(angle, (int, float)), f"{where}.angle", "expected a number")
        return RotatedPath(build_path(desc.get("path"), n, f"{where}.path"), float(angle))
    if kind == "reparametrized":
        phi = _parse_pl(desc.get("phi"), f"{where}.phi")
        try:
            return ReparametrizedPath(build_path(desc.get("path"), n, f"{where}.path"), phi)
        except ValueError as err:
            raise ConfigError(f"{where}.phi: {err}") from err
    raise ConfigError(f"{where}.type: unknown descriptor type {kind!r}")


@dataclass
class ProblemConfig:
    """Parsed problem description driving the CLI commands."""

    n: int
    gamma1_desc: dict | None = None
    gamma2_desc: dict | None = None
    family: SymmetricFamily | None = None
    alpha: PiecewiseLinear | None = None
    beta: PiecewiseLinear | None = None
    solver: SolverSettings = field(default_factory=SolverSettings)
    seed: int = 0
    lambda_grid: int = 101
    suite: dict = field(default_factory=dict)

    def path1(self) -> LagrangianPath:
        _expect(self.gamma1_desc is not None, "gamma1", "missing path descriptor")
        return build_path(self.gamma1_desc, self.n, "gamma1")

    def path2(self) -> LagrangianPath:
        _expect(self.gamma2_desc is not None, "gamma2", "missing path descriptor")
        return build_path(self.gamma2_desc, self.n, "gamma2")

    def to_dict(self) -> dict:
        out = {"n": self.n, "solver": self.solver.to_dict(), "seed": self.seed,
               "lambda_grid": self.lambda_grid}
        if self.gamma1_desc is not None:
            out["gamma1"] = self.gamma1_desc
        if self.gamma2_desc is not None:
            out["gamma2"] = self.gamma2_desc
        if self.family is not None:
            out["family"] = self.family.serialize()
        if self.alpha is not None:
            out["alpha"] = self.alpha.serialize()
        if self.beta is not None:
            out["beta"] = self.beta.serialize()
        if self.suite:
            out["suite"] = self.suite
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def parse_config(data) -> ProblemConfig:
    """Build a ProblemConfig from a dict, a JSON string or a file path."""
    if isinstance(data, (str, Path)):
        if isinstance(data, Path) or not str(data).lstrip().startswith("{"):
            try:
                text = Path(data).read_text()
            except OSError as err:
                raise ConfigError(f"cannot read config file {data}: {err}") from err
        else:
            text = str(data)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(f"invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}") from err
    _expect(isinstance(data, dict), "config", "top level must be an object")

    n = data.get("n")
    _expect(isinstance(n, int) and n >= 1, "n", "must be a positive integer")

    solver_in = dict(DEFAULT_SOLVER)
    solver_in.update(data.get("solver", {}))
    _expect(isinstance(solver_in["steps"], int) and solver_in["steps"] >= 16, "solver.steps",
            "must be an integer >= 16")
    window = solver_in["mu_window"]
    _expect(
        isinstance(window, (list, tuple)) and len(window) == 2 and window[0] < window[1],
        "solver.mu_window",
        "must be [mu_min, mu_max] with mu_min < mu_max",
    )
    solver = SolverSettings(
        steps=int(solver_in["steps"]),
        tol=float(solver_in["tol"]),
        max_depth=int(solver_in["max_depth"]),
        mu_window=(float(window[0]), float(window[1])),
    )

    family = None
    if "family" in data and data["family"] is not None:
        try:
            family = SymmetricFamily.deserialize(data["family"])
        except (ValueError, KeyError, TypeError) as err:
            raise ConfigError(f"family: {err}") from err
        _expect(family.n == n, "family", f"matrix size {2 * family.n} does not match n={n}")

    alpha = _parse_pl(data["alpha"], "alpha") if data.get("alpha") is not None else None
    beta = _parse_pl(data["beta"], "beta") if data.get("beta") is not None else None

    lambda_grid = data.get("lambda_grid", 101)
    _expect(isinstance(lambda_grid, int) and lambda_grid >= 2, "lambda_grid",
            "must be an integer >= 2")

    cfg = ProblemConfig(
        n=n,
        gamma1_desc=data.get("gamma1"),
        gamma2_desc=data.get("gamma2"),
        family=family,
        alpha=alpha,
        beta=beta,
        solver=solver,
        seed=int(data.get("seed", 0)),
        lambda_grid=lambda_grid,
        suite=dict(data.get("suite", {})),
    )
    # descriptors are validated eagerly so config errors surface before compute
    if cfg.gamma1_desc is not None:
        cfg.path1()
    if cfg.gamma2_desc is not None:
        cfg.path2()
    return cfg
