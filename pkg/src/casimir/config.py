"""Run configuration: one JSON schema shared by presets and user configs.

Every checked-in preset is an ordinary config document, so anything a
preset can express a user file can too.  Validation errors always name
the offending field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .dispersion import ChannelSet
from .errors import ConfigError
from .lattice import LatticeSpec
from .quadrature import QuadratureSpec
from .scattering import ConstantScaledCoupling, Mirror
from .separable import FormFactor, GreenKernel, default_prefactor, unit_prefactor
from .waveguide import WaveguideSpec

__all__ = ["GridSpec", "RunConfig", "load_config_file"]

_MODELS = ("channels", "separable", "waveguide", "oracle_compare")

_PREFACTORS = {
    "resonance": default_prefactor,
    "one": unit_prefactor,
}


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int
    spacing: str = "log"

    def __post_init__(self):
        if not (0 < self.lo < self.hi):
            raise ConfigError(f"grid: need 0 < lo < hi, got {self.lo}, {self.hi}")
        if self.count < 2:
            raise ConfigError(f"grid.count: need at least 2, got {self.count}")
        if self.spacing not in ("log", "linear"):
            raise ConfigError(f"grid.spacing: 'log' or 'linear', got {self.spacing!r}")

    def values(self) -> list[float]:
        n = self.count
        if self.spacing == "linear":
            step = (self.hi - self.lo) / (n - 1)
            xs = [self.lo + i * step for i in range(n)]
        else:
            ratio = (self.hi / self.lo) ** (1.0 / (n - 1))
            xs = [self.lo * ratio ** i for i in range(n)]
        xs[-1] = self.hi
        return xs


@dataclass(frozen=True)
class RunConfig:
    """Validated run description for one CLI invocation."""

    model: str
    raw: dict

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        if not isinstance(doc, dict):
            raise ConfigError("config root must be a JSON object")
        model = doc.get("model")
        if model not in _MODELS:
            raise ConfigError(f"model: expected one of {_MODELS}, got {model!r}")
        return cls(model, doc)

    # -- shared pieces -------------------------------------------------

    def grid(self) -> GridSpec:
        g = self._require("grid", dict)
        try:
            return GridSpec(float(g["lo"]), float(g["hi"]), int(g["count"]),
                            str(g.get("spacing", "log")))
        except KeyError as exc:
            raise ConfigError(f"grid.{exc.args[0]}: missing") from None

    def quadrature(self) -> QuadratureSpec:
        q = self.raw.get("quadrature", {})
        if not isinstance(q, dict):
            raise ConfigError("quadrature: must be an object")
        try:
            return QuadratureSpec(
                rel_tol=float(q.get("rel_tol", 1e-9)),
                abs_tol=float(q.get("abs_tol", 1e-12)),
                max_refinement_level=int(q.get("max_refinement_level", 12)))
        except ValueError as exc:
            raise ConfigError(f"quadrature: {exc}") from None

    def channel_set(self) -> ChannelSet:
        masses = self._require("masses", list)
        if not masses:
            raise ConfigError("masses: need at least one channel mass")
        try:
            return ChannelSet.from_masses([float(m) for m in masses])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"masses: {exc}") from None

    def mirror(self, key: str, cs: ChannelSet) -> Mirror:
        m = self._require(key, dict)
        coupling = m.get("coupling")
        if not isinstance(coupling, list) or len(coupling) != cs.n:
            raise ConfigError(
                f"{key}.coupling: need a list of {cs.n} numbers")
        values = tuple(float(v) for v in coupling)
        kind = m.get("coupling_kind", "fixed")
        if kind == "constant_scaled":
            spec = ConstantScaledCoupling(values, cs)
        elif kind == "fixed":
            spec = values
        else:
            raise ConfigError(
                f"{key}.coupling_kind: 'fixed' or 'constant_scaled', got {kind!r}")
        strength = m.get("strength", "inf")
        if strength in ("inf", None):
            strength = math.inf
        try:
            return Mirror(float(m.get("position", 0.0)), spec, float(strength))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{key}: {exc}") from None

    def form_factor(self, key: str) -> FormFactor:
        b = self._require(key, dict)
        points = b.get("points")
        if not isinstance(points, list) or not points:
            raise ConfigError(f"{key}.points: need a non-empty list of "
                              "[weight, position] pairs")
        try:
            pts = tuple((float(w), float(p)) for w, p in points)
        except (TypeError, ValueError):
            raise ConfigError(f"{key}.points: entries must be "
                              "[weight, position] pairs") from None
        name = b.get("prefactor", "resonance")
        if name not in _PREFACTORS:
            raise ConfigError(f"{key}.prefactor: expected one of "
                              f"{sorted(_PREFACTORS)}, got {name!r}")
        try:
            return FormFactor(pts, _PREFACTORS[name])
        except ValueError as exc:
            raise ConfigError(f"{key}: {exc}") from None

    def kernel(self) -> GreenKernel:
        k = self._require("kernel", dict)
        kind = k.get("kind")
        if kind == "line_massless":
            return GreenKernel.line_massless()
        if kind == "point3d":
            try:
                return GreenKernel.point3d(float(k.get("smear", 0.0)))
            except ValueError as exc:
                raise ConfigError(f"kernel.smear: {exc}") from None
        raise ConfigError(
            f"kernel.kind: 'line_massless' or 'point3d', got {kind!r}")

    def waveguide(self) -> WaveguideSpec:
        try:
            return WaveguideSpec(
                radius=float(self._require("radius", (int, float))),
                max_mass=float(self._require("max_mass", (int, float))),
                polarization=str(self.raw.get("polarization", "both")),
                angular_orders=int(self.raw.get("angular_orders", 8)))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def lattice(self) -> LatticeSpec:
        lat = self._require("lattice", dict)
        try:
            return LatticeSpec(sites=int(lat["sites"]),
                               spacing=float(lat["spacing"]))
        except KeyError as exc:
            raise ConfigError(f"lattice.{exc.args[0]}: missing") from None

    def separations(self) -> list[float]:
        xs = self._require("separations", list)
        vals = [float(x) for x in xs]
        if not vals or any(x <= 0 for x in vals) or sorted(vals) != vals:
            raise ConfigError("separations: need a positive increasing list")
        return vals

    def _require(self, key: str, types) -> object:
        val = self.raw.get(key)
        if val is None or not isinstance(val, types):
            raise ConfigError(f"{key}: missing or of wrong type")
        return val


def load_config_file(path: str | Path) -> RunConfig:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {p}: invalid JSON ({exc})") from None
    return RunConfig.from_dict(doc)
