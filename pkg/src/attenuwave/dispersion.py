"""Attenuation models and their complex attenuation coefficients.

Each model defines a complex coefficient ``alpha_star(omega)`` whose real
part is the attenuation per unit length and whose imaginary part encodes
the excess slowness relative to the model's bound speed:

    alpha_star(omega) = alpha(omega) - i*(omega/c(omega) - omega/v_B).

``alpha_star`` also accepts complex arguments.  Evaluated with principal
branches, the formulas are analytic on the closed upper half-plane and
continuous from below onto the real axis; their branch cuts (where any)
lie on the negative imaginary axis.  The causality machinery in
:mod:`attenuwave.certify` probes the lower half-plane through the
reflection ``z -> alpha_star(-z)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import BranchCutError, ModelValidationError, SingularLimitError
from .grids import FrequencyGrid


class ModelKind(str, enum.Enum):
    POWER_LAW = "PowerLaw"
    POWER_LAW_GAMMA1 = "PowerLawGamma1"
    SZABO = "Szabo"
    THERMO_VISCOUS = "ThermoViscous"
    KOWAR_MODIFIED = "KowarModified"


# which optional parameters each kind consumes
_USED_FIELDS = {
    ModelKind.POWER_LAW: {"gamma", "alpha0", "omega0", "c0"},
    ModelKind.POWER_LAW_GAMMA1: {"alpha0", "omega0", "c0"},
    ModelKind.SZABO: {"gamma", "alpha0", "c0"},
    ModelKind.THERMO_VISCOUS: {"c0", "c1", "tau0"},
    ModelKind.KOWAR_MODIFIED: {"gamma", "c0", "c1", "tau0"},
}


@dataclass(frozen=True)
class ModelSpec:
    """Tagged description of an attenuation model and its parameters.

    Fields not used by ``kind`` must be left at None.  ``c0`` doubles as
    the bound speed for Szabo and KowarModified; for ThermoViscous the
    trial bound speed is ``c1`` (defaulting to ``c0``).
    """

    kind: ModelKind
    gamma: float | None = None
    alpha0: float | None = None
    omega0: float | None = None
    c0: float | None = None
    c1: float | None = None
    tau0: float | None = None

    def __post_init__(self):
        kind = ModelKind(self.kind)
        object.__setattr__(self, "kind", kind)
        used = _USED_FIELDS[kind]
        for name in ("gamma", "alpha0", "omega0", "c0", "c1", "tau0"):
            val = getattr(self, name)
            if val is not None and name not in used:
                raise ModelValidationError(
                    f"{kind.value} does not use parameter {name!r}"
                )
        if self.c0 is None or not self.c0 > 0:
            raise ModelValidationError("c0 must be set and positive")
        g = self.gamma
        if kind in (ModelKind.POWER_LAW, ModelKind.SZABO):
            if g is None or not g > 0:
                raise ModelValidationError("gamma must be set and positive")
            if float(g).is_integer():
                raise ModelValidationError(
                    f"{kind.value} requires non-integer gamma, got {g}"
                )
            if self.alpha0 is None or self.alpha0 < 0:
                raise ModelValidationError("alpha0 must be set and >= 0")
        if kind is ModelKind.POWER_LAW:
            if self.omega0 is None or self.omega0 < 0:
                raise ModelValidationError("omega0 must be set and >= 0")
        if kind is ModelKind.POWER_LAW_GAMMA1:
            if self.alpha0 is None or self.alpha0 < 0:
                raise ModelValidationError("alpha0 must be set and >= 0")
            if self.omega0 is None or not self.omega0 > 0:
                raise ModelValidationError("omega0 must be set and positive")
        if kind is ModelKind.THERMO_VISCOUS:
            if self.tau0 is None or not self.tau0 > 0:
                raise ModelValidationError("tau0 must be set and positive")
            if self.c1 is not None and not self.c1 > 0:
                raise ModelValidationError("trial c1 must be positive")
        if kind is ModelKind.KOWAR_MODIFIED:
            if g is None or not (1.0 < g <= 2.0):
                raise ModelValidationError(
                    f"KowarModified requires gamma in (1, 2], got {g}"
                )
            if self.c1 is None or not self.c1 > 0:
                raise ModelValidationError("c1 must be set and positive")
            if self.tau0 is None or self.tau0 < 0:
                raise ModelValidationError("tau0 must be set and >= 0")

    @property
    def bound_speed(self) -> float:
        """Nominal bound speed v_B used to shift Green shells."""
        if self.kind is ModelKind.THERMO_VISCOUS:
            return self.c1 if self.c1 is not None else self.c0
        return self.c0

    def characteristic_frequency(self) -> float:
        """Frequency scale around which half-plane scans are centered."""
        if self.tau0:
            return 1.0 / self.tau0
        if self.omega0:
            return self.omega0
        return 1.0

    def to_record(self) -> dict:
        """Flat key-value record; unset parameters are omitted."""
        rec = {"kind": self.kind.value}
        for name in ("gamma", "alpha0", "omega0", "c0", "c1", "tau0"):
            val = getattr(self, name)
            if val is not None:
                rec[name] = float(val)
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "ModelSpec":
        rec = dict(rec)
        try:
            kind = ModelKind(rec.pop("kind"))
        except (KeyError, ValueError) as exc:
            raise ModelValidationError(f"bad model kind: {exc}") from exc
        known = {"gamma", "alpha0", "omega0", "c0", "c1", "tau0"}
        unknown = set(rec) - known
        if unknown:
            raise ModelValidationError(f"unknown model parameters: {sorted(unknown)}")
        return cls(kind=kind, **{k: float(v) for k, v in rec.items()})


def _principal_power(w: np.ndarray, exponent: float) -> np.ndarray:
    """w**exponent with the principal log; 0**exponent = 0 for exponent > 0.

    Raises BranchCutError when a sample lies exactly on the cut (negative
    real axis) and the exponent is fractional.
    """
    w = np.asarray(w, dtype=complex)
    if not float(exponent).is_integer():
        on_cut = (w.real < 0) & (w.imag == 0)
        if np.any(on_cut):
            raise BranchCutError(
                "fractional power evaluated on the branch cut (negative real axis)"
            )
    out = np.zeros_like(w)
    nz = w != 0
    out[nz] = np.exp(exponent * np.log(w[nz]))
    if exponent <= 0:
        out[~nz] = np.inf
    return out


def _alpha_star_power_law(m: ModelSpec, z: np.ndarray) -> np.ndarray:
    g = m.gamma
    at = m.alpha0 / math.cos(math.pi / 2 * g)
    out = at * _principal_power(-1j * z, g)
    if m.omega0 > 0:
        a2 = m.alpha0 * math.tan(math.pi / 2 * g) * m.omega0 ** (g - 1.0)
        out = out + 1j * a2 * z
    return out


def _alpha_star_gamma1(m: ModelSpec, z: np.ndarray) -> np.ndarray:
    # gamma -> 1 limit of the power law: alpha0*|z| + i*alpha0*(2/pi)*z*log|z/omega0|,
    # with |.| the complex modulus (not an analytic continuation).
    z = np.asarray(z, dtype=complex)
    mod = np.abs(z)
    out = np.zeros_like(z)
    nz = mod > 0
    out[nz] = m.alpha0 * mod[nz] + 1j * m.alpha0 * (2.0 / np.pi) * z[nz] * (
        np.log(mod[nz]) - math.log(m.omega0)
    )
    return out


def _alpha_star_szabo(m: ModelSpec, z: np.ndarray) -> np.ndarray:
    # (-i*z/c0) * (sqrt(1 + 2*at*c0*(-i*z)^(g-1)) - 1), primitive square root;
    # zero at z = 0 by continuity (the product tends to (-i*z)^gamma terms).
    g = m.gamma
    at = m.alpha0 / math.cos(math.pi / 2 * g)
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    nz = z != 0
    v = 2.0 * at * m.c0 * _principal_power(-1j * z[nz], g - 1.0)
    out[nz] = (-1j * z[nz] / m.c0) * (np.sqrt(1.0 + v) - 1.0)
    return out


def _tv_wavenumber(m: ModelSpec, z: np.ndarray) -> np.ndarray:
    # k(z) = z / (c0 * sqrt(1 - i*tau0*z)), primitive square root.
    z = np.asarray(z, dtype=complex)
    return z / (m.c0 * np.sqrt(1.0 - 1j * m.tau0 * z))


def _alpha_star_tv(m: ModelSpec, z: np.ndarray) -> np.ndarray:
    c1 = m.c1 if m.c1 is not None else m.c0
    return -1j * _tv_wavenumber(m, z) + 1j * np.asarray(z, dtype=complex) / c1


def _alpha_star_kowar(m: ModelSpec, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if m.tau0 == 0.0:
        return -1j * z / m.c1
    u = _principal_power(-1j * m.tau0 * z, m.gamma - 1.0)
    return -1j * z / (m.c1 * np.sqrt(1.0 + u))


_EVALUATORS = {
    ModelKind.POWER_LAW: _alpha_star_power_law,
    ModelKind.POWER_LAW_GAMMA1: _alpha_star_gamma1,
    ModelKind.SZABO: _alpha_star_szabo,
    ModelKind.THERMO_VISCOUS: _alpha_star_tv,
    ModelKind.KOWAR_MODIFIED: _alpha_star_kowar,
}


def alpha_star(model: ModelSpec, z):
    """Complex attenuation coefficient at real or complex frequency.

    For real ``omega`` this is the on-axis coefficient
    ``alpha(omega) - i*(omega/c(omega) - omega/v_B)``.  For complex ``z``
    the same principal-branch formula continues it off the axis; the
    lower half-plane function examined by the causality conditions is
    ``z -> alpha_star(model, -z)``.
    """
    scalar = np.isscalar(z)
    out = _EVALUATORS[model.kind](model, np.atleast_1d(np.asarray(z, dtype=complex)))
    return complex(out[0]) if scalar else out


def attenuation(model: ModelSpec, omega):
    """Attenuation law alpha(omega) = Re alpha_star(omega), even and >= 0."""
    scalar = np.isscalar(omega)
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    out = np.real(alpha_star(model, w.astype(complex)))
    return float(out[0]) if scalar else out


def _zero_frequency_speed(model: ModelSpec) -> float:
    """Analytic omega -> 0 limit of the phase speed; raises if divergent."""
    kind = model.kind
    if kind is ModelKind.POWER_LAW:
        slowness = 1.0 / model.c0
        if model.omega0 > 0:
            slowness += (
                model.alpha0
                * math.tan(math.pi / 2 * model.gamma)
                * (0.0 - model.omega0 ** (model.gamma - 1.0))
            )
        if model.gamma < 1.0 and model.alpha0 > 0:
            raise SingularLimitError(
                "power-law slowness diverges as omega -> 0 for gamma < 1"
            )
        if slowness <= 0:
            raise SingularLimitError("zero-frequency slowness is non-positive")
        return 1.0 / slowness
    if kind is ModelKind.POWER_LAW_GAMMA1:
        raise SingularLimitError(
            "logarithmic dispersion: c(omega) -> 0 as omega -> 0"
        )
    if kind is ModelKind.SZABO:
        if model.gamma < 1.0 and model.alpha0 > 0:
            raise SingularLimitError(
                "Szabo slowness diverges as omega -> 0 for gamma < 1"
            )
        return model.c0
    if kind is ModelKind.THERMO_VISCOUS:
        return model.c0
    # KowarModified: slowness tends to 1/c0 + 1/c1 for every gamma in (1, 2]
    return 1.0 / (1.0 / model.c0 + 1.0 / model.c1)


def phase_speed(model: ModelSpec, omega, zero_limit: bool = False):
    """Phase speed c(omega) > 0, even in omega.

    ``phase_speed(model, 0.0, zero_limit=True)`` evaluates the analytic
    omega -> 0 limit instead; models whose slowness diverges there raise
    :class:`SingularLimitError`.
    """
    if zero_limit:
        return _zero_frequency_speed(model)
    scalar = np.isscalar(omega)
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    if np.any(w == 0.0):
        raise ValueError("omega = 0 requires zero_limit=True")
    vb = model.bound_speed
    slowness = 1.0 / vb - np.imag(alpha_star(model, w.astype(complex))) / w
    if np.any(slowness <= 0):
        raise SingularLimitError("non-positive slowness encountered")
    out = 1.0 / slowness
    return float(out[0]) if scalar else out


def wavenumber(model: ModelSpec, omega):
    """Complex wavenumber k(omega) = omega/v_B + i*alpha_star(omega)."""
    scalar = np.isscalar(omega)
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    out = w / model.bound_speed + 1j * alpha_star(model, w.astype(complex))
    return complex(out[0]) if scalar else out


def _dispersion_rhs(model: ModelSpec, w: np.ndarray) -> np.ndarray:
    """Model's own k^2 dispersion relation, assembled directly from parameters."""
    kind = model.kind
    if kind is ModelKind.SZABO:
        # exact symbol of the loss term: the idealized relation
        # k^2 = w^2/c0^2 + 2i(w/c0)*alpha0*|w|^g holds only up to the
        # tan(pi*g/2) dispersion correction the realized operator carries
        g = model.gamma
        coef = 2.0 * model.alpha0 / (math.cos(math.pi / 2 * g) * model.c0)
        return (w / model.c0) ** 2 - coef * _principal_power(-1j * w, g + 1.0)
    if kind is ModelKind.THERMO_VISCOUS:
        return w**2 / (model.c0**2 * (1.0 - 1j * model.tau0 * w))
    if kind is ModelKind.POWER_LAW:
        g = model.gamma
        at = model.alpha0 / math.cos(math.pi / 2 * g)
        a2 = (
            model.alpha0 * math.tan(math.pi / 2 * g) * model.omega0 ** (g - 1.0)
            if model.omega0 > 0
            else 0.0
        )
        k = w * (1.0 / model.c0 - a2) + 1j * at * _principal_power(-1j * w, g)
        return k**2
    if kind is ModelKind.POWER_LAW_GAMMA1:
        a0, w0 = model.alpha0, model.omega0
        nz = w != 0
        k = np.zeros_like(w, dtype=complex)
        k[nz] = (
            w[nz] / model.c0
            - a0 * (2.0 / np.pi) * w[nz] * np.log(np.abs(w[nz]) / w0)
            + 1j * a0 * np.abs(w[nz])
        )
        return k**2
    # KowarModified
    u = (
        _principal_power(-1j * model.tau0 * w, model.gamma - 1.0)
        if model.tau0 > 0
        else np.zeros_like(w, dtype=complex)
    )
    k = w / model.c0 + w / (model.c1 * np.sqrt(1.0 + u))
    return k**2


def dispersion_residual(model: ModelSpec, grid: FrequencyGrid) -> float:
    """Max normalized mismatch between k^2 reconstructed from alpha_star and
    the model's own dispersion relation: max |k^2 - rhs| / (1 + |k|^2)."""
    w = grid.omegas()
    w = w[w != 0.0]
    k = wavenumber(model, w)
    rhs = _dispersion_rhs(model, w)
    return float(np.max(np.abs(k**2 - rhs) / (1.0 + np.abs(k) ** 2)))
