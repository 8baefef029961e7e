"""Operating point of the dual-OPA link and the Gaussian moments it produces.

Every downstream model is driven by four numbers per signal/idler mode pair:
the photon-number-like quantities ``I+`` and ``I-`` and their difference and
sum, ``n_bar = I- - I+`` and ``n_tilde = I- + I+``.  They follow from

    I± = eta_L * (gamma/Gamma) * (gamma_c/Gamma_c) * G
         / [(1 ± G) * (1 ± G + Gamma_c/Gamma)]

where ``G**2`` is the OPA pump power normalized to oscillation threshold and
``eta_L`` is the transmissivity of one source-to-memory path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "SystemConfig",
    "ModePairMoments",
    "link_transmissivity",
    "pair_moments",
]


@dataclass(frozen=True)
class SystemConfig:
    """Architecture operating point.

    Defaults are the reference operating point:
    each OPA at 1% of threshold, 5 dB excess loss per path, 0.2 dB/km fiber,
    memory/source linewidth ratio 0.5 and a 500 kHz loading cycle.

    Attributes
    ----------
    pump_amplitude : float
        ``G``, with ``0 <= G < 1``.
    excess_loss_db : float
        Excess loss of one source-to-memory path, in dB.
    fiber_loss_db_per_km : float
        Fiber attenuation, in dB/km.
    gamma_ratio_source : float
        Output-coupling rate over linewidth of the OPA cavity, in (0, 1].
    gamma_ratio_memory : float
        Output-coupling rate over linewidth of the memory cavity, in (0, 1].
    linewidth_ratio : float
        Memory-cavity linewidth over OPA linewidth, ``Gamma_c/Gamma > 0``.
    cycle_rate_hz : float
        Memory loading attempts per second.
    """

    pump_amplitude: float = 0.1
    excess_loss_db: float = 5.0
    fiber_loss_db_per_km: float = 0.2
    gamma_ratio_source: float = 1.0
    gamma_ratio_memory: float = 1.0
    linewidth_ratio: float = 0.5
    cycle_rate_hz: float = 5.0e5

    def __post_init__(self):
        checks = {
            "pump_amplitude": 0.0 <= self.pump_amplitude < 1.0,
            "excess_loss_db": self.excess_loss_db >= 0.0,
            "fiber_loss_db_per_km": self.fiber_loss_db_per_km >= 0.0,
            "gamma_ratio_source": 0.0 < self.gamma_ratio_source <= 1.0,
            "gamma_ratio_memory": 0.0 < self.gamma_ratio_memory <= 1.0,
            "linewidth_ratio": self.linewidth_ratio > 0.0,
            "cycle_rate_hz": self.cycle_rate_hz >= 0.0,
        }
        for name, ok in checks.items():
            value = getattr(self, name)
            if not (ok and math.isfinite(value)):
                raise DomainError(f"{name}={value!r} is out of range")

    @property
    def pump_power_normalized(self) -> float:
        """``G**2``, the pump power relative to oscillation threshold."""
        return self.pump_amplitude**2

    @classmethod
    def from_pump_power(cls, pump_power_normalized: float, **kwargs) -> "SystemConfig":
        """Build a config from ``G**2`` instead of ``G``."""
        if not 0.0 <= pump_power_normalized < 1.0:
            raise DomainError(
                f"pump_power_normalized={pump_power_normalized!r} must lie in [0, 1)"
            )
        return cls(pump_amplitude=math.sqrt(pump_power_normalized), **kwargs)


@dataclass(frozen=True)
class ModePairMoments:
    """Gaussian-state parameters of one signal/idler mode pair.

    ``eta`` is the end-to-end transmissivity ``eta_L * (gamma/Gamma) *
    (gamma_c/Gamma_c)`` used by the heralded GHZ model; ``a_param`` is
    ``n_bar * (1 + n_bar) - n_tilde**2``.
    """

    i_plus: float
    i_minus: float
    n_bar: float
    n_tilde: float
    eta: float
    a_param: float

    @classmethod
    def from_occupations(cls, n_bar: float, n_tilde: float, eta: float = 1.0) -> "ModePairMoments":
        """Moments from ``(n_bar, n_tilde)`` directly, bypassing the link model."""
        if n_bar < 0 or n_tilde < 0:
            raise DomainError("n_bar and n_tilde must be nonnegative")
        if not 0.0 < eta <= 1.0:
            raise DomainError(f"eta={eta!r} must lie in (0, 1]")
        return cls(
            i_plus=(n_tilde - n_bar) / 2,
            i_minus=(n_tilde + n_bar) / 2,
            n_bar=n_bar,
            n_tilde=n_tilde,
            eta=eta,
            a_param=n_bar * (1 + n_bar) - n_tilde**2,
        )


def link_transmissivity(path_km: float, cfg: SystemConfig) -> float:
    """Power transmissivity of one source-to-memory path of length ``path_km``.

    >>> link_transmissivity(25.0, SystemConfig())
    0.1
    """
    if not path_km >= 0.0:
        raise DomainError(f"path length must be nonnegative, got {path_km!r}")
    loss_db = cfg.excess_loss_db + cfg.fiber_loss_db_per_km * path_km
    return 10.0 ** (-loss_db / 10.0)


def pair_moments(cfg: SystemConfig, path_km: float) -> ModePairMoments:
    """Gaussian moments at the memories for a per-path length ``path_km``."""
    G = cfg.pump_amplitude
    if not 0.0 <= G < 1.0:
        raise DomainError(f"pump amplitude G={G!r} is at or above threshold")
    eta_l = link_transmissivity(path_km, cfg)
    coupling = cfg.gamma_ratio_source * cfg.gamma_ratio_memory
    r = cfg.linewidth_ratio
    scale = eta_l * coupling * G
    i_plus = scale / ((1 + G) * (1 + G + r))
    i_minus = scale / ((1 - G) * (1 - G + r))
    n_bar = i_minus - i_plus
    n_tilde = i_minus + i_plus
    return ModePairMoments(
        i_plus=i_plus,
        i_minus=i_minus,
        n_bar=n_bar,
        n_tilde=n_tilde,
        eta=eta_l * coupling,
        a_param=n_bar * (1 + n_bar) - n_tilde**2,
    )
