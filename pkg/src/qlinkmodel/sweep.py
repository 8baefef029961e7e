"""Configuration files, path-length sweeps and table output.

Teleportation sweeps are indexed by the end-to-end length ``2L`` (each
source-to-memory path is half of it); GHZ sweeps by the source-to-memory
length ``L``.  Column names carry the convention.
"""
from __future__ import annotations

import configparser
import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import epp, ghz, qecc, qss, teleport
from .errors import ConfigError, DomainError, ModelError
from .gaussian_fock import fock_diagonals
from .link_params import SystemConfig, pair_moments

__all__ = [
    "SYSTEMS",
    "CONFIG_KEYS",
    "SweepSpec",
    "load_config",
    "parse_config",
    "run_sweep",
    "coded_crossover",
    "format_rows",
    "write_rows",
    "read_csv",
]

SYSTEMS = ("teleport", "teleport-qecc", "epp", "ghz-dual", "ghz-heralded")
CODE_LENGTH = qecc.N_QUBITS

# File key -> (SystemConfig field, conversion)
CONFIG_KEYS = {
    "pump_power_normalized": ("pump_amplitude", lambda g2: math.sqrt(g2) if g2 >= 0 else g2),
    "pump_amplitude": ("pump_amplitude", float),
    "excess_loss_db": ("excess_loss_db", float),
    "fiber_loss_db_per_km": ("fiber_loss_db_per_km", float),
    "gamma_ratio_source": ("gamma_ratio_source", float),
    "gamma_ratio_memory": ("gamma_ratio_memory", float),
    "linewidth_ratio": ("linewidth_ratio", float),
    "cycle_rate_hz": ("cycle_rate_hz", float),
}


@dataclass(frozen=True)
class SweepSpec:
    """One sweep request.

    ``trials`` is required when ``coded`` is set for a GHZ system, which is
    the only Monte Carlo path.  ``workers`` spreads sweep points over
    processes; the output does not depend on it.
    """

    system: str = "teleport"
    start_km: float = 0.0
    end_km: float = 100.0
    step_km: float = 2.0
    coded: bool = False
    trials: Optional[int] = None
    seed: int = 0
    scheme: str = "secret"
    workers: int = 1

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise DomainError(f"unknown system {self.system!r}; expected one of {SYSTEMS}")
        if not self.step_km > 0:
            raise DomainError("step_km must be positive")
        if not 0 <= self.start_km <= self.end_km:
            raise DomainError("need 0 <= start_km <= end_km")
        if self.trials is not None and self.trials < 1:
            raise DomainError("trials must be at least 1")
        if self.monte_carlo and self.trials is None:
            raise DomainError("coded GHZ sweeps are Monte Carlo and need trials")
        if self.scheme not in ("secret", "shares"):
            raise DomainError(f"unknown coding scheme {self.scheme!r}")

    @property
    def monte_carlo(self) -> bool:
        return self.coded and self.system.startswith("ghz")

    def grid(self) -> np.ndarray:
        n = int(math.floor((self.end_km - self.start_km) / self.step_km + 1e-9)) + 1
        return self.start_km + self.step_km * np.arange(n)


def parse_config(text: str, source: str = "<config>") -> SystemConfig:
    """Parse flat ``key = value`` text with ``#`` comments into a config."""
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",), interpolation=None
    )
    parser.optionxform = str
    try:
        parser.read_string("[config]\n" + text, source=source)
    except configparser.ParsingError as exc:
        lines = ", ".join(str(lineno - 1) for lineno, _ in exc.errors)
        raise ConfigError(f"{source}: cannot parse line {lines}") from None
    except configparser.Error as exc:
        msg = str(exc)
        lineno = getattr(exc, "lineno", None)
        if lineno is not None:
            msg = f"line {lineno - 1}: duplicate or malformed entry"
        raise ConfigError(f"{source}: {msg}") from None
    values = {}
    for key, raw in parser["config"].items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{source}: unknown key {key!r}")
        field, conv = CONFIG_KEYS[key]
        try:
            number = float(raw)
        except ValueError:
            raise ConfigError(f"{source}: {key} = {raw!r} is not a number") from None
        if key == "pump_power_normalized" and not 0 <= number < 1:
            raise ConfigError(f"{source}: {key} = {number!r} must lie in [0, 1)")
        if field in values:
            raise ConfigError(f"{source}: {key} sets {field} twice")
        values[field] = conv(number)
    try:
        return SystemConfig(**values)
    except DomainError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path=None) -> SystemConfig:
    """Read a config file; ``None`` gives the default operating point."""
    if path is None:
        return SystemConfig()
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), source=str(path))


# -- rows -----------------------------------------------------------------------

def _teleport_row(cfg: SystemConfig, length: float, coded: bool, with_epp: bool) -> dict:
    row = {"path_km_end_to_end": length, "path_km_per_link": length / 2}
    m = pair_moments(cfg, length / 2)
    row.update(n_bar=m.n_bar, n_tilde=m.n_tilde)
    fd = fock_diagonals(m)
    ev = teleport.bell_event_probabilities(fd)
    _, ps = teleport.conditional_werner(fd)
    rate = teleport.singlet_throughput(cfg, ev.psi_minus)
    row.update(pr_singlet=ev.psi_minus, Ps=ps, F_uncoded=teleport.average_fidelity(ps), throughput=rate)
    if coded:
        ps_c = qecc.logical_fidelity(ps)
        row.update(Ps_coded=ps_c, F_coded=teleport.average_fidelity(ps_c), throughput_normalized=rate / CODE_LENGTH)
    if with_epp:
        d = epp.hashing_yield(teleport.BellDiagonalState.werner(ps))
        row.update(yield_D=d, throughput_purified=epp.purified_throughput(d, rate), F_purified=epp.purified_fidelity(d))
    return row


_GHZ_COLUMNS = ["p_" + lbl.replace("+", "p").replace("-", "m") for lbl in ghz.BASIS_LABELS]


def _ghz_row(cfg: SystemConfig, length: float, spec: SweepSpec, index: int) -> dict:
    row = {"path_km_source_to_memory": length}
    m = pair_moments(cfg, length)
    dual = spec.system == "ghz-dual"
    s = ghz.dual_dpa_diag(m) if dual else ghz.heralded_diag(m)
    row.update(zip(_GHZ_COLUMNS, map(float, s.probabilities)))
    closed = ghz.qss_fidelity_dual(s) if dual else ghz.qss_fidelity_heralded(s)
    exact, _ = qss.qss_average_fidelity_exact(s)
    row.update(F_closed_form=closed, F_uncoded=exact)
    if spec.coded:
        row["F_coded_exact"] = qss.qss_coded_fidelity_exact(s, spec.scheme)
        res = qss.qss_coded_fidelity_mc(s, spec.trials, seed=(spec.seed, index), scheme=spec.scheme)
        row.update(F_coded=res.mean, F_coded_stderr=res.stderr)
    return row


def _point(args) -> dict:
    spec, cfg, index, length = args
    try:
        if spec.system.startswith("ghz"):
            row = _ghz_row(cfg, length, spec, index)
        else:
            coded = spec.coded or spec.system == "teleport-qecc"
            row = _teleport_row(cfg, length, coded, spec.system == "epp")
        row["status"] = "ok"
    except ModelError as exc:
        key = "path_km_source_to_memory" if spec.system.startswith("ghz") else "path_km_end_to_end"
        row = {key: length, "status": f"error: {type(exc).__name__}"}
    return row


def run_sweep(spec: SweepSpec, cfg: SystemConfig) -> list[dict]:
    """One row per grid point, in grid order.  Invalid points become error rows."""
    jobs = [(spec, cfg, i, float(x)) for i, x in enumerate(spec.grid())]
    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            rows = list(pool.map(_point, jobs))
    else:
        rows = [_point(j) for j in jobs]
    return _align(rows)


def coded_crossover(rows: list[dict], degree: int = 2) -> float:
    """Path length where a least-squares fit of ``F_coded - F_uncoded`` crosses zero.

    Returns nan when the fitted gap has no sign change on the swept range.
    """
    ok = [r for r in rows if r["status"] == "ok"]
    x = np.array([r["path_km_source_to_memory"] for r in ok])
    gap = np.array([r["F_coded"] - r["F_uncoded"] for r in ok])
    poly = np.polynomial.Polynomial.fit(x, gap, degree)
    roots = [z.real for z in poly.roots() if abs(z.imag) < 1e-12 and x[0] <= z.real <= x[-1]]
    falling = [z for z in roots if poly.deriv()(z) < 0]
    return float(min(falling)) if falling else math.nan


def _align(rows: list[dict]) -> list[dict]:
    """Give every row the full column set; error rows get nan fields."""
    columns: list[str] = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    columns.remove("status")
    columns.append("status")
    return [{k: r.get(k, math.nan) for k in columns} for r in rows]


# -- serialization ----------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return f"{float(v):.12g}"


def format_rows(rows: list[dict], fmt: str = "csv") -> str:
    """Render rows as CSV (12 significant digits, LF endings) or JSON."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            writer.writerow(rows[0].keys())
            for r in rows:
                writer.writerow(_fmt(v) for v in r.values())
        return buf.getvalue()
    if fmt == "json":
        def conv(v):
            if isinstance(v, str):
                return v
            x = float(_fmt(v))
            return None if math.isnan(x) else x
        payload = [{k: conv(v) for k, v in r.items()} for r in rows]
        return json.dumps(payload, indent=1) + "\n"
    raise DomainError(f"unknown format {fmt!r}")


def write_rows(rows: list[dict], path, fmt: str = "csv") -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_rows(rows, fmt))


def read_csv(path) -> list[dict]:
    """Parse a table written by :func:`write_rows`; numeric cells become floats."""
    with open(path, encoding="utf-8", newline="") as fh:
        out = []
        for r in csv.DictReader(fh):
            out.append({k: (v if k == "status" else float(v)) for k, v in r.items()})
        return out
