"""Command-line front end.

Every capability is exposed as a batch subcommand reading a JSON config
and writing deterministic CSV/JSON artifacts (optionally with figures)
into an output directory:

    attenuwave dispersion --config run.json --out results/
    attenuwave certify    --config run.json --out results/

Exit codes: 0 success (and CERTIFIED_CAUSAL for certify), 1 REFUTED,
2 INCONCLUSIVE, 64 bad config/usage, 65 domain errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .certify import certify, default_scan
from .dispersion import (
    ModelSpec,
    alpha_star,
    attenuation,
    phase_speed,
)
from .exceptions import AttenuwaveError, ConfigError
from .grids import FrequencyGrid, TimeSignal
from .kernels import (
    frac_deriv,
    gaussian_regularizer,
    k_star,
    kernel_time_domain,
    l_half,
    szabo_multiplier,
    t_half,
)
from .kk import interior_band, kk_phase_speed
from .output import read_json, write_csv, write_json
from .solve import PointSourceSum, SourceTerm, superpose
from .synth import assemble_green

EX_USAGE = 64
EX_DATAERR = 65


def _require_keys(block: dict, allowed: set[str], required: set[str], name: str) -> None:
    unknown = set(block) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {name!r} block: {sorted(unknown)}")
    missing = required - set(block)
    if missing:
        raise ConfigError(f"missing keys in {name!r} block: {sorted(missing)}")


class RunConfig:
    """Validated run configuration (model + grid + command blocks)."""

    TOP_KEYS = {"model", "grid", "certify", "green", "kernel", "kk", "solve", "dispersion"}

    def __init__(self, raw: dict):
        if not isinstance(raw, dict):
            raise ConfigError("config root must be an object")
        unknown = set(raw) - self.TOP_KEYS
        if unknown:
            raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
        self.raw = raw

    @classmethod
    def load(cls, path: Path) -> "RunConfig":
        try:
            return cls(read_json(path))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot parse config {path}: {exc}") from exc

    def model(self) -> ModelSpec:
        if "model" not in self.raw:
            raise ConfigError("config needs a 'model' block")
        return ModelSpec.from_record(self.raw["model"])

    def grid(self) -> FrequencyGrid:
        if "grid" not in self.raw:
            raise ConfigError("config needs a 'grid' block")
        block = self.raw["grid"]
        _require_keys(block, {"n", "domega"}, {"n", "domega"}, "grid")
        return FrequencyGrid(n=int(block["n"]), domega=float(block["domega"]))

    def block(self, name: str, allowed: set[str], required: set[str] = frozenset()) -> dict:
        block = self.raw.get(name, {})
        _require_keys(block, allowed, set(required), name)
        return block


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("ATTENUWAVE_THREADS")
    return max(1, int(env)) if env else 1


def cmd_dispersion(cfg: RunConfig, out: Path, plot: bool, threads: int) -> int:
    model, grid = cfg.model(), cfg.grid()
    cfg.block("dispersion", set())
    w = grid.omegas()
    a_star = alpha_star(model, w.astype(complex))
    att = attenuation(model, w)
    speed = np.full(grid.n, np.nan)
    nz = w != 0
    speed[nz] = phase_speed(model, w[nz])
    write_csv(
        out / "dispersion.csv",
        ["omega", "re_alpha_star", "im_alpha_star", "attenuation", "phase_speed"],
        [w, a_star.real, a_star.imag, att, speed],
    )
    if plot:
        from . import plotting

        plotting.plot_dispersion(
            w, att, speed, model.kind.value, out / "dispersion.png"
        )
    return 0


def cmd_certify(cfg: RunConfig, out: Path, plot: bool, threads: int) -> int:
    model = cfg.model()
    block = cfg.block("certify", {"cr_tol", "n_rays", "n_radii", "decades"})
    scan = default_scan(
        model,
        n_rays=int(block.get("n_rays", 16)),
        n_radii=int(block.get("n_radii", 96)),
        decades=float(block.get("decades", 6.0)),
    )
    report = certify(
        model, scan, cr_tol=float(block.get("cr_tol", 1e-4)), threads=threads
    )
    write_json(out / "certify.json", report.to_json_dict())
    if plot:
        from . import plotting

        plotting.plot_growth_fits(report, model.kind.value, out / "certify.png")
    print(f"{model.kind.value}: {report.verdict.value}")
    return {"CERTIFIED_CAUSAL": 0, "REFUTED": 1, "INCONCLUSIVE": 2}[report.verdict.value]


def cmd_green(cfg: RunConfig, out: Path, plot: bool, threads: int) -> int:
    model, grid = cfg.model(), cfg.grid()
    block = cfg.block("green", {"radii", "tail_floor", "taper"}, {"radii"})
    radii = np.asarray([float(r) for r in block["radii"]])
    field = assemble_green(
        model,
        radii,
        grid,
        tail_floor=float(block.get("tail_floor", 1e-10)),
        taper=bool(block.get("taper", False)),
        threads=threads,
    )
    rows_r, rows_t, rows_v = [], [], []
    for r, shell in zip(field.radii, field.shells):
        rows_r.append(np.full(grid.n, r))
        rows_t.append(shell.times())
        rows_v.append(shell.samples)
    write_csv(
        out / "green.csv",
        ["r", "t", "value"],
        [np.concatenate(rows_r), np.concatenate(rows_t), np.concatenate(rows_v)],
    )
    write_json(
        out / "green.json",
        {
            "model": model.to_record(),
            "grid": {"n": grid.n, "domega": grid.domega},
            "bound_speed": field.bound_speed,
            "radii": [float(r) for r in field.radii],
            "travel_time": [float(t) for t in field.travel_time],
            "floor": [float(s.meta["floor"]) for s in field.shells],
            "guard_energy": [float(s.meta["guard_energy"]) for s in field.shells],
        },
    )
    if plot:
        from . import plotting

        plotting.plot_signals(
            field.shells,
            [f"r={r:g}" for r in field.radii],
            f"{model.kind.value} shells (shifted time)",
            out / "green.png",
        )
    return 0


_KERNEL_KEYS = {"label", "gamma", "tau0", "alpha0", "c0", "regularize"}


def _kernel_from_block(block: dict, cfg: RunConfig):
    label = block.get("label")
    if label == "FracDeriv":
        return frac_deriv(float(block["gamma"]))
    if label == "SzaboL":
        return szabo_multiplier(
            float(block["gamma"]), float(block["alpha0"]), float(block["c0"])
        )
    if label == "KStar":
        return k_star(cfg.model())
    if label == "THalf":
        return t_half(float(block["gamma"]), float(block["tau0"]))
    if label == "LHalf":
        return l_half(float(block["gamma"]), float(block["tau0"]))
    raise ConfigError(f"unknown kernel label: {label!r}")


def cmd_kernel(cfg: RunConfig, out: Path, plot: bool, threads: int) -> int:
    grid = cfg.grid()
    block = cfg.block("kernel", _KERNEL_KEYS, {"label"})
    mult = _kernel_from_block(block, cfg)
    regularize = bool(block.get("regularize", mult.growing))
    reg = gaussian_regularizer(grid) if regularize else None
    kernel = kernel_time_domain(mult, grid, regularizer=reg)
    write_csv(out / "kernel.csv", ["t", "value"], [kernel.times(), kernel.samples])
    write_json(
        out / "kernel.json",
        {
            "label": mult.label,
            "params": {k: v for k, v in mult.params.items() if v is not None},
            "grid": {"n": grid.n, "domega": grid.domega},
            "regularized": regularize,
        },
    )
    if plot:
        from . import plotting

        plotting.plot_signals(
            [kernel], [mult.label], f"{mult.label} kernel", out / "kernel.png"
        )
    return 0


def cmd_kk(cfg: RunConfig, out: Path, plot: bool, threads: int) -> int:
    model, grid = cfg.model(), cfg.grid()
    cfg.block("kk", set())
    w = grid.omegas()
    c_kk = kk_phase_speed(model, grid)
    mask = interior_band(grid)
    c_closed = np.full(grid.n, np.nan)
    nz = w != 0
    c_closed[nz] = phase_speed(model, w[nz])
    write_csv(
        out / "kk.csv",
        ["omega", "kk_phase_speed", "closed_form_phase_speed", "trusted"],
        [w, c_kk, c_closed, mask.astype(float)],
    )
    write_json(
        out / "kk.json",
        {"model": model.to_record(), "grid": {"n": grid.n, "domega": grid.domega}},
    )
    if plot:
        from . import plotting

        plotting.plot_kk(w, c_kk, c_closed, mask, model.kind.value, out / "kk.png")
    return 0


def _waveform_from_spec(spec: dict, grid: FrequencyGrid) -> TimeSignal:
    _require_keys(spec, {"shape", "center", "width"}, {"shape", "center", "width"}, "waveform")
    if spec["shape"] != "gaussian":
        raise ConfigError(f"unknown waveform shape: {spec['shape']!r}")
    t = grid.times()
    c, s = float(spec["center"]), float(spec["width"])
    return TimeSignal(
        t0=t[0], dt=grid.dt, samples=np.exp(-((t - c) ** 2) / (2 * s * s))
    )


def cmd_solve(cfg: RunConfig, out: Path, plot: bool, threads: int) -> int:
    model, grid = cfg.model(), cfg.grid()
    block = cfg.block("solve", {"sources", "probes"}, {"sources", "probes"})
    terms = []
    for src in block["sources"]:
        _require_keys(src, {"position", "weight", "waveform"}, {"position", "waveform"}, "source")
        terms.append(
            SourceTerm(
                position=np.asarray(src["position"], dtype=float),
                weight=float(src.get("weight", 1.0)),
                waveform=_waveform_from_spec(src["waveform"], grid),
            )
        )
    probes = [np.asarray(p, dtype=float) for p in block["probes"]]
    responses = superpose(model, PointSourceSum(terms=tuple(terms)), probes, grid)
    for i, resp in enumerate(responses):
        write_csv(out / f"solve_probe{i}.csv", ["t", "value"], [resp.times(), resp.samples])
    write_json(
        out / "solve.json",
        {
            "model": model.to_record(),
            "grid": {"n": grid.n, "domega": grid.domega},
            "probes": [list(map(float, p)) for p in probes],
        },
    )
    if plot:
        from . import plotting

        plotting.plot_signals(
            responses,
            [f"probe {i}" for i in range(len(responses))],
            f"{model.kind.value} responses",
            out / "solve.png",
        )
    return 0


_COMMANDS = {
    "dispersion": cmd_dispersion,
    "certify": cmd_certify,
    "green": cmd_green,
    "kernel": cmd_kernel,
    "kk-check": cmd_kk,
    "solve": cmd_solve,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attenuwave",
        description="Attenuated-wave dispersion, Green-function synthesis, "
        "and numerical causality certification.",
    )
    parser.add_argument("--version", action="version", version=f"attenuwave {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} report")
        p.add_argument("--config", type=Path, required=True, help="JSON run config")
        p.add_argument("--out", type=Path, required=True, help="output directory")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: ATTENUWAVE_THREADS or 1)")
        p.add_argument("--plot", action="store_true",
                       help="render figures next to the delimited output")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = RunConfig.load(args.config)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return _COMMANDS[args.command](cfg, out, args.plot, _threads(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EX_USAGE
    except AttenuwaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
