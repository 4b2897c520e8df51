"""Command-line front end.

Subcommands::

    discordlab sweep-noise  [--v-range 0:30:61] [--vs 9.10] [--imperfections PATH] [--out FILE]
    discordlab sweep-signal [--vs-range 0:60:61] [--v 10.0] [--imperfections PATH] [--out FILE]
    discordlab point --v V --vs VS [--imperfections PATH] [--out FILE]
    discordlab verify-bounds [--instances 200] [--seed 0] [--out FILE]
    discordlab mc-run [--v 10] [--vs 9.1] [--samples N] [--seed S] [--imperfections PATH] [--out FILE]

``--imperfections`` takes a JSON file, or the names ``default`` (experimental
constants on ideal couplings) and ``ideal``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import finite_dim as fd
from .errors import DomainError
from .imperfections import ImperfectionConfig, load_config, model_rates
from .montecarlo import SampleConfig, mc_protocol_check
from .protocol import DEFAULT_V, DEFAULT_VS, evaluate_point

BASE_COLUMNS = ("v", "vs", "discord_before", "discord_after", "discord_consumed",
                "i_c", "i_q", "i_q_prot", "i_c_prot", "delta_i")
MODEL_COLUMNS = ("i_q_model", "i_c_model", "delta_i_model")

DEFAULT_V_RANGE = (0.0, 30.0, 61)
DEFAULT_VS_RANGE = (0.0, 60.0, 61)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Range:
    lo: float
    hi: float
    steps: int

    @classmethod
    def parse(cls, text: str) -> "Range":
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range must look like min:max:steps, got {text!r}")
        try:
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"cannot parse range {text!r}") from exc
        if not (np.isfinite(lo) and np.isfinite(hi)) or lo > hi or steps < 2:
            raise UsageError(f"range needs finite min <= max and steps >= 2, got {text!r}")
        if lo < 0:
            raise UsageError(f"variances must be non-negative, got min {lo}")
        return cls(lo, hi, steps)

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class RunConfig:
    command: str
    v: float | None = None
    vs: float | None = None
    v_range: Range | None = None
    vs_range: Range | None = None
    imperfections: ImperfectionConfig | None = None
    n_samples: int = 10**6
    seed: int = 0
    instances: int = 200
    out: Path | None = None


def format_value(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if x == 0.0:
        return "0"
    return f"{x:.12g}"


def protocol_row(v: float, vs: float, cfg: ImperfectionConfig | None = None) -> dict:
    row = evaluate_point(v, vs).as_dict()
    if cfg is not None:
        i_q_model, i_c_model = model_rates(cfg, v, vs)
        row.update(i_q_model=i_q_model, i_c_model=i_c_model, delta_i_model=i_q_model - row["i_c"])
    return row


def emit_csv(rows: Sequence[dict], path=None, columns: Sequence[str] | None = None) -> None:
    """Write ``rows`` as UTF-8, LF-terminated CSV to ``path`` (standard output if ``None``)."""
    if not rows:
        raise DomainError("refusing to write an empty table")
    if columns is None:
        columns = BASE_COLUMNS + (MODEL_COLUMNS if "i_q_model" in rows[0] else ())
    lines = [",".join(columns)]
    lines += [",".join(format_value(r[c]) for c in columns) for r in rows]
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def run_sweep(config: RunConfig) -> list[dict]:
    if config.command == "sweep-noise":
        vs = DEFAULT_VS if config.vs is None else config.vs
        rng = config.v_range or Range(*DEFAULT_V_RANGE)
        pairs = [(v, vs) for v in rng.values()]
    elif config.command == "sweep-signal":
        v = DEFAULT_V if config.v is None else config.v
        rng = config.vs_range or Range(*DEFAULT_VS_RANGE)
        pairs = [(v, vs) for vs in rng.values()]
    elif config.command == "point":
        pairs = [(config.v, config.vs)]
    else:
        raise UsageError(f"not a sweep command: {config.command}")
    rows = [protocol_row(v, vs, config.imperfections) for v, vs in pairs]
    emit_csv(rows, config.out)
    return rows


def sweep_summary(rows: list[dict], command: str) -> str:
    key = "v" if command == "sweep-noise" else "vs"
    d = np.array([r["delta_i"] for r in rows])
    parts = [f"{len(rows)} points", f"max delta_i {d.max():.6g} at {key}={rows[int(d.argmax())][key]:.6g}"]
    if "delta_i_model" in rows[0]:
        dm = np.array([r["delta_i_model"] for r in rows])
        parts.append(f"max delta_i_model {dm.max():.6g} at {key}={rows[int(dm.argmax())][key]:.6g}")
    return "; ".join(parts)


def verify_bounds(instances: int, seed: int, tol: float = 1e-3) -> dict:
    """Bound check on the named qubit examples plus seeded random instances."""
    named = {
        "dense_coding": (fd.singlet(), fd.pauli_ensemble()),
        "three_basis_pauli": (fd.three_basis_state(), fd.pauli_ensemble()),
        "classical_pauli": (fd.classically_correlated(), fd.pauli_ensemble()),
    }
    rng = np.random.default_rng(seed)
    cases = list(named.items())
    for i in range(instances):
        cases.append((f"random_{i}", (fd.random_density_matrix(4, rng), fd.random_ensemble(4, 2, rng))))
    records, violations = [], []
    for name, (rho, ens) in cases:
        rep = fd.bound_check(rho, ens, tol=tol)
        rec = dict(instance=name, **rep.as_dict())
        records.append(rec)
        if not (rep.lower_ok and rep.upper_ok):
            violations.append(rec)
    upper = max(r["delta_i"] - r["delta_discord"] for r in records)
    lower = max(r["delta_discord"] - r["j_tilde"] - r["delta_i"] for r in records)
    return dict(instances=len(records), seed=seed, tolerance=tol,
                max_upper_excess=upper, max_lower_excess=lower,
                violations=violations, records=records)


def _imperfections(value: str | None) -> ImperfectionConfig | None:
    if value is None:
        return None
    if value == "default":
        return ImperfectionConfig()
    if value == "ideal":
        return ImperfectionConfig.ideal()
    return load_config(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discordlab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, imperfections=True):
        p.add_argument("--out", type=Path, default=None, help="output file (default: standard output)")
        if imperfections:
            p.add_argument("--imperfections", default=None,
                           help="imperfection config JSON, or 'default' / 'ideal'")

    p = sub.add_parser("sweep-noise", help="sweep the discording noise V at fixed V_s")
    p.add_argument("--v-range", default=None, help="min:max:steps (default 0:30:61)")
    p.add_argument("--vs", type=float, default=DEFAULT_VS)
    common(p)

    p = sub.add_parser("sweep-signal", help="sweep the signal variance V_s at fixed V")
    p.add_argument("--vs-range", default=None, help="min:max:steps (default 0:60:61)")
    p.add_argument("--v", type=float, default=DEFAULT_V)
    common(p)

    p = sub.add_parser("point", help="evaluate a single (V, V_s) point")
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--vs", type=float, required=True)
    common(p)

    p = sub.add_parser("verify-bounds", help="check the discord bounds on random qubit pairs")
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    common(p, imperfections=False)

    p = sub.add_parser("mc-run", help="Monte Carlo estimate of the coherent-decoding rate")
    p.add_argument("--v", type=float, default=DEFAULT_V)
    p.add_argument("--vs", type=float, default=DEFAULT_VS)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    return parser


def _write_json(obj: dict, path: Path | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("sweep-noise", "sweep-signal", "point"):
            if args.command == "point" and (args.v < 0 or args.vs < 0):
                raise UsageError("V and V_s must be non-negative")
            config = RunConfig(
                command=args.command,
                v=getattr(args, "v", None),
                vs=getattr(args, "vs", None),
                v_range=Range.parse(args.v_range) if getattr(args, "v_range", None) else None,
                vs_range=Range.parse(args.vs_range) if getattr(args, "vs_range", None) else None,
                imperfections=_imperfections(args.imperfections),
                out=args.out,
            )
            fixed = config.vs if config.command == "sweep-noise" else config.v
            if fixed < 0:
                raise UsageError("fixed variance must be non-negative")
            rows = run_sweep(config)
            if args.out is not None:
                print(f"wrote {args.out}: {sweep_summary(rows, args.command)}")
            return 0

        if args.command == "verify-bounds":
            if args.instances < 0:
                raise UsageError("--instances must be non-negative")
            report = verify_bounds(args.instances, args.seed)
            if args.out is not None:
                cols = ("instance", "i_q", "i_c", "delta_i", "delta_discord", "j_tilde", "lower_ok", "upper_ok")
                emit_csv(report["records"], args.out, cols)
            summary = {k: v for k, v in report.items() if k != "records"}
            summary["status"] = "ok" if not report["violations"] else "violation"
            _write_json(summary, None)
            return 0 if not report["violations"] else 1

        if args.command == "mc-run":
            cfg = SampleConfig(v=args.v, vs=args.vs, n_samples=args.samples, seed=args.seed,
                               imperfection=_imperfections(args.imperfections))
            report = mc_protocol_check(cfg).as_dict()
            report.update(v=args.v, vs=args.vs, seed=args.seed)
            _write_json(report, args.out)
            if args.out is not None:
                print(f"wrote {args.out}")
            return 0
    except UsageError as exc:
        parser.error(str(exc))
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
