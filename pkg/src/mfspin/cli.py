"""Exact free energies and interpolation checks for mean-field spin models.

Exit codes: 0 success, 1 usage or resource error, 2 a proven inequality
failed numerically (only raised for models with convex g, plus the
model-independent identities such as alpha'' >= 0).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import brute
from .disorder import quenched_average, sample_disorder
from .gfunctions import BUILTINS
from .interpolation import (Interpolation, SplitSpec, all_splits, condition_check,
                            interpolation_report, sign_propagation_check)
from .limits import doubling_ladder, ladder
from .models import (PSpinPlain, PSpinTilde, load_model, model_to_dict, scalar)
from .sectors import SectorBudgetError, achievable_gmax, alpha, model_table

COMMANDS = ("alpha", "condition", "interpolate", "converge", "disorder", "oracle-check")
MODELS = ("cw", "pspin", "pspin-tilde", "scalar", "rfcw", "hopfield")
WORKERS_ENV = "MFSPIN_WORKERS"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    p: int = 2
    k: int = 3
    g: str = "square"
    M: int = 2
    model_file: str | None = None
    beta: list = field(default_factory=lambda: [1.0])
    N: list = field(default_factory=list)
    split: str | None = None
    seed: int = 0
    samples: int = 20
    grid: int = 21
    out: str | None = None
    format: str = "json"
    tol: float = 1e-10

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.model_file is None and self.model not in MODELS:
            raise UsageError(f"--model must be one of {MODELS} (or use --model-file)")
        if self.format not in ("json", "csv"):
            raise UsageError("--format must be json or csv")
        if any(b < 0 for b in self.beta):
            raise UsageError("beta must be >= 0")
        if not self.N and self.command != "converge" and not self._file_has_sites():
            raise UsageError("--N is required")
        if any(n < 1 for n in self.N):
            raise UsageError("N must be >= 1")
        if self.command in ("interpolate",) and not self.split:
            raise UsageError("interpolate needs --split N1,N2")
        if self.split and self.split != "all":
            try:
                s = SplitSpec.parse(self.split)
            except ValueError as err:
                raise UsageError(f"bad --split {self.split!r}: {err}") from None
            if self.N and s.N != self.N[0]:
                raise UsageError(f"split {self.split} does not add up to N={self.N[0]}")
        if self.model == "scalar" and self.model_file is None:
            self._scalar_g()
        if self.command == "disorder" and self.model not in ("rfcw", "hopfield"):
            raise UsageError("disorder needs --model rfcw or hopfield")
        if self.command == "disorder" and self.samples < 2:
            raise UsageError("--samples must be >= 2")
        if self.command == "oracle-check" and any(n > brute.MAX_N for n in self.N):
            raise UsageError(f"oracle-check is limited to N <= {brute.MAX_N}")

    def _file_has_sites(self):
        return self.model_file is not None

    def _scalar_g(self):
        if self.g in BUILTINS:
            return scalar(self.g)
        if self.g.startswith("poly:"):
            try:
                return scalar([float(c) for c in self.g[5:].split(",")])
            except ValueError as err:
                raise UsageError(f"bad polynomial {self.g!r}: {err}") from None
        raise UsageError(f"--g must be a builtin {sorted(BUILTINS)} or poly:a0,a1,...")


def build_model(cfg: RunConfig, N: int | None = None):
    """Model for the config; disordered models draw sample 0 of ``cfg.seed``."""
    if cfg.model_file:
        try:
            return load_model(cfg.model_file)
        except (OSError, ValueError, KeyError, TypeError) as err:
            raise UsageError(f"malformed model file {cfg.model_file}: {err}") from None
    if cfg.model in ("cw", "pspin"):
        return PSpinPlain(cfg.p)
    if cfg.model == "pspin-tilde":
        return PSpinTilde(cfg.k)
    if cfg.model == "scalar":
        return cfg._scalar_g()
    N = N or cfg.N[0]
    kind = "random-field" if cfg.model == "rfcw" else "patterns"
    return sample_disorder(cfg.seed, kind, N, cfg.M).model()


def _size(model, N):
    return None if model.n_sites is not None else N


# ------------------------------------------------------------------ commands
# each returns (report dict, csv rows, violation: bool)

def cmd_alpha(cfg):
    rows, out = [["N", "beta", "alpha", "log_Z"]], []
    for N in cfg.N or [None]:
        model = build_model(cfg, N)
        N = N or model.n_sites
        table = model_table(model, _size(model, N))
        for beta in cfg.beta:
            s = alpha(model, table, beta)
            out.append({"N": N, "beta": beta, "alpha": s.alpha, "log_Z": s.log_Z,
                        "omega_H": s.expectations["H"]})
            rows.append([N, beta, repr(s.alpha), repr(s.log_Z)])
    report = {"results": out}
    if len(out) == 1:
        report["alpha"] = out[0]["alpha"]
    return report, rows, False


def _splits(cfg, N):
    if cfg.split in (None, "all"):
        return all_splits(N)
    return [SplitSpec.parse(cfg.split)]


def cmd_condition(cfg):
    rows, out, violation = [["N", "N1", "N2", "beta", "gap", "satisfied"]], [], False
    for N in cfg.N or [None]:
        model = build_model(cfg, N)
        N = N or model.n_sites
        for split in _splits(cfg, N):
            if isinstance(model, PSpinTilde) and model.k >= min(split.N1, split.N2):
                continue
            interp = Interpolation(model, split)
            for beta in cfg.beta:
                r = condition_check(model, split, beta, cfg.tol, interp=interp)
                violation |= model.theorem_applies and not r.satisfied
                out.append({"N": N, "N1": split.N1, "N2": split.N2, "beta": beta,
                            "gap": r.gap, "satisfied": r.satisfied})
                rows.append([N, split.N1, split.N2, beta, repr(r.gap), r.satisfied])
    return {"theorem_applies": build_model(cfg, (cfg.N or [None])[0]).theorem_applies,
            "results": out}, rows, violation


def cmd_interpolate(cfg):
    model = build_model(cfg)
    split = SplitSpec.parse(cfg.split)
    interp = Interpolation(model, split)
    reports, rows, violation = [], None, False
    for beta in cfg.beta:
        rep = interpolation_report(model, split, beta, cfg.grid, interp=interp)
        sign = sign_propagation_check(model, split, beta, cfg.grid, interp=interp)
        b1, b0 = rep.boundary_errors()
        checks = {"min_d2alpha": rep.min_d2(), "boundary_t1": b1, "boundary_t0": b0,
                  "sign_propagation": sign.ok, "offending_t": sign.offending_t}
        violation |= rep.min_d2() < -cfg.tol or b1 > 1e-11 or b0 > 1e-11
        violation |= model.theorem_applies and not sign.ok
        reports.append({**rep.to_dict(), "checks": checks})
        if rows is None:
            rows = [["beta"] + next(rep.csv_rows())]
        rows += [[beta] + r for r in list(rep.csv_rows())[1:]]
    return {"theorem_applies": model.theorem_applies, "reports": reports}, rows, violation


def cmd_converge(cfg):
    model = build_model(cfg, max(cfg.N) if cfg.N else None)
    Ns = cfg.N or doubling_ladder()
    if model.n_sites is not None and not cfg.N:
        Ns = [n for n in doubling_ladder(2, 20) if n <= model.n_sites]
    out, rows, violation = [], [["beta", "N", "alpha_N", "running_inf"]], False
    for beta in cfg.beta:
        series = ladder(model, Ns, beta)
        doubling = all(b == 2 * a for a, b in zip(Ns, Ns[1:]))
        if doubling and model.theorem_applies:
            violation |= series.max_increase() > 1e-11
        for n, a in series.entries:
            m = model if model.n_sites is None else model.restrict(0, n)
            gmax = achievable_gmax(m, _size(m, n))
            violation |= a < beta * gmax - 1e-12 * max(1.0, abs(a))
        out.append({"beta": beta, **series.to_dict()})
        rows += [[beta] + r for r in list(series.csv_rows())[1:]]
    return {"theorem_applies": model.theorem_applies, "series": out}, rows, violation


def _workers():
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, os.cpu_count() or 1)))
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer") from None


def cmd_disorder(cfg):
    kind = "random-field" if cfg.model == "rfcw" else "patterns"
    split = SplitSpec.parse(cfg.split) if cfg.split and cfg.split != "all" else None
    out, rows, violation = [], [["N", "beta", "seed", "index", "alpha_N", "alpha_N1",
                                 "alpha_N2", "slack"]], False
    for N in cfg.N:
        for beta in cfg.beta:
            est = quenched_average(kind, N, beta, cfg.samples, cfg.seed, cfg.M, split,
                                   workers=_workers())
            violation |= est.per_sample_subadditivity_failures > 0
            out.append({"N": N, "beta": beta, **est.to_dict()})
            rows += [[N, beta, r.seed, r.index, repr(r.alpha_N), repr(r.alpha_N1),
                      repr(r.alpha_N2), repr(r.slack)] for r in est.samples]
    return {"results": out}, rows, violation


def cmd_oracle_check(cfg):
    out, rows, violation = [], [["N", "beta", "alpha_sector", "alpha_brute", "diff"]], False
    for N in cfg.N:
        model = build_model(cfg, N)
        table = model_table(model, _size(model, N))
        for beta in cfg.beta:
            a = alpha(model, table, beta).alpha
            b = brute.oracle_alpha(model, N, beta)
            violation |= abs(a - b) > 1e-12
            out.append({"N": N, "beta": beta, "alpha_sector": a, "alpha_brute": b,
                        "diff": abs(a - b)})
            rows.append([N, beta, repr(a), repr(b), repr(abs(a - b))])
    return {"results": out}, rows, violation


HANDLERS = {"alpha": cmd_alpha, "condition": cmd_condition, "interpolate": cmd_interpolate,
            "converge": cmd_converge, "disorder": cmd_disorder,
            "oracle-check": cmd_oracle_check}


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, "__dataclass_fields__"):
        return asdict(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render(cfg: RunConfig, report: dict, rows, violation: bool, model=None) -> str:
    if cfg.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    doc = {"config": cfg.to_dict(), "model": model_to_dict(model) if model else None,
           "violation": violation, "timestamp": time.time(), **report}
    return json.dumps(doc, indent=2, sort_keys=True, default=_jsonable) + "\n"


def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        report, rows, violation = HANDLERS[cfg.command](cfg)
        model = None
        if cfg.model not in ("rfcw", "hopfield") or cfg.model_file:
            model = build_model(cfg, cfg.N[0] if cfg.N else None)
        text = render(cfg, report, rows, violation, model)
    except (UsageError, SectorBudgetError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    return 2 if violation else 0


def _floats(text):
    return [float(v) for v in text.split(",")]


def _ints(text):
    return [int(v) for v in text.split(",")]


def parser() -> argparse.ArgumentParser:
    first, _, rest = __doc__.partition("\n\n")
    ap = argparse.ArgumentParser(prog="mfspin", description=first, epilog=rest.strip())
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--model", choices=MODELS)
    ap.add_argument("--model-file", dest="model_file")
    ap.add_argument("--p", type=int, default=2, help="p-spin order (cw/pspin)")
    ap.add_argument("--k", type=int, default=3, help="order of the tilde model")
    ap.add_argument("--g", default="square",
                    help=f"scalar g: one of {sorted(BUILTINS)} or poly:a0,a1,...")
    ap.add_argument("--M", type=int, default=2, help="Hopfield pattern count")
    ap.add_argument("--beta", type=_floats, default=[1.0], help="comma-separated list")
    ap.add_argument("--N", type=_ints, default=[], help="comma-separated list")
    ap.add_argument("--split", help="N1,N2 or 'all'")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--grid", type=int, default=21, help="t-grid points")
    ap.add_argument("--out")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--tol", type=float, default=1e-10, help="per-site gap tolerance")
    return ap


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    return run(RunConfig(**vars(args)))


if __name__ == "__main__":
    sys.exit(main())
