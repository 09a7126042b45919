"""Config-driven Monte Carlo runs emitting one CSV row per (trial, pair).

Config files are flat ``key = value`` text; ``#`` starts a comment line.
Keys: mode, n_grid, p, r, ell, k, trials, pair_sample, seed, workers, timing.

``p`` is a constant (``0.1``) or one of the rules ``n^-a``, ``c*n^-a`` and
``(n*log(n))^a/n``. Each trial draws its graph from the substream
``(seed, n, trial)``; everything downstream is derived from it, so rows do
not depend on worker scheduling. ``elapsed_ms`` is 0 unless ``timing`` is
on, which keeps reports byte-identical across runs.
"""

import csv
import logging
import math
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from .errors import ParameterError, RegimeError, VerificationError
from .graph_core import color_uniform, gnp_generate, sample_pairs
from .oracle import alt_p3_pair_count, max_disjoint_alt_paths_exact
from .pathsys.counting import alt_p2_system
from .pathsys.dense import dense_construct
from .pathsys.estimate import Regime, classify, construct, theory_target
from .pathsys.system import verify_path_system
from .pseudorandom import is_pseudorandom, pseudo_target, spectral_profile
from .rng import check_seed, derive_seed

log = logging.getLogger(__name__)

MODES = ("kappa2", "dense", "sparse", "lambda", "pseudo", "oracle")
KEYS = ("mode", "n_grid", "p", "r", "ell", "k", "trials", "pair_sample", "seed",
        "workers", "timing")
REQUIRED = ("mode", "n_grid", "p", "trials", "pair_sample", "seed")
ORACLE_MAX_N = 12

_NUM = r"([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)"
_SNUM = r"(-?[0-9]*\.?[0-9]+)"


@dataclass(frozen=True)
class PRule:
    """Edge probability as a function of n."""

    text: str
    kind: str   # const | power | nlogn
    c: float
    a: float

    @classmethod
    def parse(cls, text):
        s = text.replace(" ", "")
        m = re.fullmatch(_NUM, s)
        if m:
            return cls(text, "const", float(m.group(1)), 0.0)
        m = re.fullmatch(rf"(?:{_NUM}\*)?n\^\(?{_SNUM}\)?", s)
        if m:
            c = float(m.group(1)) if m.group(1) else 1.0
            return cls(text, "power", c, float(m.group(2)))
        m = re.fullmatch(rf"\(n\*log\(n\)\)\^\(?{_SNUM}\)?/n", s)
        if m:
            return cls(text, "nlogn", 1.0, float(m.group(1)))
        raise ParameterError(f"unrecognised p rule {text!r}")

    @property
    def is_constant(self):
        return self.kind == "const"

    def __call__(self, n):
        if self.kind == "const":
            return self.c
        if self.kind == "power":
            return self.c * n**self.a
        return (n * math.log(n)) ** self.a / n


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str
    n_grid: tuple
    p: PRule
    r: int = 2
    ell: int = None
    k: int = None
    trials: int = 1
    pair_sample: int = 1
    seed: int = 0
    workers: int = 1
    timing: bool = False


def _int(key, value, low=None):
    try:
        v = int(value)
    except ValueError:
        raise ParameterError(f"{key}: expected an integer, got {value!r}") from None
    if low is not None and v < low:
        raise ParameterError(f"{key}: must be >= {low}, got {v}")
    return v


def _bool(key, value):
    low = value.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ParameterError(f"{key}: expected true/false, got {value!r}")


def parse_config(text):
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ParameterError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ParameterError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    missing = [k for k in REQUIRED if k not in raw]
    if missing:
        raise ParameterError(f"missing keys: {', '.join(missing)}")

    mode = raw["mode"]
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {', '.join(MODES)}, got {mode!r}")
    grid = tuple(_int("n_grid", x, 2) for x in raw["n_grid"].replace(" ", "").split(",") if x)
    if not grid:
        raise ParameterError("n_grid is empty")
    cfg = dict(
        mode=mode, n_grid=grid, p=PRule.parse(raw["p"]),
        r=_int("r", raw.get("r", "2"), 2),
        ell=_int("ell", raw["ell"], 2) if "ell" in raw else None,
        k=_int("k", raw["k"], 2) if "k" in raw else None,
        trials=_int("trials", raw["trials"], 0),
        pair_sample=_int("pair_sample", raw["pair_sample"], 1),
        seed=check_seed(_int("seed", raw["seed"])),
        workers=_int("workers", raw.get("workers", "1"), 1),
        timing=_bool("timing", raw.get("timing", "false")),
    )
    fixed_ell = {"kappa2": 2, "lambda": 3}
    if mode in fixed_ell:
        if cfg["ell"] not in (None, fixed_ell[mode]):
            raise ParameterError(f"{mode} mode fixes ell = {fixed_ell[mode]}")
        cfg["ell"] = fixed_ell[mode]
    elif cfg["ell"] is None:
        raise ParameterError(f"{mode} mode needs ell")
    if mode in ("dense", "pseudo") and cfg["ell"] < 3:
        raise ParameterError(f"{mode} mode needs ell >= 3")
    if mode == "lambda" and cfg["r"] != 2:
        raise ParameterError("lambda mode needs r = 2")
    if mode == "oracle" and max(grid) > ORACLE_MAX_N:
        raise ParameterError(f"oracle mode needs n <= {ORACLE_MAX_N}")
    for n in grid:
        p = cfg["p"](n)
        if not 0 <= p <= 1:
            raise ParameterError(f"p rule {raw['p']!r} gives {p} at n={n}, outside [0, 1]")
    return ExperimentConfig(**cfg)


def load_config(path):
    return parse_config(Path(path).read_text(encoding="utf-8"))


_MODE_LABELS = {
    "kappa2": ("thm1.1",),
    "dense": ("thm1.2",),
    "sparse": ("thm1.3i", "thm1.3ii", "thm1.3iii"),
}
_FIXED_LABELS = {"lambda": "prop6.1", "pseudo": "thm6.2", "oracle": "oracle"}


def validate_regime(cfg, n):
    """Regime label for grid point ``n``; a ``gap`` Regime is a refusal."""
    if cfg.mode in _FIXED_LABELS:
        return Regime(_FIXED_LABELS[cfg.mode], cfg.k)
    p = cfg.p(n)
    reg = classify(n, p, cfg.ell, cfg.k, constant_p=cfg.p.is_constant)
    if reg.refused or reg.label in _MODE_LABELS[cfg.mode]:
        return reg
    return Regime("gap", reg.k, f"{cfg.mode} mode does not cover the {reg.label} regime")


@dataclass(frozen=True)
class Row:
    mode: str
    n: int
    p: float
    r: int
    ell: int
    k: object
    trial: int
    pair_u: int
    pair_v: int
    achieved: int
    theory: float
    ratio: float
    regime: str
    seed: int
    elapsed_ms: float


HEADER = tuple(f.name for f in fields(Row))


@dataclass
class ExperimentReport:
    rows: list

    def write_csv(self, target):
        write_csv(self.rows, target)


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(rows, target):
    def emit(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for row in rows:
            w.writerow([_cell(x) for x in astuple(row)])

    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as fh:
            emit(fh)
    else:
        emit(target)


def _replay(cg, ps, cfg, n, trial, replay_dir):
    from .formats import write_graph, write_path_system

    out = Path(replay_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = out / f"replay_{cfg.mode}_n{n}_t{trial}_{ps.u}_{ps.v}"
    write_graph(cg, f"{stem}.graph")
    write_path_system(ps, f"{stem}.paths")
    return stem


def _run_trial(cfg, n, trial, replay_dir):
    p = cfg.p(n)
    regime = validate_regime(cfg, n)
    tseed = derive_seed(cfg.seed, n, trial)
    g = gnp_generate(n, p, tseed)
    pairs = sample_pairs(n, cfg.pair_sample, tseed, 2)
    ncolors = cfg.r if cfg.ell == 2 or cfg.mode == "oracle" else 2
    cg = color_uniform(g, ncolors, derive_seed(tseed, 1))

    if cfg.mode == "lambda":
        theory = n * n * p**3 / 8
    elif cfg.mode == "pseudo":
        prof = spectral_profile(g)
        theory = pseudo_target(n, prof.d, cfg.ell)
        if not is_pseudorandom(prof):
            log.warning("n=%d trial=%d: lambda=%.4g is not << d^2/n=%.4g",
                        n, trial, prof.lam, prof.d**2 / n)
    elif cfg.mode != "oracle":
        theory = theory_target(regime, n, p, cfg.r, cfg.ell)[0]

    rows = []
    for u, v in pairs:
        t0 = time.perf_counter()
        ps = None
        if cfg.mode == "lambda":
            achieved = alt_p3_pair_count(cg, u, v)
        elif cfg.mode == "pseudo":
            ps = dense_construct(cg, u, v, cfg.ell)
        elif cfg.mode == "oracle":
            ps = alt_p2_system(cg, u, v) if cfg.ell == 2 else dense_construct(cg, u, v, cfg.ell)
            theory = max_disjoint_alt_paths_exact(cg, u, v, cfg.ell)
        else:
            ps = construct(cg, u, v, cfg.ell, regime)
        if ps is not None:
            ok, reason = verify_path_system(cg, ps)
            if not ok:
                stem = _replay(cg, ps, cfg, n, trial, replay_dir or ".")
                raise VerificationError(f"n={n} trial={trial} pair=({u}, {v}): {reason}; "
                                        f"replay written to {stem}.graph/.paths")
            achieved = ps.t
        elapsed = round((time.perf_counter() - t0) * 1000, 3) if cfg.timing else 0
        ratio = achieved / theory if theory > 0 else math.nan
        rows.append(Row(cfg.mode, n, p, cfg.r, cfg.ell, cfg.k if cfg.k is not None else regime.k,
                        trial, u, v, achieved, float(theory), ratio, regime.label,
                        cfg.seed, elapsed))
    return rows


def _trial_task(args):
    return _run_trial(*args)


def run_experiment(cfg, replay_dir=None):
    """Run every (n, trial) of ``cfg``; refuses up front if any n is in a gap."""
    for n in cfg.n_grid:
        reg = validate_regime(cfg, n)
        if reg.refused:
            raise RegimeError(f"n={n}: {reg.reason}")
    tasks = [(cfg, n, trial, replay_dir) for n in cfg.n_grid for trial in range(cfg.trials)]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_trial_task, tasks))
    else:
        chunks = [_trial_task(t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.n, r.trial, r.pair_u, r.pair_v))
    return ExperimentReport(rows)


def min_ratio_by_n(rows):
    """Per n: mean over trials of the min-pair ratio (NaN ratios skipped)."""
    per = {}
    for row in rows:
        if math.isnan(row.ratio):
            continue
        key = (row.n, row.trial)
        per[key] = min(per.get(key, math.inf), row.ratio)
    out = {}
    for (n, _), v in per.items():
        out.setdefault(n, []).append(v)
    return {n: sum(v) / len(v) for n, v in sorted(out.items())}
