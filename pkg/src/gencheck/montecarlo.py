"""Logical error rate estimation on the depolarizing channel.

Every trial draws its randomness from ``SeedSequence((seed, eps_index, trial))``
so the numbers do not depend on how trials are spread over worker processes.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from statistics import NormalDist
from typing import Iterable, Sequence

import numpy as np

from .channel import Outcome, PauliError, classify_outcome, sample_depolarizing, syndrome
from .codes import CssCode
from .decode import Decoder, DecoderConfig, init_priors

CSV_HEADER = (
    "code_id",
    "decoder",
    "grouping",
    "alpha",
    "t_max",
    "osd",
    "epsilon",
    "trials",
    "failures",
    "ler",
    "ler_ci_low",
    "ler_ci_high",
    "mean_iters",
    "stage1_frac",
    "seed",
)

FIRST_STAGE = {"mbp4": "MBP4", "hybrid": "MBP4", "gmbp4": "GMBP4", "relay": "Relay"}
CHUNK = 256


def wilson_interval(failures: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    if trials == 0:
        return math.nan, math.nan
    z = NormalDist().inv_cdf(0.5 + level / 2)
    p = failures / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def trial_rngs(seed: int, eps_index: int, trial: int) -> tuple[np.random.Generator, np.random.Generator]:
    noise, dec = np.random.SeedSequence((seed, eps_index, trial)).spawn(2)
    return np.random.default_rng(noise), np.random.default_rng(dec)


# per-trial record: (failed, convergence_failure, iterations, first_stage_converged)
TrialRecord = tuple[bool, bool, int, bool]


def run_trials(decoder: Decoder, eps: float, eps_index: int, seed: int, start: int, stop: int) -> list[TrialRecord]:
    code = decoder.code
    first = FIRST_STAGE[decoder.config.decoder]
    priors = init_priors(eps, code.n) if eps > 0 else init_priors(1e-12, code.n)
    out = []
    for t in range(start, stop):
        noise_rng, dec_rng = trial_rngs(seed, eps_index, t)
        e = sample_depolarizing(code.n, eps, noise_rng)
        s = syndrome(code, e)
        res = decoder.decode(s, priors, dec_rng)
        e_hat = PauliError.from_pauli(res.estimate)
        if res.converged and not np.array_equal(syndrome(code, e_hat), s):
            raise AssertionError("converged estimate does not reproduce the syndrome")
        verdict = classify_outcome(code, e, e_hat, res.converged)
        out.append(
            (
                verdict != Outcome.SUCCESS,
                verdict == Outcome.CONVERGENCE_FAILURE,
                res.iterations_used,
                res.converged and res.stage == first,
            )
        )
    return out


_WORKER: Decoder | None = None


def _init_worker(code, config, groupings):
    global _WORKER
    _WORKER = Decoder(code, config, groupings)


def _work(args):
    eps, eps_index, seed, start, stop = args
    return run_trials(_WORKER, eps, eps_index, seed, start, stop)


@dataclass
class LerRow:
    code_id: str
    decoder: str
    grouping: str
    alpha: float
    t_max: int
    osd: str
    epsilon: float
    trials: int
    failures: int
    seed: int
    convergence_failures: int = 0
    total_iters: int = 0
    first_stage: int = 0

    @property
    def ler(self) -> float:
        return self.failures / self.trials if self.trials else math.nan

    @property
    def ci(self) -> tuple[float, float]:
        return wilson_interval(self.failures, self.trials)

    @property
    def mean_iters(self) -> float:
        return self.total_iters / self.trials if self.trials else math.nan

    @property
    def stage1_frac(self) -> float:
        return self.first_stage / self.trials if self.trials else math.nan

    def csv_fields(self) -> list[str]:
        lo, hi = self.ci
        vals = [
            self.code_id, self.decoder, self.grouping, self.alpha, self.t_max, self.osd, self.epsilon,
            self.trials, self.failures, self.ler, lo, hi, self.mean_iters, self.stage1_frac, self.seed,
        ]
        return [_fmt(v) for v in vals]

    def key(self) -> tuple[str, ...]:
        return row_key(self.code_id, self.decoder, self.grouping, self.alpha, self.t_max, self.osd, self.epsilon, self.seed)


def row_key(code_id, decoder, grouping, alpha, t_max, osd, epsilon, seed) -> tuple[str, ...]:
    return tuple(_fmt(v) for v in (code_id, decoder, grouping, alpha, t_max, osd, epsilon, seed))


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return repr(v)
    return str(v)


def grouping_label(config: DecoderConfig) -> str:
    return config.grouping if config.decoder in ("gmbp4", "hybrid") else "trivial"


def alpha_label(config: DecoderConfig) -> float:
    """Relay legs run without the 1/alpha scaling, reported as alpha = 1."""
    return 1.0 if config.decoder == "relay" else float(config.alpha)


def run_monte_carlo(
    code: CssCode,
    config: DecoderConfig,
    eps_list: Sequence[float],
    trials: int,
    master_seed: int = 0,
    workers: int = 1,
    failure_target: int | None = None,
    groupings=None,
    code_id: str | None = None,
    eps_indices: Sequence[int] | None = None,
) -> list[LerRow]:
    """One row per epsilon.

    With ``failure_target`` set, each epsilon stops at the trial where the
    failure count reaches the target, or after ``trials`` trials (the cap).
    """
    if trials < 0:
        raise ValueError("trials must be non-negative")
    code_id = code_id or code.name or "code"
    eps_indices = list(range(len(eps_list))) if eps_indices is None else list(eps_indices)
    decoder = Decoder(code, config, groupings)
    groupings = getattr(decoder, "groupings", None)
    pool = None
    if workers > 1:
        pool = ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(code, config, groupings))
    rows = []
    try:
        for eps, ei in zip(eps_list, eps_indices):
            row = LerRow(code_id, config.decoder, grouping_label(config), alpha_label(config), int(config.t_max),
                         config.osd, float(eps), 0, 0, int(master_seed))
            start = 0
            while start < trials:
                if failure_target is not None and row.failures >= failure_target:
                    break
                wave = max(1, workers) * 2
                jobs = []
                for _ in range(wave):
                    if start >= trials:
                        break
                    stop = min(trials, start + CHUNK)
                    jobs.append((float(eps), ei, int(master_seed), start, stop))
                    start = stop
                if pool is None:
                    results = [run_trials(decoder, *j) for j in jobs]
                else:
                    results = list(pool.map(_work, jobs))
                done = False
                for chunk in results:
                    for failed, conv_fail, iters, first in chunk:
                        row.trials += 1
                        row.failures += failed
                        row.convergence_failures += conv_fail
                        row.total_iters += iters
                        row.first_stage += first
                        if failure_target is not None and row.failures >= failure_target:
                            done = True
                            break
                    if done:
                        break
                if done:
                    break
            rows.append(row)
    finally:
        if pool is not None:
            pool.shutdown()
    return rows


def read_done_keys(path: str | Path) -> set[tuple[str, ...]]:
    p = Path(path)
    if not p.exists() or p.stat().st_size == 0:
        return set()
    with p.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"{p} exists with an unexpected header")
        return {tuple(r[k] for k in ("code_id", "decoder", "grouping", "alpha", "t_max", "osd", "epsilon", "seed")) for r in reader}


def append_rows(path: str | Path, rows: Iterable[LerRow]) -> None:
    p = Path(path)
    new = not p.exists() or p.stat().st_size == 0
    with p.open("a", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if new:
            w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow(r.csv_fields())
            fh.flush()
            os.fsync(fh.fileno())
