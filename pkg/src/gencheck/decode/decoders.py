"""MBP4, generalized GMBP4, hybrid scheduling and Relay-BP4."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..codes import CssCode
from ..grouping import Grouping, make_groupings, trivial_grouping
from .engine import MODE_BOXPLUS, MODE_SISO, DecoderGraph
from .messages import soft_weight, symplectic_to_pauli, pauli_string
from .osd import osd1, symplectic_reliabilities

STAGES = ("MBP4", "GMBP4", "OSD", "Relay")


@dataclass
class DecodeOutcome:
    estimate: np.ndarray  # Pauli codes 0..3
    converged: bool
    iterations_used: int
    stage: str
    solution_weights: tuple[float, ...] = ()  # relay: weights of every accepted solution, in order

    @property
    def pauli(self) -> str:
        return pauli_string(self.estimate)


@dataclass(frozen=True)
class DecoderConfig:
    decoder: str = "hybrid"
    alpha: float = 1.6
    t_max: int = 6
    osd: str = "none"
    grouping: str = "full"
    warm_start: bool = False
    relay_legs: int = 8
    relay_t: tuple[int, ...] | int = 6
    gamma_c: float = 0.3
    gamma_w: float = 0.66
    relay_solutions: int | None = None

    def __post_init__(self):
        if self.decoder not in ("mbp4", "gmbp4", "hybrid", "relay"):
            raise ValueError(f"unknown decoder {self.decoder!r}")
        if self.osd not in ("none", "osd1"):
            raise ValueError(f"osd must be 'none' or 'osd1', got {self.osd!r}")
        if self.alpha <= 0 or self.t_max < 1:
            raise ValueError("alpha must be positive and t_max at least 1")

    @property
    def osd_flag(self) -> bool:
        return self.osd == "osd1"

    @classmethod
    def from_dict(cls, d: dict) -> "DecoderConfig":
        d = dict(d)
        relay = d.pop("relay", {}) or {}
        mapping = {"R": "relay_legs", "T_r": "relay_t", "gamma_c": "gamma_c", "gamma_w": "gamma_w", "S": "relay_solutions"}
        for k, v in relay.items():
            if k not in mapping:
                raise ValueError(f"unknown relay parameter {k!r}")
            d[mapping[k]] = v
        if "name" in d:
            d["decoder"] = d.pop("name")
        if isinstance(d.get("relay_t"), list):
            d["relay_t"] = tuple(d["relay_t"])
        if d.get("osd") is None:
            d["osd"] = "none"
        return cls(**d)


def _trivial(code: CssCode) -> tuple[Grouping, Grouping]:
    return trivial_grouping(code.H0, 0), trivial_grouping(code.H1, 1)


def _osd_estimate(graph: DecoderGraph, gamma: np.ndarray, syn: np.ndarray) -> np.ndarray:
    e = osd1(graph.osd_matrix, symplectic_reliabilities(gamma), syn)
    n = graph.n
    return symplectic_to_pauli(e[n:], e[:n])


def _check_syndrome(code: CssCode, syn) -> np.ndarray:
    syn = np.ascontiguousarray(syn, dtype=np.uint8)
    if syn.shape != (code.H0.rows + code.H1.rows,):
        raise ValueError(f"syndrome length {syn.size} != rows(H0) + rows(H1) = {code.H0.rows + code.H1.rows}")
    return syn


class Decoder:
    """Prebuilt decoder for one code; graphs and trellises are built once."""

    def __init__(self, code: CssCode, config: DecoderConfig, groupings: Sequence[Grouping] | None = None, grouping_seed: int = 0):
        self.code = code
        self.config = config
        self.bp_graph: DecoderGraph | None = None
        self.gen_graph: DecoderGraph | None = None
        if config.decoder in ("mbp4", "hybrid", "relay"):
            self.bp_graph = DecoderGraph.build(code.H0, code.H1, _trivial(code), MODE_BOXPLUS)
        if config.decoder in ("gmbp4", "hybrid"):
            if groupings is None:
                groupings = make_groupings(code, config.grouping, grouping_seed)
            self.groupings = tuple(groupings)
            self.gen_graph = DecoderGraph.build(code.H0, code.H1, self.groupings, MODE_SISO)
        any_graph = self.bp_graph or self.gen_graph
        self._check_graph = any_graph

    def decode(self, syn, priors: np.ndarray, rng: np.random.Generator | None = None) -> DecodeOutcome:
        syn = _check_syndrome(self.code, syn)
        priors = np.ascontiguousarray(priors, dtype=np.float64)
        cfg = self.config
        if cfg.decoder == "mbp4":
            out = self._single(self.bp_graph, "MBP4", syn, priors, cfg.osd_flag)
        elif cfg.decoder == "gmbp4":
            out = self._single(self.gen_graph, "GMBP4", syn, priors, cfg.osd_flag)
        elif cfg.decoder == "hybrid":
            out = self._hybrid(syn, priors)
        else:
            out = self._relay(syn, priors, rng if rng is not None else np.random.default_rng(0))
        if out.converged and not self._check_graph.syndrome_ok(out.estimate, syn):
            raise AssertionError(f"{out.stage} reported convergence with a wrong syndrome")
        return out

    def _single(self, graph, stage, syn, priors, osd_flag, init=None, offset=0) -> DecodeOutcome:
        cfg = self.config
        conv, it, est, gv = graph.run(syn, priors, cfg.t_max, cfg.alpha, init=init)
        if conv:
            return DecodeOutcome(est, True, offset + it, stage)
        if osd_flag:
            return DecodeOutcome(_osd_estimate(graph, gv, syn), True, offset + it, "OSD")
        return DecodeOutcome(est, False, offset + it, stage)

    def _hybrid(self, syn, priors) -> DecodeOutcome:
        cfg = self.config
        conv, it, est, gv = self.bp_graph.run(syn, priors, cfg.t_max, cfg.alpha)
        if conv:
            return DecodeOutcome(est, True, it, "MBP4")
        init = gv if cfg.warm_start else None
        return self._single(self.gen_graph, "GMBP4", syn, priors, cfg.osd_flag, init=init, offset=it)

    def _relay(self, syn, priors, rng) -> DecodeOutcome:
        cfg = self.config
        R = cfg.relay_legs
        S = cfg.relay_solutions if cfg.relay_solutions is not None else R
        t_list = [cfg.relay_t] * R if isinstance(cfg.relay_t, int) else list(cfg.relay_t)
        if len(t_list) != R:
            raise ValueError(f"relay_t lists {len(t_list)} legs but R = {R}")
        graph = self.bp_graph
        n = graph.n
        gv = priors.copy()
        best, best_w, best_stage = None, math.inf, "Relay"
        weights: list[float] = []
        total = 0
        est = np.zeros(n, dtype=np.int8)
        lo, hi = cfg.gamma_c - cfg.gamma_w / 2, cfg.gamma_c + cfg.gamma_w / 2
        for r in range(R):
            mem = rng.uniform(lo, hi, size=n)
            conv, it, est, gv = graph.run(syn, priors, t_list[r], 1.0, gv=gv, mem=mem)
            total += it
            if conv:
                cand, stage = est, "Relay"
            elif cfg.osd_flag:
                cand, stage = _osd_estimate(graph, gv, syn), "OSD"
            else:
                continue
            w = soft_weight(cand, priors)
            weights.append(w)
            if w < best_w:
                best, best_w, best_stage = cand.copy(), w, stage
            if len(weights) >= S:
                break
        if best is None:
            return DecodeOutcome(est, False, total, "Relay", tuple(weights))
        return DecodeOutcome(best, True, total, best_stage, tuple(weights))


# functional front ends ---------------------------------------------------------


def gmbp4_decode(code, groupings, s, priors, alpha=1.6, t_max=6, osd_flag=False) -> DecodeOutcome:
    cfg = DecoderConfig("gmbp4", alpha, t_max, "osd1" if osd_flag else "none")
    return Decoder(code, cfg, groupings).decode(s, priors)


def mbp4_decode(code, s, priors, alpha=1.6, t_max=6, osd_flag=False) -> DecodeOutcome:
    cfg = DecoderConfig("mbp4", alpha, t_max, "osd1" if osd_flag else "none")
    return Decoder(code, cfg).decode(s, priors)


def hybrid_decode(code, groupings, s, priors, alpha=1.6, t_max=6, osd_flag=False, warm_start=False) -> DecodeOutcome:
    cfg = DecoderConfig("hybrid", alpha, t_max, "osd1" if osd_flag else "none", warm_start=warm_start)
    return Decoder(code, cfg, groupings).decode(s, priors)


def relay_bp4(code, s, priors, S=None, R=8, T_r=6, gamma_c=0.3, gamma_w=0.66, seed=0, osd_flag=False) -> DecodeOutcome:
    cfg = DecoderConfig(
        "relay", 1.0, 1, "osd1" if osd_flag else "none", relay_legs=R,
        relay_t=tuple(T_r) if not isinstance(T_r, int) else T_r, gamma_c=gamma_c, gamma_w=gamma_w, relay_solutions=S,
    )
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return Decoder(code, cfg).decode(s, priors, rng)
