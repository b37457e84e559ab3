"""Name-based construction of the six progressive methods."""

from __future__ import annotations

from dataclasses import dataclass

from .equality import PBS, PPS, SCHEMES
from .model import ProfileCollection, ProgressiveEmitter
from .naive import SAPSAB, SAPSN
from .similarity import GSPSN, LSPSN

METHODS = ("sa-psn", "sa-psab", "ls-psn", "gs-psn", "pbs", "pps")

# Which tunable parameters each method reads.
METHOD_PARAMS = {
    "sa-psn": set(),
    "sa-psab": {"l_min", "purge_ratio"},
    "ls-psn": set(),
    "gs-psn": {"w_max"},
    "pbs": {"purge_ratio", "filter_ratio", "scheme"},
    "pps": {"purge_ratio", "filter_ratio", "scheme", "k_max"},
}


@dataclass(frozen=True)
class MethodParams:
    w_max: int = 20
    l_min: int = 2
    k_max: int = 10
    purge_ratio: float | None = 0.10
    filter_ratio: float | None = 0.80
    scheme: str = "arcs"


def build_emitter(method: str, collection: ProfileCollection, params: MethodParams = MethodParams()) -> ProgressiveEmitter:
    if method == "sa-psn":
        return SAPSN(collection)
    if method == "sa-psab":
        return SAPSAB(collection, l_min=params.l_min, purge_ratio=params.purge_ratio)
    if method == "ls-psn":
        return LSPSN(collection)
    if method == "gs-psn":
        return GSPSN(collection, w_max=params.w_max)
    graph = dict(
        scheme=SCHEMES[params.scheme],
        purge_ratio=params.purge_ratio,
        filter_ratio=params.filter_ratio,
    )
    if method == "pbs":
        return PBS(collection, **graph)
    if method == "pps":
        return PPS(collection, k_max=params.k_max, **graph)
    raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
