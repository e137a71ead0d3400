"""Canned datasets: dielectric-function curves and eta(L) curve families.

Each figure id maps to a builder that returns column labels and rows ready
for CSV/JSON emission.  The eta families pair identical mirrors except for
fig8, which faces a VO2 mirror with a gold one.
"""

from __future__ import annotations

import numpy as np

from .casimir import CavityConfig, QuadratureSpec, sweep
from .dielectric import resolve_model
from .reflection import Mirror

__all__ = ["FIGURES", "build_figure", "list_figures"]

_SI_FAMILY = (
    "si",
    "si-doped:N=1.1e15",
    "si-doped:N=1.3e18",
    "si-doped:N=1.4e19",
    "si-doped:N=1e20",
)
_LASER_FAMILY = ("si", "si-laser-drude", "si-laser-plasma", "si-doped:N=5e14")

# Dielectric curves span the full catalog response range; eta curves cover
# the separations where thickness effects play out.
_EPS_RANGE = (1e11, 1e18)
_ETA_RANGE = (1e-7, 1e-5)


def _log_grid(lo: float, hi: float, points_per_decade: int) -> np.ndarray:
    decades = np.log10(hi / lo)
    n = max(2, int(round(decades * points_per_decade)) + 1)
    return np.logspace(np.log10(lo), np.log10(hi), n)


def _epsilon_figure(model_ids):
    def build(quad: QuadratureSpec, points_per_decade: int, threads: int):
        omega = _log_grid(*_EPS_RANGE, points_per_decade)
        models = [resolve_model(mid) for mid in model_ids]
        columns = ["omega_rad_s"] + [f"eps_{mid}" for mid in model_ids]
        table = [omega]
        for model in models:
            table.append(np.asarray(model.epsilon(omega)))
        rows = np.column_stack(table)
        meta = {"quantity": "dielectric function on the imaginary axis"}
        return columns, rows, meta

    return build


def _eta_figure(mirror_pairs, labels):
    """eta(L) for every (mirror_a, mirror_b) pair, one column per pair."""

    def build(quad: QuadratureSpec, points_per_decade: int, threads: int):
        L = _log_grid(*_ETA_RANGE, points_per_decade)
        columns = ["L_m"] + [f"eta_{label}" for label in labels]
        series = [L]
        for mirror_a, mirror_b in mirror_pairs:
            cfgs = [CavityConfig(mirror_a, mirror_b, sep) for sep in L]
            rows = sweep(cfgs, quad, max_workers=threads)
            etas = []
            for row in rows:
                if row.error is not None:
                    raise RuntimeError(f"sweep row failed: {row.error}")
                etas.append(row.result.eta)
            series.append(np.asarray(etas))
        meta = {"quantity": "Casimir force reduction factor"}
        return columns, np.column_stack(series), meta

    return build


def _pairs_same(mirrors):
    return [(m, m) for m in mirrors]


def _bulk(mid: str) -> Mirror:
    return Mirror.bulk(resolve_model(mid))


def _slab(mid: str, thickness: float) -> Mirror:
    return Mirror.slab(resolve_model(mid), thickness)


def _film(mid: str, thickness: float, substrate: str) -> Mirror:
    return Mirror.coated(resolve_model(mid), thickness, resolve_model(substrate))


def _si_bulk_figure():
    return _eta_figure(
        _pairs_same([_bulk(mid) for mid in _SI_FAMILY]), list(_SI_FAMILY)
    )


def _si_slab_figure(thickness: float, family):
    return _eta_figure(
        _pairs_same([_slab(mid, thickness) for mid in family]),
        [f"{mid}_D={thickness*1e9:g}nm" for mid in family],
    )


def _vo2_treatments_figure():
    mirrors = []
    labels = []
    for phase in ("vo2-ins", "vo2-met"):
        mirrors += [
            _bulk(phase),
            _slab(phase, 100e-9),
            _film(phase, 100e-9, "al2o3"),
        ]
        labels += [
            f"{phase}_bulk-effective",
            f"{phase}_slab100nm",
            f"{phase}_film100nm-on-al2o3",
        ]
    return _eta_figure(_pairs_same(mirrors), labels)


def _vo2_vs_gold_figure():
    gold = _bulk("au-drude")
    pairs = [(_bulk("vo2-ins"), gold), (_bulk("vo2-met"), gold)]
    return _eta_figure(pairs, ["vo2-ins_vs_au", "vo2-met_vs_au"])


FIGURES = {
    "fig1": _epsilon_figure(_SI_FAMILY + ("au-drude",)),
    "fig2": _epsilon_figure(("vo2-ins", "vo2-met", "si", "au-drude", "al2o3")),
    "fig3": _si_bulk_figure(),
    "fig4a": _si_slab_figure(100e-9, _SI_FAMILY),
    "fig4b": _vo2_treatments_figure(),
    "fig5a": _si_slab_figure(100e-9, _LASER_FAMILY),
    "fig5b": _si_slab_figure(4000e-9, _LASER_FAMILY),
    "fig8": _vo2_vs_gold_figure(),
}


def list_figures() -> list[str]:
    return sorted(FIGURES)


def build_figure(
    name: str,
    quad: QuadratureSpec = QuadratureSpec(),
    points_per_decade: int = 50,
    threads: int = 1,
):
    """Compute one figure dataset: (columns, rows array, meta dict)."""
    try:
        builder = FIGURES[name]
    except KeyError:
        raise ValueError(
            f"unknown figure {name!r}; available: {', '.join(list_figures())}"
        ) from None
    return builder(quad, points_per_decade, threads)
