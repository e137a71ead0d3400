"""Adaptive 2-D quadrature on a rectangle with embedded Gauss-Kronrod panels.

Each panel is evaluated with a 15x15 tensor Kronrod rule; the embedded 7x7
Gauss rule gives the error estimate.  Panels live in a max-heap keyed by
their error and the worst one is bisected along the direction whose
embedded-rule defect is larger.  All nodes are interior, so integrands may
be singular on the boundary as long as the integral exists.

The integrand receives the x-nodes (n,) and u-nodes (m,) of a panel and
returns an array of shape (ncomp, n, m); components are integrated jointly
and refinement targets the summed error.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["PanelIntegral", "integrate_panels"]

# 15-point Kronrod nodes on (-1, 1), ascending, and their weights; the odd
# indices (1, 3, ..., 13) form the embedded 7-point Gauss rule.
_XK = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
_GAUSS_IDX = np.arange(1, 15, 2)
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
])

NODES_PER_PANEL = _XK.size * _XK.size


@dataclass
class _Panel:
    x0: float
    x1: float
    u0: float
    u1: float
    value: np.ndarray     # (ncomp,) Kronrod estimate
    err_vec: np.ndarray   # (ncomp,) |Kronrod - Gauss|
    defect_x: float
    defect_u: float

    @property
    def error(self) -> float:
        return float(self.err_vec.sum())


@dataclass
class PanelIntegral:
    """Outcome of an adaptive panel integration."""

    value: np.ndarray     # (ncomp,)
    error: np.ndarray     # (ncomp,) per-component error estimates
    evals: int            # integrand node evaluations
    converged: bool
    panels: int


def _evaluate(f, x0, x1, u0, u1):
    hx = 0.5 * (x1 - x0)
    hu = 0.5 * (u1 - u0)
    xs = 0.5 * (x0 + x1) + hx * _XK
    us = 0.5 * (u0 + u1) + hu * _XK
    F = np.asarray(f(xs, us), dtype=float)
    jac = hx * hu
    kk = jac * np.einsum("cij,i,j->c", F, _WK, _WK)
    gk = jac * np.einsum("cij,i,j->c", F[:, _GAUSS_IDX, :], _WG, _WK)
    kg = jac * np.einsum("cij,i,j->c", F[:, :, _GAUSS_IDX], _WK, _WG)
    gg = jac * np.einsum(
        "cij,i,j->c", F[:, _GAUSS_IDX, :][:, :, _GAUSS_IDX], _WG, _WG
    )
    defect_x = float(np.sum(np.abs(kk - gk)))
    defect_u = float(np.sum(np.abs(kk - kg)))
    return _Panel(x0, x1, u0, u1, kk, np.abs(kk - gg), defect_x, defect_u)


def integrate_panels(
    f,
    x_edges,
    u_edges,
    rel_tol: float,
    max_evals: int,
) -> PanelIntegral:
    """Integrate f over the rectangle spanned by the edge grids.

    ``x_edges``/``u_edges`` give the initial panel boundaries (the full
    rectangle is their outer product).  Refinement stops once the summed
    error estimate drops below rel_tol times the summed |integral|, or when
    the node budget is exhausted (converged=False in that case).
    """
    heap: list[tuple[float, int, _Panel]] = []
    counter = 0
    evals = 0
    total_value = None
    total_error = 0.0
    for i in range(len(x_edges) - 1):
        for j in range(len(u_edges) - 1):
            p = _evaluate(f, x_edges[i], x_edges[i + 1], u_edges[j], u_edges[j + 1])
            evals += NODES_PER_PANEL
            total_value = p.value if total_value is None else total_value + p.value
            total_error += p.error
            heapq.heappush(heap, (-p.error, counter, p))
            counter += 1

    converged = True
    while total_error > rel_tol * max(float(np.sum(np.abs(total_value))), 1e-300):
        if evals + 2 * NODES_PER_PANEL > max_evals:
            converged = False
            break
        _, _, worst = heapq.heappop(heap)
        total_value = total_value - worst.value
        total_error -= worst.error
        if worst.defect_x >= worst.defect_u:
            xm = 0.5 * (worst.x0 + worst.x1)
            children = (
                _evaluate(f, worst.x0, xm, worst.u0, worst.u1),
                _evaluate(f, xm, worst.x1, worst.u0, worst.u1),
            )
        else:
            um = 0.5 * (worst.u0 + worst.u1)
            children = (
                _evaluate(f, worst.x0, worst.x1, worst.u0, um),
                _evaluate(f, worst.x0, worst.x1, um, worst.u1),
            )
        evals += 2 * NODES_PER_PANEL
        for child in children:
            total_value = total_value + child.value
            total_error += child.error
            heapq.heappush(heap, (-child.error, counter, child))
            counter += 1

    # Re-sum in a fixed spatial order so the result does not depend on the
    # incremental bookkeeping above.
    final = sorted((entry[2] for entry in heap), key=lambda p: (p.x0, p.u0))
    ncomp = final[0].value.size
    value = np.array([math.fsum(p.value[c] for p in final) for c in range(ncomp)])
    error = np.array([math.fsum(p.err_vec[c] for p in final) for c in range(ncomp)])
    return PanelIntegral(value, error, evals, converged, len(final))
