"""Tabulated optical loss data and its causality transform to eps(i*omega).

A table holds samples of the loss part eps''(x) on the real frequency axis;
the permittivity on the imaginary axis follows from

    eps(i*omega) = 1 + 2/pi * int_0^inf  x eps''(x) / (x^2 + omega^2)  dx.

The integral is evaluated segment by segment under the table's declared
interpolation law (power law between samples in log-log by default, since
optical data spans decades).  Each segment integral is computed to near
machine accuracy from the law itself, not by black-box quadrature of the
raw kernel:

* segments well below omega use the ascending expansion of the kernel in
  (x/omega)^2, term by term against exact power integrals;
* segments well above omega use the descending expansion in (omega/x)^2;
* the at-most-factor-two window straddling omega is integrated on the log
  axis with a fixed Gauss rule, which is exact to ~1e-30 there because the
  integrand is analytic with poles a fixed distance pi/2 away.

Tails outside the sampled range follow the extrapolation policy; the
defaults (eps'' ~ 1/x below, ~ 1/x^3 above) are exact for free-carrier
loss spectra, which is where extrapolation actually matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import ev_to_rad_s

__all__ = [
    "ExtrapolationError",
    "OpticalTable",
    "kk_epsilon",
    "read_table",
    "table_from_nk",
]

INTERP_POLICIES = ("loglog", "linear")
LOW_POLICIES = ("inverse-x", "zero", "error")
HIGH_POLICIES = ("cubic-decay", "zero", "error")

# Fraction of omega where the series zones end and the straddle window
# starts; series ratio is at most _MARGIN^2 per term.
_MARGIN = 0.2
_MAX_SERIES_TERMS = 24
# Relative tail contribution above which the "error" policy aborts.
ERROR_POLICY_LIMIT = 1e-4

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)


class ExtrapolationError(ValueError):
    """Raised when a forbidden extrapolation tail would matter."""


@dataclass(frozen=True, eq=False)
class OpticalTable:
    """Sampled loss spectrum with interpolation and extrapolation policies.

    ``x`` is strictly increasing and positive (rad/s), ``eps2`` >= 0.
    Tables compare by identity; treat them as immutable after creation.
    """

    x: np.ndarray
    eps2: np.ndarray
    interp: str = "loglog"
    extrap_low: str = "inverse-x"
    extrap_high: str = "cubic-decay"
    label: str = ""

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        eps2 = np.asarray(self.eps2, dtype=float)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "eps2", eps2)
        if x.ndim != 1 or eps2.shape != x.shape:
            raise ValueError("x and eps2 must be 1-D arrays of equal length")
        if x.size < 2:
            raise ValueError("a table needs at least 2 samples")
        if np.any(x <= 0):
            raise ValueError("sample frequencies must be positive")
        if np.any(np.diff(x) <= 0):
            raise ValueError("sample frequencies must be strictly increasing")
        if np.any(eps2 < 0):
            raise ValueError("loss values eps'' must be >= 0")
        if self.interp not in INTERP_POLICIES:
            raise ValueError(f"interp must be one of {INTERP_POLICIES}")
        if self.extrap_low not in LOW_POLICIES:
            raise ValueError(f"extrap_low must be one of {LOW_POLICIES}")
        if self.extrap_high not in HIGH_POLICIES:
            raise ValueError(f"extrap_high must be one of {HIGH_POLICIES}")

    def loss(self, x):
        """Interpolated eps''(x) inside the sampled range (for diagnostics)."""
        x = np.asarray(x, dtype=float)
        if np.any(x < self.x[0]) or np.any(x > self.x[-1]):
            raise ValueError("loss() only interpolates inside the sampled range")
        if self.interp == "linear":
            return np.interp(x, self.x, self.eps2)
        safe = np.where(self.eps2 > 0, self.eps2, 1.0)
        logv = np.interp(np.log(x), np.log(self.x), np.log(safe))
        out = np.exp(logv)
        # segments touching a zero sample are linear by construction
        idx = np.clip(np.searchsorted(self.x, x, side="right") - 1, 0, self.x.size - 2)
        lin = (self.eps2[idx] == 0) | (self.eps2[idx + 1] == 0)
        if np.any(lin):
            out = np.where(lin, np.interp(x, self.x, self.eps2), out)
        return out


def table_from_nk(rows, **policies) -> OpticalTable:
    """Build a table from (x, n, k) rows using eps'' = 2 n k.

    ``x`` is in rad/s and must be ascending; n and k must be >= 0.
    """
    rows = list(rows)
    x = np.array([r[0] for r in rows], dtype=float)
    n = np.array([r[1] for r in rows], dtype=float)
    k = np.array([r[2] for r in rows], dtype=float)
    if np.any(n < 0) or np.any(k < 0):
        raise ValueError("refractive index components n, k must be >= 0")
    return OpticalTable(x=x, eps2=2.0 * n * k, **policies)


def read_table(text: str, label: str = "", **policies) -> OpticalTable:
    """Parse the plain-text table format.

    Lines starting with '#' are comments; a directive line
    ``# columns: ev n k`` or ``# columns: ev eps2`` picks the layout
    (inferred from the column count when absent).  Frequencies are in eV.
    """
    layout = None
    data = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip().lower()
            if body.startswith("columns:"):
                layout = tuple(body[len("columns:"):].split())
                if layout not in (("ev", "n", "k"), ("ev", "eps2")):
                    raise ValueError(
                        f"line {lineno}: unknown column layout {' '.join(layout)!r}"
                    )
            continue
        try:
            values = [float(tok) for tok in line.split()]
        except ValueError:
            raise ValueError(f"line {lineno}: not numeric: {raw!r}") from None
        data.append((lineno, values))
    if not data:
        raise ValueError("no data rows found")
    ncols = len(data[0][1])
    if layout is None:
        layout = ("ev", "n", "k") if ncols == 3 else ("ev", "eps2")
    for lineno, values in data:
        if len(values) != len(layout):
            raise ValueError(f"line {lineno}: expected {len(layout)} columns")
    if label:
        policies = {**policies, "label": label}
    x = np.array([ev_to_rad_s(v[0]) for _, v in data])
    if layout == ("ev", "n", "k"):
        rows = [(xi, v[1], v[2]) for xi, (_, v) in zip(x, data)]
        return table_from_nk(rows, **policies)
    eps2 = np.array([v[1] for _, v in data])
    return OpticalTable(x=x, eps2=eps2, **policies)


# --------------------------------------------------------------------------
# Segment integrals
# --------------------------------------------------------------------------

def _expm1_over(m, delta):
    """expm1(m*delta)/m, continuous at m == 0 where the limit is delta.

    Only consulted where |m*delta| < 0.5, so the argument is clipped to
    keep the unused lanes of the vectorized branch from overflowing.
    """
    z = np.clip(m * delta, -0.6, 0.6)
    msafe = np.where(m == 0.0, 1.0, m)
    return np.where(m == 0.0, delta, np.expm1(z) / msafe)


def _alternating_series(p_init1, p_init2, step1, step2, eps1, eps2, m0, m_step, delta):
    """sum_n (-1)^n [eps2*P2_n - eps1*P1_n] / m_n with P_n geometric in n.

    The small-|m delta| branch rewrites the bracket as
    eps1*P1_n*expm1(m_n delta), which also covers the m_n = 0 logarithmic
    case and dodges cancellation on narrow segments.  Entries with
    eps1 = eps2 = 0 contribute nothing (used to mask out empty pieces).
    """
    acc = np.zeros(np.broadcast(eps1, m0).shape)
    P1 = np.array(np.broadcast_to(p_init1, acc.shape), dtype=float, copy=True)
    P2 = np.array(np.broadcast_to(p_init2, acc.shape), dtype=float, copy=True)
    sign = 1.0
    for n in range(_MAX_SERIES_TERMS):
        m = m0 + n * m_step
        small = np.abs(m * delta) < 0.5
        direct = (eps2 * P2 - eps1 * P1) / np.where(m == 0.0, 1.0, m)
        careful = eps1 * P1 * _expm1_over(m, delta)
        term = sign * np.where(small, careful, direct)
        acc += term
        P1 *= step1
        P2 *= step2
        sign = -sign
        if n % 4 == 3:
            scale = np.max(np.abs(acc)) if acc.size else 0.0
            if np.max(np.abs(term)) <= 1e-17 * scale:
                break
    return acc


def _segment_powerlaw(a1, a2, p, eps_a1, omega):
    """Integral of x*eps''(x)/(x^2+omega^2) over [a1, a2] for a power law.

    Splits into the below-omega series zone, the straddle window and the
    above-omega series zone; all inputs are dense (n_omega, n_segment)
    arrays.  eps''(x) = eps_a1 * (x/a1)^p on the segment.
    """
    total = np.zeros(a1.shape)

    # below omega: kernel expanded in (x/omega)^2; empty pieces collapse to
    # [a1, a1] so the masked lanes stay finite
    lo1 = a1
    lo2 = np.minimum(a2, _MARGIN * omega)
    valid = lo2 > lo1
    lo2 = np.where(valid, lo2, lo1)
    rho1 = np.where(valid, lo1 / omega, 0.0)
    rho2 = np.where(valid, lo2 / omega, 0.0)
    e1 = np.where(valid, eps_a1, 0.0)
    e2 = np.where(valid, eps_a1 * _pow_ratio(lo2, a1, p), 0.0)
    delta = np.log(lo2 / lo1)
    total += _alternating_series(
        rho1 * rho1, rho2 * rho2, rho1 * rho1, rho2 * rho2,
        e1, e2, p + 2.0, 2.0, delta,
    )

    # above omega: kernel expanded in (omega/x)^2
    hi1 = np.maximum(a1, omega / _MARGIN)
    hi2 = a2
    valid = hi2 > hi1
    hi1 = np.where(valid, hi1, hi2)
    tau1 = np.where(valid, omega / hi1, 0.0)
    tau2 = np.where(valid, omega / hi2, 0.0)
    e1 = np.where(valid, eps_a1 * _pow_ratio(hi1, a1, p), 0.0)
    e2 = np.where(valid, eps_a1 * _pow_ratio(hi2, a1, p), 0.0)
    delta = np.log(hi2 / hi1)
    total += _alternating_series(
        np.ones_like(tau1), np.ones_like(tau2), tau1 * tau1, tau2 * tau2,
        e1, e2, p, -2.0, delta,
    )

    # straddle window: fixed Gauss rule on the log axis
    mid1 = np.maximum(a1, _MARGIN * omega)
    mid2 = np.minimum(a2, omega / _MARGIN)
    valid = mid2 > mid1
    if np.any(valid):
        idx = np.nonzero(valid)
        total[idx] += _straddle_integral(
            mid1[idx], mid2[idx], p[idx], eps_a1[idx], a1[idx], omega[idx]
        )
    return total


def _pow_ratio(x, ref, p):
    """(x/ref)^p evaluated in log space; x == ref gives exactly 1."""
    ratio = np.where(x == ref, 1.0, x / ref)
    return np.exp(p * np.log(ratio))


def _straddle_integral(a1, a2, p, eps_ref, x_ref, omega):
    """Gauss integration of the power law across the kernel knee at x ~ omega.

    On u = ln x the integrand eps''(e^u) e^2u/(e^2u + omega^2) is analytic
    with poles at Im(u) = pi/2; the window spans at most ln(1/margin^2), so
    a 32-node rule is exact to working precision unless the power-law
    exponent is extreme, in which case the window is subdivided.
    """
    u1 = np.log(a1)
    u2 = np.log(a2)
    out = np.zeros_like(a1)
    spans = np.abs(p) * (u2 - u1)
    n_sub = np.maximum(1, np.ceil(spans / 40.0).astype(int))
    for count in np.unique(n_sub):
        sel = n_sub == count
        lo = u1[sel]
        step = (u2[sel] - lo) / count
        acc = np.zeros_like(lo)
        for piece in range(count):
            left = lo + piece * step
            half = 0.5 * step
            u = (left + half)[:, None] + half[:, None] * _GL_NODES[None, :]
            x = np.exp(u)
            loss = eps_ref[sel][:, None] * np.exp(
                p[sel][:, None] * (u - np.log(x_ref[sel])[:, None])
            )
            kernel = 1.0 / (1.0 + (omega[sel][:, None] / x) ** 2)
            acc += half * ((loss * kernel) @ _GL_WEIGHTS)
        out[sel] = acc
    return out


def _segment_linear(a, b, ea, eb, omega):
    """Exact integral for eps'' linear in x on [a, b]."""
    slope = (eb - ea) / (b - a)
    intercept = ea - slope * a
    log_part = 0.5 * np.log1p((b - a) * (b + a) / (a * a + omega * omega))
    atan_part = (b - a) - omega * np.arctan(
        omega * (b - a) / (omega * omega + a * b)
    )
    return intercept * log_part + slope * atan_part


def _one_minus_atan_over(z):
    """1 - arctan(z)/z, series-protected for small z."""
    z = np.asarray(z, dtype=float)
    z2 = z * z
    series = z2 / 3.0 - z2 * z2 / 5.0 + z2 * z2 * z2 / 7.0 - z2 * z2 * z2 * z2 / 9.0
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = 1.0 - np.arctan(z) / np.where(z == 0.0, 1.0, z)
    return np.where(np.abs(z) < 0.1, series, direct)


def _tail_low(table: OpticalTable, omega):
    """Contribution of x < x_min under the eps'' ~ 1/x default law."""
    x1 = table.x[0]
    e1 = table.eps2[0]
    return e1 * x1 * np.arctan(x1 / omega) / omega


def _tail_high(table: OpticalTable, omega):
    """Contribution of x > x_max under the eps'' ~ 1/x^3 default law."""
    xn = table.x[-1]
    en = table.eps2[-1]
    z = omega / xn
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(
            z > 1e-150,
            en * xn * xn * _one_minus_atan_over(z) / (omega * omega),
            en / 3.0,  # omega far below the sampled range
        )
    return out


def kk_epsilon(table: OpticalTable, omega):
    """eps(i*omega) from the table via the causality integral.

    ``omega`` is a positive scalar or array in rad/s.  Raises
    ExtrapolationError when a tail with policy "error" would contribute
    more than ERROR_POLICY_LIMIT of the result.
    """
    scalar = np.isscalar(omega) or np.ndim(omega) == 0
    w = np.atleast_1d(np.asarray(omega, dtype=float)).ravel()
    if np.any(w <= 0):
        raise ValueError("omega must be positive")

    x = table.x
    e = table.eps2
    x1 = x[:-1][None, :]
    x2 = x[1:][None, :]
    e1 = e[:-1][None, :]
    e2 = e[1:][None, :]
    W = w[:, None]

    if table.interp == "linear":
        seg = _segment_linear(x1, x2, e1, e2, W)
        main = seg.sum(axis=1)
    else:
        # Segments touching a zero sample cannot carry a power law and are
        # integrated with the exact linear formula instead.
        powerlaw = (e1 > 0) & (e2 > 0)
        p = np.where(
            powerlaw, np.log(np.where(powerlaw, e2, 1.0) / np.where(e1 > 0, e1, 1.0)), 0.0
        ) / np.log(x2 / x1)
        shape = (w.size, x1.shape[1])
        seg_pl = _segment_powerlaw(
            np.broadcast_to(x1, shape).copy(),
            np.broadcast_to(x2, shape).copy(),
            np.broadcast_to(p, shape).copy(),
            np.where(np.broadcast_to(powerlaw, shape), np.broadcast_to(e1, shape), 0.0),
            np.broadcast_to(W, shape).copy(),
        )
        main = seg_pl.sum(axis=1)
        needs_linear = ~powerlaw & ((e1 > 0) | (e2 > 0))
        if np.any(needs_linear):
            seg_lin = np.where(needs_linear, _segment_linear(x1, x2, e1, e2, W), 0.0)
            main = main + seg_lin.sum(axis=1)

    low = _tail_low(table, w)
    high = _tail_high(table, w)
    total = main.copy()
    if table.extrap_low == "inverse-x":
        total += low
    if table.extrap_high == "cubic-decay":
        total += high
    reference = np.maximum(main + low + high, 1e-300)
    if table.extrap_low == "error" and np.any(low > ERROR_POLICY_LIMIT * reference):
        worst = float(np.max(low / reference))
        raise ExtrapolationError(
            f"low-frequency tail would contribute {worst:.2e} of the integral; "
            "extend the table or relax extrap_low"
        )
    if table.extrap_high == "error" and np.any(high > ERROR_POLICY_LIMIT * reference):
        worst = float(np.max(high / reference))
        raise ExtrapolationError(
            f"high-frequency tail would contribute {worst:.2e} of the integral; "
            "extend the table or relax extrap_high"
        )

    eps = 1.0 + (2.0 / math.pi) * total
    if scalar:
        return float(eps[0])
    return eps.reshape(np.shape(omega))
