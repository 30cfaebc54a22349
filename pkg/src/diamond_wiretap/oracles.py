"""Independent cross-checks for the closed forms.

Two independent evaluation paths:

* jointly Gaussian vectors (X1, X2, Y, Z) with the model covariance, where
  any mutual information reduces to log-determinant ratios; and
* discrete memoryless channels given by an explicit transition table
  p(y, z | x1, x2), where the general-distribution secrecy rates are direct
  sums.  A quantized version of the Gaussian model ties the two together.

The closed-form rate functions must agree with the Gaussian path to
round-off; ``validate_closed_forms`` drives that comparison over seeded
random parameter draws.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import rate_functions as rf
from .errors import InvalidPmf, SingularCovariance
from .rate_functions import ChannelParams

__all__ = [
    "GaussianSystem",
    "gaussian_mi",
    "DmcChannel",
    "DmcRates",
    "dmc_rates",
    "load_dmc",
    "discretized_gaussian_channel",
    "ValidationReport",
    "validate_closed_forms",
]

_LN2 = math.log(2.0)
_VARS = {"X1": 0, "X2": 1, "Y": 2, "Z": 3}


@dataclass(frozen=True)
class GaussianSystem:
    """Covariance of (X1, X2, Y, Z) for correlated Gaussian inputs.

    Y = X1 + X2 + N_Y and Z = sqrt(g)*(X1 + X2) + N_Z with independent unit
    noises, E[X_i^2] = P_i, and E[X1 X2] = rho*sqrt(P1*P2).
    """

    p1: float
    p2: float
    rho: float
    g: float

    @property
    def covariance(self) -> np.ndarray:
        p1, p2, rho, g = self.p1, self.p2, self.rho, self.g
        q = rho * math.sqrt(p1 * p2)
        s = p1 + p2 + 2.0 * q
        sg = math.sqrt(g)
        return np.array(
            [
                [p1, q, p1 + q, sg * (p1 + q)],
                [q, p2, p2 + q, sg * (p2 + q)],
                [p1 + q, p2 + q, s + 1.0, sg * s],
                [sg * (p1 + q), sg * (p2 + q), sg * s, g * s + 1.0],
            ]
        )


def _parse_mi_spec(spec: str) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    s = spec.replace(" ", "")
    if not (s.startswith("I(") and s.endswith(")")):
        raise ValueError(f"malformed mutual-information spec {spec!r}")
    body = s[2:-1]
    parts = body.split(";")
    if len(parts) != 2:
        raise ValueError(f"expected exactly one ';' in {spec!r}")
    a_part, rest = parts
    b_part, _, c_part = rest.partition("|")

    def to_idx(chunk: str) -> tuple[int, ...]:
        if not chunk:
            return ()
        idx = []
        for name in chunk.split(","):
            if name not in _VARS:
                raise ValueError(f"unknown variable {name!r} in {spec!r}")
            idx.append(_VARS[name])
        return tuple(idx)

    a, b, c = to_idx(a_part), to_idx(b_part), to_idx(c_part)
    if not a or not b:
        raise ValueError(f"both sides of ';' need variables in {spec!r}")
    if set(a) & set(b) or set(a) & set(c) or set(b) & set(c):
        raise ValueError(f"variable groups must be disjoint in {spec!r}")
    return a, b, c


def _logdet(cov: np.ndarray, idx: tuple[int, ...]) -> float:
    if not idx:
        return 0.0
    sub = cov[np.ix_(idx, idx)]
    sign, ld = np.linalg.slogdet(sub)
    if sign <= 0.0 or not math.isfinite(ld):
        raise SingularCovariance(f"covariance block {idx} is not positive definite")
    return float(ld)


def gaussian_mi(system: GaussianSystem, spec: str) -> float:
    """Mutual information in bits from the log-determinant identity.

    ``spec`` looks like "I(X1,X2;Y)" or "I(X1;Y|X2)" over the variables
    X1, X2, Y, Z.  I(A;B|C) = 0.5*log2(det S_AC * det S_BC / (det S_C * det S_ABC)).
    """
    a, b, c = _parse_mi_spec(spec)
    cov = system.covariance
    ld = (
        _logdet(cov, tuple(sorted(a + c)))
        + _logdet(cov, tuple(sorted(b + c)))
        - _logdet(cov, tuple(sorted(c)))
        - _logdet(cov, tuple(sorted(a + b + c)))
    )
    return 0.5 * ld / _LN2


def _check_pmf(p: np.ndarray, what: str, axis=None) -> None:
    if np.any(p < 0.0):
        raise InvalidPmf(f"{what} has negative entries")
    sums = p.sum() if axis is None else p.sum(axis=axis)
    if np.any(np.abs(sums - 1.0) > 1e-12):
        raise InvalidPmf(f"{what} rows must sum to 1 within 1e-12")


@dataclass(frozen=True)
class DmcChannel:
    """Discrete channel p(y, z | x1, x2) with finite alphabets."""

    transition: np.ndarray  # shape (n1, n2, ny, nz)

    def __post_init__(self) -> None:
        t = np.asarray(self.transition, dtype=float)
        if t.ndim != 4:
            raise InvalidPmf(f"transition must be 4-dimensional, got shape {t.shape}")
        _check_pmf(t, "transition p(y,z|x1,x2)", axis=(2, 3))
        object.__setattr__(self, "transition", t)

    @property
    def alphabet_sizes(self) -> tuple[int, int, int, int]:
        return self.transition.shape


def _entropy(p: np.ndarray) -> float:
    # 0*log(0) = 0 by convention
    q = p[p > 0.0]
    return float(-np.sum(q * np.log2(q)))


@dataclass(frozen=True)
class DmcRates:
    """The five secrecy rates of a discrete channel plus their ingredients.

    Scenario-1 schemes carry suffix 1, scenario-2 schemes suffix 2; the
    scenario-2 fictitious-message rate r_prime sits at its smallest
    admissible value I(X1,X2;Z).
    """

    df1: float
    pdfm1: float
    df2: float
    pdfdfm2: float
    pdfpdfm2: float
    r_prime: float
    mi: dict[str, float]


def dmc_rates(channel: DmcChannel, input_pmf: np.ndarray, c1: float, c2: float) -> DmcRates:
    """Evaluate all five secrecy rates for one input distribution.

    ``input_pmf`` is p(x1, x2) over the input alphabets.  Rates are clamped
    at 0; the PDF-PDF-M scheme additionally requires the strict link
    conditions C1 > I(X1;Z) and C2 > I(X2;Z).
    """
    pin = np.asarray(input_pmf, dtype=float)
    n1, n2, _, _ = channel.alphabet_sizes
    if pin.shape != (n1, n2):
        raise InvalidPmf(f"input pmf shape {pin.shape} does not match alphabets ({n1}, {n2})")
    _check_pmf(pin, "input pmf")
    if c1 < 0 or c2 < 0:
        raise InvalidPmf(f"link capacities must be nonnegative, got c1={c1}, c2={c2}")

    pxy = pin[:, :, None] * channel.transition.sum(axis=3)  # p(x1, x2, y)
    pxz = pin[:, :, None] * channel.transition.sum(axis=2)  # p(x1, x2, z)

    h_x1x2 = _entropy(pin)
    h_x1 = _entropy(pin.sum(axis=1))
    h_x2 = _entropy(pin.sum(axis=0))
    h_y = _entropy(pxy.sum(axis=(0, 1)))
    h_z = _entropy(pxz.sum(axis=(0, 1)))
    h_x1x2y = _entropy(pxy)
    h_x1x2z = _entropy(pxz)
    h_x1y = _entropy(pxy.sum(axis=1))
    h_x2y = _entropy(pxy.sum(axis=0))
    h_x1z = _entropy(pxz.sum(axis=1))
    h_x2z = _entropy(pxz.sum(axis=0))

    mi = {
        "I(X1,X2;Y)": h_x1x2 + h_y - h_x1x2y,
        "I(X1,X2;Z)": h_x1x2 + h_z - h_x1x2z,
        "I(X1;Y|X2)": h_x1x2 + h_x2y - h_x2 - h_x1x2y,
        "I(X2;Y|X1)": h_x1x2 + h_x1y - h_x1 - h_x1x2y,
        "I(X1;X2)": h_x1 + h_x2 - h_x1x2,
        "I(X1;Z)": h_x1 + h_z - h_x1z,
        "I(X2;Z)": h_x2 + h_z - h_x2z,
    }
    iy, iz = mi["I(X1,X2;Y)"], mi["I(X1,X2;Z)"]
    iy1, iy2 = mi["I(X1;Y|X2)"], mi["I(X2;Y|X1)"]
    i12 = mi["I(X1;X2)"]

    df1 = max(0.0, min(c1, c2, iy - iz))
    pdfm1 = max(0.0, min(c1 + iy2, c2 + iy1, c1 + c2 - i12, iy - iz))
    df2 = max(0.0, min(c1, c2, iy) - iz)
    pdfdfm2 = max(0.0, min(c1 + iy2 - iz, c2 + iy1 - iz, c1 + c2 - i12 - 2.0 * iz, iy - iz))
    if c1 > mi["I(X1;Z)"] and c2 > mi["I(X2;Z)"]:
        pdfpdfm2 = max(0.0, min(c1 + iy2, c2 + iy1, c1 + c2 - i12, iy) - iz)
    else:
        pdfpdfm2 = 0.0

    return DmcRates(
        df1=df1, pdfm1=pdfm1, df2=df2, pdfdfm2=pdfdfm2, pdfpdfm2=pdfpdfm2,
        r_prime=iz, mi=mi,
    )


def load_dmc(path: str) -> tuple[DmcChannel, np.ndarray, float, float]:
    """Read a channel document: alphabet_sizes, transition, input_pmf, c1, c2.

    The transition is the row-major flattening of p(y, z | x1, x2) indexed
    (x1, x2, y, z); the input pmf is the row-major p(x1, x2).
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    for field in ("alphabet_sizes", "transition", "input_pmf", "c1", "c2"):
        if field not in doc:
            raise InvalidPmf(f"channel document is missing the field {field!r}")
    sizes = doc["alphabet_sizes"]
    if len(sizes) != 4 or any(int(n) != n or n < 1 for n in sizes):
        raise InvalidPmf(f"alphabet_sizes needs four positive integers, got {sizes!r}")
    n1, n2, ny, nz = (int(n) for n in sizes)
    trans = np.asarray(doc["transition"], dtype=float)
    if trans.size != n1 * n2 * ny * nz:
        raise InvalidPmf(
            f"transition has {trans.size} entries, expected {n1 * n2 * ny * nz}"
        )
    pin = np.asarray(doc["input_pmf"], dtype=float)
    if pin.size != n1 * n2:
        raise InvalidPmf(f"input_pmf has {pin.size} entries, expected {n1 * n2}")
    pin = pin.reshape(n1, n2)
    _check_pmf(pin, "input_pmf")
    channel = DmcChannel(transition=trans.reshape(n1, n2, ny, nz))
    return channel, pin, float(doc["c1"]), float(doc["c2"])


def _gaussian_bins(n: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    edges = np.linspace(lo, hi, n + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return edges, centers


def _phi(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.vectorize(math.erf)(x / math.sqrt(2.0)))


def _bin_probs(edges: np.ndarray, mean, scale: float) -> np.ndarray:
    # P(bin) for N(mean, scale^2), renormalized over the covered range
    z = (edges[None, :] - np.asarray(mean, dtype=float)[:, None]) / scale
    cdf = _phi(z)
    p = np.diff(cdf, axis=1)
    return p / p.sum(axis=1, keepdims=True)


def discretized_gaussian_channel(
    p1: float,
    p2: float,
    g: float,
    n_input: int = 64,
    n_output: int = 64,
    span: float = 5.0,
) -> tuple[DmcChannel, np.ndarray]:
    """Quantized Gaussian model with independent inputs (rho = 0).

    Inputs are quantized on uniform grids over +/- span standard deviations
    with ``n_input`` bins each; Y and Z get ``n_output`` bins covering the
    reachable range plus the same noise margin.  Given the inputs, Y and Z
    are conditionally independent, so the transition factorizes.
    """
    e1, x1 = _gaussian_bins(n_input, -span * math.sqrt(p1), span * math.sqrt(p1))
    e2, x2 = _gaussian_bins(n_input, -span * math.sqrt(p2), span * math.sqrt(p2))
    pm1 = np.diff(_phi(e1[None, :] / math.sqrt(p1)), axis=1).ravel()
    pm2 = np.diff(_phi(e2[None, :] / math.sqrt(p2)), axis=1).ravel()
    pin = np.outer(pm1 / pm1.sum(), pm2 / pm2.sum())

    sums = (x1[:, None] + x2[None, :]).ravel()
    ey, _ = _gaussian_bins(n_output, sums.min() - span, sums.max() + span)
    sg = math.sqrt(g)
    ez, _ = _gaussian_bins(n_output, sg * sums.min() - span, sg * sums.max() + span)

    py = _bin_probs(ey, sums, 1.0)  # (n_input^2, n_output)
    pz = _bin_probs(ez, sg * sums, 1.0)
    trans = (py[:, :, None] * pz[:, None, :]).reshape(n_input, n_input, n_output, n_output)
    return DmcChannel(transition=trans), pin


@dataclass(frozen=True)
class ValidationReport:
    """Result of comparing the closed forms against the Gaussian oracle."""

    trials: int
    seed: int
    tolerance: float
    checked: int
    skipped: int
    max_deviation: float
    failures: tuple[tuple[int, str, float], ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def validate_closed_forms(trials: int = 1000, seed: int = 0, tolerance: float = 1e-9) -> ValidationReport:
    """Compare f1..f7 with log-determinant mutual informations on random draws.

    Draws P1, P2 in (0, 100], C1, C2 in [0, 5], g in [0, 0.99] (forced to 0
    every 25th draw), rho in [-1, 1].  The f3 identity is skipped at
    |rho| = 1 where the input covariance is singular and f3 is -inf.
    """
    rng = np.random.default_rng(seed)
    checked = 0
    skipped = 0
    max_dev = 0.0
    failures: list[tuple[int, str, float]] = []
    for i in range(trials):
        p1 = float(rng.uniform(1e-3, 100.0))
        p2 = float(rng.uniform(1e-3, 100.0))
        c1 = float(rng.uniform(0.0, 5.0))
        c2 = float(rng.uniform(0.0, 5.0))
        g = 0.0 if i % 25 == 0 else float(rng.uniform(0.0, 0.99))
        rho = float(rng.uniform(-1.0, 1.0))
        params = ChannelParams(p1=p1, p2=p2, c1=c1, c2=c2, g=g)
        system = GaussianSystem(p1=p1, p2=p2, rho=rho, g=g)

        pairs = [
            ("f1", rf.f1(params, rho) - c1, "I(X2;Y|X1)"),
            ("f2", rf.f2(params, rho) - c2, "I(X1;Y|X2)"),
            ("f4", rf.f4(params, rho), "I(X1,X2;Y)"),
            ("f5", rf.f5(params, rho), "I(X1,X2;Z)"),
            ("f6", rf.f6(params, rho), "I(X1;Z)"),
            ("f7", rf.f7(params, rho), "I(X2;Z)"),
        ]
        if abs(rho) == 1.0:
            skipped += 1  # f3 is -inf there; covariance of (X1, X2) is singular
        else:
            pairs.append(("f3", c1 + c2 - rf.f3(params, rho), "I(X1;X2)"))
        for name, closed, spec in pairs:
            dev = abs(closed - gaussian_mi(system, spec))
            checked += 1
            max_dev = max(max_dev, dev)
            if not dev <= tolerance:
                failures.append((i, name, dev))
    return ValidationReport(
        trials=trials, seed=seed, tolerance=tolerance,
        checked=checked, skipped=skipped, max_deviation=max_dev,
        failures=tuple(failures),
    )
