"""Named numeric self-checks bundled into verification suites.

Three suites:

* ``table1``   — the ten closed-form free energies against their printed
                 three-significant-figure values.
* ``identities`` — cross-route and special-function identities, each with an
                 explicit tolerance.
* ``figures``  — expansion coefficients, large-N limits, convergence
                 thresholds and error-decay monotonicity behind the
                 convergence plots.

``all`` concatenates the three.  Every check reduces to a single number
compared against a single expectation, so a report is easy to diff.

A note on the d = 5 thresholds: the 1%-agreement scan enters the band at
N = 53 (conformal) and N = 54 (pseudo-conformal).  Those measured values are
what the figure suite asserts; see the README for why the looser "N around
40" expectation quoted elsewhere is not reproducible from the d = 5
coefficient (-0.0159) itself.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .circle import (
    CycleSpec,
    cycle_free_energy_bessel,
    cycle_logdet_exact,
    s1_free_energy,
    winding_integral,
)
from .deform import (
    bessel_diff_closed,
    deformed_f3,
    deformed_f3_digamma,
    deformed_f5,
    deformed_f_general,
    fit_inverse_square_coefficient,
    one_percent_threshold,
    regularized_series_route,
)
from .qdeform import (
    QNumberCtx,
    q_binomial_degeneracy,
    q_degeneracy_difference_form,
    q_free_energy_order2,
)
from .specfun import (
    alt_sum_closed,
    alternating_sum,
    bessel_i,
    dirichlet_eta,
    integrate_semiinf,
    riemann_zeta,
)
from .sphere import (
    SUPPORTED_D,
    degeneracy,
    degeneracy_factor_form,
    degeneracy_shifted_form,
    f_gamma_integral,
    f_integral_rep,
    reference_free_energy,
)

__all__ = [
    "Check",
    "VerifyReport",
    "PRINTED_FREE_ENERGY",
    "PRINTED_COEFFICIENT",
    "MEASURED_THRESHOLD",
    "SUITES",
    "printed_tolerance",
    "run_suite",
]

SUITES = ("table1", "identities", "figures", "all")

# three-significant-figure reference values for the massless free energies
PRINTED_FREE_ENERGY = {
    ("conformal", 3): 0.0638,
    ("conformal", 5): -5.74e-3,
    ("conformal", 7): 7.97e-4,
    ("conformal", 9): -1.31e-4,
    ("conformal", 11): 2.37e-5,
    ("pc", 3): 0.0304,
    ("pc", 5): -3.20e-3,
    ("pc", 7): 4.66e-4,
    ("pc", 9): -7.83e-5,
    ("pc", 11): 1.43e-5,
}

# printed 1/N^2 expansion coefficients: trigonometric d=3/d=5 and q-variant d=3
PRINTED_COEFFICIENT = {
    ("trig", 3, "conformal"): 0.0230,
    ("trig", 3, "pc"): 0.0128,
    ("trig", 5, "conformal"): -0.0159,
    ("trig", 5, "pc"): -0.00931,
    ("q", 3, "conformal"): 0.0232,
    ("q", 3, "pc"): 0.0320,
}

# first N at which the deformed value is within 1% of the continuum limit,
# as measured from the closed series (regression anchors)
MEASURED_THRESHOLD = {
    (3, "conformal"): 19,
    (3, "pc"): 21,
    (5, "conformal"): 53,
    (5, "pc"): 54,
}


@dataclass(frozen=True)
class Check:
    """One named comparison: |got - expected| <= tol."""

    name: str
    expected: float
    got: float
    tol: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.got) and abs(self.got - self.expected) <= self.tol

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "got": self.got,
            "tol": self.tol,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    checks: tuple[Check, ...]
    all_pass: bool
    wall_time_ms: float

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.to_dict() for c in self.checks],
            "all_pass": self.all_pass,
            "wall_time_ms": self.wall_time_ms,
        }


def printed_tolerance(printed: float) -> float:
    """Acceptance window for a value quoted to three significant figures.

    The nominal window is 5e-4 relative, but a correctly rounded three-digit
    decimal can sit up to half an ulp from the exact value, which exceeds
    5e-4 relative whenever the leading digit is small.  The window is
    therefore widened to half an ulp (plus rounding slack) of the printed
    figure whenever that is larger.
    """
    mag = abs(printed)
    if mag == 0.0:
        raise ValueError("printed reference value must be nonzero")
    ulp = 10.0 ** (math.floor(math.log10(mag)) - 2)
    return max(5e-4 * mag, 0.501 * ulp)


def _table1_checks(scale: float) -> list[Check]:
    out = []
    for coupling in ("conformal", "pc"):
        for d in SUPPORTED_D:
            printed = PRINTED_FREE_ENERGY[(coupling, d)]
            out.append(
                Check(
                    name=f"table1_{coupling}_d{d}",
                    expected=printed,
                    got=reference_free_energy(d, coupling),
                    tol=printed_tolerance(printed) * scale,
                )
            )
    return out


def _identity_checks(scale: float) -> list[Check]:
    out = []

    got = dirichlet_eta(3.0) - (1.0 - 2.0 ** (1.0 - 3.0)) * riemann_zeta(3.0)
    out.append(Check("eta_zeta_relation", 0.0, got, 1e-12 * scale))

    # generating function: e^{z cos t} = I_0(z) + 2 sum_n I_n(z) cos(n t)
    z, theta = 2.0, math.pi / 3.0
    series = bessel_i(0, z) + 2.0 * math.fsum(
        bessel_i(n, z) * math.cos(n * theta) for n in range(1, 40)
    )
    out.append(
        Check(
            "bessel_generating_function",
            0.0,
            math.exp(z * math.cos(theta)) - series,
            1e-10 * scale,
        )
    )

    # theta-function duality at t = 1
    t = 1.0
    lhs = math.fsum(math.exp(-(l * l) * t) for l in range(-40, 41))
    rhs = math.sqrt(math.pi / t) * math.fsum(
        math.exp(-math.pi * math.pi * l * l / t) for l in range(-40, 41)
    )
    out.append(Check("poisson_summation", 0.0, lhs - rhs, 1e-12 * scale))

    # -2a^2 sum_alt 1/(q^2-a^2) = 1 - pi a/sin(pi a)
    a = 0.3
    s_plus, _, _ = alternating_sum(lambda q: 1.0 / (q * q - a * a))
    out.append(
        Check(
            "alternating_partial_fraction",
            0.0,
            -2.0 * a * a * s_plus - alt_sum_closed(a),
            1e-9 * scale,
        )
    )

    # winding integral against its closed form e^{-nu x}/nu at nu=6, x=pi/3
    out.append(
        Check(
            "winding_integral_closed",
            math.exp(-2.0 * math.pi) / 6.0,
            winding_integral(6, math.pi / 3.0),
            1e-9 * scale,
        )
    )

    # sum_p e^{2t cos(2 pi p/N)} = N [I_0 + 2 sum_q I_{Nq}] at N=6, t=1
    N, t = 6, 1.0
    lhs = math.fsum(
        math.exp(2.0 * t * math.cos(2.0 * math.pi * p / N)) for p in range(N)
    )
    rhs = N * (
        bessel_i(0, 2.0 * t)
        + 2.0 * math.fsum(bessel_i(N * q, 2.0 * t) for q in range(1, 8))
    )
    out.append(Check("discrete_bessel_sum", 0.0, lhs - rhs, 1e-10 * scale))

    # Bessel difference integral: closed form vs quadrature at nu=6, x=0.5
    nu, x = 6, 0.5

    def integrand(tt: float) -> float:
        if tt == 0.0:
            return 0.0
        diff = bessel_i(nu, 2.0 * tt) - 0.5 * (
            bessel_i(nu - 1, 2.0 * tt) + bessel_i(nu + 1, 2.0 * tt)
        )
        return diff * math.exp(-2.0 * tt * math.cosh(x)) / tt

    quad = integrate_semiinf(integrand, 2.0 * (math.cosh(x) - 1.0), 1e-10).value
    out.append(
        Check(
            "bessel_difference_integral",
            bessel_diff_closed(nu, x),
            quad,
            1e-8 * scale,
        )
    )

    # closed eta/zeta series vs the directly regularized q-sum at N=10
    worst = max(
        abs(deformed_f3(10, c) - regularized_series_route(10, c))
        for c in ("conformal", "pc")
    )
    out.append(Check("f3_closed_vs_regularized", 0.0, worst, 1e-9 * scale))

    # three equivalent degeneracy forms agree exactly
    worst = 0.0
    for d in SUPPORTED_D:
        for l in range(31):
            g = degeneracy(d, l)
            worst = max(
                worst,
                abs(g - degeneracy_factor_form(d, l)),
                abs(g - degeneracy_shifted_form(d, l)),
            )
    out.append(Check("degeneracy_triple_equality", 0.0, worst, 1e-12 * scale))

    # Gaussian-binomial difference form vs cosine-ratio form
    worst = 0.0
    for n in (12, 24):
        ctx = QNumberCtx(n)
        for p in range(0, n - 4):
            worst = max(
                worst,
                abs(
                    q_binomial_degeneracy(ctx, 3, p)
                    - q_degeneracy_difference_form(ctx, 3, p)
                ),
            )
    out.append(Check("q_degeneracy_identity", 0.0, worst, 1e-10 * scale))

    # cycle free energy: eigenvalue log-det = Bessel resummation = closed form
    worst = 0.0
    for n in (3, 17, 64):
        for ma in (0.1, 1.0, 5.0):
            spec = CycleSpec(n, ma)
            closed = s1_free_energy(ma)  # equals ln(2 sinh(pi ma)) identically
            worst = max(
                worst,
                abs(cycle_logdet_exact(spec) - closed),
                abs(cycle_free_energy_bessel(spec).value - closed),
            )
    out.append(Check("cycle_route_agreement", 0.0, worst, 1e-10 * scale))

    # deformed route web
    worst = 0.0
    for c in ("conformal", "pc"):
        a3 = deformed_f3(20, c)
        b3 = deformed_f_general(3, 20, c)
        c3 = regularized_series_route(20, c)
        worst = max(worst, abs(a3 - b3), abs(a3 - c3), abs(b3 - c3))
    out.append(Check("deformed_route_triangle_d3", 0.0, worst, 1e-9 * scale))

    worst = max(
        abs(deformed_f5(16, c) - deformed_f_general(5, 16, c))
        for c in ("conformal", "pc")
    )
    out.append(Check("deformed_route_pair_d5", 0.0, worst, 1e-9 * scale))

    out.append(
        Check(
            "digamma_route_d3",
            deformed_f3(12, "conformal"),
            deformed_f3_digamma(12),
            1e-10 * scale,
        )
    )

    # independent integral representations against the closed references
    worst = max(
        abs(f_integral_rep(d, c) - reference_free_energy(d, c))
        for d in SUPPORTED_D
        for c in ("conformal", "pc")
    )
    out.append(Check("sphere_integral_route", 0.0, worst, 1e-8 * scale))

    worst = max(
        abs(f_gamma_integral(d, c) - reference_free_energy(d, c))
        for d in SUPPORTED_D
        for c in ("conformal", "pc")
    )
    out.append(Check("sphere_gamma_integral_route", 0.0, worst, 1e-7 * scale))

    return out


def _figure_checks(scale: float) -> list[Check]:
    out = []

    for (family, d, coupling), printed in PRINTED_COEFFICIENT.items():
        if family == "trig":
            fn = deformed_f3 if d == 3 else deformed_f5
            got = fit_inverse_square_coefficient(
                lambda n: fn(n, coupling),  # noqa: B023 — consumed immediately
                reference_free_energy(d, coupling),
            )
        else:
            n0 = 100
            got = (
                q_free_energy_order2(n0, coupling)
                - q_free_energy_order2(10**9, coupling)
            ) / (math.pi / n0) ** 2
        out.append(
            Check(f"coefficient_{family}_d{d}_{coupling}", printed, got, 5e-4 * scale)
        )

    for d in SUPPORTED_D:
        for coupling in ("conformal", "pc"):
            out.append(
                Check(
                    name=f"large_N_limit_d{d}_{coupling}",
                    expected=reference_free_energy(d, coupling),
                    got=deformed_f_general(d, 10**4, coupling),
                    tol=1e-6 * scale,
                )
            )

    # thresholds: d=3 against the quoted "about 20"; d=5 against the measured
    # entry points (the quoted "about 40" is inconsistent with the d=5
    # coefficient — see module docstring)
    for (d, coupling), measured in MEASURED_THRESHOLD.items():
        got = float(one_percent_threshold(d, coupling))
        if d == 3:
            out.append(
                Check(f"threshold_d3_{coupling}", 20.0, got, 5.0 * scale)
            )
        else:
            out.append(
                Check(
                    f"threshold_d5_{coupling}_measured",
                    float(measured),
                    got,
                    0.5 * scale,
                )
            )

    # |F(N) - F| strictly decreasing over the scan window
    for d in (3, 5):
        fn = deformed_f3 if d == 3 else deformed_f5
        for coupling in ("conformal", "pc"):
            ref = reference_free_energy(d, coupling)
            errs = [abs(fn(n, coupling) - ref) for n in range(2 * d, 101)]
            bad = sum(1 for lo, hi in zip(errs, errs[1:]) if hi >= lo)
            out.append(
                Check(f"error_decay_monotone_d{d}_{coupling}", 0.0, float(bad), 0.4)
            )

    return out


def run_suite(suite: str, tol_scale: float = 1.0) -> VerifyReport:
    """Execute one suite and return its report; ``all`` runs everything."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    if not (math.isfinite(tol_scale) and tol_scale > 0.0):
        raise ValueError("tol_scale must be a positive finite number")
    start = time.perf_counter()
    checks: list[Check] = []
    if suite in ("table1", "all"):
        checks += _table1_checks(tol_scale)
    if suite in ("identities", "all"):
        checks += _identity_checks(tol_scale)
    if suite in ("figures", "all"):
        checks += _figure_checks(tol_scale)
    elapsed_ms = (time.perf_counter() - start) * 1e3
    return VerifyReport(
        suite=suite,
        checks=tuple(checks),
        all_pass=all(c.passed for c in checks),
        wall_time_ms=elapsed_ms,
    )
