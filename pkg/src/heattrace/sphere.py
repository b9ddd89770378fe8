"""Spectra, degeneracies, heat traces, and regularized free energies on
odd-dimensional spheres.

Every constant produced here is reachable by at least two independent
routes — direct mode series, zeta regularization built on an exact rational
expansion of the degeneracy polynomial, and integral representations — and
the test suite insists the routes agree.  Nothing is a hard-coded decimal.

Conventions: d is the (odd) sphere dimension, v = (d-1)/2, and the mass
parameter y is either real >= 0 or purely imaginary with |Im y| <= 1/2; the
scaled eigenvalues are (l+v)^2 + Re(y^2), so y = i/2 is the conformally
coupled massless point and y = 0 the pseudo-conformal massless point.
"""

from __future__ import annotations

import math
import cmath
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .specfun import (
    ConvergenceError,
    DEFAULT_POLICY,
    EvalResult,
    Method,
    SeriesPolicy,
    dirichlet_eta,
    gamma_abs_sq,
    gamma_real,
    integrate_finite,
    integrate_semiinf,
    riemann_zeta,
)

__all__ = [
    "Coupling",
    "SUPPORTED_D",
    "SphereSpec",
    "SphereMode",
    "parse_coupling",
    "laplacian_eigenvalue",
    "eigenvalue",
    "mode",
    "degeneracy",
    "degeneracy_factor_form",
    "degeneracy_shifted_form",
    "shifted_degeneracy",
    "shifted_degeneracy_coefficients",
    "heat_trace",
    "f3_conformal_series",
    "f_pc_zeta",
    "f_conformal_reference",
    "reference_free_energy",
    "f_integral_rep",
    "f_gamma_integral",
]

SUPPORTED_D = (3, 5, 7, 9, 11)

_LN2 = math.log(2.0)
_TWO_PI = 2.0 * math.pi


class Coupling(str, Enum):
    CONFORMAL = "conformal"
    PSEUDO_CONFORMAL = "pseudo_conformal"


def parse_coupling(which: "Coupling | str") -> Coupling:
    if isinstance(which, Coupling):
        return which
    s = str(which).strip().lower().replace("-", "_")
    if s == "conformal":
        return Coupling.CONFORMAL
    if s in ("pc", "pseudo_conformal"):
        return Coupling.PSEUDO_CONFORMAL
    raise ValueError(f"unknown coupling {which!r}")


def _check_d(d: int) -> int:
    """Validate oddness and return v = (d-1)/2."""
    if d < 3 or d % 2 == 0:
        raise ValueError("d must be an odd integer >= 3")
    return (d - 1) // 2


@dataclass(frozen=True)
class SphereSpec:
    """Field content on S^d: dimension, coupling, and mass parameter y."""

    d: int
    coupling: Coupling
    y: complex = 0.0

    def __post_init__(self) -> None:
        _check_d(self.d)
        object.__setattr__(self, "coupling", parse_coupling(self.coupling))
        y = complex(self.y)
        if y.imag == 0.0:
            if y.real < 0.0:
                raise ValueError("real y must be >= 0")
        elif y.real == 0.0:
            if abs(y.imag) > 0.5:
                raise ValueError("imaginary y must have |Im y| <= 1/2")
        else:
            raise ValueError("y must be real >= 0 or purely imaginary")
        object.__setattr__(self, "y", y)

    @property
    def v(self) -> int:
        return (self.d - 1) // 2

    @property
    def mass_shift(self) -> float:
        """Re(y^2): the constant added to (l+v)^2 in the eigenvalues."""
        return (self.y * self.y).real

    @classmethod
    def massless(cls, d: int, coupling: "Coupling | str") -> "SphereSpec":
        c = parse_coupling(coupling)
        y = complex(0.0, 0.5) if c is Coupling.CONFORMAL else complex(0.0)
        return cls(d, c, y)


@dataclass(frozen=True)
class SphereMode:
    l: int
    eig: float
    deg: int


def laplacian_eigenvalue(d: int, l: int, xi: float, m2a2: float) -> float:
    """General curved-space eigenvalue l(l+d-1) + xi*d*(d-1) + (ma)^2.

    With xi = (d-2)/(4(d-1)) this equals (l+v)^2 - 1/4 + (ma)^2 and with
    xi = (d-1)/(4d) it equals (l+v)^2 + (ma)^2; kept for validating those
    two reductions rather than as a production path.
    """
    _check_d(d)
    if l < 0:
        raise ValueError("l must be >= 0")
    return l * (l + d - 1.0) + xi * d * (d - 1.0) + m2a2


def eigenvalue(spec: SphereSpec, l: int) -> float:
    """a^2 * lambda_l = (l+v)^2 + Re(y^2)."""
    if l < 0:
        raise ValueError("l must be >= 0")
    j = l + spec.v
    return j * j + spec.mass_shift


def degeneracy(d: int, l: int) -> int:
    """Multiplicity of the l-th Laplacian level on S^d, as the exact
    binomial difference C(d+l, d) - C(d+l-2, d)."""
    _check_d(d)
    if l < 0:
        raise ValueError("l must be >= 0")
    # math.comb(n, k) == 0 for n < k, which makes l = 0, 1 come out right
    return math.comb(d + l, d) - math.comb(d + l - 2, d)


def degeneracy_factor_form(d: int, l: int) -> int:
    """Same multiplicity as (2l+d-1) * prod_{n=1}^{d-2}(l+n) / (d-1)!."""
    _check_d(d)
    if l < 0:
        raise ValueError("l must be >= 0")
    return (2 * l + d - 1) * math.prod(range(l + 1, l + d - 1)) // math.factorial(d - 1)


def shifted_degeneracy(d: int, j: int) -> int:
    """Multiplicity as a polynomial in the shifted index j = l + v:
    2 j^2 prod_{n=1}^{v-1}(j^2 - n^2) / (2v)!.

    Vanishes identically for j = 0..v-1 (a factor hits zero), which is what
    lets mode sums be reindexed to start at j = 0 with no spurious terms.
    """
    v = _check_d(d)
    if j < 0:
        raise ValueError("j must be >= 0")
    num = 2 * j * j * math.prod(j * j - n * n for n in range(1, v))
    return num // math.factorial(2 * v)


def degeneracy_shifted_form(d: int, l: int) -> int:
    return shifted_degeneracy(d, l + _check_d(d))


def shifted_degeneracy_coefficients(d: int) -> tuple[Fraction, ...]:
    """Exact rational coefficients c_k (k = 1..v) of the shifted-index
    multiplicity polynomial: 2x prod_{n=1}^{v-1}(x - n^2)/(2v)! = sum c_k x^k
    with x = j^2.  The constant term is identically zero and omitted."""
    v = _check_d(d)
    poly = [Fraction(0), Fraction(2)]
    for n in range(1, v):
        n2 = Fraction(n * n)
        longer = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            longer[i + 1] += c
            longer[i] -= c * n2
        poly = longer
    fact = Fraction(math.factorial(2 * v))
    return tuple(c / fact for c in poly[1:])


def mode(spec: SphereSpec, l: int) -> SphereMode:
    return SphereMode(l, eigenvalue(spec, l), degeneracy(spec.d, l))


def heat_trace(
    spec: SphereSpec, t: float, policy: SeriesPolicy = DEFAULT_POLICY
) -> EvalResult:
    """sum_l g_l e^{-a^2 lambda_l t}, truncated once terms fall below
    abs_tol with a geometric bound on the (faster-than-geometric) tail."""
    if t <= 0.0:
        raise ValueError("t must be > 0")
    shift = spec.mass_shift
    v = spec.v
    s = 0.0
    prev = math.inf
    for l in range(policy.max_terms):
        j = l + v
        term = degeneracy(spec.d, l) * math.exp(-(j * j + shift) * t)
        s += term
        if l >= 1:
            r = term / prev
            if r < 0.5 and term < policy.abs_tol:
                tail = term * r / (1.0 - r)
                return EvalResult(s, Method.SERIES, l + 1, tail)
        prev = term
    raise ConvergenceError("heat trace did not converge within max_terms")


def f3_conformal_series(
    y: "complex | float", policy: SeriesPolicy = DEFAULT_POLICY
) -> float:
    """Free energy on S^3 from the exponentially convergent mode series

        F = sum_{l>=1} (y^2/2l + y/(2 pi l^2) + 1/(4 pi^2 l^3)) e^{-2 pi y l}
            - (pi/6) y^3

    for real y >= 0.  y = 0 degenerates to zeta(3)/(4 pi^2); the massless
    conformal point y = i/2 is special-cased to its closed form
    ln2/8 - 3 zeta(3)/(16 pi^2), cross-checked on the spot against the
    alternating route eta(1)/8 - eta(3)/(4 pi^2) (the imaginary parts of
    the series cancel the cubic term analytically there).
    """
    yc = complex(y)
    if yc.imag != 0.0:
        if yc != complex(0.0, 0.5):
            raise ValueError("complex y supported only at the massless point i/2")
        closed = _LN2 / 8.0 - 3.0 * riemann_zeta(3.0) / (16.0 * math.pi**2)
        alt = dirichlet_eta(1.0) / 8.0 - dirichlet_eta(3.0) / (4.0 * math.pi**2)
        if abs(closed - alt) > 1e-10:
            raise RuntimeError("alternating-route cross-check failed")
        return closed
    yr = yc.real
    if yr < 0.0:
        raise ValueError("real y must be >= 0")
    if yr == 0.0:
        return riemann_zeta(3.0) / (4.0 * math.pi**2)

    r = math.exp(-_TWO_PI * yr)
    inv_pi2 = 1.0 / math.pi**2
    s = 0.0
    rl = 1.0
    for l in range(1, policy.max_terms + 1):
        rl *= r
        term = (
            0.5 * yr * yr / l
            + 0.5 * yr / (math.pi * l * l)
            + 0.25 * inv_pi2 / l**3
        ) * rl
        s += term
        # the 1/l^3 species decays too slowly for a pure geometric bound at
        # tiny y; its tail is also below the integral bound 1/(2l^2)
        L1 = l + 1.0
        geom = rl * r / (1.0 - r)
        tail = (
            0.5 * yr * yr * geom / L1
            + 0.5 * yr / math.pi * geom / (L1 * L1)
            + 0.25 * inv_pi2 * min(geom / L1**3, 0.5 / (l * l))
        )
        if term < policy.abs_tol and tail < policy.abs_tol:
            return s - (math.pi / 6.0) * yr**3
    raise ConvergenceError("mode series did not converge within max_terms")


def f_pc_zeta(d: int) -> float:
    """Pseudo-conformal massless free energy by zeta regularization.

    The shifted-index multiplicity polynomial sum c_k j^{2k} turns the mode
    sum into sum_k c_k Z(2k) with Z(2k) the regularized value of
    sum_j j^{2k} ln(j^2); reflection gives
    Z(2k) = (-1)^{k+1} (2k)! zeta(2k+1) / (2 (2 pi)^{2k}).
    """
    if d not in SUPPORTED_D:
        raise ValueError(f"d must be one of {SUPPORTED_D}")
    total = 0.0
    for k, c in enumerate(shifted_degeneracy_coefficients(d), start=1):
        lam = (
            (-1.0) ** (k + 1)
            * math.factorial(2 * k)
            * riemann_zeta(2.0 * k + 1.0)
            / (2.0 * _TWO_PI ** (2 * k))
        )
        total += float(c) * lam
    return total


def f_conformal_reference(d: int) -> float:
    """Closed-form conformal massless free energies, built from ln 2 and
    zeta at odd integers (no stored decimals)."""
    if d not in SUPPORTED_D:
        raise ValueError(f"d must be one of {SUPPORTED_D}")
    p2 = math.pi**2
    z = {k: riemann_zeta(float(k)) for k in (3, 5, 7, 9, 11)}
    if d == 3:
        return (2.0 * _LN2 - 3.0 * z[3] / p2) / 2.0**4
    if d == 5:
        return -(2.0 * _LN2 + 2.0 * z[3] / p2 - 15.0 * z[5] / p2**2) / 2.0**8
    if d == 7:
        return (
            4.0 * _LN2
            + (82.0 / 15.0) * z[3] / p2
            - 10.0 * z[5] / p2**2
            - 63.0 * z[7] / p2**3
        ) / 2.0**12
    if d == 9:
        return -(
            10.0 * _LN2
            + (1588.0 / 105.0) * z[3] / p2
            - 2.0 * z[5] / p2**2
            - 126.0 * z[7] / p2**3
            - 255.0 * z[9] / p2**4
        ) / 2.0**16
    return (
        28.0 * _LN2
        + (7794.0 / 175.0) * z[3] / p2
        + (1940.0 / 63.0) * z[5] / p2**2
        - (1218.0 / 5.0) * z[7] / p2**3
        - 850.0 * z[9] / p2**4
        - 1023.0 * z[11] / p2**5
    ) / 2.0**20


def reference_free_energy(d: int, which: "Coupling | str") -> float:
    """Dispatch to the closed-form reference for the given coupling."""
    c = parse_coupling(which)
    return f_conformal_reference(d) if c is Coupling.CONFORMAL else f_pc_zeta(d)


def f_integral_rep(d: int, which: "Coupling | str", tol: float = 1e-10) -> float:
    """Free energy from the one-dimensional integral representation

        Ftilde = (1/d!) * int u sin(pi u) Gamma(d/2+u) Gamma(d/2-u) du

    over [0, 1] (conformal) or [-1/2, 1/2] (pseudo-conformal; the integrand
    is even there, so twice [0, 1/2] is integrated).  The answer is
    F = -Ftilde / sin(pi d/2) = (-1)^{v+1} Ftilde.
    """
    v = _check_d(d)
    if d not in SUPPORTED_D:
        raise ValueError(f"d must be one of {SUPPORTED_D}")
    coupling = parse_coupling(which)
    half_d = 0.5 * d

    def f(u: float) -> float:
        return u * math.sin(math.pi * u) * gamma_real(half_d + u) * gamma_real(half_d - u)

    if coupling is Coupling.CONFORMAL:
        ft = integrate_finite(f, 0.0, 1.0, tol).value
    else:
        ft = 2.0 * integrate_finite(f, 0.0, 0.5, tol).value
    ft /= math.factorial(d)
    return (-1.0) ** (v + 1) * ft


def f_gamma_integral(d: int, which: "Coupling | str", tol: float = 1e-9) -> float:
    """Free energy from the gamma-modulus integrals on the half-line.

    Pseudo-conformal:  -(-1)^v/(2v)! * int_0^inf |Gamma(v+i tau)|^2
    tau e^{-pi tau} d tau.  Conformal: the same integrand continued to
    z = tau - i/2, where the gamma product collapses to the elementary form
    2 pi prod_{n=0}^{v-1}(n^2 + z^2) / (e^{2 pi z} - 1) whose real part is
    integrated.  Both decay like e^{-2 pi tau} times a polynomial; the
    conservative decay scale pi keeps the tail bound honest against the
    polynomial growth.
    """
    v = _check_d(d)
    if d not in SUPPORTED_D:
        raise ValueError(f"d must be one of {SUPPORTED_D}")
    coupling = parse_coupling(which)
    norm = -((-1.0) ** v) / math.factorial(2 * v)

    if coupling is Coupling.PSEUDO_CONFORMAL:

        def f(tau: float) -> float:
            return gamma_abs_sq(v, tau) * tau * math.exp(-math.pi * tau)

    else:

        def f(tau: float) -> float:
            z = complex(tau, -0.5)
            prod = z * z
            for n in range(1, v):
                prod *= n * n + z * z
            return (_TWO_PI * prod / (cmath.exp(_TWO_PI * z) - 1.0)).real

    return norm * integrate_semiinf(f, math.pi, tol).value
