"""Root-of-unity q-analogue of the trigonometric degeneracy and its d=3 free energy.

With q = exp(2*pi*i/N) the symmetric q-number [p] = sin(pi*p/N)/sin(pi/N) is
real, and the q-binomial build of the sphere degeneracy reproduces the
trigonometric weight up to a cosine ratio that can go negative past p+v = N/2.
The free energy for this variant is only defined perturbatively, through the
second-order expansion of that cosine factor; no non-perturbative trace
regularization is attempted here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .deform import DeformSpec, deformed_degeneracy
from .specfun import dirichlet_eta, riemann_zeta
from .sphere import Coupling, _check_d, parse_coupling

__all__ = [
    "QNumberCtx",
    "q_number",
    "q_factorial",
    "q_binomial",
    "q_degeneracy_difference_form",
    "q_binomial_degeneracy",
    "q_free_energy_order2",
]


@dataclass(frozen=True)
class QNumberCtx:
    """Fixes the root-of-unity order N (q = e^{2 pi i/N})."""

    N: int

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or self.N < 3:
            raise ValueError("root-of-unity order N must be an integer >= 3")


def q_number(ctx: QNumberCtx, p: int) -> float:
    """[p] = sin(pi p/N)/sin(pi/N); requires 0 <= p <= N."""
    if not 0 <= p <= ctx.N:
        raise ValueError(f"q-number index must lie in [0, {ctx.N}], got {p}")
    return math.sin(math.pi * p / ctx.N) / math.sin(math.pi / ctx.N)


def q_factorial(ctx: QNumberCtx, n: int) -> float:
    """[n]! = [1][2]...[n]; defined for 0 <= n <= N-1 ([N] = 0 would kill it)."""
    if not 0 <= n <= ctx.N - 1:
        raise ValueError(f"q-factorial needs 0 <= n <= N-1 = {ctx.N - 1}, got {n}")
    out = 1.0
    for k in range(2, n + 1):
        out *= q_number(ctx, k)
    return out


def q_binomial(ctx: QNumberCtx, n: int, k: int) -> float:
    """Gaussian binomial [n]!/([k]! [n-k]!) for 0 <= k <= n <= N-1.

    Evaluated as a product of ratios [n-k+j]/[j] so no large intermediate
    factorial is formed.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if n > ctx.N - 1:
        raise ValueError(
            f"q-binomial undefined at n = {n} > N-1 = {ctx.N - 1}: [n] vanishes"
        )
    out = 1.0
    for j in range(1, k + 1):
        out *= q_number(ctx, n - k + j) / q_number(ctx, j)
    return out


def q_degeneracy_difference_form(ctx: QNumberCtx, d: int, p: int) -> float:
    """Degeneracy as a difference of Gaussian binomials.

    Mirrors the integer identity g_p = C(d+p, d) - C(d+p-2, d), with the
    convention that a binomial with upper index below d is zero.  Valid only
    while d + p <= N - 1; past that a vanishing [n] enters the factorials.
    """
    _check_d(d)
    if not 0 <= p <= ctx.N - 1:
        raise ValueError(f"mode index must lie in [0, {ctx.N - 1}], got {p}")
    if d + p > ctx.N - 1:
        raise ValueError(
            f"difference form needs d + p <= N-1; got d+p = {d + p}, N = {ctx.N}"
        )
    first = q_binomial(ctx, d + p, d)
    second = q_binomial(ctx, d + p - 2, d) if d + p - 2 >= d else 0.0
    return first - second


def q_binomial_degeneracy(ctx: QNumberCtx, d: int, p: int) -> float:
    """q-deformed degeneracy: cosine ratio times the trigonometric weight.

    Returns cos(pi(p+v)/N)/cos(pi v/N) * g_bar_p.  Unlike the trigonometric
    weight this changes sign once p + v passes N/2.  Whenever the
    Gaussian-binomial difference form is defined (d + p <= N - 1) it is
    evaluated too and must agree to 1e-10 — a genuine identity, so any
    mismatch is an internal error, not bad input.
    """
    v = _check_d(d)
    N = ctx.N
    if not 0 <= p <= N - 1:
        raise ValueError(f"mode index must lie in [0, {N - 1}], got {p}")
    spec = DeformSpec(d, N, Coupling.PSEUDO_CONFORMAL)  # weight ignores coupling
    gbar = deformed_degeneracy(spec, p)
    ratio = math.cos(math.pi * (p + v) / N) / math.cos(math.pi * v / N)
    value = ratio * gbar
    if d + p <= N - 1:
        other = q_degeneracy_difference_form(ctx, d, p)
        if abs(other - value) > 1e-10:
            raise RuntimeError(
                "q-binomial difference form disagrees with the cosine-ratio "
                f"form at d={d}, N={N}, p={p}: {other!r} vs {value!r}"
            )
    return value


def q_free_energy_order2(N: int, coupling: Coupling | str, d: int = 3) -> float:
    """Free energy of the q-binomial variant through order 1/N^2 (d = 3 only).

    Conformal:  ln2/8 - eta(3)/4pi^2
                + (pi/N)^2 [ 5 ln2/64 - 13 eta(3)/48pi^2 - 5 eta(5)/8pi^4 ]
    Pseudo-conformal:  zeta(3)/4pi^2
                + (pi/N)^2 [ 5 zeta(3)/24pi^2 + 5 zeta(5)/8pi^4 ]

    The brackets evaluate to about 0.0232 and 0.0320.
    """
    if d != 3:
        raise ValueError("the q-binomial free energy is only worked out for d = 3")
    if not isinstance(N, int) or N < 8:
        raise ValueError("need integer N >= 8 for the 1/N^2 truncation to be honest")
    which = parse_coupling(coupling)
    pi2 = math.pi * math.pi
    x = pi2 / (N * N)
    if which is Coupling.CONFORMAL:
        lead = math.log(2.0) / 8.0 - dirichlet_eta(3.0) / (4.0 * pi2)
        bracket = (
            5.0 * math.log(2.0) / 64.0
            - 13.0 * dirichlet_eta(3.0) / (48.0 * pi2)
            - 5.0 * dirichlet_eta(5.0) / (8.0 * pi2 * pi2)
        )
    else:
        lead = riemann_zeta(3.0) / (4.0 * pi2)
        bracket = (
            5.0 * riemann_zeta(3.0) / (24.0 * pi2)
            + 5.0 * riemann_zeta(5.0) / (8.0 * pi2 * pi2)
        )
    return lead + x * bracket
