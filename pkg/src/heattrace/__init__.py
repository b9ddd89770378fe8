"""One-loop free energies from heat-kernel traces.

Exact results on the circle and its cycle-graph discretization, zeta and
integral regularizations on odd-dimensional spheres, and the trigonometric
and q-binomial deformations of the sphere spectra.
"""

from .circle import (
    CycleSpec,
    CycleSpectrum,
    cycle_eigenvalues,
    cycle_free_energy_bessel,
    cycle_logdet_exact,
    s1_free_energy,
    s1_pauli_villars,
    winding_integral,
)
from .deform import (
    DeformSpec,
    VPolynomial,
    bessel_diff_closed,
    deformed_degeneracies,
    deformed_degeneracy,
    deformed_eigenvalues,
    deformed_f3,
    deformed_f3_digamma,
    deformed_f5,
    deformed_f_general,
    deformed_heat_trace,
    fit_inverse_square_coefficient,
    one_percent_threshold,
    regularized_series_route,
    vv_polynomial,
)
from .qdeform import (
    QNumberCtx,
    q_binomial,
    q_binomial_degeneracy,
    q_degeneracy_difference_form,
    q_factorial,
    q_free_energy_order2,
    q_number,
)
from .specfun import (
    DEFAULT_POLICY,
    ConvergenceError,
    EvalResult,
    Method,
    SeriesPolicy,
    alternating_sum,
    bessel_i,
    bessel_k_half,
    dirichlet_eta,
    integrate_finite,
    integrate_semiinf,
    riemann_zeta,
)
from .sphere import (
    SUPPORTED_D,
    Coupling,
    SphereMode,
    SphereSpec,
    degeneracy,
    eigenvalue,
    f3_conformal_series,
    f_conformal_reference,
    f_gamma_integral,
    f_integral_rep,
    f_pc_zeta,
    heat_trace,
    laplacian_eigenvalue,
    parse_coupling,
    reference_free_energy,
)
from .verify import Check, VerifyReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "CycleSpec",
    "CycleSpectrum",
    "cycle_eigenvalues",
    "cycle_free_energy_bessel",
    "cycle_logdet_exact",
    "s1_free_energy",
    "s1_pauli_villars",
    "winding_integral",
    "DeformSpec",
    "VPolynomial",
    "bessel_diff_closed",
    "deformed_degeneracies",
    "deformed_degeneracy",
    "deformed_eigenvalues",
    "deformed_f3",
    "deformed_f3_digamma",
    "deformed_f5",
    "deformed_f_general",
    "deformed_heat_trace",
    "fit_inverse_square_coefficient",
    "one_percent_threshold",
    "regularized_series_route",
    "vv_polynomial",
    "QNumberCtx",
    "q_binomial",
    "q_binomial_degeneracy",
    "q_degeneracy_difference_form",
    "q_factorial",
    "q_free_energy_order2",
    "q_number",
    "DEFAULT_POLICY",
    "ConvergenceError",
    "EvalResult",
    "Method",
    "SeriesPolicy",
    "alternating_sum",
    "bessel_i",
    "bessel_k_half",
    "dirichlet_eta",
    "integrate_finite",
    "integrate_semiinf",
    "riemann_zeta",
    "SUPPORTED_D",
    "Coupling",
    "SphereMode",
    "SphereSpec",
    "degeneracy",
    "eigenvalue",
    "f3_conformal_series",
    "f_conformal_reference",
    "f_gamma_integral",
    "f_integral_rep",
    "f_pc_zeta",
    "heat_trace",
    "laplacian_eigenvalue",
    "parse_coupling",
    "reference_free_energy",
    "Check",
    "VerifyReport",
    "run_suite",
    "__version__",
]
