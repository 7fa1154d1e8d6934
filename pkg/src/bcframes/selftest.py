"""Acceptance suite: every check reports pass/fail with the values it measured."""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from . import fixtures
from .exceptions import ParseError
from .frames.analysis import (
    FrameFamily,
    bc_frame_report,
    counterexample_cexp,
    embedded_onb,
    frame_inequality_sample,
    is_riesz,
    n_exact,
    n_exact_intersection,
    rayleigh_bounds,
    tight_constant,
)
from .frames.bicomplex import (
    Bicomplex,
    conj_dagger,
    conj_star,
    conj_tilde,
    is_hyperbolic_positive,
    mul,
    mul_cartesian,
    random_bicomplex,
)
from .frames.eigen import JacobiSettings
from .frames.hilbert import (
    BcVector,
    idempotent_norm_check,
    random_bc_vector,
    schwarz_check,
)
from .frames.operator import (
    canonical_dual,
    frame_operator,
    operator_norm_estimate,
    quadratic_form,
    self_adjoint_residual,
    worst_reconstruction,
)
from .gabor.lattice import HyperbolicLattice, bc_gabor_system, gabor_report
from .gabor.plane import HyperbolicPlaneSystem, LineGabor, psi_system_analysis
from .gabor.weyl import GaborSystem, gabor_frame_bounds, heil_walnut_check
from .utils.codec import decode_gabor, decode_psi
from .utils.windows import discrete_window


logger = logging.getLogger(__name__)

Check = Callable[[np.random.Generator, dict[str, Any]], tuple[bool, dict[str, Any]]]

# fixtures whose top eigenvalue is well separated, so power iteration converges
NORM_REACH_FIXTURES = ("embedded_onb", "doubled_onb", "mixed_tight", "weighted_onb", "cexp")


@dataclass
class Criterion:
    name: str
    title: str
    check: Check


@dataclass
class CriterionResult:
    name: str
    title: str
    passed: bool
    measured: dict[str, Any]
    elapsed: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "title": self.title,
            "passed": self.passed,
            "measured": self.measured,
            "elapsed": self.elapsed,
        }


@dataclass
class SelftestReport:
    seed: int
    quick: bool
    results: list[CriterionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "quick": self.quick,
            "passed": self.passed,
            "results": [r.to_dict() for r in self.results],
        }


CRITERIA: dict[str, Criterion] = {}


def criterion(name: str, title: str) -> Callable[[Check], Check]:
    def register(check: Check) -> Check:
        CRITERIA[name] = Criterion(name, title, check)
        return check
    return register


def _rel(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1.0)


def _gabor_system(spec: dict[str, Any]):
    args = decode_gabor(spec)
    lattice = HyperbolicLattice.from_counts(args["N"], args["a"], args["m_plus"], args["c"], args["m_minus"])
    return bc_gabor_system(lattice, args["g"], args["h"], args["N"])


@criterion("component_bounds", "bc bounds are min/max of component bounds")
def check_component_bounds(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    solver = JacobiSettings.from_tolerances(config["tolerances"])
    worst_bound = 0.0
    worst_reach = 0.0
    violations = 0
    unconverged = 0
    families = 200
    for _ in range(families):
        d = int(rng.integers(2, 9))
        n = int(rng.integers(d, 2 * d + 4))
        family = fixtures.random_family(rng, d, n).with_solver(solver)
        plus_eig, minus_eig = family.eig_plus, family.eig_minus
        unconverged += (not plus_eig.converged) + (not minus_eig.converged)
        A = max(min(plus_eig.values[0], minus_eig.values[0]), 0.0)
        B = max(plus_eig.values[-1], minus_eig.values[-1])

        oracle = np.concatenate([
            np.linalg.eigvalsh(family.s_plus),
            np.linalg.eigvalsh(family.s_minus),
        ])
        worst_bound = max(worst_bound, _rel(A, oracle.min()), _rel(B, oracle.max()))

        # sampled quotients stay inside [A, B]; the Krylov refinement reaches both ends
        estimate = rayleigh_bounds(family, 100, rng)
        slack = 1e-9 * B
        violations += int(estimate.sample_lower < A - slack) + int(estimate.sample_upper > B + slack)
        worst_reach = max(worst_reach, _rel(estimate.lower, A), _rel(estimate.upper, B))
    ok = worst_bound <= 1e-10 and violations == 0 and unconverged == 0 and worst_reach <= 1e-8
    return ok, {
        "families": families,
        "unconverged": unconverged,
        "worst_bound_rel_error": worst_bound,
        "inequality_violations": violations,
        "worst_rayleigh_reach": worst_reach,
    }


@criterion("weighted_onb", "weighted ONB family has bounds (2, 3)")
def check_weighted_onb(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    weighted = fixtures.weighted_onb(4)
    family = weighted.family
    report = bc_frame_report(family)
    worst = 0.0
    for _ in range(100):
        f = random_bc_vector(rng, family.dim)
        sample = frame_inequality_sample(family, f, report)
        expected = (weighted.a * np.vdot(f.plus, f.plus).real + weighted.b * np.vdot(f.minus, f.minus).real) / 2
        worst = max(worst, _rel(sample.sum, expected))
    ok = (
        worst <= 1e-10
        and _rel(report.A, 2.0) <= 1e-10
        and _rel(report.B, 3.0) <= 1e-10
        and max(weighted.tail_a, weighted.tail_b) < 1e-12
    )
    return ok, {"A": report.A, "B": report.B, "a": weighted.a, "b": weighted.b, "worst_identity_rel_error": worst}


@criterion("schwarz", "modulus <f, g> <= sqrt(2) ||f|| ||g||, sharp on e+ vectors")
def check_schwarz(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    pairs = 10_000
    failures = 0
    worst_ratio = 0.0
    for _ in range(pairs):
        f = random_bc_vector(rng, 4)
        g = random_bc_vector(rng, 4)
        check = schwarz_check(f, g)
        failures += not check.holds
        worst_ratio = max(worst_ratio, check.lhs / check.rhs)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    aligned = BcVector(v, np.zeros(4, dtype=complex))
    sharp = schwarz_check(aligned, aligned)
    gap = abs(sharp.lhs - sharp.rhs) / sharp.rhs
    return failures == 0 and gap <= 1e-12, {
        "pairs": pairs,
        "failures": failures,
        "max_ratio": worst_ratio,
        "saturation_gap": gap,
    }


@criterion("exactness", "deletion oracle matches the component intersection")
def check_exactness(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    mismatches = []
    checked = 0
    families: list[tuple[str, FrameFamily]] = [
        (name, fixtures.frame_fixture(name)) for name in fixtures.FRAME_FIXTURES if name != "rank_deficient"
    ]
    for k in range(50):
        d = int(rng.integers(2, 5))
        n = int(rng.integers(d, 11))
        families.append((f"random{k}", fixtures.random_family(rng, d, n)))
    for name, family in families:
        checked += 1
        if n_exact(family) != n_exact_intersection(family):
            mismatches.append(name)

    cexp = bc_frame_report(counterexample_cexp(3))
    riesz = fixtures.riesz_family(rng, 3)
    riesz_report = bc_frame_report(riesz)
    ok = (
        not mismatches
        and cexp.is_exact
        and bool(cexp.n_exact_plus)
        and bool(cexp.n_exact_minus)
        and not cexp.is_riesz
        and riesz_report.is_exact
        and riesz_report.is_riesz
    )
    return ok, {
        "families": checked,
        "mismatches": mismatches,
        "cexp_exact": cexp.is_exact,
        "cexp_n_exact_plus": cexp.n_exact_plus,
        "cexp_n_exact_minus": cexp.n_exact_minus,
        "cexp_riesz": cexp.is_riesz,
        "riesz_exact": riesz_report.is_exact,
    }


@criterion("operator", "reconstruction, positivity, self-adjointness and tightness of S")
def check_operator(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    threshold = config["tolerances"]["reconstruction"]
    names = ["embedded_onb", "doubled_onb", "mixed_tight", "weighted_onb", "cexp", "riesz"]
    families = [(name, fixtures.frame_fixture(name)) for name in names]
    families.append(("random", fixtures.random_family(rng, 4, 9)))

    worst_reconstruction_residual = 0.0
    worst_adjoint = 0.0
    positivity_failures = 0
    for _, family in families:
        signals = [random_bc_vector(rng, family.dim) for _ in range(100)]
        worst_reconstruction_residual = max(
            worst_reconstruction_residual, worst_reconstruction(family, signals, canonical_dual(family))
        )
        op = frame_operator(family)
        for f, g in zip(signals[:20], signals[20:40]):
            scale = max(abs(op.eig_plus.values).max(), abs(op.eig_minus.values).max()) or 1.0
            worst_adjoint = max(worst_adjoint, self_adjoint_residual(op, f, g) / scale)

    # power iteration reaches B on the fixtures; it never exceeds the component bound
    worst_norm_reach = 0.0
    norm_bound_failures = 0
    for name, family in families:
        estimate = operator_norm_estimate(frame_operator(family), rng)
        norm_bound_failures += not estimate.holds
        if name in NORM_REACH_FIXTURES:
            worst_norm_reach = max(worst_norm_reach, _rel(estimate.estimate, bc_frame_report(family).B))

    op = frame_operator(families[-1][1])
    hyperbolic_tol = config["tolerances"]["hyperbolic"]
    for _ in range(1000):
        if not is_hyperbolic_positive(quadratic_form(op, random_bc_vector(rng, op.dim)), hyperbolic_tol):
            positivity_failures += 1

    tight = fixtures.frame_fixture("doubled_onb")
    d = tight_constant(tight)
    tight_report = bc_frame_report(tight)
    deviation = frame_operator(tight).deviation_from_scalar(d) if d else math.inf
    mixed = fixtures.frame_fixture("mixed_tight")
    mixed_d = tight_constant(mixed)
    mixed_report = bc_frame_report(mixed)

    ok = (
        worst_reconstruction_residual < threshold
        and worst_adjoint < 1e-12
        and norm_bound_failures == 0
        and worst_norm_reach <= 1e-8
        and positivity_failures == 0
        and d is not None
        and d.is_positive()
        and deviation <= 1e-10 * tight_report.B
        and mixed_d is not None
        and not mixed_d.is_real()
        and not mixed_report.is_tight
    )
    return ok, {
        "worst_reconstruction": worst_reconstruction_residual,
        "threshold": threshold,
        "worst_self_adjoint_residual": worst_adjoint,
        "norm_bound_failures": norm_bound_failures,
        "worst_norm_reach": worst_norm_reach,
        "positivity_failures": positivity_failures,
        "tight_constant": d.to_dict() if d else None,
        "tight_deviation": deviation,
        "mixed_constant": mixed_d.to_dict() if mixed_d else None,
        "mixed_is_tight": mixed_report.is_tight,
    }


@criterion("heil_walnut", "painless prediction equals the eigenvalue bounds")
def check_heil_walnut(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    painless = heil_walnut_check(GaborSystem(8, 2, 4, discrete_window("indicator:4", 8)))
    gap_sys = GaborSystem(8, 4, 4, discrete_window("indicator:3", 8))
    gap = heil_walnut_check(gap_sys)
    gap_lower = gabor_frame_bounds(gap_sys)[0]
    ok = (
        painless.applicable
        and painless.predicted is not None
        and _rel(painless.predicted[0], 8.0) <= 1e-10
        and _rel(painless.predicted[1], 8.0) <= 1e-10
        and bool(painless.matches)
        and painless.diagonal_residual <= 1e-11
        and gap.alpha == 0.0
        and gap_lower < 1e-10
    )
    return ok, {"painless": painless.to_dict(), "gap_alpha": gap.alpha, "gap_lower_bound": gap_lower}


@criterion("critical_density", "critical-density bc system is exact")
def check_critical_density(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    sys, frame = _gabor_system(fixtures.gabor_fixture("critical"))
    critical = gabor_report(sys, frame).critical
    over_sys, over_frame = _gabor_system(fixtures.gabor_fixture("oversampled"))
    oversampled = gabor_report(over_sys, over_frame).critical
    witness = critical.converse_witness if critical else {}
    ok = (
        critical is not None
        and critical.is_exact
        and critical.proposition_holds
        and oversampled is not None
        and not oversampled.is_exact
        and bool(witness.get("is_exact"))
        and bool(witness.get("components_redundant"))
    )
    return ok, {
        "critical": critical.to_dict() if critical else None,
        "oversampled_exact": oversampled.is_exact if oversampled else None,
        "oversampled_leverage": list(oversampled.leverage_plus) if oversampled else None,
    }


@criterion("algebra", "idempotent product, zero divisors and conjugations")
def check_algebra(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    worst = 0.0
    for _ in range(1000):
        z, w = random_bicomplex(rng), random_bicomplex(rng)
        a, b = mul(z, w), mul_cartesian(z, w)
        scale = max(1.0, z.modulus() * w.modulus())
        worst = max(worst, (a - b).modulus() / scale)

    zero_tol = config["tolerances"]["zero_divisor"]
    zero_divisor_errors = 0
    for _ in range(100):
        c = complex(rng.standard_normal(), rng.standard_normal())
        for z, expected in ((Bicomplex(c, 0), True), (Bicomplex(0, c), True), (Bicomplex(c, c + 1), False)):
            if z.is_zero_divisor(zero_tol) != expected:
                zero_divisor_errors += 1

    involution_errors = 0
    for _ in range(100):
        z = random_bicomplex(rng)
        for conj in (conj_dagger, conj_tilde, conj_star):
            involution_errors += not conj(conj(z)).close(z)
        involution_errors += not conj_dagger(conj_tilde(z)).close(conj_star(z))
    ok = worst <= 1e-13 and zero_divisor_errors == 0 and involution_errors == 0
    return ok, {
        "worst_product_error": worst,
        "zero_divisor_errors": zero_divisor_errors,
        "conjugation_errors": involution_errors,
    }


def _sample_functions():
    # cos^2 in a cartesian axis leaves an aliasing term that the finer grid removes
    def f1(z1, z2):
        c = np.cos(3 * z1.real)
        return c, c

    def f2(z1, z2):
        return np.cos(3 * z1.real) + 0j, np.sin(3 * z2.imag) + 0j

    def f3(z1, z2):
        return 1 + 0.5 * np.cos(3 * z1.imag) + 0j, np.exp(1j * z1.real) * np.cos(2.5 * z2.real)

    return [("cos", f1), ("cos-sin", f2), ("mixed", f3)]


@criterion("norm_identities", "idempotent norm identity against direct 4-D quadrature")
def check_norm_identities(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    quad = config["quadrature"]
    lo, hi = quad["box"]
    nu = quad["nu"]
    tol = config["tolerances"]["quadrature"]
    native = math.sqrt(2.0) * hi
    rows = []
    ok = True
    for name, fn in _sample_functions():
        coarse = idempotent_norm_check(fn, lo, hi, quad["points_per_axis"], nu, -native, native)
        fine = idempotent_norm_check(fn, lo, hi, quad["refined_points_per_axis"], nu, -native, native)
        coarse_rel = coarse.discrepancy / coarse.direct
        fine_rel = fine.discrepancy / fine.direct

        passed = coarse_rel <= tol and fine_rel < coarse_rel
        ok = ok and passed
        rows.append({
            "function": name,
            "direct": coarse.direct,
            "idempotent": coarse.idempotent,
            "rel_discrepancy": coarse_rel,
            "refined_rel_discrepancy": fine_rel,
        })
    return ok, {"functions": rows, "tolerance": tol}


@criterion("psi", "psi system is Bessel but not a bc-frame")
def check_psi(rng: np.random.Generator, config: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    args = decode_psi(fixtures.psi_fixture("gaussian"), config["quadrature"])
    sys = HyperbolicPlaneSystem(
        LineGabor(*args["plus"]),
        LineGabor(*args["minus"]),
        args["half_width"],
        args["points"],
        args["frequency_cutoff"],
        args["hermite_order_cap"],
    )
    started = time.perf_counter()
    result = psi_system_analysis(sys)
    elapsed = time.perf_counter() - started
    identity_v0 = max(r.rel_error for r in result.identities if r.v == 0)
    ok = (
        result.orthonormality_residual < config["tolerances"]["hermite"]
        and result.lower_bound_fails
        and all(abs(w.norm - 1) <= 1e-8 for w in result.witnesses)
        and math.isfinite(result.bessel_bound)
        and result.bessel_variation < 0.01
        and identity_v0 <= 1e-6
        and elapsed < 60
    )
    measured = result.to_dict()
    measured["identity_v0_rel_error"] = identity_v0
    return ok, measured


def run_selftest(
    config: dict[str, Any],
    seed: int,
    quick: bool = False,
    only: Optional[list[str]] = None,
) -> SelftestReport:
    """Run the criteria (the configured quick subset when `quick`) with one seed per criterion."""
    names = only or (config["selftest"]["quick"] if quick else list(CRITERIA))
    unknown = sorted(set(names) - set(CRITERIA))
    if unknown:
        raise ParseError(f"unknown selftest criteria {unknown}; choose from {list(CRITERIA)}")
    report = SelftestReport(seed=seed, quick=quick)
    for index, name in enumerate(CRITERIA):
        if name not in names:
            continue
        item = CRITERIA[name]
        rng = np.random.default_rng([seed, index])
        started = time.perf_counter()
        try:
            passed, measured = item.check(rng, config)
        except Exception as e:
            logger.error(f"Criterion {name} raised: {e}", exc_info=True)
            passed, measured = False, {"error": f"{type(e).__name__}: {e}"}
        elapsed = time.perf_counter() - started
        logger.info(f"[{'PASS' if passed else 'FAIL'}] {name} ({elapsed:.2f}s)")
        report.results.append(CriterionResult(name, item.title, bool(passed), measured, elapsed))
    return report
