"""Routes CLI commands and MCP tool calls to the analysis modules."""

import logging
from typing import Any, Optional

import numpy as np

from . import fixtures
from .exceptions import NotAFrame, ParseError
from .frames.analysis import (
    FrameFamily,
    bc_frame_report,
    boundedness_stats,
    rayleigh_bounds,
)
from .frames.bicomplex import is_hyperbolic_positive
from .frames.eigen import JacobiSettings
from .frames.hilbert import BcVector, random_bc_vector
from .frames.operator import (
    BcFrameOperator,
    canonical_dual,
    frame_operator,
    operator_norm_estimate,
    quadratic_form,
    reconstruct,
    reconstruction_residual,
    worst_reconstruction,
)
from .gabor.lattice import HyperbolicLattice, bc_gabor_system, gabor_report
from .gabor.plane import HyperbolicPlaneSystem, LineGabor, psi_system_analysis
from .selftest import run_selftest
from .utils.codec import decode_frame, decode_gabor, decode_psi, decode_signals


logger = logging.getLogger(__name__)

COMMANDS = ("analyze", "dual", "reconstruct", "gabor", "psi", "selftest", "demo")

JACOBI_KEYS = ("jacobi", "jacobi_max_sweeps")

# tolerance keys each command applies; selftest and demo report all of them
APPLIED_TOLERANCES: dict[str, tuple[str, ...]] = {
    "analyze": ("frame_rank", "tight_rel", "hyperbolic") + JACOBI_KEYS,
    "dual": ("frame_rank", "reconstruction") + JACOBI_KEYS,
    "reconstruct": ("frame_rank", "reconstruction") + JACOBI_KEYS,
    "gabor": ("frame_rank", "tight_rel") + JACOBI_KEYS,
    "psi": ("hermite",),
}


class CommandRouter:
    """
    Runs one command against a decoded request document.

    A document either carries the spec itself or names a stock fixture with
    {"fixture": name}. Every report embeds the tolerances the command applied.
    """

    def __init__(self, config: dict[str, Any], seed: int):
        """
        Initialize the router.

        Args:
            config: Effective configuration (file, environment and flag overrides applied)
            seed: Seed for every random draw of one command
        """
        self._config = config
        self._seed = seed
        self._solver = JacobiSettings.from_tolerances(config["tolerances"])

    def applied_tolerances(self, command: str) -> dict[str, Any]:
        """The subset of the tolerances that `command` reads."""
        tol = self._config["tolerances"]
        keys = APPLIED_TOLERANCES.get(command)
        if keys is None:
            return dict(tol)
        return {key: tol[key] for key in keys if key in tol}

    def _rng(self) -> np.random.Generator:
        return np.random.default_rng(self._seed)

    def _frame(self, doc: Any) -> FrameFamily:
        if isinstance(doc, dict) and "fixture" in doc:
            family = fixtures.frame_fixture(doc["fixture"])
        else:
            family = decode_frame(doc)
        return family.with_solver(self._solver)

    def _gabor_spec(self, doc: Any) -> dict[str, Any]:
        if isinstance(doc, dict) and "fixture" in doc:
            return fixtures.gabor_fixture(doc["fixture"])
        return doc

    def _psi_spec(self, doc: Any) -> dict[str, Any]:
        if isinstance(doc, dict) and "fixture" in doc:
            return {**fixtures.psi_fixture(doc["fixture"]), **{k: v for k, v in doc.items() if k != "fixture"}}
        return doc

    def run(self, command: str, doc: Any = None, **options: Any) -> dict[str, Any]:
        """Dispatch by command name."""
        if command not in COMMANDS:
            raise ParseError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
        logger.info(f"Running {command} (seed={self._seed})")
        if command in ("selftest", "demo"):
            payload = getattr(self, command)(**options)
        else:
            if doc is None:
                raise ParseError(f"{command} needs an input document")
            payload = getattr(self, command)(doc, **options)
        payload["command"] = command
        payload["seed"] = self._seed
        payload["tolerances"] = self.applied_tolerances(command)
        return payload

    def analyze(self, doc: Any, require_frame: bool = False) -> dict[str, Any]:
        family = self._frame(doc)
        tol = self._config["tolerances"]
        report = bc_frame_report(family, tol["frame_rank"], tol["tight_rel"])
        if require_frame and not report.is_frame:
            raise NotAFrame(
                f"family is not a bc-frame: a+={report.a_plus:.3e}, a-={report.a_minus:.3e}"
            )
        payload = {
            "frame": report.to_dict(),
            "boundedness": boundedness_stats(family).to_dict(),
        }
        if report.is_frame:
            samples = int(self._config["random"]["rayleigh_samples"])
            payload["rayleigh"] = rayleigh_bounds(family, samples, self._rng()).to_dict()
            op = frame_operator(family)
            estimate = operator_norm_estimate(op, self._rng())
            payload["operator_norm"] = {
                "estimate": estimate.estimate,
                "bound": estimate.bound,
                "iterations": estimate.iterations,
                "holds": estimate.holds,
            }
            payload["positivity"] = self._positivity(op, tol["hyperbolic"])
        return payload

    def dual(self, doc: Any) -> dict[str, Any]:
        family = self._frame(doc)
        tol = self._config["tolerances"]
        dual = canonical_dual(family, tol["frame_rank"])
        signals = self._signals(doc, family)
        worst = worst_reconstruction(family, signals, dual)
        return {
            "operator": frame_operator(family).to_dict(),
            "dual": dual.to_dict(),
            "worst_residual": worst,
            "signals": len(signals),
            "passed": worst < tol["reconstruction"],
        }

    def reconstruct(self, doc: Any) -> dict[str, Any]:
        family = self._frame(doc)
        tol = self._config["tolerances"]
        dual = canonical_dual(family, tol["frame_rank"])
        signals = self._signals(doc, family)
        residuals = [reconstruction_residual(family, dual, f) for f in signals]
        worst = max(r.worst for r in residuals)
        payload = {
            "signals": len(signals),
            "worst_residual": worst,
            "worst_primal": max(r.primal for r in residuals),
            "worst_dual": max(r.dual for r in residuals),
            "threshold": tol["reconstruction"],
            "passed": worst < tol["reconstruction"],
        }
        supplied = decode_signals(doc)
        if supplied:
            payload["reconstructed"] = [reconstruct(family, dual, f).to_dict() for f in supplied]
        return payload

    def _positivity(self, op: BcFrameOperator, tol: float) -> dict[str, Any]:
        """<S f, f> in D+ on random signals."""
        rng = self._rng()
        count = int(self._config["random"]["signals"])
        failures = sum(
            not is_hyperbolic_positive(quadratic_form(op, random_bc_vector(rng, op.dim)), tol)
            for _ in range(count)
        )
        return {"samples": count, "failures": failures, "holds": failures == 0}

    def _signals(self, doc: Any, family: FrameFamily) -> list[BcVector]:
        supplied = decode_signals(doc)
        if supplied:
            return supplied
        rng = self._rng()
        count = int(self._config["random"]["signals"])
        return [random_bc_vector(rng, family.dim) for _ in range(count)]

    def gabor(self, doc: Any, require_frame: bool = False) -> dict[str, Any]:
        args = decode_gabor(self._gabor_spec(doc))
        lattice = HyperbolicLattice.from_counts(args["N"], args["a"], args["m_plus"], args["c"], args["m_minus"])
        tol = self._config["tolerances"]
        sys, frame = bc_gabor_system(
            lattice, args["g"], args["h"], args["N"],
            frame_tol=tol["frame_rank"], tight_tol=tol["tight_rel"], solver=self._solver,
        )
        if require_frame and not frame.is_frame:
            raise NotAFrame(f"bc Gabor system is not a frame: A={frame.A:.3e}")
        report = gabor_report(sys, frame, frame_tol=tol["frame_rank"], tight_tol=tol["tight_rel"])
        return {"gabor": report.to_dict()}

    def psi(self, doc: Any) -> dict[str, Any]:
        args = decode_psi(self._psi_spec(doc), self._config["quadrature"])
        sys = HyperbolicPlaneSystem(
            LineGabor(*args["plus"]),
            LineGabor(*args["minus"]),
            half_width=args["half_width"],
            points=args["points"],
            frequency_cutoff=args["frequency_cutoff"],
            hermite_order_cap=args["hermite_order_cap"],
        )
        result = psi_system_analysis(sys)
        return {
            "psi": result.to_dict(),
            "hermite_orthonormal": result.orthonormality_residual < self._config["tolerances"]["hermite"],
        }

    def selftest(self, quick: bool = False, only: Optional[list[str]] = None) -> dict[str, Any]:
        report = run_selftest(self._config, self._seed, quick=quick, only=only)
        return {"selftest": report.to_dict(), "passed": report.passed}

    def demo(self, quick: bool = False) -> dict[str, Any]:
        """Analyze every stock fixture."""
        frames = {}
        for name in fixtures.FRAME_FIXTURES:
            frames[name] = self.analyze({"fixture": name})["frame"]
        gabor = {name: self.gabor({"fixture": name})["gabor"] for name in fixtures.GABOR_FIXTURES}
        payload = {"frames": frames, "gabor": gabor}
        if not quick:
            payload["psi"] = {name: self.psi({"fixture": name})["psi"] for name in fixtures.PSI_FIXTURES}
        return payload


def format_frame_summary(frame: dict[str, Any]) -> str:
    """One-paragraph summary of a FrameReport dict."""
    flags = [k for k in ("is_frame", "is_tight", "is_parseval", "is_exact", "is_riesz") if frame.get(k)]
    lines = [
        f"n={frame['n']} d={frame['dim']}  A={frame['A']:.6g}  B={frame['B']:.6g}",
        f"  components: [{frame['a_plus']:.6g}, {frame['b_plus']:.6g}] (+)  [{frame['a_minus']:.6g}, {frame['b_minus']:.6g}] (-)",
        f"  flags: {', '.join(flags) if flags else 'not a frame'}",
    ]
    if frame.get("n_exact") is not None:
        lines.append(
            f"  N_Exact={frame['n_exact']}  N+={frame['n_exact_plus']}  N-={frame['n_exact_minus']}"
        )
    return "\n".join(lines)


def format_gabor_summary(gabor: dict[str, Any]) -> str:
    hw_plus = gabor["heil_walnut_plus"]
    hw_minus = gabor["heil_walnut_minus"]
    lines = [
        f"bc Gabor system N={gabor['system']['N']} grid={gabor['system']['grid_shape']}",
        f"  plus bounds {gabor['plus_bounds']}  minus bounds {gabor['minus_bounds']}  compose={gabor['bounds_compose']}",
        f"  painless: plus applicable={hw_plus['applicable']} predicted={hw_plus['predicted']} "
        f"minus applicable={hw_minus['applicable']} predicted={hw_minus['predicted']}",
        format_frame_summary(gabor["frame"]),
    ]
    critical = gabor.get("critical_density")
    if critical:
        lines.append(
            f"  critical density: plus={critical['plus_critical']} minus={critical['minus_critical']} "
            f"exact={critical['is_exact']}"
        )
    return "\n".join(lines)


def format_psi_summary(psi: dict[str, Any]) -> str:
    worst = max(w["max_inner"] for w in psi["witnesses"])
    return "\n".join([
        f"psi system: {psi['system']['elements']} elements on {psi['system']['points']}^2 nodes",
        f"  Bessel constant {psi['bessel_bound']:.6g} (refined {psi['bessel_bound_refined']:.6g}, "
        f"change {psi['bessel_variation']:.2e})",
        f"  witness max |<Phi, psi_M>| = {worst:.3e}  lower bound fails: {psi['lower_bound_fails']}",
        f"  Hermite orthonormality residual {psi['orthonormality_residual']:.3e}",
    ])


def format_selftest_summary(selftest: dict[str, Any]) -> str:
    lines = [f"selftest seed={selftest['seed']} quick={selftest['quick']}"]
    for result in selftest["results"]:
        mark = "PASS" if result["passed"] else "FAIL"
        lines.append(f"  [{mark}] {result['name']}: {result['title']} ({result['elapsed']:.2f}s)")
    lines.append("all passed" if selftest["passed"] else "FAILURES")
    return "\n".join(lines)


def format_summary(payload: dict[str, Any]) -> str:
    """Human-readable summary of any command payload."""
    command = payload.get("command")
    if command == "analyze":
        return format_frame_summary(payload["frame"])
    if command in ("dual", "reconstruct"):
        return (
            f"{command}: worst reconstruction residual {payload['worst_residual']:.3e} "
            f"over {payload['signals']} signal(s), passed={payload['passed']}"
        )
    if command == "gabor":
        return format_gabor_summary(payload["gabor"])
    if command == "psi":
        return format_psi_summary(payload["psi"])
    if command == "selftest":
        return format_selftest_summary(payload["selftest"])
    if command == "demo":
        lines = [f"## {name}\n{format_frame_summary(frame)}" for name, frame in payload["frames"].items()]
        lines += [f"## gabor {name}\n{format_gabor_summary(g)}" for name, g in payload["gabor"].items()]
        lines += [f"## psi {name}\n{format_psi_summary(p)}" for name, p in payload.get("psi", {}).items()]
        return "\n".join(lines)
    return ""
