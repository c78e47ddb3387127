"""
Verification suites
===================

Every acceptance check of the library, runnable from the command line
(`renyi-convex verify --suite all`) and from the test suite.

SUITES:
-------
    degeneracy   1   balls: all divergences 0, as_p = n |B|
    oracles      2   l_r balls against the Gamma closed forms
    identities   3-7 as_p / Renyi identity, duality, affine invariance,
                     skew duality, mixed reductions
    surface      8-10 surface-body limits (minutes)
    polytope     11  the square
    omega        12  Omega_K values, scaling and limit
    cone         13  P_K and Q_K against cone measures
    fast             everything except surface
    all              everything

A check yields CheckOutcomes; informational outcomes are printed but never
fail the run.
"""

from collections.abc import Callable, Iterator
from dataclasses import dataclass

import numpy as np

from . import affine_surface, bodies, cone_measures, constants, oracles, surface_bodies
from .divergence import identity_check, renyi, skew_residual
from .errors import InvalidArgument
from .log import get_logger
from .settings import Settings

log = get_logger("verify")


@dataclass(frozen=True)
class CheckOutcome:
    criterion: int
    name: str
    residual: float
    tolerance: float
    passed: bool
    informational: bool = False
    detail: str = ""


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    title: str
    suites: tuple[str, ...]
    run: Callable[[Settings], Iterator[CheckOutcome]]


REGISTRY: dict[str, Criterion] = {}


def criterion(number: int, name: str, title: str, *suites: str):
    def register(fn):
        REGISTRY[name] = Criterion(number, name, title, suites, fn)
        return fn

    return register


def _outcome(number, name, residual, tolerance, detail="", informational=False) -> CheckOutcome:
    residual = float(residual)
    return CheckOutcome(number, name, residual, tolerance, bool(residual <= tolerance), informational, detail)


def _same(number, name, got, expected, detail="") -> CheckOutcome:
    """Exact comparison of extended reals (classifications)."""
    got, expected = float(got), float(expected)
    ok = got == expected
    return CheckOutcome(number, name, 0.0 if ok else np.inf, 0.0, ok, False, detail or f"got {got}, expected {expected}")


def _identity(number, name, check, tolerance) -> CheckOutcome:
    residual = 0.0 if np.isnan(check.residual) and check.consistent else check.residual
    if np.isnan(residual):
        residual = np.inf
    return CheckOutcome(number, name, residual, tolerance, check.consistent, False, f"lhs={check.lhs!r} rhs={check.rhs!r}")


# =============================================================================
# BODIES
# =============================================================================


def disk():
    return bodies.ball(1.0, 2)


def ellipse():
    return bodies.ellipsoid(np.diag([2.0, 1.0]))


def lr3():
    return bodies.lr_ball(3.0, 2)


def square():
    return bodies.polytope([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])


def trefoil():
    return bodies.smooth2d(cos=[1.0, 0.0, 0.0, 0.1])


# =============================================================================
# CRITERIA
# =============================================================================

BALL_ORDERS = (-2.0, -0.5, 0.0, 0.25, 0.5, 0.9, 1.0, 2.0, 5.0, np.inf, -np.inf)
BALL_P = (-5.0, -1.0, 0.0, 0.5, 1.0, 2.0, 10.0, np.inf, -np.inf)


@criterion(1, "ball-degeneracy", "balls: D_alpha = 0 and as_p = n |B|", "degeneracy", "fast")
def check_ball_degeneracy(settings: Settings):
    for K, as_tol in ((disk(), 1e-9), (bodies.ball(1.0, 3), 1e-6)):
        n = K.dim
        for alpha in BALL_ORDERS:
            for direction in ("PQ", "QP"):
                D = renyi(K, alpha, direction, tol=settings.tol).value
                yield _outcome(1, f"D_{alpha}({direction}) n={n}", abs(D), 1e-9)
        target = n * bodies.volume(K)
        for p in BALL_P:
            value = affine_surface.as_p(K, p, tol=settings.tol).value
            yield _outcome(1, f"as_{p} n={n}", abs(value - target) / target, as_tol)


LR_ORDERS = (-0.5, 0.25, 0.5, 0.9, 1.5)


@criterion(2, "lr-oracle", "l_3 ball against the Gamma closed form", "oracles", "fast")
def check_lr_oracle(settings: Settings):
    K = lr3()
    for alpha in LR_ORDERS:
        for direction in ("PQ", "QP"):
            expected = oracles.lr_renyi_closed_form(2, 3.0, alpha, direction).value
            got = renyi(K, alpha, direction, tol=settings.tol).value
            if np.isfinite(expected):
                yield _outcome(2, f"D_{alpha}({direction})", abs(got - expected) / max(abs(expected), 1e-12), 1e-6)
            else:
                yield _same(2, f"D_{alpha}({direction})", got, expected)
    for alpha, direction, expected in ((2.0, "QP", np.inf), (-1.0, "PQ", -np.inf)):
        oracle = oracles.lr_renyi_closed_form(2, 3.0, alpha, direction)
        yield _same(2, f"oracle regime D_{alpha}({direction})", oracle.value, expected, oracle.regime)
        yield _same(2, f"quadrature regime D_{alpha}({direction})", renyi(K, alpha, direction).value, expected)
    est, stderr = oracles.mc_lr_volume(2, 3.0, seed=settings.seed)
    yield _outcome(2, "|B_3^2| vs Monte Carlo", abs(est - oracles.lr_volume(2, 3.0)) / stderr, 3.0, "in standard errors")


IDENTITY_P = (-5.0, -1.0, 0.5, 1.0, 2.0, 10.0)


@criterion(3, "asp-renyi", "as_p on the sphere against the boundary Renyi route", "identities", "fast")
def check_asp_renyi(settings: Settings):
    for name, K in (("ellipse", ellipse()), ("lr3", lr3())):
        for p in IDENTITY_P:
            lhs = affine_surface.as_p(K, p, tol=settings.tol).value
            rhs = affine_surface.as_p_via_renyi(K, p, route="boundary")
            yield _identity(3, f"{name} p={p}", identity_check(lhs, rhs, 1e-7, relative=True), 1e-7)


@criterion(4, "duality", "as_p(K) = as_{n^2/p}(K°)", "identities", "fast")
def check_duality(settings: Settings):
    for name, K in (("ellipse", ellipse()), ("lr3", lr3())):
        for p in (1.0, 2.0, 4.0):
            yield _outcome(4, f"{name} p={p}", affine_surface.duality_residual(K, p), 1e-6)


@criterion(5, "affine-invariance", "as_p scaling law and D_alpha invariance under GL(2)", "identities", "fast")
def check_affine_invariance(settings: Settings):
    maps = affine_surface.random_linear_maps(2, 20, settings.seed)
    for name, K in (("disk", disk()), ("lr3", lr3())):
        worst_as, worst_d = 0.0, 0.0
        for T in maps:
            for p in (1.0, 2.0):
                worst_as = max(worst_as, affine_surface.affine_invariance_residual(K, T, p))
            for alpha in (0.25, 0.5, 2.0):
                worst_d = max(worst_d, affine_surface.renyi_invariance_residual(K, T, alpha))
        yield _outcome(5, f"{name} as_p scaling (20 maps)", worst_as, 1e-6)
        yield _outcome(5, f"{name} D_alpha invariance (20 maps)", worst_d, 1e-7)


@criterion(6, "skew-duality", "D_alpha(Q||P) = alpha/(1-alpha) D_{1-alpha}(P||Q)", "identities", "fast")
def check_skew(settings: Settings):
    for name, K in (("ellipse", ellipse()), ("lr3", lr3())):
        for alpha in (-1.0, 0.25, 0.6, 2.0):
            yield _identity(6, f"{name} alpha={alpha}", skew_residual(K, alpha), 1e-10)


@criterion(7, "mixed-reductions", "mixed as_p, dual mixed volume and the mixed identity", "identities", "fast")
def check_mixed(settings: Settings):
    K = ellipse()
    for p in (0.5, 1.0, 2.0):
        mixed = affine_surface.mixed_as_p([K, K], p)
        single = affine_surface.as_p(K, p).value
        yield _outcome(7, f"mixed as_{p}(K, K) = as_{p}(K)", abs(mixed - single) / single, 1e-10)
    dual = affine_surface.dual_mixed_volume([K, K])
    polar_vol = bodies.polar_volume(K)
    yield _outcome(7, "dual mixed volume (K, K) = |K°|", abs(dual - polar_vol) / polar_vol, 1e-8)
    pair = [disk(), ellipse()]
    for alpha in (0.25, 0.5, 2.0):
        yield _identity(7, f"mixed identity alpha={alpha}", affine_surface.mixed_identity(pair, alpha), 1e-7)


@criterion(8, "surface-limit", "surface-body limits: disk, ellipse, f-scaling", "surface")
def check_surface_limit(settings: Settings):
    one = surface_bodies.constant_weight(1.0)
    disk_result = surface_bodies.limit_quotient(disk(), one)
    yield _outcome(8, "disk f=1: c_2 L = 2 pi", abs(disk_result.limit - 2 * np.pi) / (2 * np.pi), 0.01)
    ellipse_result = surface_bodies.limit_quotient(ellipse(), one)
    yield _outcome(8, "ellipse f=1: c_2 L = 2 pi", abs(ellipse_result.limit - 2 * np.pi) / (2 * np.pi), 0.02)
    scaled = surface_bodies.limit_quotient(disk(), surface_bodies.constant_weight(2.0))
    yield _outcome(8, "disk f=2: limit / 4", abs(scaled.limit - disk_result.limit / 4.0) / scaled.limit, 0.01)
    lit = surface_bodies.limit_quotient(disk(), one, variant="illumination")
    yield _outcome(8, "disk f=1 illumination: 2 pi", abs(lit.limit - 2 * np.pi) / (2 * np.pi), 0.01)
    chain = surface_bodies.containment_check(ellipse(), one, [0.1, 0.05])
    detail = f"inner {chain.inner:.9f}, outer {chain.outer:.9f}, nested {chain.nested:.9f}"
    yield CheckOutcome(8, "ellipse K_(f,s) in K in K^(f,s)", chain.inner, 1.0, chain.holds, False, detail)


@criterion(9, "surface-asp", "normalized f_p surface limit = exp(-(p/(n+p)) D_{n/(n+p)}(Q||P))", "surface")
def check_surface_asp(settings: Settings):
    K = ellipse()
    for p in (0.0, 1.0, 2.0):
        yield _identity(9, f"ellipse p={p}", surface_bodies.asp_surface_relation(K, p), 0.02)


@criterion(10, "surface-kl", "KL weights: limit - 2n log(R/r) = D_KL", "surface")
def check_surface_kl(settings: Settings):
    K = ellipse()
    for variant in ("QP", "PQ_corrected"):
        check = surface_bodies.omega_surface_relation(K, variant)
        yield CheckOutcome(10, f"ellipse {variant}", check.residual, 0.02, check.consistent, False, check.note)
    printed = surface_bodies.omega_surface_relation(K, "PQ_as_printed")
    yield CheckOutcome(10, "ellipse PQ_as_printed", printed.residual, np.inf, True, True, "reported only")
    # D_KL is zero on ellipses; the trefoil has a non-zero divergence
    for variant in ("QP", "PQ_corrected"):
        check = surface_bodies.omega_surface_relation(trefoil(), variant)
        note = f"{check.note}, D_KL = {check.rhs:.6g}"
        yield CheckOutcome(10, f"trefoil {variant}", check.residual, 0.02, check.consistent, False, note)


@criterion(11, "polytope", "square: polytope classification", "polytope", "fast")
def check_polytope(settings: Settings):
    K = square()
    yield _same(11, "as_1 = 0", affine_surface.as_p(K, 1.0).value, 0.0)
    yield _same(11, "as_0 = 8", affine_surface.as_p(K, 0.0).value, 8.0)
    for alpha in (-1.0, 0.5, 2.0):
        yield _same(11, f"D_{alpha}(Q||P) = inf", renyi(K, alpha, "QP").value, np.inf)
    yield _same(11, "D_1(P||Q) = 0", renyi(K, 1.0, "PQ").value, 0.0)
    for alpha, expected in ((-1.0, -np.inf), (2.0, -np.inf), (0.5, np.inf)):
        yield _same(11, f"D_{alpha}(P||Q)", renyi(K, alpha, "PQ").value, expected)


@criterion(12, "omega", "Omega_K: disk value, scaling, p -> inf limit", "omega", "fast")
def check_omega(settings: Settings):
    yield _outcome(12, "Omega_disk = 1", abs(affine_surface.omega(disk()) - 1.0), 1e-9)
    K = ellipse()
    base = affine_surface.omega(K)
    worst = 0.0
    for T in affine_surface.random_linear_maps(2, 3, settings.seed):
        det = abs(float(np.linalg.det(T)))
        scaled = affine_surface.omega(bodies.linear_image(T, K))
        worst = max(worst, abs(scaled - det**4 * base) / scaled)
    yield _outcome(12, "Omega_TK = |det T|^(2n) Omega_K", worst, 1e-6)
    residuals = affine_surface.omega_limit_diagnostic(K, [10.0, 40.0, 160.0])
    floor = constants.OMEGA_ROUNDING_FLOOR * base ** (1.0 / K.dim)
    decreasing = all(b < a for a, b in zip(residuals, residuals[1:]))
    ok = decreasing or max(residuals) < floor
    detail = "residuals " + ", ".join(f"{r:.3e}" for r in residuals)
    yield CheckOutcome(12, "omega limit p = 10, 40, 160", max(residuals), floor, ok, False, detail)


@criterion(13, "cone-measures", "Q_K = cm_K and P_K = push-forward of cm_K°", "cone", "fast")
def check_cone_measures(settings: Settings):
    K = ellipse()
    yield _outcome(13, "Q_K = cm_K (16 arcs)", cone_measures.check_Q_is_cone_measure(K, 16), 1e-6)
    yield _outcome(13, "P_K push-forward (16 arcs)", cone_measures.check_P_pushforward(K, 16), 1e-5)


# =============================================================================
# RUNNER
# =============================================================================


def suite_names() -> list[str]:
    names = {suite for c in REGISTRY.values() for suite in c.suites}
    return sorted(names | {"all"})


def select(suite: str) -> list[Criterion]:
    if suite == "all":
        chosen = list(REGISTRY.values())
    elif suite in REGISTRY:
        chosen = [REGISTRY[suite]]
    else:
        chosen = [c for c in REGISTRY.values() if suite in c.suites]
    if not chosen:
        raise InvalidArgument(f"unknown suite {suite!r} (choose from {', '.join(suite_names())})")
    return sorted(chosen, key=lambda c: c.number)


def run_suite(suite: str, settings: Settings | None = None) -> list[CheckOutcome]:
    settings = settings or Settings()
    outcomes = []
    for c in select(suite):
        log.info(f"criterion {c.number}: {c.title}")
        for outcome in c.run(settings):
            if not (outcome.passed or outcome.informational):
                log.warning(f"criterion {c.number} {outcome.name}: residual {outcome.residual:.3e} > {outcome.tolerance:g}")
            outcomes.append(outcome)
    return outcomes


def all_passed(outcomes: list[CheckOutcome]) -> bool:
    return all(o.passed or o.informational for o in outcomes)


def format_table(outcomes: list[CheckOutcome]) -> str:
    lines = [f"{'#':>3}  {'check':<44} {'residual':>11} {'tol':>9}  result"]
    for o in outcomes:
        result = "info" if o.informational else "pass" if o.passed else "FAIL"
        lines.append(f"{o.criterion:>3}  {o.name[:44]:<44} {o.residual:>11.3e} {o.tolerance:>9.1e}  {result}")
    failed = sum(1 for o in outcomes if not (o.passed or o.informational))
    lines.append(f"{len(outcomes)} checks, {failed} failed")
    return "\n".join(lines)
