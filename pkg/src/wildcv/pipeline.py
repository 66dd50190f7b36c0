"""Per-case derivation pipeline and the Monte-Carlo consistency oracle.

A derivation runs: closure system -> parameter normalization -> linear
elimination down to a single residual -> affine change of variables -> cubic
normal form, then verifies the result against the expected surface and a
seeded numeric oracle that samples points on the constraint locus and checks
that the cubic vanishes there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Optional

from .polyring import LaurentPoly, Monomial, PolyError, solve_linear, var_id
from .stokes import SymMat3, formal_monodromy, stokes_matrix
from .model import CaseSpec, CovStep, case_spec, validate_spec
from .monodromy import ClosureSystem, closure_equations, topological_monodromy

DEFAULT_SEED = 42
DEFAULT_TRIALS = 100
ORACLE_TOLERANCE = 1e-9
_UNIT_MIN_MODULUS = 0.1
_PIVOT_FLOOR = 1e-8
_MAX_RESAMPLES = 60


class ShapeError(PolyError):
    """Stray monomials survived the change of variables."""


class DegenerateSampleError(PolyError):
    """A sampled configuration was numerically singular."""


class DerivationError(PolyError):
    """A pipeline stage failed; the message carries the stage label."""


# --------------------------------------------------------------------------
# cubic surfaces
# --------------------------------------------------------------------------

_XYZ_NAMES = ("X", "Y", "Z")


@dataclass(frozen=True)
class CubicSurface:
    """xyz*XYZ + x2*X^2 + y2*Y^2 + z2*Z^2 + c1*X + c2*Y + c3*Z + c4 = 0,
    with coefficients that are exact polynomials in the parameters only."""

    xyz: LaurentPoly
    x2: LaurentPoly
    y2: LaurentPoly
    z2: LaurentPoly
    c1: LaurentPoly
    c2: LaurentPoly
    c3: LaurentPoly
    c4: LaurentPoly

    def reconstruct(self) -> LaurentPoly:
        X, Y, Z = (LaurentPoly.variable(n) for n in _XYZ_NAMES)
        return (self.xyz * X * Y * Z + self.x2 * X * X + self.y2 * Y * Y
                + self.z2 * Z * Z + self.c1 * X + self.c2 * Y + self.c3 * Z
                + self.c4)

    def coefficients(self) -> dict:
        return {"xyz": self.xyz, "x2": self.x2, "y2": self.y2, "z2": self.z2,
                "c1": self.c1, "c2": self.c2, "c3": self.c3, "c4": self.c4}


def _decompose_cubic(poly: LaurentPoly) -> CubicSurface:
    xyz_ids = tuple(var_id(n) for n in _XYZ_NAMES)
    slots = {(1, 1, 1): "xyz", (2, 0, 0): "x2", (0, 2, 0): "y2", (0, 0, 2): "z2",
             (1, 0, 0): "c1", (0, 1, 0): "c2", (0, 0, 1): "c3", (0, 0, 0): "c4"}
    acc = {k: LaurentPoly.zero() for k in slots.values()}
    stray = []
    for mono, coef in poly.terms.items():
        pattern = tuple(mono.exponent(v) for v in xyz_ids)
        rest = [(v, k) for v, k in mono.exps if v not in xyz_ids]
        slot = slots.get(pattern)
        if slot is None:
            stray.append(str(LaurentPoly.term(coef, mono)))
            continue
        acc[slot] = acc[slot] + LaurentPoly.term(coef, Monomial(rest))
    if stray:
        raise ShapeError("stray monomials after change of variables: "
                         + ", ".join(sorted(stray)))
    return CubicSurface(**acc)


# --------------------------------------------------------------------------
# elimination and normal form
# --------------------------------------------------------------------------


def _eliminate_with_solutions(equations, plan, scale):
    eqs = list(equations)
    planned = [idx for idx, _ in plan]
    solutions = []
    solved: dict = {}
    for idx, name in plan:
        target = var_id(name)
        eq = eqs[idx].substitute(solved)
        expr = solve_linear(eq, target)
        solved[target] = expr
        solutions.append((name, expr))
    (rest_idx,) = [i for i in range(len(eqs)) if i not in planned]
    residual = eqs[rest_idx].substitute(solved) * scale
    return residual, tuple(solutions)


def eliminate(system, plan, scale=None) -> LaurentPoly:
    """Solve each planned (equation, variable) in order and substitute into
    the one remaining equation; scale by the declared unit factor."""
    equations = system.equations if isinstance(system, ClosureSystem) else system
    residual, _ = _eliminate_with_solutions(
        equations, plan, LaurentPoly.constant(1) if scale is None else scale)
    return residual


def apply_cov(residual: LaurentPoly, cov_steps) -> LaurentPoly:
    out = residual
    for step in cov_steps:
        if step.kind == "subst":
            out = out.substitute({var_id(nm): poly for nm, poly in step.mapping})
        elif step.kind == "divide":
            out = out * step.term.inverse_term()
        else:
            raise ValueError(f"unknown cov step {step.kind!r}")
    return out


def to_cubic_normal_form(residual: LaurentPoly, cov_steps) -> CubicSurface:
    """Apply the change of variables and decompose into the cubic shape."""
    return _decompose_cubic(apply_cov(residual, cov_steps))


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleVerdict:
    seed: int
    trials: int
    max_residual: float
    max_dropped_residual: float
    resamples: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return (self.max_residual < self.tolerance
                and self.max_dropped_residual < self.tolerance)


@dataclass(frozen=True)
class ExpectedComparison:
    mode: str        # "exact" | "support"
    matched: bool
    mismatches: tuple


@dataclass(frozen=True)
class CaseReport:
    """Full derivation trace for one case; every stage is replayable."""

    name: str
    spec: CaseSpec
    directions: tuple                  # per-layout exact angle strings
    stokes_matrices: tuple             # one SymMat3 per layout
    formal_monodromy: SymMat3
    topological_monodromy: SymMat3
    closure: ClosureSystem             # as written (gamma kept symbolic)
    normalized_equations: tuple        # after the parameter normalization
    eliminated: tuple                  # ((varname, expression), ...)
    residual: LaurentPoly
    cubic: CubicSurface
    det_is_one: bool
    expected: ExpectedComparison
    oracle: Optional[OracleVerdict]

    @property
    def passed(self) -> bool:
        return (self.det_is_one and self.expected.matched
                and (self.oracle is None or self.oracle.passed))


# --------------------------------------------------------------------------
# derivation
# --------------------------------------------------------------------------


def _normalize(poly: LaurentPoly, spec: CaseSpec) -> LaurentPoly:
    if not spec.parameter_normalization:
        return poly
    bind = {var_id(nm): val for nm, val in spec.parameter_normalization}
    return poly.substitute(bind)


def _normalize_steps(steps, spec: CaseSpec):
    if not spec.parameter_normalization:
        return steps
    out = []
    for step in steps:
        if step.kind == "subst":
            out.append(CovStep("subst", tuple(
                (nm, _normalize(p, spec)) for nm, p in step.mapping)))
        else:
            out.append(CovStep("divide", (), _normalize(step.term, spec)))
    return tuple(out)


def _compare_expected(spec: CaseSpec, cubic: CubicSurface) -> ExpectedComparison:
    exp = spec.expected
    mismatches = []
    fixed = {"xyz": exp.xyz, "x2": exp.x2, "y2": exp.y2, "z2": exp.z2,
             "c1": exp.c1, "c2": exp.c2, "c3": exp.c3, "c4": exp.c4}
    exact = all(v is not None for v in fixed.values())
    got = cubic.coefficients()
    for key, want in fixed.items():
        if want is None:
            continue
        want = _normalize(want, spec)
        if got[key] != want:
            mismatches.append(f"{key}: expected {want}, derived {got[key]}")
    # the top/quadratic support is always pinned, so only c1..c4 may be free
    return ExpectedComparison("exact" if exact else "support",
                              not mismatches, tuple(mismatches))


def derive_case(name: str, trials: int = DEFAULT_TRIALS,
                seed: int = DEFAULT_SEED, run_oracle: bool = True) -> CaseReport:
    """Run the full mechanical derivation for one case."""
    spec = case_spec(name)
    violations = validate_spec(spec)
    if violations:
        raise DerivationError(f"[spec] invalid case data: {violations}")

    try:
        matrices = tuple(stokes_matrix(l) for l in spec.schedule)
        H = formal_monodromy(spec.formal_monodromy_kind)
        M = topological_monodromy(spec)
    except PolyError as exc:
        raise DerivationError(f"[stokes] {exc}") from exc

    det_is_one = _normalize(M.det(), spec) == LaurentPoly.constant(1)

    try:
        closure = closure_equations(spec, M)
    except PolyError as exc:
        raise DerivationError(f"[closure] {exc}") from exc

    normalized = tuple(_normalize(e, spec) for e in closure.equations)

    try:
        residual, eliminated = _eliminate_with_solutions(
            normalized, spec.elimination_plan, _normalize(spec.residual_scale, spec))
    except PolyError as exc:
        raise DerivationError(f"[eliminate] {exc}") from exc

    try:
        cubic = to_cubic_normal_form(residual, _normalize_steps(spec.cov_steps, spec))
    except PolyError as exc:
        raise DerivationError(f"[normal-form] {exc}") from exc

    expected = _compare_expected(spec, cubic)

    report = CaseReport(
        name=name,
        spec=spec,
        directions=tuple(str(l.direction) for l in spec.schedule),
        stokes_matrices=matrices,
        formal_monodromy=H,
        topological_monodromy=M,
        closure=closure,
        normalized_equations=normalized,
        eliminated=eliminated,
        residual=residual,
        cubic=cubic,
        det_is_one=det_is_one,
        expected=expected,
        oracle=None,
    )
    if run_oracle:
        verdict = oracle_verify(report, trials=trials, seed=seed)
        report = replace(report, oracle=verdict)
    return report


# --------------------------------------------------------------------------
# the Monte-Carlo oracle
# --------------------------------------------------------------------------


def _sample_complex(rng: random.Random) -> complex:
    return complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))


def _sample_unit(rng: random.Random) -> complex:
    for _ in range(100):
        z = _sample_complex(rng)
        if abs(z) >= _UNIT_MIN_MODULUS:
            return z
    raise DegenerateSampleError("could not sample a unit away from zero")


def _linear_solve(equations, targets, values) -> dict:
    """Solve equations that are jointly affine in the targets, numerically."""
    n = len(targets)
    base = dict(values)
    for t in targets:
        base[t] = 0j
    consts = [eq.evaluate(base) for eq in equations]
    cols = []
    for t in targets:
        probe = dict(base)
        probe[t] = 1.0 + 0j
        cols.append([eq.evaluate(probe) - c for eq, c in zip(equations, consts)])
    if n == 1:
        a = cols[0][0]
        if abs(a) < _PIVOT_FLOOR:
            raise DegenerateSampleError("singular 1x1 solve")
        return {targets[0]: -consts[0] / a}
    if n == 2:
        a11, a21 = cols[0]
        a12, a22 = cols[1]
        det = a11 * a22 - a12 * a21
        if abs(det) < _PIVOT_FLOOR:
            raise DegenerateSampleError("singular 2x2 solve")
        b1, b2 = -consts[0], -consts[1]
        return {targets[0]: (b1 * a22 - a12 * b2) / det,
                targets[1]: (a11 * b2 - b1 * a21) / det}
    raise ValueError(f"unsupported number of solve targets: {n}")


def _oracle_trial(report: CaseReport, rng: random.Random) -> tuple:
    spec = report.spec
    plan = spec.oracle
    values: dict = {}
    for nm in plan.sample_units:
        values[var_id(nm)] = _sample_unit(rng)
    for nm, expr in plan.derived_units:
        values[var_id(nm)] = expr.evaluate(values)
    for nm in plan.free_xvars:
        values[var_id(nm)] = _sample_complex(rng)

    if plan.solve_targets:
        targets = [var_id(nm) for nm in plan.solve_targets]
        eqs = [eq for eq in report.closure.raw_equations
               if set(eq.variables()) & set(targets)]
        solved = _linear_solve(eqs[:len(targets)], targets, values)
        values.update(solved)

    if plan.use_trace_params:
        tr, tr2 = report.closure.trace_polys
        values[var_id("p")] = tr.evaluate(values)
        values[var_id("q")] = tr2.evaluate(values)

    dropped_residual = 0.0
    if report.closure.back_subs is not None:
        for nm, expr in report.closure.back_subs:
            values[var_id(nm)] = expr.evaluate(values)
        dropped_residual = abs(report.closure.dropped.evaluate(values))

    for nm, expr in plan.xyz_map:
        values[var_id(nm)] = expr.evaluate(values)

    residual = abs(report.cubic.reconstruct().evaluate(values))
    return residual, dropped_residual


def oracle_verify(report: CaseReport, trials: int = DEFAULT_TRIALS,
                  seed: int = DEFAULT_SEED) -> OracleVerdict:
    """Sample constraint-satisfying points and evaluate the derived cubic.

    Each trial draws random complex Stokes coefficients (units bounded away
    from zero), solves the closure constraints numerically exactly where the
    symbolic pipeline solved them, pushes the point through the change of
    variables, and evaluates the final cubic; the max |residual| is reported.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    max_res = 0.0
    max_drop = 0.0
    resamples = 0
    for t in range(trials):
        for attempt in range(_MAX_RESAMPLES):
            rng = random.Random(seed * 1_000_003 + t * 1_009 + attempt)
            try:
                res, drop = _oracle_trial(report, rng)
            except DegenerateSampleError:
                resamples += 1
                continue
            break
        else:
            raise DegenerateSampleError(f"trial {t}: resample budget exhausted")
        max_res = max(max_res, res)
        max_drop = max(max_drop, drop)
    return OracleVerdict(seed=seed, trials=trials, max_residual=max_res,
                         max_dropped_residual=max_drop, resamples=resamples,
                         tolerance=ORACLE_TOLERANCE)


# --------------------------------------------------------------------------
# named preset: unit cube-root specialization of the JKTVI surface
# --------------------------------------------------------------------------


def specialize_unit_cube_root(cubic: CubicSurface) -> CubicSurface:
    """Specialize (alpha, beta, gamma) = (e^2, e, 1) with e a formal primitive
    cube root of unity (exponents of e reduce modulo 3)."""
    bind = {var_id("alpha"): LaurentPoly.variable("e", 2),
            var_id("beta"): LaurentPoly.variable("e")}
    vals = {k: p.substitute(bind) for k, p in cubic.coefficients().items()}
    return CubicSurface(**vals)
