"""Static definitions of the six JKT cases.

Each case is a frozen ``CaseSpec`` bundling the twist class, the eigenvalue
pair data that generates the Stokes directions, the schedule of Stokes
matrices (which fresh variable sits at which direction and matrix position),
the closure condition, the invariant-monomial generators, and the plans the
pipeline executes verbatim: back substitutions, linear eliminations, affine
changes of variables, and the expected final cubic.

Conventions used throughout (all polynomials exact over the rationals):

* ``gamma`` is eliminated via ``gamma = alpha^-1 * beta^-1`` in the untwisted
  pipelines (JKTVI, JKTIVb), imposing alpha*beta*gamma = 1;
* ``r`` is a formal square root of ``alpha`` (JKTV runs in ``r``);
* schedules are stored in positive orientation exactly as written, so the
  topological monodromy is H * S_last * ... * S_first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .polyring import LaurentPoly, PolyError, parse, var_id
from .stokes import RationalAngle, singular_directions


class UnknownCaseError(PolyError):
    """Not one of the six JKT case names."""


CASE_NAMES = ("JKTVI", "JKTV", "JKTIVa", "JKTIVb", "JKTII", "JKTI")


class TwistClass(enum.Enum):
    UNTWISTED = "untwisted"
    MINIMALLY_TWISTED = "minimally twisted"
    MAXIMALLY_TWISTED = "maximally twisted"

    @property
    def ramification_index(self) -> int:
        return {TwistClass.UNTWISTED: 1,
                TwistClass.MINIMALLY_TWISTED: 2,
                TwistClass.MAXIMALLY_TWISTED: 3}[self]

    @property
    def torus_dim(self) -> int:
        return {TwistClass.UNTWISTED: 2,
                TwistClass.MINIMALLY_TWISTED: 1,
                TwistClass.MAXIMALLY_TWISTED: 0}[self]


def torus_weight_of_position(twist: TwistClass, row: int, col: int) -> tuple:
    """Weight of a Stokes coefficient at matrix position (row, col), 1-based.

    Untwisted torus: diag(lam, mu, 1); minimally twisted: diag(lam, lam,
    lam^-2); maximally twisted: trivial.
    """
    if twist is TwistClass.UNTWISTED:
        basis = {1: (1, 0), 2: (0, 1), 3: (0, 0)}
        a, b = basis[row], basis[col]
        return (a[0] - b[0], a[1] - b[1])
    if twist is TwistClass.MINIMALLY_TWISTED:
        basis = {1: 1, 2: 1, 3: -2}
        return (basis[row] - basis[col],)
    return ()


@dataclass(frozen=True)
class EigenvaluePairSpec:
    """One ordered eigenvalue pair: leading level of the difference and its
    exact argument offset (fixed by the allowed phase normalizations)."""

    label: tuple[int, int]
    level_l: int
    ramification_N: int
    arg_offset: RationalAngle

    def __post_init__(self):
        if self.level_l < 1 or not 1 <= self.ramification_N <= 3:
            raise ValueError("level >= 1 and ramification in 1..3 required")


@dataclass(frozen=True)
class StokesEntryLayout:
    direction: RationalAngle
    entries: tuple  # ((row, col, varname), ...) with row != col, 1-based

    def __post_init__(self):
        for row, col, _ in self.entries:
            if row == col:
                raise ValueError(f"diagonal entry ({row},{col})")


@dataclass(frozen=True)
class ClosureCondition:
    kind: str  # "identity" | "fixed_class"
    trace_symbols: tuple = ()

    def __post_init__(self):
        if self.kind not in ("identity", "fixed_class"):
            raise ValueError(f"bad closure kind {self.kind!r}")


@dataclass(frozen=True)
class CovStep:
    """One change-of-variables step: a simultaneous substitution or a
    division by a declared invertible term."""

    kind: str  # "subst" | "divide"
    mapping: tuple = ()  # ((varname, LaurentPoly), ...) for subst
    term: Optional[LaurentPoly] = None  # for divide


@dataclass(frozen=True)
class ExpectedCubic:
    """Expected cubic for the case.  The top and quadratic coefficients are
    always pinned; the linear/constant ones only where the case data fixes
    them in closed form (the rest are pinned by golden files)."""

    xyz: LaurentPoly
    x2: LaurentPoly
    y2: LaurentPoly
    z2: LaurentPoly
    c1: Optional[LaurentPoly] = None
    c2: Optional[LaurentPoly] = None
    c3: Optional[LaurentPoly] = None
    c4: Optional[LaurentPoly] = None


@dataclass(frozen=True)
class OraclePlan:
    """How the Monte-Carlo oracle samples a point on the constraint locus."""

    sample_units: tuple            # unit variable names drawn at random
    derived_units: tuple           # ((name, LaurentPoly), ...) evaluated after sampling
    free_xvars: tuple              # freely sampled Stokes coefficients
    solve_targets: tuple           # coefficients solved from the closure equations
    use_trace_params: bool         # p, q are computed from the sampled traces
    xyz_map: tuple                 # ((name, LaurentPoly), ...) pushforward to X, Y, Z


@dataclass(frozen=True)
class CaseSpec:
    name: str
    twist: TwistClass
    divisor: str                   # "{0}+2{inf}" | "3{inf}"
    formal_monodromy_kind: int     # 1 | 2 | 3
    pair_specs: tuple
    schedule: tuple
    closure: ClosureCondition
    generator_defs: tuple          # ((name, Monomial), ...) over U,V,W,R,T
    tautological: LaurentPoly
    use_invariant_rewrite: bool
    parameter_normalization: tuple  # ((varname, LaurentPoly), ...)
    split_index: Optional[int]
    back_sub_plan: tuple           # (((i, j), varname), ...)
    drop_entry: Optional[tuple]
    residual_entries: tuple        # (((i, j), scale LaurentPoly), ...)
    elimination_plan: tuple        # ((equation index, varname), ...)
    residual_scale: LaurentPoly
    cov_steps: tuple
    expected: ExpectedCubic
    inverse_parameter_form: Optional[LaurentPoly]
    oracle: OraclePlan

    def generator_dict(self) -> dict:
        return dict(self.generator_defs)

    def schedule_variables(self) -> tuple:
        out = []
        for layout in self.schedule:
            for _, _, name in layout.entries:
                out.append(name)
        return tuple(out)

    def first_half_variables(self) -> tuple:
        """Variables that survive the identity-condition back substitution
        (all schedule variables for the two-point cases)."""
        solved = {name for _, name in self.back_sub_plan}
        return tuple(nm for nm in self.schedule_variables() if nm not in solved)


# --------------------------------------------------------------------------
# construction helpers
# --------------------------------------------------------------------------


def _ang(num: int, den: int = 1) -> RationalAngle:
    return RationalAngle.of(num, den)


def _pairs(data) -> tuple:
    return tuple(
        EigenvaluePairSpec(label, l, N, _ang(num, den))
        for (label, l, N, (num, den)) in data
    )


def _layouts(data) -> tuple:
    return tuple(
        StokesEntryLayout(_ang(num, den), tuple(entries))
        for ((num, den), entries) in data
    )


def _defs(**named: str) -> tuple:
    out = []
    for name in ("U", "V", "W", "R", "T"):
        poly = parse(named[name])
        coef, mono = poly.single_term()
        if coef != 1:
            raise ValueError("generator definitions are plain monomials")
        out.append((name, mono))
    return tuple(out)


_UNTWISTED_CYCLE = ((1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2))

_GAMMA_NORMALIZATION = (("gamma", parse("alpha^-1*beta^-1")),)


def _subst(**named: str) -> CovStep:
    return CovStep("subst", tuple((k, parse(expr)) for k, expr in named.items()))


def _divide(term: str) -> CovStep:
    return CovStep("divide", (), parse(term))


# --------------------------------------------------------------------------
# the six cases
# --------------------------------------------------------------------------


def _build_jktvi() -> CaseSpec:
    schedule = _layouts([
        ((k, 3), [(_UNTWISTED_CYCLE[k - 1][0], _UNTWISTED_CYCLE[k - 1][1], f"x{k}")])
        for k in range(1, 7)
    ])
    return CaseSpec(
        name="JKTVI",
        twist=TwistClass.UNTWISTED,
        divisor="{0}+2{inf}",
        formal_monodromy_kind=1,
        pair_specs=_pairs([
            ((0, 1), 1, 1, (5, 6)),
            ((0, 2), 1, 1, (7, 6)),
            ((1, 2), 1, 1, (3, 2)),
            ((1, 0), 1, 1, (11, 6)),
            ((2, 0), 1, 1, (1, 6)),
            ((2, 1), 1, 1, (1, 2)),
        ]),
        schedule=schedule,
        closure=ClosureCondition("fixed_class", ("p", "q")),
        generator_defs=_defs(U="x1*x4", V="x2*x5", W="x3*x6",
                             R="x1*x3*x5", T="x2*x4*x6"),
        tautological=parse("U*V*W - R*T"),
        use_invariant_rewrite=True,
        parameter_normalization=_GAMMA_NORMALIZATION,
        split_index=None,
        back_sub_plan=(),
        drop_entry=None,
        residual_entries=(),
        elimination_plan=((0, "U"), (1, "R")),
        residual_scale=parse("-beta"),
        cov_steps=(
            _subst(T="S - V - W"),
            # shifts chosen so that no XY, XZ or YZ monomial survives
            _subst(W="-X - beta*gamma^-1 - 1",
                   V="-Y - alpha*gamma^-1 - 1",
                   S="-Z - 1 + p*gamma^-1"),
            _divide("-1"),
        ),
        expected=ExpectedCubic(xyz=parse("gamma"), x2=parse("alpha"),
                               y2=parse("beta"), z2=parse("gamma")),
        inverse_parameter_form=None,
        oracle=OraclePlan(
            sample_units=("alpha", "beta"),
            derived_units=(("gamma", parse("alpha^-1*beta^-1")),),
            free_xvars=tuple(f"x{i}" for i in range(1, 7)),
            solve_targets=(),
            use_trace_params=True,
            xyz_map=(("X", parse("-x3*x6 - beta*gamma^-1 - 1")),
                     ("Y", parse("-x2*x5 - alpha*gamma^-1 - 1")),
                     ("Z", parse("-x2*x5 - x3*x6 - x2*x4*x6 - 1 + p*gamma^-1"))),
        ),
    )


def _build_jktv() -> CaseSpec:
    return CaseSpec(
        name="JKTV",
        twist=TwistClass.MINIMALLY_TWISTED,
        divisor="{0}+2{inf}",
        formal_monodromy_kind=2,
        pair_specs=_pairs([
            ((0, 1), 1, 2, (0, 1)),
            ((2, 0), 2, 2, (0, 1)),
            ((0, 2), 2, 2, (1, 1)),
        ]),
        schedule=_layouts([
            ((1, 2), [(1, 3, "x2"), (2, 3, "x3")]),
            ((1, 1), [(1, 2, "x1")]),
            ((3, 2), [(3, 1, "x5"), (3, 2, "x6")]),
        ]),
        closure=ClosureCondition("fixed_class", ("p", "q")),
        generator_defs=_defs(U="x2*x5", V="x3*x6", W="x1", R="x2*x6", T="x3*x5"),
        tautological=parse("U*V - R*T"),
        use_invariant_rewrite=True,
        parameter_normalization=(),
        split_index=None,
        back_sub_plan=(),
        drop_entry=None,
        residual_entries=(),
        elimination_plan=((0, "U"), (1, "R")),
        residual_scale=parse("-alpha"),
        cov_steps=(
            _subst(alpha="r^2"),
            _subst(T="X - r^-2", V="r^-1*Y - 1", W="r^-1*Z"),
        ),
        expected=ExpectedCubic(xyz=parse("1"), x2=parse("1"),
                               y2=parse("1"), z2=parse("0")),
        inverse_parameter_form=None,
        oracle=OraclePlan(
            sample_units=("r",),
            derived_units=(("alpha", parse("r^2")),),
            free_xvars=("x1", "x2", "x3", "x5", "x6"),
            solve_targets=(),
            use_trace_params=True,
            xyz_map=(("X", parse("x3*x5 + r^-2")),
                     ("Y", parse("r*x3*x6 + r")),
                     ("Z", parse("r*x1"))),
        ),
    )


def _build_jktiva() -> CaseSpec:
    return CaseSpec(
        name="JKTIVa",
        twist=TwistClass.MAXIMALLY_TWISTED,
        divisor="{0}+2{inf}",
        formal_monodromy_kind=3,
        pair_specs=_pairs([
            ((0, 1), 2, 3, (11, 6)),
            ((0, 2), 2, 3, (1, 6)),
            ((1, 2), 2, 3, (1, 2)),
            ((1, 0), 2, 3, (5, 6)),
        ]),
        schedule=_layouts([
            ((1, 2), [(1, 2, "x1")]),
            ((1, 1), [(1, 3, "x2")]),
            ((3, 2), [(2, 3, "x3")]),
            ((0, 1), [(2, 1, "x4")]),
        ]),
        closure=ClosureCondition("fixed_class", ("p", "q")),
        generator_defs=_defs(U="x1*x4", V="x2", W="x3", R="x1*x3", T="x2*x4"),
        tautological=parse("U*V*W - R*T"),
        use_invariant_rewrite=False,
        parameter_normalization=(),
        split_index=None,
        back_sub_plan=(),
        drop_entry=None,
        residual_entries=(),
        elimination_plan=((0, "x1"),),
        residual_scale=LaurentPoly.constant(Fraction(1, 2)),
        cov_steps=(_subst(x3="X", x2="Y", x4="Z"),),
        expected=ExpectedCubic(xyz=parse("1"), x2=parse("1"),
                               y2=parse("0"), z2=parse("0"),
                               c1=parse("-p"), c2=parse("1"), c3=parse("1"),
                               c4=parse("1/2*p^2 - 1/2*q")),
        inverse_parameter_form=None,
        oracle=OraclePlan(
            sample_units=(),
            derived_units=(),
            free_xvars=("x1", "x2", "x3", "x4"),
            solve_targets=(),
            use_trace_params=True,
            xyz_map=(("X", parse("x3")), ("Y", parse("x2")), ("Z", parse("x4"))),
        ),
    )


def _build_jktivb() -> CaseSpec:
    schedule = _layouts([
        ((k, 6), [(_UNTWISTED_CYCLE[(k - 1) % 6][0],
                   _UNTWISTED_CYCLE[(k - 1) % 6][1], f"x{k}")])
        for k in range(1, 13)
    ])
    return CaseSpec(
        name="JKTIVb",
        twist=TwistClass.UNTWISTED,
        divisor="3{inf}",
        formal_monodromy_kind=1,
        pair_specs=_pairs([
            ((0, 1), 2, 1, (11, 6)),
            ((0, 2), 2, 1, (1, 6)),
            ((1, 2), 2, 1, (1, 2)),
            ((1, 0), 2, 1, (5, 6)),
            ((2, 0), 2, 1, (7, 6)),
            ((2, 1), 2, 1, (3, 2)),
        ]),
        schedule=schedule,
        closure=ClosureCondition("identity"),
        generator_defs=_defs(U="x1*x4", V="x2*x5", W="x3*x6",
                             R="x1*x3*x5", T="x2*x4*x6"),
        tautological=parse("U*V*W - R*T"),
        use_invariant_rewrite=True,
        parameter_normalization=_GAMMA_NORMALIZATION,
        split_index=6,
        back_sub_plan=(((2, 3), "x9"), ((3, 2), "x12"), ((3, 1), "x11"),
                       ((2, 1), "x10"), ((1, 3), "x8"), ((1, 2), "x7")),
        drop_entry=(1, 1),
        residual_entries=(((3, 3), parse("gamma")), ((2, 2), parse("1"))),
        elimination_plan=((0, "T"), (1, "R")),
        residual_scale=parse("1"),
        cov_steps=(_subst(U="X - 1", V="Y - 1", W="Z - 1"),),
        expected=ExpectedCubic(xyz=parse("1"), x2=parse("0"),
                               y2=parse("1"), z2=parse("0"),
                               c1=parse("-gamma^-1"),
                               c2=parse("-alpha - gamma^-1 - 1"),
                               c3=parse("-alpha"),
                               c4=parse("alpha*gamma^-1 + alpha + gamma^-1")),
        inverse_parameter_form=None,
        oracle=OraclePlan(
            sample_units=("alpha", "beta"),
            derived_units=(("gamma", parse("alpha^-1*beta^-1")),),
            free_xvars=("x1", "x2", "x3", "x4"),
            solve_targets=("x5", "x6"),
            use_trace_params=False,
            xyz_map=(("X", parse("x1*x4 + 1")),
                     ("Y", parse("x2*x5 + 1")),
                     ("Z", parse("x3*x6 + 1"))),
        ),
    )


def _build_jktii() -> CaseSpec:
    return CaseSpec(
        name="JKTII",
        twist=TwistClass.MINIMALLY_TWISTED,
        divisor="3{inf}",
        formal_monodromy_kind=2,
        pair_specs=_pairs([
            ((0, 1), 3, 2, (0, 1)),
            ((1, 0), 3, 2, (1, 1)),
            ((2, 0), 4, 2, (0, 1)),
            ((0, 2), 4, 2, (1, 1)),
        ]),
        schedule=_layouts([
            ((1, 4), [(1, 3, "x2"), (2, 3, "x3")]),
            ((1, 3), [(1, 2, "x1")]),
            ((3, 4), [(3, 1, "x5"), (3, 2, "x6")]),
            ((1, 1), [(2, 1, "x4")]),
            ((5, 4), [(1, 3, "x8"), (2, 3, "x9")]),
            ((5, 3), [(1, 2, "x7")]),
            ((7, 4), [(3, 1, "x11"), (3, 2, "x12")]),
        ]),
        closure=ClosureCondition("identity"),
        generator_defs=_defs(U="x2*x5", V="x3*x6", W="x1",
                             R="x2*x6", T="x1*x3*x5"),
        tautological=parse("U*V*W - R*T"),
        use_invariant_rewrite=True,
        parameter_normalization=(),
        split_index=3,
        back_sub_plan=(((3, 1), "x12"), ((3, 2), "x11"), ((1, 3), "x8"),
                       ((1, 1), "x7"), ((2, 3), "x9"), ((2, 2), "x4")),
        drop_entry=(2, 1),
        residual_entries=(((3, 3), parse("-1")), ((1, 2), parse("1"))),
        elimination_plan=((0, "T"), (1, "R")),
        residual_scale=parse("1"),
        cov_steps=(
            _subst(U="X - 1", V="Yp - 1", W="Z"),
            _subst(Yp="alpha^-1*Y"),
            _divide("alpha^-1"),
        ),
        expected=ExpectedCubic(xyz=parse("1"), x2=parse("0"),
                               y2=parse("0"), z2=parse("0"),
                               c1=parse("-1"), c2=parse("-alpha^-1"),
                               c3=parse("-1"), c4=parse("1 + alpha^-1")),
        inverse_parameter_form=parse("X*Y*Z - X - alpha*Y - Z + 1 + alpha"),
        oracle=OraclePlan(
            sample_units=("alpha",),
            derived_units=(),
            free_xvars=("x1", "x2", "x3"),
            solve_targets=("x5", "x6"),
            use_trace_params=False,
            xyz_map=(("X", parse("x2*x5 + 1")),
                     ("Y", parse("alpha*x3*x6 + alpha")),
                     ("Z", parse("x1"))),
        ),
    )


def _build_jkti() -> CaseSpec:
    cycle = _UNTWISTED_CYCLE
    schedule = _layouts([
        ((k, 5), [(cycle[(k - 1) % 6][0], cycle[(k - 1) % 6][1], f"x{k}")])
        for k in range(1, 11)
    ])
    return CaseSpec(
        name="JKTI",
        twist=TwistClass.MAXIMALLY_TWISTED,
        divisor="3{inf}",
        formal_monodromy_kind=3,
        pair_specs=_pairs([
            ((0, 1), 5, 3, (11, 6)),
            ((0, 2), 5, 3, (1, 6)),
            ((1, 2), 5, 3, (1, 2)),
            ((1, 0), 5, 3, (5, 6)),
            ((2, 0), 5, 3, (7, 6)),
            ((2, 1), 5, 3, (3, 2)),
        ]),
        schedule=schedule,
        closure=ClosureCondition("identity"),
        generator_defs=_defs(U="x1*x4", V="x2", W="x3", R="x1*x3", T="x2*x4"),
        tautological=parse("U*V*W - R*T"),
        use_invariant_rewrite=False,
        parameter_normalization=(),
        split_index=4,
        back_sub_plan=(((2, 1), "x9"), ((2, 2), "x10"), ((1, 3), "x7"),
                       ((1, 1), "x8"), ((3, 3), "x6"), ((3, 2), "x5")),
        drop_entry=(3, 1),
        residual_entries=(((2, 3), parse("1")), ((1, 2), parse("-1"))),
        elimination_plan=((0, "x3"),),
        residual_scale=parse("1"),
        cov_steps=(_subst(x1="-X", x2="Y", x4="-Z"),),
        expected=ExpectedCubic(xyz=parse("1"), x2=parse("0"),
                               y2=parse("0"), z2=parse("0"),
                               c1=parse("1"), c2=parse("1"),
                               c3=parse("0"), c4=parse("1")),
        inverse_parameter_form=None,
        oracle=OraclePlan(
            sample_units=(),
            derived_units=(),
            free_xvars=("x2", "x4"),
            solve_targets=("x1", "x3"),
            use_trace_params=False,
            xyz_map=(("X", parse("-x1")), ("Y", parse("x2")), ("Z", parse("-x4"))),
        ),
    )


_BUILDERS = {
    "JKTVI": _build_jktvi,
    "JKTV": _build_jktv,
    "JKTIVa": _build_jktiva,
    "JKTIVb": _build_jktivb,
    "JKTII": _build_jktii,
    "JKTI": _build_jkti,
}


@lru_cache(maxsize=None)
def case_spec(name: str) -> CaseSpec:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownCaseError(f"unknown case {name!r}; expected one of {CASE_NAMES}") from None
    return builder()


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


_SCHEDULE_LENGTHS = {"JKTVI": 6, "JKTV": 3, "JKTIVa": 4,
                     "JKTIVb": 12, "JKTII": 7, "JKTI": 10}


def validate_spec(spec: CaseSpec) -> list:
    """Mechanical consistency checks; an empty list means the case data is sound."""
    out = []

    expected_len = _SCHEDULE_LENGTHS.get(spec.name)
    if expected_len is not None and len(spec.schedule) != expected_len:
        out.append(Violation("schedule_length",
                             f"expected {expected_len} layouts, got {len(spec.schedule)}"))

    for layout in spec.schedule:
        for row, col, name in layout.entries:
            if row == col:
                out.append(Violation("diagonal_entry", f"({row},{col},{name})"))

    identity_expected = spec.divisor == "3{inf}"
    if (spec.closure.kind == "identity") != identity_expected:
        out.append(Violation("closure_kind",
                             f"divisor {spec.divisor} with closure {spec.closure.kind}"))

    # generator monomials: torus-invariant, built from surviving coefficients
    weights = {}
    for layout in spec.schedule:
        for row, col, name in layout.entries:
            weights[name] = torus_weight_of_position(spec.twist, row, col)
    first_half = set(spec.first_half_variables())
    zero = tuple([0] * spec.twist.torus_dim)
    for gname, mono in spec.generator_defs:
        total = [0] * spec.twist.torus_dim
        for varid, k in mono.exps:
            if varid.name not in weights:
                out.append(Violation("generator_mismatch",
                                     f"{gname} uses unscheduled {varid.name}"))
                continue
            if varid.name not in first_half:
                out.append(Violation("generator_mismatch",
                                     f"{gname} uses eliminated {varid.name}"))
            for a, w in enumerate(weights[varid.name]):
                total[a] += w * k
        if tuple(total) != zero:
            out.append(Violation("generator_mismatch",
                                 f"{gname} = {mono} has nonzero weight {tuple(total)}"))

    # the tautological relation must vanish under the definitions
    bindings = {var_id(nm): LaurentPoly.term(1, mono)
                for nm, mono in spec.generator_defs}
    if not spec.tautological.substitute(bindings).is_zero():
        out.append(Violation("tautological_relation",
                             f"{spec.tautological} does not vanish under the definitions"))

    # every schedule variable is either in a generator or eliminated
    covered = {v.name for _, mono in spec.generator_defs for v in mono.variables()}
    covered |= {name for _, name in spec.back_sub_plan}
    for name in spec.schedule_variables():
        if name not in covered:
            out.append(Violation("uncovered_variable", name))

    # schedule directions agree with the computed union of pair directions
    sched_dirs = {layout.direction for layout in spec.schedule}
    pair_dirs = set()
    for pair in spec.pair_specs:
        pair_dirs.update(singular_directions(pair))
    if sched_dirs != pair_dirs:
        out.append(Violation("direction_mismatch",
                             f"schedule {sorted(sched_dirs)} vs pairs {sorted(pair_dirs)}"))

    n_equations = (2 + (1 if spec.use_invariant_rewrite else 0)
                   if spec.closure.kind == "fixed_class"
                   else len(spec.residual_entries)
                   + (1 if spec.use_invariant_rewrite else 0))
    used = [idx for idx, _ in spec.elimination_plan]
    if len(set(used)) != len(used) or any(not 0 <= i < n_equations for i in used) \
            or len(used) != n_equations - 1:
        out.append(Violation("elimination_plan",
                             f"plan {spec.elimination_plan} does not leave one residual"))

    return out
