"""Exact multivariate Laurent-polynomial arithmetic over the rationals.

Every symbolic value in this package is a ``LaurentPoly``: a canonical sparse
sum of monomials with nonzero ``Fraction`` coefficients.  Variable names come
from a closed registry.  A handful of variables (``alpha``, ``beta``,
``gamma``, ``r``, and the torus/root-of-unity scalars ``lam``, ``mu``, ``e``)
are *units*: they may carry negative exponents and may be inverted.  All other
variables admit only nonnegative exponents, so ordinary polynomial identities
are preserved.

Two registry-level conventions are baked in:

* ``r`` is a formal square root of ``alpha`` (``alpha = r**2`` is applied by
  explicit substitution where needed, and enforced on numeric assignments);
* ``e`` is a formal primitive cube root of unity: its exponents are reduced
  modulo 3 at construction, so ``e**3 == 1`` and ``e**-1 == e**2`` hold
  canonically.

Polynomials print deterministically (terms sorted by exponent vector in
registry order) in a small text grammar, and ``parse`` round-trips it::

    2*x1^2*x2 - 1/3*alpha^-1 + 1
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class PolyError(Exception):
    """Base class for errors raised by the polynomial ring."""


class UnknownVariableError(PolyError):
    """A variable name outside the closed registry."""


class ExponentDomainError(PolyError):
    """A non-unit variable was given a negative exponent."""


class SubstitutionDomainError(PolyError):
    """A substitution would force a negative exponent on a non-unit value."""


class NotLinearError(PolyError):
    """solve_linear was applied to an equation of degree != 1 in the target."""


class NotInvertibleError(PolyError):
    """A leading coefficient is not a single term in unit variables."""


class UnboundVariableError(PolyError):
    """Numeric evaluation encountered an unassigned variable."""


class ParseError(PolyError):
    """Malformed polynomial text."""


# --------------------------------------------------------------------------
# variable registry
# --------------------------------------------------------------------------

_UNIT_NAMES = ("alpha", "beta", "gamma", "r", "lam", "mu", "e")

_REGISTRY_NAMES = tuple(
    [f"x{i}" for i in range(1, 13)]
    + ["U", "V", "W", "R", "T", "S", "X", "Y", "Z", "Xp", "Yp", "Zp"]
    + ["alpha", "beta", "gamma", "r", "p", "q", "lam", "mu", "e"]
)

# exponent reduction moduli (formal roots of unity)
_EXP_MOD = {"e": 3}


class VarId:
    """Interned identifier for a registry variable."""

    __slots__ = ("name", "index", "unit", "exp_mod")

    _by_name: dict = {}

    def __init__(self, name: str, index: int, unit: bool, exp_mod: int | None):
        self.name = name
        self.index = index
        self.unit = unit
        self.exp_mod = exp_mod

    def __repr__(self):
        return f"VarId({self.name})"

    def __lt__(self, other: "VarId"):
        return self.index < other.index


for _i, _name in enumerate(_REGISTRY_NAMES):
    VarId._by_name[_name] = VarId(_name, _i, _name in _UNIT_NAMES, _EXP_MOD.get(_name))

_N_VARS = len(_REGISTRY_NAMES)


def var_id(name: str) -> VarId:
    """Look up a registry variable; unknown names are rejected."""
    try:
        return VarId._by_name[name]
    except KeyError:
        raise UnknownVariableError(f"unknown variable {name!r}") from None


def registry_names() -> tuple:
    return _REGISTRY_NAMES


def unit_names() -> tuple:
    return _UNIT_NAMES


# --------------------------------------------------------------------------
# monomials
# --------------------------------------------------------------------------


class Monomial:
    """Canonical sparse exponent vector; zero exponents are never stored."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Iterable[tuple[VarId, int]]):
        norm: dict = {}
        for v, k in exps:
            norm[v] = norm.get(v, 0) + k
        cleaned = []
        for v, k in norm.items():
            if v.exp_mod is not None:
                k %= v.exp_mod
            if k == 0:
                continue
            if k < 0 and not v.unit:
                raise ExponentDomainError(f"negative exponent on non-unit {v.name}")
            cleaned.append((v, k))
        self.exps = tuple(sorted(cleaned, key=lambda it: it[0].index))
        self._hash = hash(self.exps)

    @classmethod
    def one(cls) -> "Monomial":
        return _MONOMIAL_ONE

    @classmethod
    def of(cls, **exps: int) -> "Monomial":
        return cls((var_id(n), k) for n, k in exps.items())

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged = dict(self.exps)
        for v, k in other.exps:
            merged[v] = merged.get(v, 0) + k
        return Monomial(merged.items())

    def divide(self, other: "Monomial"):
        """Exact quotient self/other, or None when not divisible (non-units only go down)."""
        merged = dict(self.exps)
        for v, k in other.exps:
            merged[v] = merged.get(v, 0) - k
        try:
            return Monomial(merged.items())
        except ExponentDomainError:
            return None

    def pow(self, k: int) -> "Monomial":
        return Monomial((v, e * k) for v, e in self.exps)

    def inverse(self) -> "Monomial":
        for v, _ in self.exps:
            if not v.unit:
                raise NotInvertibleError(f"{self} contains non-unit {v.name}")
        return self.pow(-1)

    def is_unit_only(self) -> bool:
        return all(v.unit for v, _ in self.exps)

    def total_degree(self) -> int:
        return sum(k for _, k in self.exps)

    def exponent(self, v: VarId) -> int:
        for w, k in self.exps:
            if w is v:
                return k
        return 0

    def variables(self) -> tuple:
        return tuple(v for v, _ in self.exps)

    def sort_key(self) -> tuple:
        key = [0] * _N_VARS
        for v, k in self.exps:
            key[v.index] = k
        return tuple(key)

    def __str__(self):
        if not self.exps:
            return "1"
        return "*".join(v.name if k == 1 else f"{v.name}^{k}" for v, k in self.exps)

    __repr__ = __str__


_MONOMIAL_ONE = Monomial(())


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


def _coerce_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


class LaurentPoly:
    """Immutable canonical polynomial: map monomial -> nonzero rational."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction]):
        self.terms = {m: c for m, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({})

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        return cls({Monomial.one(): _coerce_scalar(c)})

    @classmethod
    def variable(cls, name: str, exponent: int = 1) -> "LaurentPoly":
        return cls({Monomial(((var_id(name), exponent),)): Fraction(1)})

    @classmethod
    def term(cls, coef: Scalar, mono: Monomial) -> "LaurentPoly":
        return cls({mono: _coerce_scalar(coef)})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) + (-self)

    def __mul__(self, other):
        other = _lift(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers; invert unit terms instead")
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection --------------------------------------------------------

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            out.update(m.variables())
        return out

    def degree_in(self, v: VarId) -> int:
        """Largest exponent of v (0 when absent)."""
        return max((m.exponent(v) for m in self.terms), default=0)

    def coefficient_of(self, v: VarId, k: int) -> "LaurentPoly":
        """Polynomial coefficient of v**k (v removed from the result)."""
        out = {}
        for m, c in self.terms.items():
            if m.exponent(v) == k:
                out[m.divide(Monomial(((v, k),))) if k >= 0 else m * Monomial(((v, -k),))] = c
        return LaurentPoly(out)

    def single_term(self) -> tuple[Fraction, Monomial]:
        if len(self.terms) != 1:
            raise NotInvertibleError(f"not a single term: {self}")
        ((m, c),) = self.terms.items()
        return c, m

    def inverse_term(self) -> "LaurentPoly":
        """Inverse of a single term whose monomial involves only unit variables."""
        c, m = self.single_term()
        return LaurentPoly({m.inverse(): Fraction(1) / c})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda it: it[0].sort_key(), reverse=True)

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, bindings: Mapping[VarId, "LaurentPoly"]) -> "LaurentPoly":
        """Simultaneous substitution; unbound variables pass through.

        A variable occurring with a negative exponent can only be replaced by
        a single term in unit variables, otherwise SubstitutionDomainError.
        """
        if not bindings:
            return self
        out = LaurentPoly.zero()
        inv_cache: dict = {}
        for m, c in self.terms.items():
            acc = LaurentPoly.constant(c)
            for v, k in m.exps:
                b = bindings.get(v)
                if b is None:
                    acc = acc * LaurentPoly({Monomial(((v, k),)): Fraction(1)})
                elif k >= 0:
                    acc = acc * b ** k
                else:
                    if v not in inv_cache:
                        try:
                            inv_cache[v] = b.inverse_term()
                        except (NotInvertibleError, PolyError) as exc:
                            raise SubstitutionDomainError(
                                f"cannot invert binding of {v.name}: {b}") from exc
                    acc = acc * inv_cache[v] ** (-k)
            out = out + acc
        return out

    def evaluate(self, values: Mapping[VarId, complex]) -> complex:
        """Direct term-by-term numeric evaluation."""
        total = 0j
        for m, c in self.terms.items():
            prod = complex(c)
            for v, k in m.exps:
                if v not in values:
                    raise UnboundVariableError(f"unbound variable {v.name}")
                prod *= values[v] ** k
            total += prod
        return total

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)}>"


def _lift(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot lift {x!r} into the ring")


# convenience aliases used across the package
ZERO = LaurentPoly.zero()
ONE = LaurentPoly.constant(1)


def v(name: str) -> LaurentPoly:
    """Shorthand for a degree-1 variable polynomial."""
    return LaurentPoly.variable(name)


# --------------------------------------------------------------------------
# linear solving
# --------------------------------------------------------------------------


def solve_linear(eq: LaurentPoly, target: VarId) -> LaurentPoly:
    """Solve eq == 0 for target.

    The equation must be of degree exactly 1 in target, with a coefficient
    that is a single term in unit variables (hence invertible).  The result
    expr satisfies eq|_{target -> expr} == 0 identically.
    """
    deg = eq.degree_in(target)
    if deg != 1 or any(m.exponent(target) < 0 for m in eq.terms):
        raise NotLinearError(f"degree in {target.name} is {deg}, need exactly 1")
    coeff = eq.coefficient_of(target, 1)
    rest = eq.coefficient_of(target, 0)
    try:
        inv = coeff.inverse_term()
    except NotInvertibleError:
        raise NotInvertibleError(
            f"coefficient of {target.name} is not an invertible term: {coeff}") from None
    return -rest * inv


# --------------------------------------------------------------------------
# numeric assignments
# --------------------------------------------------------------------------

_UNIT_FLOOR = 1e-6


class NumericAssignment:
    """Complex values for variables, with unit-variable sanity enforced.

    Unit variables must stay bounded away from zero, and when ``r`` is
    assigned, ``alpha`` must be assigned ``r**2``.
    """

    __slots__ = ("values",)

    def __init__(self, values: Mapping[VarId, complex]):
        vals = {k: complex(val) for k, val in values.items()}
        for var, val in vals.items():
            if var.unit and abs(val) < _UNIT_FLOOR:
                raise ValueError(f"unit variable {var.name} too close to 0: {val}")
        r = VarId._by_name["r"]
        a = VarId._by_name["alpha"]
        if r in vals:
            if a not in vals:
                raise ValueError("r assigned without alpha")
            if abs(vals[a] - vals[r] ** 2) > 1e-9 * max(1.0, abs(vals[r]) ** 2):
                raise ValueError("alpha must equal r**2 when r is assigned")
        self.values = vals

    @classmethod
    def of(cls, **named: complex) -> "NumericAssignment":
        return cls({var_id(n): c for n, c in named.items()})


def evaluate_numeric(poly: LaurentPoly, assignment: NumericAssignment) -> complex:
    return poly.evaluate(assignment.values)


# --------------------------------------------------------------------------
# text grammar
# --------------------------------------------------------------------------


def _fmt_coef(c: Fraction) -> str:
    return str(c)


def format_poly(poly: LaurentPoly) -> str:
    """Canonical deterministic rendering (registry order, descending)."""
    items = poly.sorted_terms()
    if not items:
        return "0"
    pieces = []
    for i, (m, c) in enumerate(items):
        neg = c < 0
        mag = -c if neg else c
        if m.exps and mag == 1:
            body = str(m)
        elif m.exps:
            body = f"{_fmt_coef(mag)}*{m}"
        else:
            body = _fmt_coef(mag)
        if i == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(\^)|(\*)|(\+)|(-)|(/))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"bad character at {text[pos:]!r}")
            break
        pos = m.end()
        if m.group(1):
            out.append(("int", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        elif m.group(3):
            out.append(("pow", None))
        elif m.group(4):
            out.append(("mul", None))
        elif m.group(5):
            out.append(("plus", None))
        elif m.group(6):
            out.append(("minus", None))
        elif m.group(7):
            out.append(("slash", None))
    return out


def parse(text: str) -> LaurentPoly:
    """Parse the canonical grammar; inverse of format_poly."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial text")
    pos = 0
    total = LaurentPoly.zero()

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    while pos < len(toks):
        sign = 1
        while peek() in ("plus", "minus"):
            if peek() == "minus":
                sign = -sign
            pos += 1
        if pos >= len(toks):
            raise ParseError("dangling sign")
        coef = Fraction(sign)
        mono: dict = {}
        while True:
            kind, val = toks[pos]
            if kind == "int":
                pos += 1
                num = Fraction(val)
                if peek() == "slash":
                    pos += 1
                    if peek() != "int":
                        raise ParseError("expected denominator")
                    num /= toks[pos][1]
                    pos += 1
                coef *= num
            elif kind == "name":
                pos += 1
                exp = 1
                if peek() == "pow":
                    pos += 1
                    esign = 1
                    if peek() == "minus":
                        esign = -1
                        pos += 1
                    if peek() != "int":
                        raise ParseError("expected exponent")
                    exp = esign * toks[pos][1]
                    pos += 1
                vid = var_id(val)
                mono[vid] = mono.get(vid, 0) + exp
            else:
                raise ParseError(f"unexpected token in term: {kind}")
            if peek() == "mul":
                pos += 1
                if pos >= len(toks):
                    raise ParseError("dangling *")
                continue
            break
        total = total + LaurentPoly.term(coef, Monomial(mono.items()))
    return total
