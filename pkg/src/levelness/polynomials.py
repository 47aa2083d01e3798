"""Exact polynomial rings over the rationals: term orders, gradings and text I/O.

Polynomials are sympy ``PolyElement`` values over ``QQ``; a ``Ring`` pairs the
sympy ring with the Z-grading weights and the optional Z^d grading matrix.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Literal

from sympy import Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ
from sympy.polys.orderings import MonomialOrder
from sympy.polys.rings import PolyElement, PolyRing

from .errors import InputError

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]

OrderKind = Literal["degrevlex", "lex", "elimination"]

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)
_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>[-+*/^()]))")


# ============================================================================
# Term orders
# ============================================================================


class TermOrder(MonomialOrder):
    """A monomial order given by a flat integer sort key.

    ``degrevlex`` is weighted reverse lexicographic, ``lex`` is pure lexicographic
    and ``elimination`` compares the first ``block`` variables by degrevlex before
    looking at the rest, so any monomial involving the block beats every monomial
    free of it.
    """

    is_global = True

    def __init__(
        self,
        kind: OrderKind = "degrevlex",
        weights: tuple[int, ...] | None = None,
        block: int = 0,
    ):
        if kind not in ("degrevlex", "lex", "elimination"):
            raise InputError(f"Unknown term order: {kind!r}")
        if weights is not None and any(w <= 0 for w in weights):
            raise InputError("Term order weights must be positive")
        if kind == "elimination" and block < 0:
            raise InputError("Elimination block size must be nonnegative")
        self.kind = kind
        self.weights = tuple(weights) if weights is not None else None
        self.block = block if kind == "elimination" else 0

    @property
    def alias(self) -> str:
        return self.kind

    def _wdeg(self, m: Monomial, start: int, stop: int) -> int:
        if self.weights is None:
            return sum(m[start:stop])
        return sum(w * e for w, e in zip(self.weights[start:stop], m[start:stop]))

    def key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key: a larger key means a larger monomial."""
        if self.kind == "lex":
            return tuple(m)
        if self.kind == "degrevlex":
            return (self._wdeg(m, 0, len(m)),) + tuple(-e for e in reversed(m))
        b = self.block
        head = (self._wdeg(m, 0, b),) + tuple(-e for e in reversed(m[:b]))
        tail = (self._wdeg(m, b, len(m)),) + tuple(-e for e in reversed(m[b:]))
        return head + tail

    __call__ = key

    def __repr__(self) -> str:
        return f"TermOrder({self.kind!r}, weights={self.weights}, block={self.block})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TermOrder)
            and (self.kind, self.weights, self.block)
            == (other.kind, other.weights, other.block)
        )

    def __hash__(self) -> int:
        return hash((TermOrder, self.kind, self.weights, self.block))


def compare_monomials(a: Monomial, b: Monomial, order: TermOrder) -> int:
    """Return 1, 0 or -1 as `a` is greater than, equal to or less than `b`."""
    if len(a) != len(b):
        raise InputError(f"Exponent vectors differ in length: {len(a)} vs {len(b)}")
    check_exponents(a)
    check_exponents(b)
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def check_exponents(m: Monomial) -> None:
    if any(e < 0 for e in m):
        raise InputError(f"Negative exponent in {m}")


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


# ============================================================================
# Rings
# ============================================================================


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over QQ with a term order and gradings.

    ``grading`` is the d x n matrix whose columns are the multidegrees of the
    variables; it is None for rings that only carry the Z-grading.
    """

    names: tuple[str, ...]
    weights: tuple[int, ...] = ()
    order: TermOrder = field(default_factory=TermOrder)
    grading: tuple[tuple[int, ...], ...] | None = None
    poly_ring: PolyRing = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        if not names:
            raise InputError("A ring needs at least one variable")
        if len(set(names)) != len(names):
            raise InputError(f"Duplicate variable names: {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise InputError(f"Invalid variable name: {name!r}")
        weights = tuple(self.weights) if self.weights else (1,) * len(names)
        if len(weights) != len(names):
            raise InputError(
                f"Got {len(weights)} weights for {len(names)} variables"
            )
        if any(w <= 0 for w in weights):
            raise InputError("Grading weights must be positive integers")
        if self.grading is not None:
            grading = tuple(tuple(int(x) for x in row) for row in self.grading)
            if any(len(row) != len(names) for row in grading):
                raise InputError("Grading matrix must have one column per variable")
            object.__setattr__(self, "grading", grading)
        if (
            self.order.kind == "degrevlex"
            and self.order.weights is None
            and any(w != 1 for w in weights)
        ):
            object.__setattr__(self, "order", TermOrder("degrevlex", weights))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "poly_ring", PolyRing(names, QQ, self.order))

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def is_standard_graded(self) -> bool:
        return all(w == 1 for w in self.weights)

    @property
    def gens(self) -> tuple[PolyElement, ...]:
        return tuple(self.poly_ring.gens[: self.ngens])

    @property
    def zero(self) -> PolyElement:
        return self.poly_ring.zero

    @property
    def one(self) -> PolyElement:
        return self.poly_ring.one

    def with_order(self, order: TermOrder) -> "Ring":
        return Ring(self.names, self.weights, order, self.grading)

    def monomial(self, m: Monomial, coeff=1) -> PolyElement:
        check_exponents(m)
        return self.poly_ring({tuple(m): QQ.convert(coeff)})

    def degree(self, m: Monomial) -> int:
        """Weighted Z-degree of a monomial."""
        return sum(w * e for w, e in zip(self.weights, m))

    def multidegree(self, m: Monomial) -> tuple[int, ...]:
        if self.grading is None:
            raise InputError("Ring carries no multigrading")
        return multidegree(m, self.grading)

    def leading_monomial(self, f: PolyElement) -> Monomial:
        if not f:
            raise InputError("The zero polynomial has no leading monomial")
        return max(f.keys(), key=self.order.key)

    def is_homogeneous(self, f: PolyElement) -> bool:
        return len({self.degree(m) for m in f.keys()}) <= 1

    def is_multihomogeneous(self, f: PolyElement) -> bool:
        if self.grading is None:
            return self.is_homogeneous(f)
        return len({self.multidegree(m) for m in f.keys()}) <= 1

    def poly_degree(self, f: PolyElement) -> int:
        """Z-degree of a nonzero homogeneous polynomial (max over its terms)."""
        return max(self.degree(m) for m in f.keys())

    def convert(self, f: PolyElement) -> PolyElement:
        """Move `f` into this ring, matching variables by name."""
        if f.ring == self.poly_ring:
            return f
        used = {
            str(s)
            for i, s in enumerate(f.ring.symbols)
            if any(m[i] for m in f.keys())
        }
        missing = used - set(self.names)
        if missing:
            raise InputError(f"Variables {sorted(missing)} are not in the ring")
        return f.set_ring(self.poly_ring)

    def parse(self, text: str) -> PolyElement:
        return parse_polynomial(text, self)

    def format(self, f: PolyElement) -> str:
        return format_polynomial(f, self)


def multidegree(m: Monomial, grading) -> tuple[int, ...]:
    """A * m for the grading matrix A (given by rows)."""
    rows = [tuple(row) for row in grading]
    if any(len(row) != len(m) for row in rows):
        raise InputError(
            f"Grading matrix has {len(rows[0]) if rows else 0} columns, "
            f"monomial has {len(m)} entries"
        )
    check_exponents(m)
    return tuple(sum(a * e for a, e in zip(row, m)) for row in rows)


def poly_arith(f: PolyElement, g: PolyElement, op: Literal["add", "sub", "mul"]):
    """Exact ring arithmetic on two polynomials of the same ambient ring."""
    if f.ring != g.ring:
        raise InputError("Polynomials live in different rings")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise InputError(f"Unknown operation: {op!r}")


# ============================================================================
# Text grammar
# ============================================================================


def parse_polynomial(text: str, ring: Ring) -> PolyElement:
    """Parse `text` into a polynomial of `ring`.

    Accepts identifiers naming ring variables, integer literals, `^` or `**`
    powers, explicit or implicit `*`, `+`, `-`, parentheses and `p/q` fractions.
    """
    if not isinstance(text, str) or not text.strip():
        raise InputError("Empty polynomial")
    pos = 0
    stripped = text.rstrip()
    names = set(ring.names)
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if match is None or match.end() == pos:
            raise InputError(
                f"Unexpected character {stripped[pos:].lstrip()[:1]!r} at column "
                f"{pos + 1} in {text!r}"
            )
        name = match.group("name")
        if name is not None and name not in names:
            raise InputError(f"Unknown variable {name!r} at column {match.start('name') + 1}")
        pos = match.end()

    local = {name: Symbol(name) for name in ring.names}
    try:
        expr = parse_expr(
            text, local_dict=local, transformations=_TRANSFORMATIONS, evaluate=True
        )
        return ring.poly_ring.from_expr(expr)
    except (SyntaxError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"Could not parse polynomial {text!r}: {e}") from e


def _format_coeff(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(f: PolyElement, ring: Ring) -> str:
    """Render `f` with terms in descending order, using `^` for powers."""
    if not f:
        return "0"
    parts: list[str] = []
    for m, c in sorted(f.items(), key=lambda t: ring.order.key(t[0]), reverse=True):
        c = QQ.convert(c)
        factors = []
        for name, e in zip(ring.names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def standard_ring(
    n: int,
    prefix: str = "x",
    order: TermOrder | None = None,
    grading=None,
) -> Ring:
    """Ring on variables prefix1..prefixn."""
    return Ring(
        tuple(f"{prefix}{i}" for i in range(1, n + 1)),
        order=order or TermOrder(),
        grading=grading,
    )


@dataclass(frozen=True)
class Ideal:
    """Generators of an ideal together with their ambient ring."""

    ring: Ring
    generators: tuple[PolyElement, ...]

    def __post_init__(self):
        gens = tuple(self.ring.convert(g) for g in self.generators)
        object.__setattr__(self, "generators", tuple(g for g in gens if g))

    @classmethod
    def parse(cls, ring: Ring, texts) -> "Ideal":
        return cls(ring, tuple(ring.parse(t) for t in texts))

    @property
    def is_homogeneous(self) -> bool:
        return all(self.ring.is_homogeneous(g) for g in self.generators)

    @property
    def is_multigraded(self) -> bool:
        return self.ring.grading is not None and all(
            self.ring.is_multihomogeneous(g) for g in self.generators
        )

    def in_square_of_maximal_ideal(self) -> bool:
        return all(
            sum(m) >= 2 for g in self.generators for m in g.keys()
        )

    def formatted(self) -> list[str]:
        return [self.ring.format(g) for g in self.generators]
