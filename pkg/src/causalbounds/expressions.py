"""Affine expressions in observable parameters, with canonical form and rendering."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_PARAM_RE = re.compile(r"^p([0-9.]*)(?:_([0-9.]+))?$")


def parameter_sort_key(name: str):
    """Order parameters the way the bound output lists them: by right-side
    configuration with the first variable fastest, then by left-side
    configuration.  Names that are not p-parameters sort after, alphabetically.
    """
    m = _PARAM_RE.match(name)
    if m is None:
        return (1, (), (), name)
    def digits(chunk: str | None) -> tuple[int, ...]:
        if not chunk:
            return ()
        if "." in chunk:
            return tuple(int(d) for d in chunk.split("."))
        return tuple(int(d) for d in chunk)
    right = digits(m.group(1))
    left = digits(m.group(2))
    return (0, tuple(reversed(right)), tuple(reversed(left)), name)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LinearExpression:
    """constant + sum of coefficient * parameter, exact rationals throughout.

    ``coefficients`` holds no zero entries and is sorted by parameter order,
    so structurally equal expressions compare and hash equal.
    """

    constant: Fraction = Fraction(0)
    coefficients: tuple[tuple[str, Fraction], ...] = ()

    def coefficient(self, name: str) -> Fraction:
        for n, c in self.coefficients:
            if n == name:
                return c
        return Fraction(0)

    def parameter_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.coefficients)

    def evaluate(self, values) -> Fraction | float:
        total = self.constant
        for name, coeff in self.coefficients:
            total = total + coeff * values[name]
        return total


def make_expression(constant, coefficients) -> LinearExpression:
    """Build a canonical expression from any constant/coefficient mapping."""
    merged: dict[str, Fraction] = {}
    items = coefficients.items() if isinstance(coefficients, dict) else coefficients
    for name, coeff in items:
        merged[name] = merged.get(name, Fraction(0)) + Fraction(coeff)
    cleaned = tuple(
        (name, coeff)
        for name, coeff in sorted(merged.items(), key=lambda kv: parameter_sort_key(kv[0]))
        if coeff != 0
    )
    return LinearExpression(constant=Fraction(constant), coefficients=cleaned)


def canonicalize_expression(e: LinearExpression) -> LinearExpression:
    """Merge duplicate parameters, drop zeros, order deterministically."""
    return make_expression(e.constant, e.coefficients)


def _term_text(coeff: Fraction, symbol: str) -> str:
    mag = abs(coeff)
    if mag == 1:
        return symbol
    if mag.denominator == 1:
        return f"{mag.numerator}{symbol}"
    return f"({mag.numerator}/{mag.denominator}){symbol}"


def render_expression(e: LinearExpression, substitutions: dict[str, str] | None = None) -> str:
    """Text form like ``1 - p10_1 - p01_0`` or, with interpretation
    substitutions, ``1 - P(X = 1, Y = 0 | Z = 1) - ...``."""
    parts: list[str] = []
    if e.constant != 0 or not e.coefficients:
        parts.append(format_fraction(e.constant))
    for name, coeff in e.coefficients:
        symbol = substitutions[name] if substitutions else name
        term = _term_text(coeff, symbol)
        if not parts:
            parts.append(term if coeff > 0 else f"-{term}")
        else:
            parts.append(("+ " if coeff > 0 else "- ") + term)
    return " ".join(parts)


def expression_payload(e: LinearExpression) -> dict:
    return {
        "constant": format_fraction(e.constant),
        "coefficients": {name: format_fraction(c) for name, c in e.coefficients},
    }
