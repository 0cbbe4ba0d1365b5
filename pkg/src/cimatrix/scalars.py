"""Scalar support shared by every other module.

Every algorithm in this package is generic over any value type that
supports ``+``, ``-``, ``*`` and ``==`` (a commutative ring).  Three
concrete scalar families are supported out of the box:

* exact rationals -- ``fractions.Fraction`` (arbitrary precision,
  normalized by construction: positive denominator, gcd 1),
* machine floats -- built-in ``float``, with non-finite values rejected
  at module boundaries,
* sparse multivariate polynomials -- :class:`cimatrix.multipoly.MultiPoly`,
  which plugs into the helpers below through its ``ring_zero``/``ring_one``
  hooks.

The helpers here (``one_like``, ``exact_div``, ...) are the whole ring
contract: algorithms never inspect concrete types beyond them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

# Exact rational scalar.  Fraction already maintains the invariants this
# package relies on (denominator > 0, fully reduced, int-backed).
Rational = Fraction

_INT_RE = re.compile(r"-?[0-9]+\Z")
_DECIMAL_RE = re.compile(r"-?[0-9]+\.[0-9]+\Z")


def rational_from_string(text: str) -> Fraction:
    """Parse the textual scalar grammar: integer, ``p/q`` fraction, or decimal.

    Both fraction parts may carry their own sign ("-2/-4" == 1/2); the result
    is always normalized.  Raises ValueError on malformed input or a zero
    denominator.
    """
    text = text.strip()
    if "/" in text:
        num_text, _, den_text = text.partition("/")
        if not _INT_RE.match(num_text.strip()) or not _INT_RE.match(den_text.strip()):
            raise ValueError(f"malformed rational {text!r}")
        den = int(den_text)
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num_text), den)
    if _INT_RE.match(text):
        return Fraction(int(text))
    if _DECIMAL_RE.match(text):
        return Fraction(text)
    raise ValueError(f"malformed scalar {text!r}")


def rational_to_string(value: Fraction) -> str:
    """Render a rational in the same grammar ``rational_from_string`` accepts."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def float_from_string(text: str) -> float:
    """Parse a float, rejecting NaN and infinities."""
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"malformed float {text!r}") from None
    return ensure_finite(value)


def float_to_string(value: float) -> str:
    """Canonical float rendering: shortest round-trip form, integers bare.

    Integral values render without a fractional part ("1", not "1.0") so
    that documents of any scalar kind show the all-ones matrix row the same
    way; parse(render(x)) == x holds for every finite float either way.
    """
    value = ensure_finite(float(value))
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def ensure_finite(value: float) -> float:
    """Boundary guard for the float domain: NaN/inf are errors, never data."""
    if not math.isfinite(value):
        raise ValueError(f"non-finite float {value!r}")
    return value


def is_exact(value) -> bool:
    """True for scalars whose arithmetic is exact (int, Fraction, polynomials)."""
    return not isinstance(value, float)


def zero_like(sample):
    """Additive identity in the ring of ``sample``."""
    hook = getattr(sample, "ring_zero", None)
    if hook is not None:
        return hook()
    if isinstance(sample, bool):
        raise TypeError("bool is not a ring scalar")
    if isinstance(sample, int):
        return 0
    if isinstance(sample, float):
        return 0.0
    if isinstance(sample, Fraction):
        return Fraction(0)
    raise TypeError(f"unsupported scalar type {type(sample).__name__}")


def one_like(sample):
    """Multiplicative identity in the ring of ``sample``."""
    hook = getattr(sample, "ring_one", None)
    if hook is not None:
        return hook()
    if isinstance(sample, bool):
        raise TypeError("bool is not a ring scalar")
    if isinstance(sample, int):
        return 1
    if isinstance(sample, float):
        return 1.0
    if isinstance(sample, Fraction):
        return Fraction(1)
    raise TypeError(f"unsupported scalar type {type(sample).__name__}")


def abs_value(value):
    """Absolute value for scalars with an ordering (int, Fraction, float).

    Raises TypeError for scalars without one (polynomials), which callers
    use to fall back to exact zero-testing.
    """
    if isinstance(value, (int, float, Fraction)) and not isinstance(value, bool):
        return abs(value)
    raise TypeError(f"{type(value).__name__} has no absolute-value ordering")


def exact_div(a, b):
    """Exact division a / b for scalars that support it (int, Fraction).

    This is the primitive fraction-free elimination relies on: the quotient
    must be representable in the same ring, and a nonzero remainder is a bug
    in the caller, not a rounding concern.
    """
    if isinstance(b, (int, Fraction)) and b == 0:
        raise ZeroDivisionError("exact division by zero")
    if isinstance(a, int) and isinstance(b, int):
        quotient, remainder = divmod(a, b)
        if remainder != 0:
            raise ArithmeticError(f"inexact integer division {a} / {b}")
        return quotient
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / Fraction(b)
    raise TypeError(
        f"exact division is not defined for {type(a).__name__} / {type(b).__name__}"
    )


@dataclass
class AxiomReport:
    """Outcome of the randomized ring-axiom check."""

    samples_checked: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def ring_axiom_suite(samples: Sequence) -> AxiomReport:
    """Check commutativity, associativity, distributivity and the identities
    on every triple drawn from ``samples``.

    Violations are collected, not raised; equality is the scalar's own ``==``
    (so for floats this is only meaningful on samples whose sums and products
    are exactly representable).
    """
    samples = list(samples)
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    report = AxiomReport(samples_checked=len(samples))
    zero = zero_like(samples[0])
    one = one_like(samples[0])
    for a in samples:
        if not (a + zero == a and a * one == a):
            report.failures.append(f"identity laws fail at {a!r}")
        if not (a + (-a) == zero):
            report.failures.append(f"additive inverse fails at {a!r}")
    for a, b in product(samples, repeat=2):
        if not (a + b == b + a):
            report.failures.append(f"addition not commutative at ({a!r}, {b!r})")
        if not (a * b == b * a):
            report.failures.append(f"multiplication not commutative at ({a!r}, {b!r})")
    for a, b, c in product(samples, repeat=3):
        if not ((a + b) + c == a + (b + c)):
            report.failures.append(f"addition not associative at ({a!r}, {b!r}, {c!r})")
        if not ((a * b) * c == a * (b * c)):
            report.failures.append(f"multiplication not associative at ({a!r}, {b!r}, {c!r})")
        if not (a * (b + c) == a * b + a * c):
            report.failures.append(f"distributivity fails at ({a!r}, {b!r}, {c!r})")
    return report
