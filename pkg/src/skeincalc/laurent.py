"""Exact arithmetic in the ring of integer Laurent polynomials in q.

Every computation in this package happens over this ring: finite sums of
c * q^e with integer coefficient c and integer exponent e, negative powers
allowed.  The positive cone -- elements with no negative coefficient -- is
closed under addition and multiplication and meets its own negative only
in 0; all positivity bookkeeping downstream reduces to `is_positive`
checks here.
"""

from __future__ import annotations

from typing import Mapping


class LaurentPoly:
    """An element of Z[q, q^-1], stored sparsely as {exponent: coefficient}.

    Values are immutable by convention; zero coefficients are never stored,
    so equality and hashing are structural.  Coefficients are Python ints,
    hence arbitrary precision.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | int | None = None):
        if terms is None:
            object.__setattr__(self, "_terms", {})
        elif isinstance(terms, int):
            object.__setattr__(self, "_terms", {0: terms} if terms else {})
        else:
            object.__setattr__(
                self, "_terms", {int(e): int(c) for e, c in terms.items() if c}
            )

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- accessors ---------------------------------------------------------

    def terms(self) -> dict[int, int]:
        """A fresh {exponent: coefficient} dict."""
        return dict(self._terms)

    def items(self) -> tuple[tuple[int, int], ...]:
        """Terms sorted by ascending exponent."""
        return tuple(sorted(self._terms.items()))

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring structure ----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly(other)
        return None

    def __add__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are only defined for units; use shifted()")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiplication by the unit q^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    # -- the positive cone and the q=1 specialization ------------------------

    def is_positive(self) -> bool:
        """True iff every coefficient is nonnegative; 0 counts as positive."""
        return all(c > 0 for c in self._terms.values())

    def eval_q1(self) -> int:
        """Specialize q = 1: the sum of all coefficients."""
        return sum(self._terms.values())

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __reduce__(self):
        return (LaurentPoly, (self._terms,))

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict[str, int]:
        """JSON object mapping exponent strings to integer coefficients."""
        return {str(e): c for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data.items()})

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in sorted(self._terms.items()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "q" if e == 1 else f"q^{e}"
                body = power if mag == 1 else f"{mag}{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
Q = LaurentPoly({1: 1})


def q_power(e: int) -> LaurentPoly:
    """The unit q^e."""
    return LaurentPoly({e: 1})
