"""Exact Laurent polynomials in a single named variable."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = Union[int, Fraction]


def _norm_exp(e) -> Exponent:
    if isinstance(e, Fraction):
        return int(e) if e.denominator == 1 else e
    return int(e)


class LaurentPoly:
    """A Laurent polynomial ``sum c_k * var**k`` with integer coefficients.

    Exponents are integers, or :class:`~fractions.Fraction` when a
    substitution produces half-integer powers (Jones polynomials of links).
    Zero coefficients are never stored. Arithmetic between polynomials in
    different variables raises ``ValueError``.
    """

    __slots__ = ("var", "_terms")

    def __init__(self, terms: Mapping[Exponent, int] | None = None, var: str = "A"):
        self.var = var
        clean: dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                c = int(c)
                if c:
                    e = _norm_exp(e)
                    clean[e] = clean.get(e, 0) + c
                    if clean[e] == 0:
                        del clean[e]
        self._terms = clean

    @classmethod
    def monomial(cls, coeff: int, exp: Exponent, var: str = "A") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def one(cls, var: str = "A") -> "LaurentPoly":
        return cls({0: 1}, var)

    @classmethod
    def zero(cls, var: str = "A") -> "LaurentPoly":
        return cls({}, var)

    # -- container protocol -------------------------------------------------
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, int]]:
        """Sorted ``(exponent, coefficient)`` pairs."""
        return sorted(self._terms.items())

    def __getitem__(self, exp: Exponent) -> int:
        return self._terms.get(_norm_exp(exp), 0)

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.var == other.var and self._terms == other._terms

    def __hash__(self):
        return hash((self.var, frozenset(self._terms.items())))

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other._terms and self._terms:
                raise ValueError(f"cannot mix variables {self.var!r} and {other.var!r}")
            return other
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var if self._terms else other.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _norm_exp(e1 + e2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.var if self._terms else other.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials can be inverted")
            return LaurentPoly({-e * (-n): c ** (-n)}, self.var)
        result = LaurentPoly.one(self.var)
        for _ in range(n):
            result = result * self
        return result

    # -- substitutions ------------------------------------------------------
    def substitute(self, scale: Exponent, var: str) -> "LaurentPoly":
        """Return the polynomial in ``var`` where ``self.var = var**scale``."""
        return LaurentPoly({_norm_exp(Fraction(e) * Fraction(scale)): c
                            for e, c in self._terms.items()}, var)

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def span(self) -> Exponent:
        if not self._terms:
            return 0
        return max(self._terms) - min(self._terms)

    # -- display ------------------------------------------------------------
    def to_pairs(self) -> list[list]:
        """JSON-friendly sorted ``[exponent, coefficient]`` pairs."""
        return [[str(e) if isinstance(e, Fraction) else e, c] for e, c in self.items()]

    @classmethod
    def from_pairs(cls, pairs: Iterable, var: str = "A") -> "LaurentPoly":
        return cls({Fraction(e) if isinstance(e, str) else e: c for e, c in pairs}, var)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                coeff = "" if mag == 1 else str(mag)
                power = "" if e == 1 else "^" + str(e)
                body = f"{coeff}{self.var}{power}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.items()!r}, var={self.var!r})"
