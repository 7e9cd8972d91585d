"""Sparse integer polynomials in the two indeterminates ``s`` and ``t``."""
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import sympy

S, T = sympy.symbols("s t")

Monomial = Tuple[int, int]


class Poly2:
    """An integer polynomial in ``s`` and ``t`` stored as a map of exponent pairs to coefficients.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term maps are equal and the zero polynomial has no terms.
    """
    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Union[Mapping[Monomial, int], Iterable[Tuple[Monomial, int]]]] = None):
        collected: Dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for (deg_s, deg_t), coeff in items:
            assert deg_s >= 0 and deg_t >= 0, "negative exponents are not supported"
            key = (int(deg_s), int(deg_t))
            collected[key] = collected.get(key, 0) + int(coeff)
        self._terms = MappingProxyType({key: coeff for key, coeff in collected.items() if coeff})

    @classmethod
    def zero(cls) -> "Poly2":
        return cls()

    @classmethod
    def monomial(cls, deg_s: int, deg_t: int, coeff: int = 1) -> "Poly2":
        return cls({(deg_s, deg_t): coeff})

    @classmethod
    def binomial_product(cls, first: Monomial, second: Monomial) -> "Poly2":
        """Expand ``(s^a t^b - 1)(s^c t^d - 1)`` for ``first=(a, b)`` and ``second=(c, d)``."""
        (a, b), (c, d) = first, second
        return cls([((a + c, b + d), 1), ((a, b), -1), ((c, d), -1), ((0, 0), 1)])

    @classmethod
    def from_expr(cls, expr: Union[sympy.Expr, int]) -> "Poly2":
        """Build a polynomial from a sympy expression in ``s`` and ``t``.

        Raises:
            ValueError: If the expression has non-integer coefficients or other symbols.
        """
        poly = sympy.Poly(sympy.expand(sympy.sympify(expr)), S, T)
        terms = {}
        for (deg_s, deg_t), coeff in poly.as_dict().items():
            if not coeff.is_integer:
                raise ValueError(f"Coefficient {coeff} is not an integer")
            terms[(deg_s, deg_t)] = int(coeff)
        return cls(terms)

    def to_expr(self) -> sympy.Expr:
        return sympy.Add(*[coeff * S**deg_s * T**deg_t for (deg_s, deg_t), coeff in self.sorted_terms()])

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        return sorted(self._terms.items())

    def coefficient(self, deg_s: int, deg_t: int) -> int:
        return self._terms.get((deg_s, deg_t), 0)

    def max_degree_t(self) -> int:
        return max((deg_t for _, deg_t in self._terms), default=0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Poly2.monomial(0, 0, other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> "Poly2":
        return Poly2({key: -coeff for key, coeff in self._terms.items()})

    def __add__(self, other: Union["Poly2", int]) -> "Poly2":
        if isinstance(other, int):
            other = Poly2.monomial(0, 0, other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return Poly2(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __sub__(self, other: Union["Poly2", int]) -> "Poly2":
        if isinstance(other, int):
            other = Poly2.monomial(0, 0, other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "Poly2":
        return (-self) + other

    def __mul__(self, other: Union["Poly2", int]) -> "Poly2":
        if isinstance(other, int):
            return Poly2({key: coeff * other for key, coeff in self._terms.items()})
        if not isinstance(other, Poly2):
            return NotImplemented
        return Poly2([((s1 + s2, t1 + t2), c1 * c2)
                      for (s1, t1), c1 in self._terms.items()
                      for (s2, t2), c2 in other._terms.items()])

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Poly2({dict(self.sorted_terms())!r})"

    def __str__(self) -> str:
        return str(self.to_expr()) if self._terms else "0"


ST_SQUARED = Poly2.binomial_product((1, 1), (1, 1))
T_SQUARED = Poly2.binomial_product((0, 1), (0, 1))
S_SQUARED = Poly2.binomial_product((1, 0), (1, 0))
ST_S = Poly2.binomial_product((1, 1), (1, 0))
