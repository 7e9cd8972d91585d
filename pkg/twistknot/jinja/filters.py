""" Custom Jinja2 filters """
from typing import Iterable, Mapping, Union

from twistknot.poly import Poly2


def poly(value: Union[Poly2, Iterable[Mapping[str, int]]]) -> str:
    """Render a polynomial, given as ``Poly2`` or as a list of ``{s, t, coeff}`` terms"""
    if not isinstance(value, Poly2):
        value = Poly2([((term["s"], term["t"]), term["coeff"]) for term in value])
    return str(value)


def sign(value: int) -> str:
    """Render a crossing sign as '+' or '-'"""
    if value not in (1, -1):
        raise ValueError(f"'{value}' is not a crossing sign")
    return "+" if value > 0 else "-"


def yesno(value: object, yes: str = "yes", no: str = "no") -> str:
    return yes if value else no


def bound(value: object) -> str:
    """Render a possibly unknown bound"""
    return "?" if value is None else str(value)


# register the filters
JINJA_FILTERS = {
    "poly": poly,
    "sign": sign,
    "yesno": yesno,
    "bound": bound,
}
