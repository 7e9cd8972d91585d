import io

import pytest

from twistknot.exceptions import ConfigValueError, GaussSyntaxError
from twistknot.jinja import filters
from twistknot.poly import S_SQUARED
from twistknot.render import render
from twistknot.utils import merge_dicts, read_code_argument


def test_poly_filter():
    terms = [{"s": 0, "t": 0, "coeff": 1}, {"s": 1, "t": 0, "coeff": -2}, {"s": 2, "t": 0, "coeff": 1}]
    assert filters.poly(terms) == str(S_SQUARED)
    assert filters.poly([]) == "0"


def test_sign_filter():
    assert filters.sign(1) == "+"
    assert filters.sign(-1) == "-"
    with pytest.raises(ValueError):
        filters.sign(0)


def test_bound_filter():
    assert filters.bound(None) == "?"
    assert filters.bound(3) == "3"


def test_render_bounds_as_text():
    document = {"J": 2, "barParity": "even", "arcshiftLower": 1, "forbiddenLower": 1}
    text = render("bounds", document, "text")
    assert text.splitlines()[0] == "J:                    2"
    assert "forbidden number  >=  1" in text


def test_render_unknown_format():
    with pytest.raises(ConfigValueError):
        render("bounds", {}, "xml")


def test_merge_dicts():
    assert merge_dicts({"a": {"b": 1, "c": 2}}, {"a": {"c": 3}}) == {"a": {"b": 1, "c": 3}}
    assert merge_dicts(None, {"a": 1}) == {"a": 1}


def test_read_code_argument():
    assert read_code_argument("O1+ U1+") == "O1+ U1+"
    assert read_code_argument("-", io.StringIO("* *\n")) == "* *\n"
    assert read_code_argument(' {"code": "O1+ U1+", "J": 0}') == "O1+ U1+"
    with pytest.raises(GaussSyntaxError):
        read_code_argument('{"code": 3}')
    with pytest.raises(GaussSyntaxError):
        read_code_argument("{not json")


def test_yesno_filter():
    assert filters.yesno(True) == "yes"
    assert filters.yesno(0, "exact", "open") == "open"


def bound_pair(lower, upper, exact, source):
    return {"lower": lower, "upper": upper, "exact": exact, "lowerSource": source, "trace": []}


def test_render_certificate_marks_exact_bounds():
    document = {
        "J": 2,
        "arcshift": bound_pair(1, 1, True, "ceil(|J|/2)"),
        "forbidden": bound_pair(1, None, False, "ceil(|J|/4)"),
        "regionArcshift": bound_pair(1, 2, False, "nontrivial"),
        "budget": {"nodes": 12, "exhausted": True},
    }
    lines = render("certify", document, "text").splitlines()
    assert f"{'arc shift':<17} 1 <= n <= 1  exact  (lower: ceil(|J|/2))" in lines
    assert f"{'forbidden':<17} 1 <= n <= ?  (lower: ceil(|J|/4))" in lines
    assert f"{'region arc shift':<17} 1 <= n <= 2  (lower: nontrivial)" in lines
    assert "nodes: 12 (node cap reached)" in lines


def test_render_search_without_exhausted_budget():
    document = {"status": "none", "trace": None, "budget": {"nodes": 3, "exhausted": False}}
    text = render("search", document, "text")
    assert text.splitlines()[0] == "status: none"
    assert text.splitlines()[-1] == "nodes:  3"
