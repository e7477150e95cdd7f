import pytest

from dsdim.coeffs import SYMBOLIC
from dsdim.sysfile import ParseError, parse_points_text, parse_system_text

EX511 = """derivations 1
partition 1
automorphisms 1
poly 1/1 d 0 s 1 y ; -1/1 d 1 s 0 y ; sym a d 0 s 0 one
"""


def test_parse_minimal_header():
    system = parse_system_text(EX511)
    assert system.indeterminates == ["y"]
    assert system.model is SYMBOLIC
    (A,) = system.polys
    assert len(A.terms) == 2 and not A.model.is_zero(A.constant)


def test_partition_mismatch():
    with pytest.raises(ParseError, match="line 2"):
        parse_system_text("derivations 1\npartition 1 1\n")


def test_override():
    text = "derivations 3\npartition 1 1 1\nindeterminates y\npoly 1 d 1 0 0 s y\n"
    assert parse_system_text(text, [3]).partition.block_sizes == (3,)
    with pytest.raises(ParseError, match="override"):
        parse_system_text(text, [1, 1])


def test_empty_system():
    system = parse_system_text("derivations 1\npartition 1\nindeterminates y z\n")
    assert system.polys == [] and len(system.indeterminates) == 2


@pytest.mark.parametrize("body, msg", [
    ("poly 1 d 0 s 1 w", "unknown indeterminate"),
    ("poly 1/0 d 0 s 1 y", "zero denominator"),
    ("poly x/2 d 0 s 1 y", "malformed rational"),
    ("poly 1 d 0 s y", "automorphism exponents"),
    ("poly 1 d -1 s 0 y", "natural"),
    ("poly 1 d 0 s 1 y ; ", "empty monomial"),
    ("rel 1 d 0 s 1 y", "'rel' line"),
    ("frobnicate 3", "unknown keyword"),
])
def test_errors_carry_line_numbers(body, msg):
    text = "derivations 1\npartition 1\nautomorphisms 1\nindeterminates y\n" + body + "\n"
    with pytest.raises(ParseError) as err:
        parse_system_text(text)
    assert "line 5" in str(err.value) and msg in str(err.value)


def test_symbol_in_rational_system():
    text = "derivations 1\npartition 1\ncoefficients rational\npoly sym a d 0 s y\n"
    with pytest.raises(ParseError, match="symbolic coefficient"):
        parse_system_text(text)


def test_module_file():
    text = ("derivations 1\npartition 1\nautomorphisms 1\nmodule e\n"
            "rel 1 d 0 s 1 e ; -1 d 1 s 0 e\n")
    system = parse_system_text(text)
    assert system.is_module and system.indeterminates == ["e"]
    with pytest.raises(ParseError, match="constant part"):
        parse_system_text(text + "rel 1 d 0 s 0 one\n")


def test_points():
    assert parse_points_text("# c\n1 2\n\n3 4 # tail\n") == [(1, 2), (3, 4)]
    with pytest.raises(ParseError, match="line 2"):
        parse_points_text("1 2\n1 2 3\n")
