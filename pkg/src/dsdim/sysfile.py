"""Readers for system, module and point-set files.

Missing ``automorphisms`` means 0, missing ``indeterminates`` means a single
``y``, and missing ``coefficients`` means symbolic exactly when a ``sym``
coefficient occurs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .coeffs import model_by_name, token
from .lambda_monoid import LambdaMonomial, Partition, Term
from .linpoly import LinearDSPolynomial

__all__ = ["ParseError", "System", "parse_system", "parse_system_text", "parse_points",
           "parse_points_text"]

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_SYM = re.compile(r"(^|[\s;])[-+]?sym\s")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class ParseError(ValueError):
    def __init__(self, lineno: Optional[int], msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


@dataclass
class System:
    partition: Partition
    indeterminates: List[str]
    model_name: str
    polys: List[LinearDSPolynomial] = field(default_factory=list)
    is_module: bool = False

    @property
    def model(self):
        return model_by_name(self.model_name)


def _ints(words: Sequence[str], lineno: int, what: str) -> List[int]:
    try:
        return [int(w) for w in words]
    except ValueError:
        raise ParseError(lineno, f"{what} must be integers, got {' '.join(words)!r}") from None


def _coefficient(words: List[str], pos: int, lineno: int, model, partition):
    w = words[pos]
    if w in ("sym", "-sym", "+sym"):
        if model.name != "symbolic":
            raise ParseError(lineno, "symbolic coefficient in a rational system")
        if pos + 1 >= len(words) or not _NAME.match(words[pos + 1]):
            raise ParseError(lineno, "expected a symbol name after 'sym'")
        sym = token(words[pos + 1], LambdaMonomial.identity(partition.m, partition.n))
        return (-sym if w == "-sym" else sym), pos + 2
    if not _RATIONAL.match(w):
        raise ParseError(lineno, f"malformed rational {w!r}")
    if "/" in w and int(w.split("/")[1]) == 0:
        raise ParseError(lineno, f"zero denominator in {w!r}")
    return Fraction(w), pos + 1


def _monomial(chunk: str, lineno: int, partition: Partition, names: List[str], model,
              allow_one: bool):
    words = chunk.split()
    if not words:
        raise ParseError(lineno, "empty monomial")
    m, n = partition.m, partition.n
    coeff, pos = _coefficient(words, 0, lineno, model, partition)
    if pos >= len(words) or words[pos] != "d":
        raise ParseError(lineno, "expected 'd' after the coefficient")
    delta = _ints(words[pos + 1:pos + 1 + m], lineno, "derivation exponents")
    pos += 1 + m
    if len(delta) != m or any(k < 0 for k in delta):
        raise ParseError(lineno, f"expected {m} natural derivation exponents")
    if pos >= len(words) or words[pos] != "s":
        raise ParseError(lineno, "expected 's' after the derivation exponents")
    sigma = _ints(words[pos + 1:pos + 1 + n], lineno, "automorphism exponents")
    pos += 1 + n
    if len(sigma) != n:
        raise ParseError(lineno, f"expected {n} automorphism exponents")
    if pos != len(words) - 1:
        raise ParseError(lineno, "expected exactly one indeterminate name at the end")
    target = words[pos]
    lam = LambdaMonomial(tuple(delta), tuple(sigma))
    if target == "one":
        if not allow_one:
            raise ParseError(lineno, "module relations have no constant part")
        if not lam.is_identity():
            raise ParseError(lineno, "the constant part takes d 0.. s 0..")
        return None, coeff
    if target not in names:
        raise ParseError(lineno, f"unknown indeterminate {target!r}")
    return Term(lam, names.index(target)), coeff


def parse_system_text(text: str, partition_override: Sequence[int] = None) -> System:
    header = {}
    bodies: List[Tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in ("poly", "rel"):
            bodies.append((lineno, key, rest))
        elif key in ("derivations", "partition", "automorphisms", "indeterminates",
                     "module", "coefficients"):
            if key in header:
                raise ParseError(lineno, f"duplicate {key!r} line")
            header[key] = (lineno, rest.split())
        else:
            raise ParseError(lineno, f"unknown keyword {key!r}")

    def need(key):
        if key not in header:
            raise ParseError(None, f"missing {key!r} line")
        return header[key]

    ln, words = need("derivations")
    if len(words) != 1:
        raise ParseError(ln, "derivations takes one integer")
    m = _ints(words, ln, "derivations")[0]
    ln_p, words = need("partition")
    blocks = _ints(words, ln_p, "partition")
    if partition_override is not None:
        override = [int(b) for b in partition_override]
        if sum(override) != sum(blocks):
            raise ParseError(ln_p, f"partition override {override} does not match "
                                   f"{sum(blocks)} derivations in the file")
        blocks = override
    if not blocks or any(b <= 0 for b in blocks):
        raise ParseError(ln_p, "partition needs positive block sizes")
    if sum(blocks) != m:
        raise ParseError(ln_p, f"partition sums to {sum(blocks)} but derivations is {m}")
    ln, words = header.get("automorphisms", (None, ["0"]))
    if len(words) != 1:
        raise ParseError(ln, "automorphisms takes one integer")
    n = _ints(words, ln, "automorphisms")[0]
    if n < 0:
        raise ParseError(ln, "automorphisms must be >= 0")
    partition = Partition(tuple(blocks), n)

    is_module = "module" in header
    if is_module and "indeterminates" in header:
        raise ParseError(header["module"][0], "a file is either a system or a module")
    if is_module:
        ln, names = header["module"]
    else:
        ln, names = header.get("indeterminates", (None, ["y"]))
    if not names:
        raise ParseError(ln, "no generators declared")
    for nm in names:
        if not _NAME.match(nm) or nm == "one":
            raise ParseError(ln, f"invalid name {nm!r}")
    if len(set(names)) != len(names):
        raise ParseError(ln, "repeated name")
    uses_sym = any(_SYM.search(rest) for _, _, rest in bodies)
    ln, words = header.get("coefficients", (None, ["symbolic" if uses_sym else "rational"]))
    if len(words) != 1 or words[0] not in ("rational", "symbolic"):
        raise ParseError(ln, "coefficients must be 'rational' or 'symbolic'")
    model = model_by_name(words[0])

    polys = []
    for lineno, key, rest in bodies:
        if (key == "rel") != is_module:
            raise ParseError(lineno, f"{key!r} line in a {'module' if is_module else 'system'}"
                                     " file")
        terms = {}
        constant = model.zero()
        for chunk in rest.split(";") if rest else []:
            if not chunk.strip():
                raise ParseError(lineno, "empty monomial")
            u, c = _monomial(chunk, lineno, partition, names, model, allow_one=not is_module)
            if u is None:
                constant = model.add(constant, model.convert(c))
            else:
                terms[u] = model.add(terms[u], model.convert(c)) if u in terms else model.convert(c)
        P = LinearDSPolynomial(terms, constant, partition=partition, model=model)
        if P.is_zero():
            raise ParseError(lineno, "zero polynomial")
        polys.append(P)
    return System(partition, list(names), model.name, polys, is_module)


def parse_system(path: str, partition_override: Sequence[int] = None) -> System:
    with open(path, encoding="utf-8") as fh:
        return parse_system_text(fh.read(), partition_override)


def parse_points_text(text: str) -> List[Tuple[int, ...]]:
    points = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        pt = tuple(_ints(line.replace(",", " ").split(), lineno, "coordinates"))
        if width is None:
            width = len(pt)
        elif len(pt) != width:
            raise ParseError(lineno, f"expected {width} coordinates, got {len(pt)}")
        points.append(pt)
    return points


def parse_points(path: str) -> List[Tuple[int, ...]]:
    with open(path, encoding="utf-8") as fh:
        return parse_points_text(fh.read())
