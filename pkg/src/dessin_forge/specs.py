"""Declarative group descriptions and their text grammar.

Grammar (case-insensitive)::

    family:i,p=3,a=2,b=1     family:ii,a=3,b=1     family:iii,a=4
    cyclic:12                quaternion            metacyclic64
    abelsq:p=5,a=1           product:(<spec>)x(<spec>)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from sympy import isprime

from .errors import InvalidParameters, SpecParseError

FAMILIES = ("i", "ii", "iii")


@dataclass(frozen=True)
class Family:
    family: str
    p: int
    a: int
    b: int = 0

    def __post_init__(self):
        check_family(self.family, self.p, self.a, self.b)

    def __str__(self) -> str:
        if self.family == "i":
            return f"family:i,p={self.p},a={self.a},b={self.b}"
        if self.family == "ii":
            return f"family:ii,a={self.a},b={self.b}"
        return f"family:iii,a={self.a}"


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameters(f"cyclic order must be positive, got {self.n}")

    def __str__(self) -> str:
        return f"cyclic:{self.n}"


@dataclass(frozen=True)
class Quaternion:
    def __str__(self) -> str:
        return "quaternion"


@dataclass(frozen=True)
class Metacyclic64:
    def __str__(self) -> str:
        return "metacyclic64"


@dataclass(frozen=True)
class AbelianSquare:
    """C_{p^a} x C_{p^a}."""

    p: int
    a: int

    def __post_init__(self):
        if not isprime(self.p):
            raise InvalidParameters(f"p must be prime, got {self.p}")
        if self.a < 0:
            raise InvalidParameters(f"a must be nonnegative, got {self.a}")

    def __str__(self) -> str:
        return f"abelsq:p={self.p},a={self.a}"


@dataclass(frozen=True)
class DirectProduct:
    left: "GroupSpec"
    right: "GroupSpec"

    def __str__(self) -> str:
        return f"product:({self.left})x({self.right})"


GroupSpec = Union[Family, Cyclic, Quaternion, Metacyclic64, AbelianSquare, DirectProduct]


def check_family(family: str, p: int, a: int, b: int) -> None:
    """Raise InvalidParameters unless (family, p, a, b) is admissible."""
    if family not in FAMILIES:
        raise InvalidParameters(f"unknown family {family!r}")
    if not isprime(p):
        raise InvalidParameters(f"p must be prime, got {p}")
    if family == "i":
        if p == 2:
            raise InvalidParameters("family i needs an odd prime")
        if not 1 <= b <= a:
            raise InvalidParameters(f"family i needs 1 <= b <= a, got a={a}, b={b}")
    elif family == "ii":
        if p != 2:
            raise InvalidParameters("family ii needs p = 2")
        if not 1 <= b <= a - 1:
            raise InvalidParameters(f"family ii needs 1 <= b <= a-1, got a={a}, b={b}")
    else:
        if p != 2:
            raise InvalidParameters("family iii needs p = 2")
        if a < 2:
            raise InvalidParameters(f"family iii needs a >= 2, got a={a}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.low = text.lower()
        self.pos = 0

    def fail(self, message: str, pos: int | None = None):
        raise SpecParseError(message, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.low) and self.low[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str):
        self.skip_ws()
        if not self.low.startswith(token, self.pos):
            self.fail(f"expected {token!r}")
        self.pos += len(token)

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.low) and (self.low[self.pos].isalnum() or self.low[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            self.fail("expected a name")
        return self.low[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.low) and self.low[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected an integer")
        return int(self.low[start:self.pos])

    def peek(self, token: str) -> bool:
        self.skip_ws()
        return self.low.startswith(token, self.pos)

    def keyvals(self, allowed: tuple[str, ...], start_with_comma: bool) -> dict[str, int]:
        values: dict[str, int] = {}
        first = True
        while True:
            if first and not start_with_comma:
                pass
            elif self.peek(","):
                self.expect(",")
            else:
                break
            first = False
            key_pos = self.pos
            key = self.word()
            if key not in allowed:
                self.fail(f"unknown key {key!r}", key_pos)
            if key in values:
                self.fail(f"duplicate key {key!r}", key_pos)
            self.expect("=")
            values[key] = self.integer()
        return values

    def spec(self) -> GroupSpec:
        name_pos = self.pos
        name = self.word()
        try:
            return self._dispatch(name, name_pos)
        except InvalidParameters as exc:
            raise SpecParseError(str(exc), self.text, name_pos) from exc

    def _dispatch(self, name: str, name_pos: int) -> GroupSpec:
        if name == "quaternion":
            return Quaternion()
        if name == "metacyclic64":
            return Metacyclic64()
        if name == "cyclic":
            self.expect(":")
            return Cyclic(self.integer())
        if name == "abelsq":
            self.expect(":")
            kv = self.keyvals(("p", "a"), start_with_comma=False)
            missing = {"p", "a"} - kv.keys()
            if missing:
                self.fail(f"missing keys {sorted(missing)}")
            return AbelianSquare(kv["p"], kv["a"])
        if name == "family":
            self.expect(":")
            fam_pos = self.pos
            fam = self.word()
            if fam not in FAMILIES:
                self.fail(f"unknown family {fam!r}", fam_pos)
            allowed = {"i": ("p", "a", "b"), "ii": ("p", "a", "b"), "iii": ("p", "a")}[fam]
            kv = self.keyvals(allowed, start_with_comma=True)
            if "a" not in kv or (fam != "iii" and "b" not in kv) or (fam == "i" and "p" not in kv):
                self.fail(f"family {fam} is missing parameters")
            return Family(fam, kv.get("p", 2), kv["a"], kv.get("b", 0))
        if name == "product":
            self.expect(":")
            self.expect("(")
            left = self.spec()
            self.expect(")")
            self.expect("x")
            self.expect("(")
            right = self.spec()
            self.expect(")")
            return DirectProduct(left, right)
        self.fail(f"unknown group kind {name!r}", name_pos)


def parse_spec(text: str) -> GroupSpec:
    """Parse a group-spec string; raises SpecParseError with the failing offset."""
    parser = _Parser(text)
    spec = parser.spec()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.fail("trailing input")
    return spec
