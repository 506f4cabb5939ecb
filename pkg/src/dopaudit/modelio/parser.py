"""Line-oriented model files.

Grammar (one statement per line, ``#`` starts a comment)::

    dim <d>
    vars <name> ... <name>
    name <free text>                 optional
    expect <key> = <value>           optional, repeatable
    g <i> <j> = <expr>               1-based, i <= j, each pair exactly once

Expressions use ``+ - * / ^``, parentheses, integer literals and the declared
variables.  ``/`` requires a constant divisor, so ``3/2`` is a rational
literal; ``^`` takes a non-negative integer exponent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..cometric import Cometric
from ..errors import ModelSyntaxError
from ..polyring import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")
_RESERVED = {"dim", "vars", "g", "name", "expect"}


@dataclass
class ModelFile:
    d: int
    names: tuple
    entries: dict                      # (i, j) 0-based with i <= j -> Poly
    name: str | None = None
    expect: dict = field(default_factory=dict)

    def cometric(self) -> Cometric:
        rows = [[self.entries[min(i, j), max(i, j)] for j in range(self.d)] for i in range(self.d)]
        return Cometric(rows, self.names)

    @classmethod
    def from_cometric(cls, g: Cometric, name=None, expect=None) -> "ModelFile":
        entries = {(i, j): g[i, j] for i in range(g.d) for j in range(i, g.d)}
        return cls(g.d, tuple(g.names), entries, name, dict(expect or {}))


class _ExprParser:
    def __init__(self, text: str, names: dict, nvars: int, line: int, offset: int):
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            kind = "num" if m.group(1) else "id" if m.group(2) else "op"
            val = m.group(1) or m.group(2) or m.group(3)
            self.toks.append((kind, val, offset + m.start(m.lastindex) + 1))
            pos = m.end()
        self.i = 0
        self.names = names
        self.n = nvars
        self.line = line
        self.end_col = offset + len(text.rstrip()) + 1

    def error(self, msg, col=None, code="SYNTAX"):
        if col is None:
            col = self.toks[self.i][2] if self.i < len(self.toks) else self.end_col
        raise ModelSyntaxError(msg, self.line, col, code)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end_col)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Poly:
        if not self.toks:
            self.error("empty expression")
        p = self.expr()
        if self.i < len(self.toks):
            self.error(f"unexpected {self.toks[self.i][1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, col = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant:
                    self.error("division by a non-constant expression", col)
                if q.is_zero:
                    self.error("division by zero", col)
                p = p / q.constant_value()
        return p

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, col = self.take()
            if kind != "num":
                self.error("exponent must be a non-negative integer literal", col)
            return base ** int(val)
        return base

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return Poly.const(self.n, Fraction(int(val)))
        if kind == "id":
            if val not in self.names:
                self.error(f"unknown variable {val!r}", col, "UNKNOWN_VARIABLE")
            return Poly.var(self.n, self.names[val])
        if val == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return p
        if kind is None:
            self.error("unexpected end of expression")
        self.error(f"unexpected {val!r}", col)


def _int_token(tok: str, line: int, col: int, what: str) -> int:
    if not tok.isdigit():
        raise ModelSyntaxError(f"{what} must be a positive integer, got {tok!r}", line, col)
    return int(tok)


def parse_model(text: str) -> ModelFile:
    d = None
    names = None
    entries: dict = {}
    name = None
    expect: dict = {}
    pending = []  # (line, col, i, j, expr text, expr offset)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        head = stripped.split()[0]
        if head == "dim":
            if d is not None:
                raise ModelSyntaxError("dim declared twice", lineno, col0)
            parts = stripped.split()
            if len(parts) != 2:
                raise ModelSyntaxError("expected 'dim <d>'", lineno, col0)
            d = _int_token(parts[1], lineno, line.index(parts[1], col0 + 2) + 1, "dimension")
            if d < 1:
                raise ModelSyntaxError("dimension must be positive", lineno, col0)
        elif head == "vars":
            if names is not None:
                raise ModelSyntaxError("vars declared twice", lineno, col0)
            names = stripped.split()[1:]
            for v in names:
                if not _NAME.match(v) or v in _RESERVED:
                    raise ModelSyntaxError(f"invalid variable name {v!r}", lineno, line.index(v) + 1)
            if len(set(names)) != len(names):
                raise ModelSyntaxError("repeated variable name", lineno, col0)
        elif head == "name":
            name = stripped[4:].strip()
        elif head == "expect":
            body = stripped[6:]
            if "=" not in body:
                raise ModelSyntaxError("expected 'expect <key> = <value>'", lineno, col0)
            k, v = (s.strip() for s in body.split("=", 1))
            if not _NAME.match(k):
                raise ModelSyntaxError(f"invalid expectation key {k!r}", lineno, col0)
            expect[k] = v
        elif head == "g":
            eq = line.find("=")
            if eq < 0:
                raise ModelSyntaxError("expected 'g <i> <j> = <expr>'", lineno, col0)
            idx = line[:eq].split()[1:]
            if len(idx) != 2:
                raise ModelSyntaxError("entry needs exactly two indices", lineno, col0)
            i = _int_token(idx[0], lineno, col0, "index")
            j = _int_token(idx[1], lineno, col0, "index")
            pending.append((lineno, col0, i, j, line[eq + 1:], eq + 1))
        else:
            raise ModelSyntaxError(f"unknown statement {head!r}", lineno, col0)
    if d is None and names is None and not pending:
        raise ModelSyntaxError("empty model", 1, 1)
    if d is None:
        raise ModelSyntaxError("missing 'dim' statement")
    if names is None:
        raise ModelSyntaxError("missing 'vars' statement")
    if len(names) != d:
        raise ModelSyntaxError(f"dim {d} needs {d} variable names, got {len(names)}")
    index = {v: k for k, v in enumerate(names)}
    for lineno, col0, i, j, expr, offset in pending:
        if not (1 <= i <= d and 1 <= j <= d):
            raise ModelSyntaxError(f"index ({i},{j}) out of range 1..{d}", lineno, col0)
        if i > j:
            raise ModelSyntaxError(f"write the upper entry g {j} {i} instead of g {i} {j}", lineno, col0)
        key = (i - 1, j - 1)
        if key in entries:
            raise ModelSyntaxError(f"entry g {i} {j} assigned twice", lineno, col0, "DUPLICATE_ENTRY")
        entries[key] = _ExprParser(expr, index, d, lineno, offset).parse()
    for i in range(d):
        for j in range(i, d):
            if (i, j) not in entries:
                raise ModelSyntaxError(f"missing entry g {i + 1} {j + 1}", code="MISSING_ENTRY")
    return ModelFile(d, tuple(names), entries, name, expect)


def render_model(m: ModelFile) -> str:
    """Canonical text form; ``parse_model(render_model(m))`` reproduces ``m``."""
    out = [f"dim {m.d}", "vars " + " ".join(m.names)]
    if m.name:
        out.append(f"name {m.name}")
    for k in sorted(m.expect):
        out.append(f"expect {k} = {m.expect[k]}")
    for i in range(m.d):
        for j in range(i, m.d):
            out.append(f"g {i + 1} {j + 1} = {m.entries[i, j].to_string(m.names)}")
    return "\n".join(out) + "\n"


def load_model(source: str) -> ModelFile:
    """Read a model from a path, a fixture name or ``fixture:<name>``."""
    import os

    from .fixtures import FIXTURES, fixture_model

    if source.startswith("fixture:"):
        return fixture_model(source[len("fixture:"):])
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return parse_model(fh.read())
    if source in FIXTURES:
        return fixture_model(source)
    raise FileNotFoundError(f"no model file or fixture named {source!r}")

