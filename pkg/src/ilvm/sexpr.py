"""Reading and printing s-expressions.

Only three kinds of datum exist: symbols, integers and lists. Symbols are
``Symbol`` (a ``str`` subclass), integers are plain ``int`` and lists are
plain ``list``, so trees compare structurally with ``==``.
"""

import re

from ilvm.errors import BadToken, EmptyInput, TrailingGarbage, UnbalancedParens

_INT_RE = re.compile(r"[+-]?[0-9]+\Z")
_DELIMS = frozenset("();")
_BOOLEANS = frozenset({"#t", "#f", "#true", "#false", "#T", "#F"})


class Symbol(str):
    """An interned-by-value symbol name."""

    __slots__ = ()

    def __new__(cls, name):
        if not name:
            raise ValueError("empty symbol")
        if any(c.isspace() or c in _DELIMS or c == '"' for c in name):
            raise ValueError(f"illegal character in symbol {name!r}")
        if _INT_RE.match(name):
            raise ValueError(f"symbol {name!r} would read as an integer")
        return super().__new__(cls, name)

    def __repr__(self):
        return f"Symbol({str(self)!r})"


def is_symbol(x, name=None):
    if not isinstance(x, str):
        return False
    return name is None or x == name


def is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


class _Reader:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def offset(self, pos=None):
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def skip(self):
        text, n = self.text, len(self.text)
        while self.pos < n:
            c = text[self.pos]
            if c == ";":
                nl = text.find("\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            elif c.isspace():
                self.pos += 1
            else:
                break

    def at_end(self):
        self.skip()
        return self.pos >= len(self.text)

    def datum(self):
        self.skip()
        if self.pos >= len(self.text):
            raise EmptyInput("expected an s-expression", self.offset())
        c = self.text[self.pos]
        if c == "(":
            return self.list()
        if c == ")":
            raise UnbalancedParens("unexpected ')'", self.offset())
        return self.atom()

    def list(self):
        start = self.pos
        self.pos += 1
        items = []
        while True:
            self.skip()
            if self.pos >= len(self.text):
                raise UnbalancedParens("unclosed '('", self.offset(start))
            if self.text[self.pos] == ")":
                self.pos += 1
                return items
            items.append(self.datum())

    def atom(self):
        start = self.pos
        text, n = self.text, len(self.text)
        while self.pos < n and not text[self.pos].isspace() and text[self.pos] not in _DELIMS:
            self.pos += 1
        tok = text[start:self.pos]
        if _INT_RE.match(tok):
            return int(tok)
        if '"' in tok:
            raise BadToken("strings are not supported", self.offset(start))
        if tok in _BOOLEANS:
            raise BadToken("booleans are not supported", self.offset(start))
        return Symbol(tok)


def read(text):
    """Parse exactly one s-expression from ``text``."""
    r = _Reader(text)
    e = r.datum()
    if not r.at_end():
        if r.text[r.pos] == ")":
            raise UnbalancedParens("unexpected ')'", r.offset())
        raise TrailingGarbage("extra input after s-expression", r.offset())
    return e


def read_all(text):
    """Parse every s-expression in ``text``, in order."""
    r = _Reader(text)
    out = []
    while not r.at_end():
        out.append(r.datum())
    return out


def render(e):
    """Canonical single-space rendering; ``read(render(e)) == e``."""
    if isinstance(e, list):
        return "(" + " ".join(render(x) for x in e) + ")"
    if is_int(e):
        return str(e)
    if isinstance(e, str):
        return str(e)
    raise TypeError(f"not an s-expression: {e!r}")
