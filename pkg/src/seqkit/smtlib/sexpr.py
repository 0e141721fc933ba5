"""S-expression reader with source positions."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ScriptSyntaxError


@dataclass(frozen=True)
class Atom:
    text: str
    pos: tuple[int, int]
    quoted: bool = False  # |...| symbol or "..." string
    string: bool = False  # "..." string literal

    def is_numeral(self) -> bool:
        return not self.quoted and self.text.isdigit()


@dataclass(frozen=True)
class SList:
    items: tuple
    pos: tuple[int, int]

    def __len__(self):
        return len(self.items)

    def __getitem__(self, k):
        return self.items[k]

    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Atom) and not self.items[0].string:
            return self.items[0].text
        return None


SExpr = Atom | SList

_DELIMS = set("()|;\"") | set(" \t\r\n")


def read_all(text: str | bytes) -> list[SExpr]:
    """Parse every top-level S-expression in ``text``."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return list(_Reader(text).read_all())


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.line = 1
        self.col = 1

    def _advance(self, n=1):
        for _ in range(n):
            if self.text[self.i] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.i += 1

    def _skip(self):
        t = self.text
        while self.i < len(t):
            c = t[self.i]
            if c in " \t\r\n":
                self._advance()
            elif c == ";":
                while self.i < len(t) and t[self.i] != "\n":
                    self._advance()
            else:
                break

    def read_all(self):
        while True:
            self._skip()
            if self.i >= len(self.text):
                return
            yield self.read()

    def read(self) -> SExpr:
        self._skip()
        pos = (self.line, self.col)
        if self.i >= len(self.text):
            raise ScriptSyntaxError("unexpected end of input", pos, expected=("an expression",))
        c = self.text[self.i]
        if c == "(":
            self._advance()
            items = []
            while True:
                self._skip()
                if self.i >= len(self.text):
                    raise ScriptSyntaxError(
                        "unexpected end of input inside list opened here", pos, expected=(")",)
                    )
                if self.text[self.i] == ")":
                    self._advance()
                    return SList(tuple(items), pos)
                items.append(self.read())
        if c == ")":
            raise ScriptSyntaxError("unbalanced ')'", pos, expected=("'('", "an atom"))
        if c == "|":
            return self._delimited("|", pos)
        if c == '"':
            return self._delimited('"', pos)
        start = self.i
        while self.i < len(self.text) and self.text[self.i] not in _DELIMS:
            self._advance()
        return Atom(self.text[start:self.i], pos)

    def _delimited(self, close: str, pos) -> Atom:
        self._advance()
        start = self.i
        while self.i < len(self.text) and self.text[self.i] != close:
            self._advance()
        if self.i >= len(self.text):
            raise ScriptSyntaxError(f"unterminated {close}", pos, expected=(close,))
        text = self.text[start:self.i]
        self._advance()
        return Atom(text, pos, quoted=True, string=close == '"')
