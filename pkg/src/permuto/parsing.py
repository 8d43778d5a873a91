"""Cursor-based scanning shared by the matroid and polytope expression
grammars (both contain comma-carrying leaf tokens, so naive splitting fails)."""

from __future__ import annotations

from .errors import ParseError


class Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.eat(token):
            raise ParseError(f"expected {token!r} at position {self.pos} in {self.text!r}")

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                              or self.text[self.pos] in "_"):
            self.pos += 1
        if self.pos == start:
            raise ParseError(f"expected a name at position {start} in {self.text!r}")
        return self.text[start:self.pos]

    def integer(self, signed: bool = False) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] in ("+", "-"):
            raise ParseError(f"expected an integer at position {start} in {self.text!r}")
        return int(self.text[start:self.pos])

    def int_list(self, signed: bool = False) -> list[int]:
        """INT (',' INT)*, consuming a comma only when an integer follows."""
        vals = [self.integer(signed)]
        while True:
            save = self.pos
            if not self.eat(","):
                break
            self.skip_ws()
            nxt = self.text[self.pos] if self.pos < len(self.text) else ""
            if nxt.isdigit() or (signed and nxt in "+-"):
                vals.append(self.integer(signed))
            else:
                self.pos = save
                break
        return vals

    def until(self, stops: str) -> str:
        """Raw text up to (not including) any stop character at paren depth 0."""
        self.skip_ws()
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            elif depth == 0 and ch in stops:
                break
            self.pos += 1
        return self.text[start:self.pos].strip()

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def require_done(self):
        if not self.done():
            raise ParseError(f"trailing junk {self.text[self.pos:]!r} in {self.text!r}")
