"""S-expression reader with source positions"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple, Union

from model.errors import ParseError, SourceSpan

_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)$")
_SYMBOL = re.compile(r"[A-Za-z0-9_\-?!:.+*/<>=@]+$")
_DELIMITERS = set("();\"")


class AtomKind(Enum):
    SYMBOL = "symbol"
    NUMBER = "number"
    STRING = "string"
    LIST = "list"


@dataclass(frozen=True)
class SExpr:
    kind: AtomKind
    value: Union[str, float, Tuple["SExpr", ...]]
    span: SourceSpan

    @property
    def is_list(self) -> bool:
        return self.kind is AtomKind.LIST

    @property
    def items(self) -> Tuple["SExpr", ...]:
        if not self.is_list:
            raise ParseError(f"expected a list, found {self.text}", self.span)
        return self.value

    def is_symbol(self, name: Optional[str] = None) -> bool:
        return self.kind is AtomKind.SYMBOL and (name is None or self.value == name)

    @property
    def head(self) -> Optional[str]:
        """Leading symbol of a list, if any"""
        if self.is_list and self.value and self.value[0].is_symbol():
            return self.value[0].value
        return None

    @property
    def text(self) -> str:
        if self.kind is AtomKind.LIST:
            return "(" + " ".join(item.text for item in self.value) + ")"
        if self.kind is AtomKind.NUMBER:
            return repr(self.value)
        if self.kind is AtomKind.STRING:
            return f'"{self.value}"'
        return self.value


class _Reader:
    def __init__(self, text: str, file: str):
        self.text = text
        self.file = file
        self.pos = 0
        self.line = 1
        self.column = 1

    def _advance(self) -> str:
        char = self.text[self.pos]
        self.pos += 1
        if char == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        return char

    def _span(self, line: int, column: int) -> SourceSpan:
        return SourceSpan(self.file, line, column, self.line, self.column)

    def _skip_blank(self) -> None:
        while self.pos < len(self.text):
            char = self.text[self.pos]
            if char == ";":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            elif char.isspace():
                self._advance()
            else:
                return

    def read_all(self) -> List[SExpr]:
        result = []
        while True:
            self._skip_blank()
            if self.pos >= len(self.text):
                return result
            result.append(self.read())

    def read(self) -> SExpr:
        self._skip_blank()
        line, column = self.line, self.column
        if self.pos >= len(self.text):
            raise ParseError("unexpected end of input", self._span(line, column))
        char = self.text[self.pos]
        if char == "(":
            self._advance()
            items = []
            while True:
                self._skip_blank()
                if self.pos >= len(self.text):
                    raise ParseError("unclosed '('", SourceSpan(self.file, line, column, line, column + 1))
                if self.text[self.pos] == ")":
                    self._advance()
                    return SExpr(AtomKind.LIST, tuple(items), self._span(line, column))
                items.append(self.read())
        if char == ")":
            self._advance()
            raise ParseError("unexpected ')'", self._span(line, column))
        if char == '"':
            self._advance()
            chars = []
            while self.pos < len(self.text) and self.text[self.pos] != '"':
                chars.append(self._advance())
            if self.pos >= len(self.text):
                raise ParseError("unterminated string", SourceSpan(self.file, line, column, line, column + 1))
            self._advance()
            return SExpr(AtomKind.STRING, "".join(chars), self._span(line, column))
        chars = []
        while self.pos < len(self.text):
            char = self.text[self.pos]
            if char.isspace() or char in _DELIMITERS:
                break
            chars.append(self._advance())
        token = "".join(chars)
        span = self._span(line, column)
        if _NUMBER.match(token):
            return SExpr(AtomKind.NUMBER, float(token), span)
        if not _SYMBOL.match(token):
            raise ParseError(f"invalid token {token!r}", span)
        return SExpr(AtomKind.SYMBOL, token.lower(), span)


def parse_sexprs(text: str, file: str = "<input>") -> List[SExpr]:
    """Read every top-level S-expression in text"""
    return _Reader(text, file).read_all()


def parse_one(text: str, file: str = "<input>") -> SExpr:
    exprs = parse_sexprs(text, file)
    if len(exprs) != 1:
        span = exprs[1].span if len(exprs) > 1 else SourceSpan(file, 1, 1, 1, 1)
        raise ParseError(f"expected exactly one expression, found {len(exprs)}", span)
    return exprs[0]
