"""Tokenizer for Java-syntax source text.

Total over arbitrary input: unknown characters become single-character
``op`` tokens and unterminated literals/comments are closed at a sensible
boundary with a problem recorded, so the parser always gets a token stream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue default do
    double else enum extends final finally float for goto if implements import instanceof
    int interface long native new package private protected public return short static
    strictfp super switch synchronized this throw throws transient try void volatile while
    true false null""".split()
)

PRIMITIVES = frozenset("boolean byte char short int long float double void".split())

# Longest first. '>' is deliberately never merged into '>>' / '>>>' so that
# nested generics close cleanly; the parser rebuilds shifts from adjacency.
OPERATORS = sorted(
    """-> :: ++ -- && || == != <= >= += -= *= /= &= |= ^= %= <<= <<
    ... = < > ! ~ ? : ; , . ( ) [ ] { } + - * / & | ^ % @""".split(),
    key=len,
    reverse=True,
)

_NUMBER = re.compile(
    r"""
    0[xX][0-9a-fA-F_]*(?:\.[0-9a-fA-F_]*)?(?:[pP][+-]?[0-9_]+)?[lLfFdD]?
  | 0[bB][01_]+[lL]?
  | (?:[0-9][0-9_]*)?\.?[0-9][0-9_]*(?:[eE][+-]?[0-9_]+)?[lLfFdD]?
    """,
    re.VERBOSE,
)
_IDENT = re.compile(r"(?:[^\W\d]|\$)[\w$]*")


@dataclass(frozen=True)
class Token:
    kind: str  # ident | keyword | string | char | number | op | eof
    text: str
    line: int
    column: int
    value: object = None

    def is_op(self, *ops: str) -> bool:
        return self.kind == "op" and self.text in ops

    def is_kw(self, *words: str) -> bool:
        return self.kind == "keyword" and self.text in words


@dataclass(frozen=True)
class LexProblem:
    line: int
    column: int
    message: str


_ESCAPES = {"n": "\n", "t": "\t", "b": "\b", "r": "\r", "f": "\f", "s": " ",
            "0": "\0", "'": "'", '"': '"', "\\": "\\"}


def _decode_escapes(body: str) -> str:
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch != "\\" or i + 1 >= len(body):
            out.append(ch)
            i += 1
            continue
        nxt = body[i + 1]
        if nxt == "u":
            j = i + 1
            while j < len(body) and body[j] == "u":
                j += 1
            digits = body[j:j + 4]
            if len(digits) == 4 and all(c in "0123456789abcdefABCDEF" for c in digits):
                out.append(chr(int(digits, 16)))
                i = j + 4
                continue
        if nxt in "01234567":
            j = i + 1
            while j < len(body) and j < i + 4 and body[j] in "01234567":
                j += 1
            out.append(chr(int(body[i + 1:j], 8) & 0xFF))
            i = j
            continue
        out.append(_ESCAPES.get(nxt, nxt))
        i += 2
    return "".join(out)


def _is_float(lit: str) -> bool:
    if lit[:2] in ("0x", "0X"):
        return "." in lit or "p" in lit or "P" in lit
    return any(c in lit for c in ".eE") or lit[-1] in "fFdD"


def _int_value(text: str) -> object:
    t = text.replace("_", "")
    if t[-1:] in "lL":
        t = t[:-1]
    try:
        if t[:2] in ("0x", "0X"):
            return int(t[2:], 16)
        if t[:2] in ("0b", "0B"):
            return int(t[2:], 2)
        if len(t) > 1 and t[0] == "0" and t.isdigit():
            return int(t, 8)
        return int(t)
    except ValueError:
        return None


class Lexer:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.problems: list[LexProblem] = []

    def _advance(self, n: int) -> str:
        chunk = self.text[self.pos:self.pos + n]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.col = len(chunk) - chunk.rfind("\n")
        else:
            self.col += len(chunk)
        self.pos += len(chunk)
        return chunk

    def tokens(self) -> list[Token]:
        out: list[Token] = []
        text = self.text
        n = len(text)
        while self.pos < n:
            ch = text[self.pos]
            if ch in " \t\r\n\f﻿":
                self._advance(1)
                continue
            if text.startswith("//", self.pos):
                end = text.find("\n", self.pos)
                self._advance((n if end < 0 else end) - self.pos)
                continue
            if text.startswith("/*", self.pos):
                end = text.find("*/", self.pos + 2)
                if end < 0:
                    self.problems.append(LexProblem(self.line, self.col, "unterminated comment"))
                    self._advance(n - self.pos)
                else:
                    self._advance(end + 2 - self.pos)
                continue
            line, col = self.line, self.col
            if text.startswith('"""', self.pos):
                out.append(self._text_block(line, col))
                continue
            if ch == '"' or ch == "'":
                out.append(self._quoted(ch, line, col))
                continue
            if ch.isdigit() or (ch == "." and self.pos + 1 < n and text[self.pos + 1].isdigit()):
                m = _NUMBER.match(text, self.pos)
                if m and m.end() > self.pos:
                    lit = self._advance(m.end() - self.pos)
                    value = None if _is_float(lit) else _int_value(lit)
                    out.append(Token("number", lit, line, col, value))
                    continue
            m = _IDENT.match(text, self.pos)
            if m:
                word = self._advance(m.end() - self.pos)
                out.append(Token("keyword" if word in KEYWORDS else "ident", word, line, col))
                continue
            for op in OPERATORS:
                if text.startswith(op, self.pos):
                    self._advance(len(op))
                    out.append(Token("op", op, line, col))
                    break
            else:
                # Stray character: keep it as an opaque op so parsing can skip it.
                out.append(Token("op", self._advance(1), line, col))
        out.append(Token("eof", "", self.line, self.col))
        return out

    def _quoted(self, quote: str, line: int, col: int) -> Token:
        text = self.text
        i = self.pos + 1
        while i < len(text):
            c = text[i]
            if c == "\\":
                i += 2
                continue
            if c == quote or c == "\n":
                break
            i += 1
        terminated = i < len(text) and text[i] == quote
        if not terminated:
            self.problems.append(LexProblem(line, col, "unterminated literal"))
        raw = self._advance(min(i + (1 if terminated else 0), len(text)) - self.pos)
        body = raw[1:-1] if terminated else raw[1:]
        kind = "string" if quote == '"' else "char"
        return Token(kind, raw, line, col, _decode_escapes(body))

    def _text_block(self, line: int, col: int) -> Token:
        end = self.text.find('"""', self.pos + 3)
        if end < 0:
            self.problems.append(LexProblem(line, col, "unterminated text block"))
            raw = self._advance(len(self.text) - self.pos)
            body = raw[3:]
        else:
            raw = self._advance(end + 3 - self.pos)
            body = raw[3:-3]
        # Content starts after the opening line terminator; strip common indentation.
        body = body.split("\n", 1)[1] if "\n" in body else body
        lines = body.split("\n")
        indents = [len(l) - len(l.lstrip()) for l in lines if l.strip()]
        cut = min(indents) if indents else 0
        value = "\n".join(l[cut:].rstrip() for l in lines)
        return Token("string", raw, line, col, _decode_escapes(value))


def tokenize(text: str) -> tuple[list[Token], list[LexProblem]]:
    lexer = Lexer(text)
    toks = lexer.tokens()
    return toks, lexer.problems
