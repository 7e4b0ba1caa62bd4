"""Concrete syntax of terms.

    expr  ::= 'rec' NAME '=' expr | 'ref' NAME | VAR | NAME [ '(' expr {',' expr} ')' ]
    VAR   ::= 'x' digits            (x1, x2, ...)
    NAME  ::= identifier | '[' non-blank chars without ']' ']'

``rec L = E`` names the root of ``E`` so that ``ref L`` inside ``E`` points back
at it; this is how infinite regular terms are written down.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .exceptions import ArityError, TermSyntaxError, UnknownSymbolError
from .terms import TermGraph, TermRef, TermStore

TOKEN_RE = re.compile(r"""
    (?P<space>\s+)
  | (?P<name>\[[^\]\s]+\]|[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[(),=])
""", re.VERBOSE)
VAR_RE = re.compile(r'x(\d+)$')
KEYWORDS = {'rec', 'ref'}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, *, line: int = 1, column: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if not match:
            raise TermSyntaxError(f'unexpected character {text[pos]!r}', line=line, column=column + pos)
        kind = match.lastgroup
        if kind != 'space':
            tokens.append(Token(kind, match.group(), line, column + pos))
        pos = match.end()
    tokens.append(Token('end', '', line, column + len(text)))
    return tokens


class _TermParser:
    def __init__(self, store: TermStore, tokens: list[Token]):
        self.store = store
        self.tokens = tokens
        self.pos = 0
        self.nodes: list[tuple[int, tuple[int, ...]] | None] = []

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self, kind: str | None = None, text: str | None = None) -> Token:
        token = self.tokens[self.pos]
        if (kind and token.kind != kind) or (text and token.text != text):
            wanted = text or kind
            found = token.text or 'end of input'
            raise TermSyntaxError(f'expected {wanted}, found {found!r}', line=token.line, column=token.column)
        self.pos += 1
        return token

    def fail(self, token: Token, message: str, error=TermSyntaxError):
        if error is TermSyntaxError:
            raise TermSyntaxError(message, line=token.line, column=token.column)
        raise error(f'{message} (line {token.line}, column {token.column})')

    def expr(self, env: dict[str, int]) -> int:
        token = self.take('name')
        if token.text == 'rec':
            binder = self.take('name')
            if binder.text in KEYWORDS or VAR_RE.match(binder.text):
                self.fail(binder, f'{binder.text!r} cannot name a recursive binder')
            self.take('punct', '=')
            placeholder = len(self.nodes)
            self.nodes.append(None)
            root = self.expr({**env, binder.text: placeholder})
            if self.nodes[root] is None:
                self.fail(binder, f'unguarded recursion through {binder.text}')
            self.nodes[placeholder] = self.nodes[root]
            return placeholder
        if token.text == 'ref':
            binder = self.take('name')
            if binder.text not in env:
                self.fail(binder, f'unbound reference {binder.text}')
            return env[binder.text]
        match = VAR_RE.match(token.text)
        if match:
            k = int(match.group(1))
            if k < 1:
                self.fail(token, 'variables are numbered from x1')
            if self.peek().text == '(':
                self.fail(token, f'variable {token.text} cannot take arguments', ArityError)
            self.nodes.append((-k, ()))
            return len(self.nodes) - 1
        if token.text not in self.store.alphabet:
            self.fail(token, f'unknown nonterminal {token.text}', UnknownSymbolError)
        index = self.store.alphabet.index(token.text)
        children = []
        if self.peek().text == '(':
            self.take('punct', '(')
            if self.peek().text != ')':
                children.append(self.expr(env))
                while self.peek().text == ',':
                    self.take('punct', ',')
                    children.append(self.expr(env))
            self.take('punct', ')')
        arity = self.store.alphabet.arity(index)
        if len(children) != arity:
            self.fail(token, f'{token.text} expects {arity} arguments, got {len(children)}', ArityError)
        self.nodes.append((index, tuple(children)))
        return len(self.nodes) - 1


def parse_term_graph(store: TermStore, text: str, *, line: int = 1, column: int = 1) -> TermGraph:
    parser = _TermParser(store, tokenize(text, line=line, column=column))
    root = parser.expr({})
    parser.take('end')
    return TermGraph(nodes=list(parser.nodes), root=root)


def parse_term(store: TermStore, text: str, *, line: int = 1, column: int = 1) -> TermRef:
    """Parse and intern a term written in concrete syntax."""
    return store.minimize(parse_term_graph(store, text, line=line, column=column))
