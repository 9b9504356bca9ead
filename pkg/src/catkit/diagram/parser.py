"""Text format for signatures and named diagrams.

Statements are semicolon-terminated; ``#`` starts a comment running to
the end of the line::

    object A frobenius selfdual;
    gen f : A -> B;
    diag d = f >> dg(f);        # the 'diag' keyword may be omitted

Expressions compose left to right with ``>>`` (``a >> b`` applies ``a``
first) and tensor with ``x``, which binds tighter.  Atomic expressions
are generator or previously defined diagram names, ``id(WORD)``,
``swap(WORD, WORD)``, ``cup(A)``, ``cap(A)``, ``dg(E)``, ``name(E)``,
``coname(E)``, ``spider(A, k, l)``, and parenthesized expressions.
Object words are ``I`` or atoms joined by ``x``, each with an optional
``*`` marking the dual.  Atoms are declared implicitly on first use;
structure flags require an ``object`` statement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import terms
from .terms import (
    Cap,
    Cup,
    Dagger,
    DiagramError,
    Gen,
    Id,
    ObjectWord,
    Par,
    Seq,
    Signature,
    Spider,
    Swap,
    UNIT,
)

RESERVED = frozenset(
    [
        "object", "gen", "diag", "id", "swap", "cup", "cap", "dg",
        "name", "coname", "spider", "frobenius", "selfdual", "I", "x",
    ]
)

_SYMBOLS = frozenset([";", ":", "=", ",", "(", ")", "*", "->", ">>"])


class ParseError(DiagramError):
    """Syntax or name-resolution failure with a source position."""

    def __init__(self, message, line, col):
        super().__init__(message)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "int" | "sym" | "eof"
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        two = text[i : i + 2]
        if two in ("->", ">>"):
            tokens.append(Token("sym", two, line, start_col))
            i += 2
            col += 2
            continue
        if ch in ";:=,()*":
            tokens.append(Token("sym", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass
class ParseResult:
    """A signature together with the file's named diagrams, in order."""

    signature: Signature
    diagrams: dict = field(default_factory=dict)


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0
        self.sig = Signature()
        self.diagrams = {}

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect_sym(self, text):
        tok = self.peek()
        if tok.kind != "sym" or tok.text != text:
            shown = tok.text if tok.kind != "eof" else "end of input"
            self.fail(f"expected {text!r}, found {shown!r}")
        return self.advance()

    def expect_name(self, what):
        tok = self.peek()
        if tok.kind != "ident":
            shown = tok.text if tok.kind != "eof" else "end of input"
            self.fail(f"expected {what}, found {shown!r}")
        if tok.text in RESERVED:
            self.fail(f"{tok.text!r} is a reserved word")
        return self.advance()

    def at_sym(self, text):
        tok = self.peek()
        return tok.kind == "sym" and tok.text == text

    def at_ident(self, text):
        tok = self.peek()
        return tok.kind == "ident" and tok.text == text

    # Statements

    def parse_module(self):
        while self.peek().kind != "eof":
            self.statement()
        return ParseResult(self.sig, self.diagrams)

    def statement(self):
        tok = self.peek()
        if tok.kind != "ident":
            self.fail(f"expected a declaration, found {tok.text!r}")
        if tok.text == "object":
            self.object_decl()
        elif tok.text == "gen":
            self.gen_decl()
        elif tok.text == "diag":
            self.advance()
            self.diag_decl()
        else:
            self.diag_decl()

    def object_decl(self):
        self.advance()
        name_tok = self.expect_name("an object name")
        frobenius = False
        self_dual = False
        while self.peek().kind == "ident" and self.peek().text in (
            "frobenius",
            "selfdual",
        ):
            flag = self.advance().text
            if flag == "frobenius":
                frobenius = True
            else:
                self_dual = True
        self.expect_sym(";")
        try:
            self.sig.declare_object(name_tok.text, frobenius, self_dual)
        except ValueError as exc:
            self.fail(str(exc), name_tok)

    def gen_decl(self):
        self.advance()
        name_tok = self.expect_name("a generator name")
        self.expect_sym(":")
        dom = self.word()
        self.expect_sym("->")
        cod = self.word()
        self.expect_sym(";")
        if name_tok.text in self.diagrams:
            self.fail(f"name {name_tok.text!r} already used by a diagram",
                      name_tok)
        try:
            self.sig.declare_generator(name_tok.text, dom, cod)
        except ValueError as exc:
            self.fail(str(exc), name_tok)

    def diag_decl(self):
        name_tok = self.expect_name("a diagram name")
        if (
            name_tok.text in self.diagrams
            or name_tok.text in self.sig.generators
            or name_tok.text in self.sig.objects
        ):
            self.fail(f"name {name_tok.text!r} already in use", name_tok)
        self.expect_sym("=")
        term = self.expr()
        self.expect_sym(";")
        self.diagrams[name_tok.text] = term

    # Object words

    def word(self):
        if self.at_ident("I"):
            self.advance()
            return UNIT
        factors = [self.word_factor()]
        while self.at_ident("x"):
            self.advance()
            factors.append(self.word_factor())
        return ObjectWord(tuple(factors))

    def word_factor(self):
        tok = self.expect_name("an object name")
        self.sig.ensure_atom(tok.text)
        dual = False
        if self.at_sym("*"):
            self.advance()
            dual = True
        return (tok.text, dual)

    def atom_arg(self):
        tok = self.expect_name("an object name")
        self.sig.ensure_atom(tok.text)
        return tok.text

    def int_arg(self):
        tok = self.peek()
        if tok.kind != "int":
            self.fail(f"expected a leg count, found {tok.text!r}")
        self.advance()
        return int(tok.text)

    # Expressions

    def expr(self):
        term = self.tensor_expr()
        while self.at_sym(">>"):
            self.advance()
            term = Seq(self.tensor_expr(), term)
        return term

    def tensor_expr(self):
        term = self.atom_expr()
        while self.at_ident("x"):
            self.advance()
            term = Par(term, self.atom_expr())
        return term

    def atom_expr(self):
        tok = self.peek()
        if self.at_sym("("):
            self.advance()
            term = self.expr()
            self.expect_sym(")")
            return term
        if tok.kind != "ident":
            shown = tok.text if tok.kind != "eof" else "end of input"
            self.fail(f"unexpected {shown!r}")
        if tok.text == "id":
            self.advance()
            self.expect_sym("(")
            word = self.word()
            self.expect_sym(")")
            return Id(word)
        if tok.text == "swap":
            self.advance()
            self.expect_sym("(")
            left = self.word()
            self.expect_sym(",")
            right = self.word()
            self.expect_sym(")")
            return Swap(left, right)
        if tok.text in ("cup", "cap"):
            self.advance()
            self.expect_sym("(")
            atom = self.atom_arg()
            self.expect_sym(")")
            return Cup(atom) if tok.text == "cup" else Cap(atom)
        if tok.text in ("dg", "name", "coname"):
            self.advance()
            self.expect_sym("(")
            inner = self.expr()
            self.expect_sym(")")
            if tok.text == "dg":
                return Dagger(inner)
            if tok.text == "name":
                return terms.name(inner, self.sig)
            return terms.coname(inner, self.sig)
        if tok.text == "spider":
            self.advance()
            self.expect_sym("(")
            atom = self.atom_arg()
            self.expect_sym(",")
            legs_in = self.int_arg()
            self.expect_sym(",")
            legs_out = self.int_arg()
            self.expect_sym(")")
            return Spider(atom, legs_in, legs_out)
        if tok.text in RESERVED:
            self.fail(f"unexpected keyword {tok.text!r}")
        self.advance()
        if tok.text in self.sig.generators:
            return Gen(tok.text)
        if tok.text in self.diagrams:
            return self.diagrams[tok.text]
        self.fail(f"unknown identifier {tok.text!r}", tok)


def parse(text):
    """Parse a module of declarations into a ParseResult.

    Raises ParseError (with .line and .col) for malformed input and
    lets TypeMismatch from derived-term helpers propagate.
    """
    return _Parser(text).parse_module()
