"""Parsing and printing of meadow terms.

Grammar (ASCII):

    term    :=  sum
    sum     :=  product (('+' | '-') product)*      left associative
    product :=  unary (('*' | '/') unary)*          left associative
    unary   :=  '-' unary | postfix
    postfix :=  atom ('^-1')*
    atom    :=  '0' | '1' | <natural> | <ident> | 'inv' '(' term ')'
            |   '(' term ')'

Identifiers match [a-z][a-z0-9_]*.  Natural-number literals are sugar
for the canonical numeral terms, and `p - q` is sugar for `p + (-q)`
except under the reduced divisive signature, where '-' is a primitive
binary constructor.  Infix rendering inserts the minimal parentheses
needed to reparse to a structurally equal term.
"""

from __future__ import annotations

from .terms import (
    Add, Div, Inv, Mul, Neg, One, Sub, Term, Var, Zero,
    Signature, check_conforms, numeral,
)

__all__ = ["ParseError", "Token", "tokenize", "parse_term", "parse_term_prefix", "render"]

# Multi-character operators first so the scanner prefers them.
_FORMULA_OPS = ("->", "!=", "=", "~", "&", "|", ".")
_TERM_OPS = ("^", "+", "-", "*", "/", "(", ")")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} (at position {pos})")


class Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind      # "nat" | "ident" | "op" | "end"
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.pos})"


def tokenize(text: str, formula_ops: bool = False) -> list[Token]:
    """Scan text into tokens; formula_ops additionally admits the logic symbols."""
    ops = (_FORMULA_OPS + _TERM_OPS) if formula_ops else _TERM_OPS
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if "0" <= c <= "9":
            j = i
            while j < n and "0" <= text[j] <= "9":
                j += 1
            tokens.append(Token("nat", text[i:j], i))
            i = j
            continue
        if "a" <= c <= "z":
            j = i
            while j < n and ("a" <= text[j] <= "z" or "0" <= text[j] <= "9"
                             or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], i))
            i = j
            continue
        for op in ops:
            if text.startswith(op, i):
                tokens.append(Token("op", op, i))
                i += len(op)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


class _TermParser:
    def __init__(self, tokens: list[Token], sig: Signature | None):
        self.tokens = tokens
        self.sig = sig
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in ops

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.advance()

    def sum(self) -> Term:
        t = self.product()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.product()
            if op == "+":
                t = Add(t, rhs)
            elif self.sig is Signature.RD:
                t = Sub(t, rhs)
            else:
                t = Add(t, Neg(rhs))
        return t

    def product(self) -> Term:
        t = self.unary()
        while self.at_op("*", "/"):
            op = self.advance().text
            rhs = self.unary()
            t = Mul(t, rhs) if op == "*" else Div(t, rhs)
        return t

    def unary(self) -> Term:
        if self.at_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.postfix()

    def postfix(self) -> Term:
        t = self.atom()
        while self.at_op("^"):
            caret = self.advance()
            if not self.at_op("-"):
                raise ParseError("expected '^-1'", caret.pos)
            self.advance()
            one = self.peek()
            if one.kind != "nat" or one.text != "1":
                raise ParseError("expected '^-1'", caret.pos)
            self.advance()
            t = Inv(t)
        return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "nat":
            self.advance()
            return numeral(int(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "inv" and self.at_op("("):
                self.advance()
                arg = self.sum()
                self.expect_op(")")
                return Inv(arg)
            return Var(tok.text)
        if self.at_op("("):
            self.advance()
            t = self.sum()
            self.expect_op(")")
            return t
        raise ParseError(f"expected a term, found {tok.text or 'end of input'!r}", tok.pos)


def parse_term_prefix(
    tokens: list[Token], start: int, sig: Signature | None
) -> tuple[Term, int]:
    """Parse a term starting at token index start; return (term, next index).

    Signature conformance is checked on the result; sig=None skips the
    check and admits every symbol, with '-' still desugaring to + and
    unary minus.  Used directly by the formula parser, which interleaves
    terms with logic symbols.
    """
    parser = _TermParser(tokens, sig)
    parser.i = start
    t = parser.sum()
    if sig is not None:
        check_conforms(t, sig)
    return t, parser.i


def parse_term(text: str, sig: Signature | None) -> Term:
    """Parse text into a term conforming to sig (None admits all symbols)."""
    tokens = tokenize(text)
    t, i = parse_term_prefix(tokens, 0, sig)
    tail = tokens[i]
    if tail.kind != "end":
        raise ParseError(f"unexpected {tail.text!r} after term", tail.pos)
    return t


# Precedence levels used both for parsing (implicitly, by the grammar above)
# and for minimal-parenthesis rendering.
_SUM, _PRODUCT, _UNARY, _POSTFIX, _ATOM = 1, 2, 3, 4, 5


def _prec(t: Term) -> int:
    if isinstance(t, (Add, Sub)):
        return _SUM
    if isinstance(t, (Mul, Div)):
        return _PRODUCT
    if isinstance(t, Neg):
        return _UNARY
    if isinstance(t, Inv):
        return _POSTFIX
    return _ATOM


def _as_numeral(t: Term) -> int | None:
    """n when t is exactly the canonical numeral for n, else None."""
    count = 0
    while isinstance(t, Add) and t.right == One():
        count += 1
        t = t.left
    if isinstance(t, One):
        return count + 1
    if isinstance(t, Zero) and count == 0:
        return 0
    return None


def _infix(t: Term, min_prec: int, numerals: bool) -> str:
    if numerals:
        n = _as_numeral(t)
        if n is not None:
            return str(n)
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, (Add, Sub)):
        op = "+" if isinstance(t, Add) else "-"
        body = f"{_infix(t.left, _SUM, numerals)} {op} {_infix(t.right, _PRODUCT, numerals)}"
        return f"({body})" if min_prec > _SUM else body
    if isinstance(t, (Mul, Div)):
        op = "*" if isinstance(t, Mul) else "/"
        left, right = (t.left, t.right) if isinstance(t, Mul) else (t.num, t.den)
        body = f"{_infix(left, _PRODUCT, numerals)} {op} {_infix(right, _UNARY, numerals)}"
        return f"({body})" if min_prec > _PRODUCT else body
    if isinstance(t, Neg):
        body = f"-{_infix(t.arg, _UNARY, numerals)}"
        return f"({body})" if min_prec > _UNARY else body
    assert isinstance(t, Inv)
    body = f"{_infix(t.arg, _ATOM, numerals)}^-1"
    return f"({body})" if min_prec > _POSTFIX else body


def _sexpr(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Add):
        return f"(+ {_sexpr(t.left)} {_sexpr(t.right)})"
    if isinstance(t, Mul):
        return f"(* {_sexpr(t.left)} {_sexpr(t.right)})"
    if isinstance(t, Sub):
        return f"(sub {_sexpr(t.left)} {_sexpr(t.right)})"
    if isinstance(t, Div):
        return f"(/ {_sexpr(t.num)} {_sexpr(t.den)})"
    if isinstance(t, Neg):
        return f"(neg {_sexpr(t.arg)})"
    assert isinstance(t, Inv)
    return f"(inv {_sexpr(t.arg)})"


def render(t: Term, style: str = "infix", numerals: bool = False) -> str:
    """Print a term.

    Infix output reparses to a structurally equal term.  With numerals=True
    canonical numeral subterms print as decimal literals instead of fully
    expanded sums; literals reparse to the canonical numerals, so the
    round-trip still holds, but the default stays expanded so that printed
    terms show their exact structure.
    """
    if style == "infix":
        return _infix(t, 0, numerals)
    if style == "sexpr":
        return _sexpr(t)
    raise ValueError(f"unknown render style: {style!r}")
