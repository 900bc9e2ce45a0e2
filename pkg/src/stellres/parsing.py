"""Constellation text and JSON formats.

Text grammar:

    constellation := (star (";" | newline))*
    star          := "[" ray ("," ray)* "]"
    ray           := ("+" | "-") ident sugar? | term
    sugar         := "(" terms ")" | "." term          (+c.t means +c(t))
    term          := ident ("(" term ("," term)* ")")?

Identifiers are [A-Za-z0-9_]+; those starting with an uppercase letter or
with "?" are variables, everything else is a function symbol. "#" starts a
comment running to end of line. Newlines separate stars only outside
brackets, so a star may span lines.

The JSON mirror is {"stars": [{"rays": [{"polarity": "+"|"-"|null,
"term": {"var": name} | {"fn": name, "args": [...]}}]}]}.
"""

from __future__ import annotations

import json

from stellres import constellations as cons
from stellres.terms import Term, VAR


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


_PUNCT = {"[": "LBRACK", "]": "RBRACK", "(": "LPAREN", ")": "RPAREN",
          ",": "COMMA", ";": "SEP", "+": "PLUS", "-": "MINUS", ".": "DOT"}


def _tokenise(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    depth = 0
    while i < len(text):
        ch = text[i]
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            if depth == 0:
                tokens.append(_Token("SEP", "\n", line, col))
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            if ch in "[(":
                depth += 1
            elif ch in "])":
                depth = max(0, depth - 1)
            tokens.append(_Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isalnum() or ch in "_?":
            start = i
            startcol = col
            if ch == "?":
                i += 1
                col += 1
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            word = text[start:i]
            if word in ("?", ""):
                raise ParseError("empty identifier", line, startcol)
            tokens.append(_Token("IDENT", word, line, startcol))
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


def is_variable_name(name: str) -> bool:
    return name.startswith("?") or name[0].isupper()


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenise(text)
        self.pos = 0
        self.arities: dict[str, tuple[int, int, int]] = {}  # symbol -> (arity, line, col)

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, got {tok.text!r}", tok.line, tok.col)
        return tok

    def _register(self, symbol: str, arity: int, tok: _Token):
        seen = self.arities.get(symbol)
        if seen is None:
            self.arities[symbol] = (arity, tok.line, tok.col)
        elif seen[0] != arity:
            raise ParseError(
                f"symbol {symbol!r} used with arity {arity} but"
                f" has arity {seen[0]} (first used at {seen[1]}:{seen[2]})",
                tok.line, tok.col)

    def parse_term(self) -> Term:
        tok = self.expect("IDENT")
        name = tok.text
        if is_variable_name(name):
            return (VAR, name)
        args = []
        if self.peek().kind == "LPAREN":
            self.next()
            args.append(self.parse_term())
            while self.peek().kind == "COMMA":
                self.next()
                args.append(self.parse_term())
            self.expect("RPAREN")
        self._register(name, len(args), tok)
        return (name,) + tuple(args)

    def parse_ray(self):
        tok = self.peek()
        if tok.kind in ("PLUS", "MINUS"):
            self.next()
            polarity = cons.POS if tok.kind == "PLUS" else cons.NEG
            head = self.expect("IDENT")
            if is_variable_name(head.text):
                raise ParseError("a colour cannot be a variable", head.line, head.col)
            if self.peek().kind == "DOT":
                self.next()
                inner = self.parse_term()
                self._register(head.text, 1, head)
                return (polarity, (head.text, inner))
            args = []
            if self.peek().kind == "LPAREN":
                self.next()
                args.append(self.parse_term())
                while self.peek().kind == "COMMA":
                    self.next()
                    args.append(self.parse_term())
                self.expect("RPAREN")
            self._register(head.text, len(args), head)
            return (polarity, (head.text,) + tuple(args))
        return (cons.NONE, self.parse_term())

    def parse_star(self):
        open_tok = self.expect("LBRACK")
        if self.peek().kind == "RBRACK":
            raise ParseError("a star holds at least one ray", open_tok.line, open_tok.col)
        rays = [self.parse_ray()]
        while self.peek().kind == "COMMA":
            self.next()
            rays.append(self.parse_ray())
        self.expect("RBRACK")
        return tuple(rays)

    def parse_constellation(self):
        stars = []
        while True:
            while self.peek().kind == "SEP":
                self.next()
            if self.peek().kind == "EOF":
                break
            stars.append(self.parse_star())
            tok = self.peek()
            if tok.kind not in ("SEP", "EOF"):
                raise ParseError(f"expected star separator, got {tok.text!r}",
                                 tok.line, tok.col)
        return tuple(stars)


def parse_constellation(text: str) -> cons.Constellation:
    """Parse the text format; raises ParseError with line:col on bad input."""
    sigma = _Parser(text).parse_constellation()
    cons.signature_of(sigma)  # cross-star arity check
    return sigma


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    term = parser.parse_term()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return term


_DISPLAY = ["X", "Y", "Z", "U", "V", "W"]


def _display_names(star) -> dict:
    mapping: dict = {}

    def walk(t):
        if t[0] == VAR:
            if t[1] not in mapping:
                n = len(mapping)
                mapping[t[1]] = _DISPLAY[n] if n < len(_DISPLAY) else f"X{n}"
        else:
            for arg in t[1:]:
                walk(arg)

    for _, term in star:
        walk(term)
    return mapping


def term_to_text(t: Term, names: dict | None = None) -> str:
    if t[0] == VAR:
        if names and t[1] in names:
            return names[t[1]]
        key = t[1]
        return key if isinstance(key, str) else "V" + "_".join(str(p) for p in _flat(key))
    if len(t) == 1:
        return t[0]
    return t[0] + "(" + ", ".join(term_to_text(arg, names) for arg in t[1:]) + ")"


def _flat(key):
    if isinstance(key, tuple):
        for part in key:
            yield from _flat(part)
    else:
        yield key


def ray_to_text(r, names: dict | None = None) -> str:
    pol, term = r
    sign = {cons.POS: "+", cons.NEG: "-", cons.NONE: ""}[pol]
    return sign + term_to_text(term, names)


def star_to_text(s, rename: bool = False) -> str:
    names = _display_names(s) if rename else None
    return "[" + ", ".join(ray_to_text(r, names) for r in s) + "]"


def constellation_to_text(sigma, rename: bool = False) -> str:
    """One star per line; rename=True prints canonical display variables."""
    return "\n".join(star_to_text(s, rename) for s in sigma)


def term_to_json(t: Term):
    if t[0] == VAR:
        key = t[1]
        return {"var": key if isinstance(key, str) else "V" + "_".join(str(p) for p in _flat(key))}
    if len(t) == 1:
        return {"fn": t[0]}
    return {"fn": t[0], "args": [term_to_json(arg) for arg in t[1:]]}


def term_from_json(obj) -> Term:
    if "var" in obj:
        return (VAR, obj["var"])
    return (obj["fn"],) + tuple(term_from_json(a) for a in obj.get("args", []))


def constellation_to_json(sigma) -> dict:
    return {"stars": [
        {"rays": [
            {"polarity": {cons.POS: "+", cons.NEG: "-", cons.NONE: None}[pol],
             "term": term_to_json(term)}
            for pol, term in s]}
        for s in sigma]}


def constellation_from_json(obj) -> cons.Constellation:
    stars = []
    for s in obj["stars"]:
        rays = []
        for r in s["rays"]:
            pol = {"+": cons.POS, "-": cons.NEG, None: cons.NONE}[r["polarity"]]
            rays.append((pol, term_from_json(r["term"])))
        stars.append(tuple(rays))
    sigma = tuple(stars)
    for s in sigma:
        cons.star(*s)
    cons.signature_of(sigma)
    return sigma


def parse_constellation_json(text: str) -> cons.Constellation:
    try:
        return constellation_from_json(json.loads(text))
    except (KeyError, TypeError, AttributeError, json.JSONDecodeError) as err:
        raise ParseError(f"malformed constellation JSON: {err}", 1, 1) from err
