"""Parsers for the on-disk formats: fact files (.facts), domain files
(.dom), constraint libraries (.constraints) and theory files (.thy).

All formats are line based; ``#`` starts a comment.  Errors carry
1-based line and column numbers.

Fact file:

    @concept L(s1).
    @params s1: base=4, height=5.
    Row(a).
    @time 0: Fetch(s1,p1).

Domain file:

    keep-constant: "NWTop", "W"
    mode: SpRel(+obj, +obj, #dir)
    bounds: i=3 j=3 maxbody=20
    expand: Tower(B) where Height(B,H) -> place(B,0,k) for k in 0..H-1

Constraint library:

    constraint: Sub(x:int, y:int, n:int) means y - x = n

Theory file: one clause per line, ``Head :- Lit, Lit.``
"""

from __future__ import annotations

import re
from pathlib import Path

from .domain import ConstraintLibrary, ConstraintTemplate, Domain, ModeDecl
from .logic import (
    Clause,
    GroundExample,
    Literal,
    LogicError,
    Term,
    Theory,
    VAR_RE,
    intc,
    strc,
    var,
)
from .plans import ActionTemplate, Affine, CompositeRef, ExpansionRule

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"-?\d+")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, source: str = ""):
        where = f"{source}:" if source else "line "
        super().__init__(f"{where}{line}:{col}: {message}")
        self.line = line
        self.col = col


class _Scanner:
    def __init__(self, text: str, line_no: int, source: str = ""):
        self.text = text
        self.pos = 0
        self.line_no = line_no
        self.source = source

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line_no, self.pos + 1, self.source)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def try_eat(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.try_eat(token):
            raise self.error(f"expected {token!r}")

    def try_keyword(self, word: str) -> bool:
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if m and m.group() == word:
            self.pos = m.end()
            return True
        return False

    def ident(self, what: str = "identifier") -> str:
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def integer(self) -> int:
        self.skip_ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected integer")
        self.pos = m.end()
        return int(m.group())

    def quoted(self) -> str:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != '"':
            raise self.error("expected quoted string")
        i = self.pos + 1
        out = []
        while i < len(self.text):
            ch = self.text[i]
            if ch == "\\" and i + 1 < len(self.text):
                out.append(self.text[i + 1])
                i += 2
                continue
            if ch == '"':
                self.pos = i + 1
                return "".join(out)
            out.append(ch)
            i += 1
        raise self.error("unterminated string")

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def term(self) -> Term:
        self.skip_ws()
        ch = self.peek()
        if ch == '"':
            return strc(self.quoted())
        if ch.isdigit() or ch == "-":
            return intc(self.integer())
        name = self.ident("term")
        if VAR_RE.match(name):
            return var(name)
        return strc(name)

    def literal(self) -> Literal:
        pred = self.ident("predicate")
        args: list[Term] = []
        if self.try_eat("("):
            if not self.try_eat(")"):
                args.append(self.term())
                while self.try_eat(","):
                    args.append(self.term())
                self.expect(")")
        return Literal(pred, tuple(args))


def _strip_comment(raw: str) -> str:
    """Drop a # comment.  The hash must start the line or be surrounded
    by whitespace, so constant-slot marks like #dir stay intact."""
    if raw.lstrip().startswith("#"):
        return ""
    for idx, ch in enumerate(raw):
        if ch != "#":
            continue
        before = raw[idx - 1] if idx else " "
        after = raw[idx + 1] if idx + 1 < len(raw) else " "
        if before in " \t" and after in " \t":
            return raw[:idx]
    return raw


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if line.strip():
            yield i, line


# ---------------------------------------------------------------------------
# fact files
# ---------------------------------------------------------------------------


def parse_example(text: str, source: str = "") -> GroundExample:
    head: Literal | None = None
    params: list[tuple[str, int]] = []
    facts: list[Literal] = []
    times: list[tuple[Literal, int]] = []
    head_line = 0

    for line_no, line in _lines(text):
        sc = _Scanner(line, line_no, source)
        if sc.try_eat("@concept"):
            if head is not None:
                raise sc.error(f"duplicate @concept header (first at line {head_line})")
            lit = sc.literal()
            sc.expect(".")
            if not lit.is_ground():
                raise sc.error(f"variable in concept head {lit.render()}")
            head = lit
            head_line = line_no
            continue
        if sc.try_eat("@params"):
            if head is None:
                raise sc.error("@params before @concept")
            owner = sc.ident("instance id")
            if head.args and head.args[0].render() != owner:
                raise sc.error(
                    f"@params id {owner!r} does not match concept instance"
                    f" {head.args[0].render()!r}"
                )
            sc.expect(":")
            while True:
                name = sc.ident("parameter name")
                sc.expect("=")
                params.append((name, sc.integer()))
                if not sc.try_eat(","):
                    break
            sc.try_eat(".")
            if not sc.at_end():
                raise sc.error("trailing input after @params")
            continue
        t: int | None = None
        if sc.try_eat("@time"):
            t = sc.integer()
            sc.expect(":")
        lit = sc.literal()
        sc.expect(".")
        if not sc.at_end():
            raise sc.error("trailing input after fact")
        if not lit.is_ground():
            v = next(a for a in lit.args if a.is_var)
            raise sc.error(f"variable {v.render()} in fact {lit.render()}")
        if lit not in facts:
            facts.append(lit)
            if t is not None:
                times.append((lit, t))

    if head is None:
        raise ParseError("missing @concept header", 1, 1, source)
    return GroundExample(head, tuple(params), tuple(facts), tuple(times))


def render_example(x: GroundExample) -> str:
    out = [f"@concept {x.head.render()}."]
    if x.params:
        owner = x.head.args[0].render() if x.head.args else "x"
        pairs = ", ".join(f"{n}={v}" for n, v in x.params)
        out.append(f"@params {owner}: {pairs}.")
    tmap = x.time_map()
    for f in x.sorted_facts():
        if f in tmap:
            out.append(f"@time {tmap[f]}: {f.render()}.")
        else:
            out.append(f"{f.render()}.")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# theory files
# ---------------------------------------------------------------------------


def parse_clause_line(line: str, line_no: int = 1, source: str = "") -> Clause:
    sc = _Scanner(line, line_no, source)
    head = sc.literal()
    body: list[Literal] = []
    if sc.try_eat(":-"):
        body.append(sc.literal())
        while sc.try_eat(","):
            body.append(sc.literal())
    sc.expect(".")
    if not sc.at_end():
        raise sc.error("trailing input after clause")
    return Clause(head, tuple(body))


def parse_theory(text: str, source: str = "") -> Theory:
    clauses = [parse_clause_line(line, n, source) for n, line in _lines(text)]
    if not clauses:
        raise ParseError("empty theory", 1, 1, source)
    return Theory(tuple(clauses))


# ---------------------------------------------------------------------------
# domain files
# ---------------------------------------------------------------------------


def _parse_affine(sc: _Scanner) -> Affine:
    sc.skip_ws()
    ch = sc.peek()
    if ch.isdigit() or ch == "-":
        first = sc.integer()
        if sc.try_eat("*"):
            name = sc.ident("loop variable")
            off = 0
            if sc.try_eat("+"):
                off = sc.integer()
            elif sc.try_eat("-"):
                off = -sc.integer()
            return Affine(first, name, off)
        return Affine(0, None, first)
    name = sc.ident("name")
    off = 0
    if sc.try_eat("+"):
        off = sc.integer()
    elif sc.try_eat("-"):
        off = -sc.integer()
    return Affine(1, name, off)


def _parse_expand(sc: _Scanner) -> ExpansionRule:
    pred = sc.ident("composite predicate")
    head_vars: list[str] = []
    sc.expect("(")
    if not sc.try_eat(")"):
        head_vars.append(sc.ident("variable"))
        while sc.try_eat(","):
            head_vars.append(sc.ident("variable"))
        sc.expect(")")
    where: list[Literal] = []
    if sc.try_keyword("where"):
        where.append(sc.literal())
        while sc.try_eat(","):
            where.append(sc.literal())
    sc.expect("->")
    items: list[ActionTemplate | CompositeRef] = []
    while True:
        name = sc.ident("action or composite name")
        args: list[Affine] = []
        names: list[str] = []
        sc.expect("(")
        if not sc.try_eat(")"):
            while True:
                a = _parse_affine(sc)
                args.append(a)
                names.append(a.ref or "")
                if not sc.try_eat(","):
                    break
            sc.expect(")")
        if name[0].isupper():
            if any(a.ref is None or a.coef != 1 or a.off != 0 for a in args):
                raise sc.error("composite reference takes plain variable arguments")
            items.append(CompositeRef(name, tuple(names)))
        else:
            loop = None
            if sc.try_keyword("for"):
                lv = sc.ident("loop variable")
                if not sc.try_keyword("in"):
                    raise sc.error("expected 'in'")
                lo = _parse_affine(sc)
                sc.expect("..")
                hi = _parse_affine(sc)
                loop = (lv, lo, hi)
            items.append(ActionTemplate(name, tuple(args), loop))
        if not sc.try_eat(";"):
            break
    if not sc.at_end():
        raise sc.error("trailing input after expansion rule")
    return ExpansionRule(pred, tuple(head_vars), tuple(where), tuple(items))


def parse_domain(text: str, source: str = "") -> Domain:
    modes: dict[str, ModeDecl] = {}
    rules: list[ExpansionRule] = []
    keep: set[str] = set()
    bounds = {"i": 3, "j": 3, "maxbody": 20}

    for line_no, line in _lines(text):
        sc = _Scanner(line, line_no, source)
        if sc.try_eat("keep-constant:"):
            while True:
                keep.add(sc.quoted() if sc.peek() == '"' else sc.ident("constant"))
                if not sc.try_eat(","):
                    break
            continue
        if sc.try_eat("mode:"):
            pred = sc.ident("predicate")
            slots: list[tuple[str, str]] = []
            sc.expect("(")
            if not sc.try_eat(")"):
                while True:
                    sc.skip_ws()
                    mark = sc.text[sc.pos : sc.pos + 1]
                    if mark not in ("+", "-", "#"):
                        raise sc.error("expected mode mark +, - or #")
                    sc.pos += 1
                    slots.append((mark, sc.ident("type")))
                    if not sc.try_eat(","):
                        break
                sc.expect(")")
            recall = 0
            if sc.try_keyword("recall"):
                sc.expect("=")
                recall = sc.integer()
            if pred in modes:
                raise sc.error(f"duplicate mode for {pred}")
            modes[pred] = ModeDecl(pred, tuple(slots), recall)
            continue
        if sc.try_eat("bounds:"):
            while not sc.at_end():
                key = sc.ident("bound name")
                if key not in bounds:
                    raise sc.error(f"unknown bound {key!r}")
                sc.expect("=")
                bounds[key] = sc.integer()
            continue
        if sc.try_eat("expand:"):
            rules.append(_parse_expand(sc))
            continue
        raise sc.error("expected keep-constant:, mode:, bounds: or expand:")

    return Domain(
        modes=modes,
        rules=tuple(rules),
        keep_constants=frozenset(keep),
        depth_bound=bounds["i"],
        arity_bound=bounds["j"],
        max_body=bounds["maxbody"],
    )


# ---------------------------------------------------------------------------
# constraint libraries
# ---------------------------------------------------------------------------


def parse_constraints(text: str, source: str = "") -> ConstraintLibrary:
    templates: list[ConstraintTemplate] = []
    for line_no, line in _lines(text):
        sc = _Scanner(line, line_no, source)
        sc.expect("constraint:")
        pred = sc.ident("constraint predicate")
        types: list[str] = []
        names: list[str] = []
        sc.expect("(")
        while True:
            names.append(sc.ident("argument name"))
            sc.expect(":")
            types.append(sc.ident("type"))
            if not sc.try_eat(","):
                break
        sc.expect(")")
        if not sc.try_keyword("means"):
            raise sc.error("expected 'means'")
        semantics = sc.text[sc.pos :].strip()
        try:
            templates.append(
                ConstraintTemplate(pred, tuple(types), semantics, tuple(names))
            )
        except LogicError as err:
            raise ParseError(str(err), line_no, 1, source) from err
    if not templates:
        raise ParseError("empty constraint library", 1, 1, source)
    return ConstraintLibrary(tuple(templates))


# ---------------------------------------------------------------------------
# loaders
# ---------------------------------------------------------------------------


def load_example(path: str | Path) -> GroundExample:
    p = Path(path)
    return parse_example(p.read_text(), source=p.name)


def load_theory(path: str | Path) -> Theory:
    p = Path(path)
    return parse_theory(p.read_text(), source=p.name)


def load_domain(path: str | Path) -> Domain:
    p = Path(path)
    return parse_domain(p.read_text(), source=p.name)


def load_constraints(path: str | Path) -> ConstraintLibrary:
    p = Path(path)
    return parse_constraints(p.read_text(), source=p.name)
