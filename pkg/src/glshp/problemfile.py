"""Plain-text problem declarations.

A file is a list of ``[section]`` headers followed by ``key = value`` lines;
``#`` starts a comment. Sections::

    [problem]       name, kind (single | coupled)
    [orders]        alpha, beta
    [forcing.u]     series = <series>
    [forcing.v]     series = <series>          (coupled only)
    [nonlinearity]  u = <terms>, v = <terms>
    [ic.u]          0 = <series>, 1 = <series> (derivative order in x at x = 0)
    [ic.v]          as above                    (coupled only)
    [exact]         u = <series>, v = <series> (optional)
    [basis]         order = x, t, mixed ; witness = <x>, <t>

A series is a sum of terms ``c * x^(e) * t^(e)`` joined by ``+`` or ``-``,
with exponents such as ``2+2*a`` or ``-1/2*b`` (``a`` and ``b`` stand for the
orders). Factors may be omitted or repeated; ``0`` is the empty series.
Nonlinear terms read ``c * u*u_tt`` with tags ``u*u_tt``, ``v*u_tt``,
``u*v_tt``, ``v*v_tt``.
"""

from __future__ import annotations

import re
from pathlib import Path

from .fracalg import ZERO, Exponent, FracSeries, format_series
from .problems import GROUPS, NonlinearTerm, ProblemSpec, validate


class ProblemFileError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_SPACE = re.compile(r"\s*")
_TAG = re.compile(r"([A-Za-z_]\w*)\s*\*\s*([A-Za-z_]\w*)")


class _Cursor:
    def __init__(self, text: str, line: int, col0: int):
        self.text = text.replace("−", "-")
        self.pos = 0
        self.line = line
        self.col0 = col0

    def skip(self):
        self.pos = _SPACE.match(self.text, self.pos).end()

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg: str, pos: int | None = None):
        p = self.pos if pos is None else pos
        return ProblemFileError(msg, self.line, self.col0 + p + 1)

    def number(self) -> float:
        self.skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise self.error("expected a number")
        self.pos = m.end()
        return float(m.group())

    def exponent(self) -> Exponent:
        self.skip()
        if self.peek() != "^":
            return Exponent(1)
        self.pos += 1
        if self.peek() != "(":
            raise self.error("expected '(' after '^'")
        start = self.pos + 1
        end = self.text.find(")", start)
        if end < 0:
            raise self.error("unclosed '('")
        try:
            e = Exponent.parse(self.text[start:end])
        except ValueError as exc:
            off = exc.args[1] if len(exc.args) > 1 else 0
            raise self.error(exc.args[0], start + off) from None
        self.pos = end + 1
        return e


def parse_series(text: str, line: int = 0, col0: int = 0) -> FracSeries:
    cur = _Cursor(text, line, col0)
    terms = []
    first = True
    while True:
        c = cur.peek()
        if not c:
            if first:
                raise cur.error("empty series")
            break
        sign = 1.0
        if c in "+-":
            sign = -1.0 if c == "-" else 1.0
            cur.pos += 1
        elif not first:
            raise cur.error(f"expected '+' or '-', found {c!r}")
        coeff, xe, te = sign, ZERO, ZERO
        while True:
            c = cur.peek()
            if c == "x":
                cur.pos += 1
                xe = xe + cur.exponent()
            elif c == "t":
                cur.pos += 1
                te = te + cur.exponent()
            elif c and (c.isdigit() or c == "."):
                coeff *= cur.number()
            else:
                raise cur.error(f"expected a number, x or t, found {c!r}" if c else "unexpected end of series")
            if cur.peek() == "*":
                cur.pos += 1
                continue
            break
        terms.append((coeff, xe, te))
        first = False
    return FracSeries(terms)


def parse_terms(text: str, line: int = 0, col0: int = 0) -> tuple[NonlinearTerm, ...]:
    cur = _Cursor(text, line, col0)
    out = []
    if cur.text.strip() == "0":
        return ()
    first = True
    while cur.peek():
        c = cur.peek()
        sign = 1.0
        if c in "+-":
            sign = -1.0 if c == "-" else 1.0
            cur.pos += 1
        elif not first:
            raise cur.error(f"expected '+' or '-', found {c!r}")
        coeff = sign
        c = cur.peek()
        if c and (c.isdigit() or c == "."):
            coeff *= cur.number()
            if cur.peek() != "*":
                raise cur.error("expected '*' after the coefficient")
            cur.pos += 1
            cur.skip()
        m = _TAG.match(cur.text, cur.pos)
        if not m:
            raise cur.error("expected a term like u*u_tt")
        tag = f"{m.group(1)}*{m.group(2)}"
        try:
            out.append(NonlinearTerm.from_tag(coeff, tag))
        except ValueError as exc:
            raise cur.error(str(exc)) from None
        cur.pos = m.end()
        first = False
    if first:
        raise cur.error("empty term list")
    return tuple(out)


def _float(value: str, line: int, col: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ProblemFileError(f"expected a number, found {value!r}", line, col) from None


_SECTIONS = ("problem", "orders", "forcing.u", "forcing.v", "nonlinearity", "ic.u", "ic.v", "exact", "basis")
_KEYS = {
    "problem": ("name", "kind"),
    "orders": ("alpha", "beta"),
    "forcing.u": ("series",),
    "forcing.v": ("series",),
    "nonlinearity": ("u", "v"),
    "ic.u": ("0", "1"),
    "ic.v": ("0", "1"),
    "exact": ("u", "v"),
    "basis": ("order", "witness"),
}


def parse_problem(text: str, *, check: bool = True) -> ProblemSpec:
    """Parse a problem declaration. With ``check``, validation diagnostics raise."""
    sections: dict[str, dict[str, tuple[str, int, int]]] = {}
    current = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        stripped = body.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ProblemFileError("unterminated section header", ln, len(body) + 1)
            name = stripped[1:-1].strip()
            if name not in _SECTIONS:
                raise ProblemFileError(f"unknown section [{name}]", ln, body.index("[") + 1)
            if name in sections:
                raise ProblemFileError(f"duplicate section [{name}]", ln, body.index("[") + 1)
            current = name
            sections[name] = {}
            continue
        if current is None:
            raise ProblemFileError("entry before any section header", ln, 1)
        if "=" not in body:
            raise ProblemFileError("expected 'key = value'", ln, len(body) - len(body.lstrip()) + 1)
        eq = body.index("=")
        key = body[:eq].strip()
        if key not in _KEYS[current]:
            raise ProblemFileError(f"unknown key {key!r} in [{current}]", ln, len(body) - len(body.lstrip()) + 1)
        if key in sections[current]:
            raise ProblemFileError(f"duplicate key {key!r} in [{current}]", ln, len(body) - len(body.lstrip()) + 1)
        vstart = eq + 1 + (len(body[eq + 1:]) - len(body[eq + 1:].lstrip()))
        sections[current][key] = (body[vstart:], ln, vstart)

    def need(sec, key):
        if sec not in sections or key not in sections[sec]:
            raise ProblemFileError(f"missing {key!r} in [{sec}]")
        return sections[sec][key]

    name, *_ = need("problem", "name")
    kind, *_ = need("problem", "kind")
    orders = sections.get("orders", {})
    alpha = _float(orders["alpha"][0], orders["alpha"][1], orders["alpha"][2] + 1) if "alpha" in orders else 1.0
    beta = _float(orders["beta"][0], orders["beta"][1], orders["beta"][2] + 1) if "beta" in orders else 1.0
    fu = parse_series(*need("forcing.u", "series"))
    fv = parse_series(*sections["forcing.v"]["series"]) if "series" in sections.get("forcing.v", {}) else None
    nonlin = {w: parse_terms(*v) for w, v in sections.get("nonlinearity", {}).items()}
    ics = {}
    for w in ("u", "v"):
        sec = sections.get(f"ic.{w}")
        if sec is not None:
            ics[w] = tuple((int(k), parse_series(*v)) for k, v in sec.items())
    exact = None
    if "exact" in sections:
        ex = sections["exact"]
        exact = tuple(parse_series(*ex[w]) for w in ("u", "v") if w in ex)
    basis = sections.get("basis", {})
    order = GROUPS
    if "order" in basis:
        order = tuple(part.strip() for part in basis["order"][0].split(","))
    witness = (0.2, 0.5)
    if "witness" in basis:
        text_w, ln, col = basis["witness"]
        parts = text_w.split(",")
        if len(parts) != 2:
            raise ProblemFileError("witness needs two numbers 'x, t'", ln, col + 1)
        witness = (_float(parts[0].strip(), ln, col + 1), _float(parts[1].strip(), ln, col + 1))
    spec = ProblemSpec(
        name=name.strip(),
        kind=kind.strip(),
        alpha=alpha,
        beta=beta,
        forcing_u=fu,
        forcing_v=fv,
        nonlinearity=nonlin,
        ics=ics,
        exact_at_one=exact,
        basis_order=order,
        witness=witness,
    )
    if check:
        diags = validate(spec)
        if diags:
            raise ProblemFileError("invalid problem: " + "; ".join(diags))
    return spec


def parse_problem_file(path, *, check: bool = True) -> ProblemSpec:
    return parse_problem(Path(path).read_text(encoding="utf-8"), check=check)


def _terms_text(terms) -> str:
    out = []
    for i, t in enumerate(terms):
        sign = "-" if t.coeff < 0 else "+"
        body = f"{abs(t.coeff)!r} * {t.tag}"
        out.append(("-" if sign == "-" else "") + body if i == 0 else f" {sign} {body}")
    return "".join(out) if out else "0"


def dump_problem(spec: ProblemSpec) -> str:
    lines = [
        "[problem]",
        f"name = {spec.name}",
        f"kind = {spec.kind}",
        "",
        "[orders]",
        f"alpha = {spec.alpha!r}",
        f"beta = {spec.beta!r}",
        "",
        "[forcing.u]",
        f"series = {format_series(spec.forcing_u)}",
        "",
    ]
    if spec.forcing_v is not None:
        lines += ["[forcing.v]", f"series = {format_series(spec.forcing_v)}", ""]
    if spec.nonlinearity:
        lines.append("[nonlinearity]")
        lines += [f"{w} = {_terms_text(terms)}" for w, terms in spec.nonlinearity.items()]
        lines.append("")
    for w, ics in spec.ics.items():
        lines.append(f"[ic.{w}]")
        lines += [f"{k} = {format_series(s)}" for k, s in ics]
        lines.append("")
    if spec.exact_at_one is not None:
        lines.append("[exact]")
        lines += [f"{w} = {format_series(s)}" for w, s in zip(("u", "v"), spec.exact_at_one)]
        lines.append("")
    lines += [
        "[basis]",
        f"order = {', '.join(spec.basis_order)}",
        f"witness = {spec.witness[0]!r}, {spec.witness[1]!r}",
    ]
    return "\n".join(lines) + "\n"


__all__ = ["ProblemFileError", "dump_problem", "parse_problem", "parse_problem_file", "parse_series", "parse_terms"]
