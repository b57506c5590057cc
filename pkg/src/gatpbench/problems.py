"""Constructive geometry problems: model, text format, validation.

One statement per line; '#' starts a comment; blank lines are ignored.
Lines of the form "# meta: ..." directly under the header are kept as the
problem's free-text description and survive render/parse round trips.

    problem IDENT
    fixed IDENT RAT RAT        introduce a point at exact coordinates
    free IDENT                 introduce an unconstrained point
    midpoint M A B             M is the midpoint of A and B
    on_line P A B              P lies on the line through A and B
    inter P A B C D            P is the intersection of lines AB and CD
    foot F P A B               F is the foot of the perpendicular from P to AB
    on_circle P O A            P lies on the circle centred at O through A
    circumcenter O A B C       O is the circumcenter of triangle ABC
    conjecture PRED ARGS       at least one, after all construction lines

Predicates: collinear A B C, parallel A B C D, perpendicular A B C D,
eqdist A B C D, midpoint_of M A B, on_circle_of P O A.

RAT is an integer or integer/integer, normalised to lowest terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


# ---------------------------------------------------------------------------
# errors and warnings

class ParseError(ValueError):
    """Base for all problem-text errors; carries 1-based line and column."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


class ProblemSyntaxError(ParseError):
    pass


class UndefinedPointError(ParseError):
    def __init__(self, line, col, name):
        super().__init__(line, col, f"point {name} is not defined")
        self.name = name


class DuplicatePointError(ParseError):
    def __init__(self, line, col, name):
        super().__init__(line, col, f"point {name} is already defined")
        self.name = name


class BadArityError(ParseError):
    def __init__(self, line, col, keyword, expected, got):
        super().__init__(line, col,
                         f"{keyword} takes {expected} points, got {got}")
        self.keyword = keyword


@dataclass(frozen=True)
class ValidationWarning:
    kind: str          # "degenerate-predicate" | "degenerate-step" | "unused-point"
    subject: str
    detail: str


# ---------------------------------------------------------------------------
# construction steps

@dataclass(frozen=True)
class Free:
    point: str

    def references(self):
        return ()


@dataclass(frozen=True)
class Fixed:
    point: str
    x: Fraction
    y: Fraction

    def references(self):
        return ()


@dataclass(frozen=True)
class Midpoint:
    point: str
    a: str
    b: str

    def references(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class OnLine:
    point: str
    a: str
    b: str

    def references(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class InterLL:
    point: str
    a: str
    b: str
    c: str
    d: str

    def references(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class Foot:
    point: str
    src: str
    a: str
    b: str

    def references(self):
        return (self.src, self.a, self.b)


@dataclass(frozen=True)
class OnCircle:
    point: str
    center: str
    through: str

    def references(self):
        return (self.center, self.through)


@dataclass(frozen=True)
class Circumcenter:
    point: str
    a: str
    b: str
    c: str

    def references(self):
        return (self.a, self.b, self.c)


ConstructionStep = (Free, Fixed, Midpoint, OnLine, InterLL, Foot, OnCircle,
                    Circumcenter)


# ---------------------------------------------------------------------------
# predicates

@dataclass(frozen=True)
class Collinear:
    a: str
    b: str
    c: str

    def points(self):
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class Parallel:
    a: str
    b: str
    c: str
    d: str

    def points(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class Perpendicular:
    a: str
    b: str
    c: str
    d: str

    def points(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class EqDist:
    a: str
    b: str
    c: str
    d: str

    def points(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class MidpointOf:
    m: str
    a: str
    b: str

    def points(self):
        return (self.m, self.a, self.b)


@dataclass(frozen=True)
class OnCircleOf:
    p: str
    center: str
    through: str

    def points(self):
        return (self.p, self.center, self.through)


Predicate = (Collinear, Parallel, Perpendicular, EqDist, MidpointOf,
             OnCircleOf)


@dataclass(frozen=True)
class Problem:
    id: str
    steps: tuple
    conjectures: tuple
    meta: str | None = None

    def __post_init__(self):
        if not self.conjectures:
            raise ValueError("a problem needs at least one conjecture")

    def points(self):
        return tuple(s.point for s in self.steps)


# ---------------------------------------------------------------------------
# parsing

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_RAT = re.compile(r"-?\d+(?:/\d+)?\Z")
_TOKEN = re.compile(r"\S+")
_META = re.compile(r"^#[ \t]?meta:[ \t]?(.*)$")

_STEP_KEYWORDS = {
    "fixed": 1, "free": 1, "midpoint": 3, "on_line": 3, "inter": 5,
    "foot": 4, "on_circle": 3, "circumcenter": 4,
}
_PRED_ARITY = {
    "collinear": 3, "parallel": 4, "perpendicular": 4, "eqdist": 4,
    "midpoint_of": 3, "on_circle_of": 3,
}


def _tokens(line: str):
    """(text, 1-based column) pairs, with any '#' comment stripped."""
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(line)]


def _parse_rational(tok: str, lineno: int, col: int) -> Fraction:
    if not _RAT.match(tok):
        raise ProblemSyntaxError(lineno, col, f"bad rational literal {tok!r}")
    if "/" in tok:
        num, den = tok.split("/")
        if int(den) == 0:
            raise ProblemSyntaxError(lineno, col, "zero denominator")
        return Fraction(int(num), int(den))
    return Fraction(int(tok))


def _require_ident(tok: str, lineno: int, col: int) -> str:
    if not _IDENT.match(tok):
        raise ProblemSyntaxError(lineno, col, f"bad identifier {tok!r}")
    return tok


def parse_problem(text: str) -> Problem:
    """Parse problem text; identical input bytes give identical Problems."""
    lines = text.splitlines()
    problem_id = None
    meta_lines: list[str] = []
    steps: list = []
    conjectures: list = []
    declared: set[str] = set()
    header_line = None
    last_line = 0

    def check_defined(name, lineno, col):
        _require_ident(name, lineno, col)
        if name not in declared:
            raise UndefinedPointError(lineno, col, name)
        return name

    def check_fresh(name, lineno, col):
        _require_ident(name, lineno, col)
        if name in declared:
            raise DuplicatePointError(lineno, col, name)
        return name

    for lineno, raw in enumerate(lines, start=1):
        if problem_id is not None and not steps and not conjectures:
            m = _META.match(raw.strip())
            if m:
                meta_lines.append(m.group(1))
                continue
        toks = _tokens(raw)
        if not toks:
            continue
        last_line = lineno
        keyword, kcol = toks[0]

        if problem_id is None:
            if keyword != "problem":
                raise ProblemSyntaxError(lineno, kcol,
                                         "expected 'problem IDENT' header")
            if len(toks) != 2:
                raise ProblemSyntaxError(lineno, kcol,
                                         "header is 'problem IDENT'")
            problem_id = _require_ident(toks[1][0], lineno, toks[1][1])
            header_line = lineno
            continue

        if keyword == "conjecture":
            if len(toks) < 2:
                raise ProblemSyntaxError(lineno, kcol,
                                         "conjecture needs a predicate")
            pred, pcol = toks[1]
            if pred not in _PRED_ARITY:
                raise ProblemSyntaxError(lineno, pcol,
                                         f"unknown predicate {pred!r}")
            args = toks[2:]
            want = _PRED_ARITY[pred]
            if len(args) != want:
                raise BadArityError(lineno, pcol, pred, want, len(args))
            names = [check_defined(t, lineno, c) for t, c in args]
            if pred == "collinear":
                conjectures.append(Collinear(*names))
            elif pred == "parallel":
                conjectures.append(Parallel(*names))
            elif pred == "perpendicular":
                conjectures.append(Perpendicular(*names))
            elif pred == "eqdist":
                conjectures.append(EqDist(*names))
            elif pred == "midpoint_of":
                conjectures.append(MidpointOf(*names))
            else:
                conjectures.append(OnCircleOf(*names))
            continue

        if keyword not in _STEP_KEYWORDS:
            raise ProblemSyntaxError(lineno, kcol,
                                     f"unknown statement {keyword!r}")
        if conjectures:
            raise ProblemSyntaxError(lineno, kcol,
                                     "construction statements must precede conjectures")
        args = toks[1:]

        if keyword == "fixed":
            if len(args) != 3:
                raise ProblemSyntaxError(lineno, kcol, "fixed takes IDENT RAT RAT")
            name = check_fresh(args[0][0], lineno, args[0][1])
            x = _parse_rational(args[1][0], lineno, args[1][1])
            y = _parse_rational(args[2][0], lineno, args[2][1])
            steps.append(Fixed(name, x, y))
        elif keyword == "free":
            if len(args) != 1:
                raise ProblemSyntaxError(lineno, kcol, "free takes IDENT")
            steps.append(Free(check_fresh(args[0][0], lineno, args[0][1])))
        else:
            want = _STEP_KEYWORDS[keyword]
            if len(args) != want:
                raise ProblemSyntaxError(
                    lineno, kcol, f"{keyword} takes {want} points, got {len(args)}")
            fresh = check_fresh(args[0][0], lineno, args[0][1])
            rest = [check_defined(t, lineno, c) for t, c in args[1:]]
            if keyword == "midpoint":
                steps.append(Midpoint(fresh, *rest))
            elif keyword == "on_line":
                steps.append(OnLine(fresh, *rest))
            elif keyword == "inter":
                if {rest[0], rest[1]} == {rest[2], rest[3]}:
                    raise ProblemSyntaxError(lineno, kcol,
                                             "inter: the two lines coincide")
                steps.append(InterLL(fresh, *rest))
            elif keyword == "foot":
                steps.append(Foot(fresh, *rest))
            elif keyword == "on_circle":
                steps.append(OnCircle(fresh, *rest))
            else:
                steps.append(Circumcenter(fresh, *rest))
        declared.add(steps[-1].point)

    if problem_id is None:
        raise ProblemSyntaxError(max(last_line, 1), 1, "missing problem header")
    if not conjectures:
        raise ProblemSyntaxError(last_line, 1, "missing conjecture")
    return Problem(problem_id, tuple(steps), tuple(conjectures),
                   "\n".join(meta_lines) if meta_lines else None)


# ---------------------------------------------------------------------------
# rendering

def _format_rational(q: Fraction) -> str:
    return str(q)  # lowest terms, sign on the numerator


def render_problem(p: Problem) -> str:
    """Canonical text; parse_problem(render_problem(p)) equals p."""
    out = [f"problem {p.id}"]
    if p.meta:
        out.extend(f"# meta: {line}" for line in p.meta.splitlines())
    for s in p.steps:
        if isinstance(s, Fixed):
            out.append(f"fixed {s.point} {_format_rational(s.x)} {_format_rational(s.y)}")
        elif isinstance(s, Free):
            out.append(f"free {s.point}")
        elif isinstance(s, Midpoint):
            out.append(f"midpoint {s.point} {s.a} {s.b}")
        elif isinstance(s, OnLine):
            out.append(f"on_line {s.point} {s.a} {s.b}")
        elif isinstance(s, InterLL):
            out.append(f"inter {s.point} {s.a} {s.b} {s.c} {s.d}")
        elif isinstance(s, Foot):
            out.append(f"foot {s.point} {s.src} {s.a} {s.b}")
        elif isinstance(s, OnCircle):
            out.append(f"on_circle {s.point} {s.center} {s.through}")
        elif isinstance(s, Circumcenter):
            out.append(f"circumcenter {s.point} {s.a} {s.b} {s.c}")
        else:
            raise TypeError(f"unknown step {s!r}")
    for c in p.conjectures:
        if isinstance(c, Collinear):
            out.append(f"conjecture collinear {c.a} {c.b} {c.c}")
        elif isinstance(c, Parallel):
            out.append(f"conjecture parallel {c.a} {c.b} {c.c} {c.d}")
        elif isinstance(c, Perpendicular):
            out.append(f"conjecture perpendicular {c.a} {c.b} {c.c} {c.d}")
        elif isinstance(c, EqDist):
            out.append(f"conjecture eqdist {c.a} {c.b} {c.c} {c.d}")
        elif isinstance(c, MidpointOf):
            out.append(f"conjecture midpoint_of {c.m} {c.a} {c.b}")
        elif isinstance(c, OnCircleOf):
            out.append(f"conjecture on_circle_of {c.p} {c.center} {c.through}")
        else:
            raise TypeError(f"unknown predicate {c!r}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# validation

def _degenerate_predicate(pred) -> str | None:
    """Reason the predicate translates to the zero polynomial, or None."""
    if isinstance(pred, Collinear):
        if len({pred.a, pred.b, pred.c}) < 3:
            return "repeated point makes collinearity vacuous"
    elif isinstance(pred, Parallel):
        if pred.a == pred.b or pred.c == pred.d:
            return "a zero-length segment is parallel to anything"
        if {pred.a, pred.b} == {pred.c, pred.d}:
            return "a line is trivially parallel to itself"
    elif isinstance(pred, Perpendicular):
        if pred.a == pred.b or pred.c == pred.d:
            return "a zero-length segment is perpendicular to anything"
    elif isinstance(pred, EqDist):
        if {pred.a, pred.b} == {pred.c, pred.d}:
            return "a segment always equals itself"
        if pred.a == pred.b and pred.c == pred.d:
            return "two zero-length segments are always equal"
    elif isinstance(pred, MidpointOf):
        if pred.m == pred.a == pred.b:
            return "a point is trivially the midpoint of itself"
    elif isinstance(pred, OnCircleOf):
        if pred.p == pred.through:
            return "the defining point is trivially on its circle"
    return None


def _degenerate_step(step) -> str | None:
    if isinstance(step, OnLine) and step.a == step.b:
        return "line through a single point is undetermined"
    if isinstance(step, InterLL) and (step.a == step.b or step.c == step.d):
        return "a defining line collapses to a point"
    if isinstance(step, Foot) and step.a == step.b:
        return "foot on a zero-length segment is undetermined"
    if isinstance(step, OnCircle) and step.center == step.through:
        return "circle of radius zero"
    if isinstance(step, Circumcenter) and len({step.a, step.b, step.c}) < 3:
        return "circumcenter of a degenerate triangle"
    return None


def validate_problem(p: Problem) -> list[ValidationWarning]:
    """Deterministic structural warnings; never raises on a parsed Problem."""
    warnings: list[ValidationWarning] = []
    for s in p.steps:
        reason = _degenerate_step(s)
        if reason:
            warnings.append(ValidationWarning("degenerate-step", s.point, reason))
    for i, c in enumerate(p.conjectures):
        reason = _degenerate_predicate(c)
        if reason:
            warnings.append(ValidationWarning(
                "degenerate-predicate", f"conjecture {i + 1}", reason))
    used: set[str] = set()
    for s in p.steps:
        used.update(s.references())
    for c in p.conjectures:
        used.update(c.points())
    for s in p.steps:
        if s.point not in used:
            warnings.append(ValidationWarning(
                "unused-point", s.point, "introduced but never referenced"))
    return warnings
