"""Turn a constructive problem into polynomial hypotheses and conclusions.

Coordinates follow the construction: Fixed points get exact constants, each
Free point two fresh parameters u*, and every constrained point gets either
a parameter/dependent pair (semi-free constructors: on_line, on_circle take
the abscissa as a free parameter) or two dependents.  Hypothesis equations
are emitted in construction order, so step i never mentions a dependent
introduced later.  Constructor-level solvability assumptions (line AB not
vertical, lines not parallel, base points distinct, triangle not flat) are
collected as ndg hints alongside the system.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import problems as pr
from .polynomials import Polynomial, as_polynomial

PARAM = "param"
DEPENDENT = "dependent"


class AlgebraizeError(Exception):
    pass


class DegenerateConstructionError(AlgebraizeError):
    """A step's equations do not constrain the point it introduces."""


@dataclass(frozen=True)
class Variable:
    name: str        # "u3" or "x5"
    kind: str        # PARAM or DEPENDENT
    index: int       # 1-based within its kind, dense in construction order
    point: str
    axis: str        # "x" or "y"


@dataclass(frozen=True)
class PolynomialSystem:
    hypotheses: tuple
    conclusions: tuple
    params: tuple
    dependents: tuple
    ndg_hints: tuple
    assignment: dict          # point -> (coord, coord); each an exact constant or Variable
    problem: pr.Problem


def _coord_poly(c) -> Polynomial:
    if isinstance(c, Variable):
        return Polynomial.variable(c.name)
    return as_polynomial(c)


class _Coords:
    """Coordinate lookup plus the common geometric polynomial forms."""

    def __init__(self, assignment):
        self.assignment = assignment

    def x(self, p: str) -> Polynomial:
        return _coord_poly(self.assignment[p][0])

    def y(self, p: str) -> Polynomial:
        return _coord_poly(self.assignment[p][1])

    def cross(self, a, b, c, d) -> Polynomial:
        """(b - a) x (d - c); zero iff the segments are parallel."""
        return ((self.x(b) - self.x(a)) * (self.y(d) - self.y(c))
                - (self.y(b) - self.y(a)) * (self.x(d) - self.x(c)))

    def dot(self, a, b, c, d) -> Polynomial:
        """(b - a) . (d - c); zero iff the segments are perpendicular."""
        return ((self.x(b) - self.x(a)) * (self.x(d) - self.x(c))
                + (self.y(b) - self.y(a)) * (self.y(d) - self.y(c)))

    def dist2(self, a, b) -> Polynomial:
        return ((self.x(b) - self.x(a)) ** 2 + (self.y(b) - self.y(a)) ** 2)

    def collinear(self, p, a, b) -> Polynomial:
        return self.cross(p, a, p, b)


def translate_predicate(pred, assignment) -> list[Polynomial]:
    """Polynomial form(s) of a predicate; degenerate ones become zero."""
    co = _Coords(assignment)
    if isinstance(pred, pr.Collinear):
        return [co.collinear(pred.a, pred.b, pred.c)]
    if isinstance(pred, pr.Parallel):
        return [co.cross(pred.a, pred.b, pred.c, pred.d)]
    if isinstance(pred, pr.Perpendicular):
        return [co.dot(pred.a, pred.b, pred.c, pred.d)]
    if isinstance(pred, pr.EqDist):
        return [co.dist2(pred.a, pred.b) - co.dist2(pred.c, pred.d)]
    if isinstance(pred, pr.MidpointOf):
        return [2 * co.x(pred.m) - co.x(pred.a) - co.x(pred.b),
                2 * co.y(pred.m) - co.y(pred.a) - co.y(pred.b)]
    if isinstance(pred, pr.OnCircleOf):
        return [co.dist2(pred.center, pred.p)
                - co.dist2(pred.center, pred.through)]
    raise TypeError(f"unknown predicate {pred!r}")


def algebraize(problem: pr.Problem) -> PolynomialSystem:
    assignment: dict = {}
    params: list[Variable] = []
    dependents: list[Variable] = []
    hypotheses: list[Polynomial] = []
    ndg_hints: list[Polynomial] = []
    co = _Coords(assignment)

    def new_param(point, axis):
        v = Variable(f"u{len(params) + 1}", PARAM, len(params) + 1, point, axis)
        params.append(v)
        return v

    def new_dep(point, axis):
        v = Variable(f"x{len(dependents) + 1}", DEPENDENT,
                     len(dependents) + 1, point, axis)
        dependents.append(v)
        return v

    for step in problem.steps:
        p = step.point
        added: list[Polynomial] = []
        introduced: list[Variable] = []

        if isinstance(step, pr.Fixed):
            assignment[p] = (step.x, step.y)
        elif isinstance(step, pr.Free):
            assignment[p] = (new_param(p, "x"), new_param(p, "y"))
        elif isinstance(step, pr.Midpoint):
            vx, vy = new_dep(p, "x"), new_dep(p, "y")
            introduced = [vx, vy]
            assignment[p] = (vx, vy)
            added = [2 * co.x(p) - co.x(step.a) - co.x(step.b),
                     2 * co.y(p) - co.y(step.a) - co.y(step.b)]
        elif isinstance(step, pr.OnLine):
            vx = new_param(p, "x")
            vy = new_dep(p, "y")
            introduced = [vy]
            assignment[p] = (vx, vy)
            added = [co.collinear(p, step.a, step.b)]
            ndg_hints.append(co.x(step.b) - co.x(step.a))
        elif isinstance(step, pr.InterLL):
            vx, vy = new_dep(p, "x"), new_dep(p, "y")
            introduced = [vx, vy]
            assignment[p] = (vx, vy)
            added = [co.collinear(p, step.a, step.b),
                     co.collinear(p, step.c, step.d)]
            ndg_hints.append(co.cross(step.a, step.b, step.c, step.d))
        elif isinstance(step, pr.Foot):
            vx, vy = new_dep(p, "x"), new_dep(p, "y")
            introduced = [vx, vy]
            assignment[p] = (vx, vy)
            added = [co.collinear(p, step.a, step.b),
                     co.dot(step.src, p, step.a, step.b)]
            ndg_hints.append(co.dist2(step.a, step.b))
        elif isinstance(step, pr.OnCircle):
            vx = new_param(p, "x")
            vy = new_dep(p, "y")
            introduced = [vy]
            assignment[p] = (vx, vy)
            added = [co.dist2(step.center, p)
                     - co.dist2(step.center, step.through)]
        elif isinstance(step, pr.Circumcenter):
            vx, vy = new_dep(p, "x"), new_dep(p, "y")
            introduced = [vx, vy]
            assignment[p] = (vx, vy)
            added = [co.dist2(p, step.a) - co.dist2(p, step.b),
                     co.dist2(p, step.a) - co.dist2(p, step.c)]
            ndg_hints.append(co.collinear(step.a, step.b, step.c))
        else:
            raise TypeError(f"unknown step {step!r}")

        # each new dependent must actually be constrained by this step
        for v in introduced:
            if not any(eq.degree_in(v.name) > 0 for eq in added):
                raise DegenerateConstructionError(
                    f"step for {p} leaves {v.name} unconstrained "
                    f"(degenerate arguments?)")
        hypotheses.extend(added)

    conclusions: list[Polynomial] = []
    for conj in problem.conjectures:
        conclusions.extend(translate_predicate(conj, assignment))

    return PolynomialSystem(
        hypotheses=tuple(hypotheses),
        conclusions=tuple(conclusions),
        params=tuple(params),
        dependents=tuple(dependents),
        ndg_hints=tuple(h for h in ndg_hints if not h.is_zero()),
        assignment=assignment,
        problem=problem,
    )
