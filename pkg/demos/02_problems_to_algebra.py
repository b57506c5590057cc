"""From a constructive problem text to a polynomial system.

Run:  python3 demos/02_problems_to_algebra.py
"""

from gatpbench import algebraize, parse_problem, render_problem, validate_problem

TEXT = """\
problem varignon
# meta: Midpoints of a quadrilateral's sides form a parallelogram.
free A
free B
free C
free D
midpoint P A B
midpoint Q B C
midpoint R C D
midpoint S D A
conjecture parallel P Q S R
conjecture parallel P S Q R
"""

problem = parse_problem(TEXT)
print("parsed:", problem.id, "with", len(problem.steps), "steps and",
      len(problem.conjectures), "conjectures")
print("warnings:", validate_problem(problem) or "none")
print()
print("canonical rendering round-trips:")
print(render_problem(problem))

system = algebraize(problem)
print("parameters :", ", ".join(v.name for v in system.params))
print("dependents :", ", ".join(v.name for v in system.dependents))
print()
print("hypotheses (one linear pair per midpoint):")
for h in system.hypotheses:
    print("  ", h.to_string(), "= 0")
print()
print("conclusions (one per parallel conjecture):")
for c in system.conclusions:
    print("  ", c.to_string(), "= 0")
