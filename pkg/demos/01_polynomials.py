"""Exact multivariate polynomials: arithmetic, orders, pseudo-division.

Run:  python3 demos/01_polynomials.py
"""

from fractions import Fraction

from gatpbench import Polynomial, TermOrder, pseudo_divide, var

x, y, u, v = var("x"), var("y"), var("u"), var("v")

print("== arithmetic over exact rationals ==")
p = (x + y) ** 3 - x ** 3 - y ** 3
print("(x+y)^3 - x^3 - y^3 =", p.to_string())
q = p * Fraction(1, 3)
print("divided by 3        =", q.to_string())
print("evaluate at x=2/3, y=-1/5:",
      p.evaluate({"x": Fraction(2, 3), "y": Fraction(-1, 5)}))

print()
print("== term orders change the leading monomial ==")
f = x * y ** 2 + x ** 2
lex = TermOrder(TermOrder.LEX, ("x", "y"))
drl = TermOrder(TermOrder.DEGREVLEX, ("x", "y"))
print("f =", f.to_string())
print("leading under lex       :", f.leading_monomial(lex))
print("leading under degrevlex :", f.leading_monomial(drl))

print()
print("== pseudo-division keeps everything fraction-free ==")
f = x ** 2 - u
g = v * x - 1
quotient, remainder, k = pseudo_divide(f, g, "x")
print(f"f = {f.to_string()}")
print(f"g = {g.to_string()}")
print(f"init(g)^{k} * f = ({quotient.to_string()}) * g "
      f"+ ({remainder.to_string()})")
init = g.leading_coeff_in("x")
assert init ** k * f == quotient * g + remainder
print("identity verified exactly")
