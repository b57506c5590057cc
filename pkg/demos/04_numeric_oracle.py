"""The numeric oracle: exact random models confirm or refute statements.

Run:  python3 demos/04_numeric_oracle.py
"""

from gatpbench import (Counterexample, algebraize, bundled_manifest_path,
                       load_corpus, numeric_check, wu_prove)

corpus = load_corpus(bundled_manifest_path())

print("== cross-checking a proved theorem ==")
entry = corpus.entry("GEO0002")
print(entry.problem.meta)
system = algebraize(entry.problem)
proof = wu_prove(system, timeout_seconds=30)
check = numeric_check(system, samples=50, seed=7,
                      avoid=proof.ndg_conditions)
print(f"wu says {proof.status.value}; oracle agrees on {check.samples} "
      "exact random models")

print()
print("== refuting a plausible-looking non-statement ==")
entry = corpus.entry("NOT0003")
print(entry.problem.meta)
system = algebraize(entry.problem)
got = numeric_check(system, samples=50, seed=7)
assert isinstance(got, Counterexample)
print("counterexample on conjecture", got.conclusion_index, "— the")
print("conclusion polynomial evaluates to", got.value, "at:")
for point, (px, py) in sorted(got.model.items()):
    print(f"  {point} = ({px}, {py})")

print()
print("same seed, same counterexample:")
again = numeric_check(system, samples=50, seed=7)
print("reproducible:", again == got)
