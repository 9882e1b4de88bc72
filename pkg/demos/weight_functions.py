"""Locally balanced weight functions and what they do to the jump chain.

A weight function g turns density ratios t = pi(y)/pi(x) into jump
rates g(t).  When g satisfies g(t) = t * g(1/t) the continuous-time
process is exact for pi without any correction.  This script checks the
identity numerically, shows a custom g, and compares the embedded
jump-chain law of a balanced kind against the unbalanced g(t) = t.

Run with:  python3 demos/weight_functions.py
"""

import numpy as np

from jumpmc import balancing, oracle
from jumpmc.models import three_state_path

rng = np.random.default_rng(1)

print("=== available weight functions ===")
for kind in balancing.available_kinds():
    g = balancing.get(kind)
    print(f"  {kind:<11} g(2) = {balancing.evaluate(g, 2.0):.6f}  balanced = {g.balanced}")

print()
print("=== the balance identity on random ratios ===")
ts = 10.0 ** rng.uniform(-6, 6, size=1000)
for kind in balancing.available_kinds():
    check = balancing.check_balance(balancing.get(kind), ts, tol=1e-10)
    verdict = "holds" if check.passed else f"fails (worst {check.max_violation:.3g} at t={check.worst_t:.3g})"
    print(f"  {kind:<11} {verdict}")

print()
print("=== a custom balanced function ===")
# g(t) = t / (1 + t) + sqrt(t) scaled; any positive combination of
# balanced functions is balanced.
custom = balancing.make_custom(
    "barker_plus_sqrt", lambda t: t / (1.0 + t) + 0.5 * np.sqrt(t)
)
check = balancing.check_balance(custom, ts)
print(f"  {custom.kind}: balanced = {custom.balanced}, identity check passed = {check.passed}")

print()
print("=== jump-chain law on a three-state path ===")
# The time-occupation law is pi for every kind.  The embedded jump chain
# instead targets pi(x) * Lambda(x) (normalized); a balanced g keeps the
# distortion Lambda(x) mild, while g(t) = t makes the jump chain target
# something else entirely.
target = three_state_path()
print(f"  state law pi            : {np.round(np.exp(target.log_weights) / np.exp(target.log_weights).sum(), 4)}")
for kind in ("barker", "sqrt", "global"):
    space, pi_jump, ratio = oracle.jump_measure(target, balancing.get(kind))
    print(f"  jump law under {kind:<7}: {np.round(pi_jump, 4)}   exit-rate distortion {np.round(ratio, 3)}")
print()
print("The 'global' row shows why unbalanced weights need reweighting if")
print("one averages over jumps instead of over time.")
