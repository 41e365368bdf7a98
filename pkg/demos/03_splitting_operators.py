"""Resolvents, the forward-backward step, and the operator audits.

The resolvent J = (I + lam*Pi)^{-1} is available in closed form for every
bundled inclusion operator.  A point solves the inclusion 0 in Lam(x) + Pi(x)
exactly when it is a fixed point of x -> J(x - lam*Lam(x)).
"""
import numpy as np

from viscosplit import (Box, L1Subdifferential, LinearMonotone, NormalCone,
                        ZeroOperator, affine_op, check_resolvent_firmly_nonexpansive,
                        check_wang_contraction, fixed_point_residual,
                        forward_backward_step, identity_op, resolvent, wang_tau)

print("-- resolvents in closed form --")
x = np.array([2.0, -0.3])
print(f"x = {x.tolist()}")
print(f"  zero operator (identity resolvent):   "
      f"{resolvent(ZeroOperator(), 0.5, x).tolist()}")
cone = NormalCone(Box(-np.ones(2), np.ones(2)))
print(f"  normal cone of the box (projection):  "
      f"{resolvent(cone, 0.5, x).tolist()}")
print(f"  l1 subdifferential (soft threshold):  "
      f"{resolvent(L1Subdifferential(1.0), 0.5, x).tolist()}")
print(f"  linear monotone, coef 1 (shrink):     "
      f"{resolvent(LinearMonotone(1.0), 1.0, x).tolist()}")

print()
print("-- forward-backward step --")
forward = affine_op(1.0, offset=np.array([-1.0, -1.0]), dim=2,
                    name="shift_to_ones")
lam = 0.5
y = forward_backward_step(cone, forward, lam, np.array([3.0, -4.0]))
print(f"inclusion 0 in (x - (1,1)) + N_box(x), one step from (3,-4): "
      f"{y.tolist()}")
res = fixed_point_residual(cone, forward, lam, np.ones(2))
print(f"residual at the solution (1,1): {res:g}")

print()
print("-- operator audits on random pairs --")
rng = np.random.default_rng(0)
pairs = list(zip(rng.uniform(-5, 5, size=(200, 2)),
                 rng.uniform(-5, 5, size=(200, 2))))
firm = check_resolvent_firmly_nonexpansive(cone, 0.5, pairs)
print(f"resolvent firmly nonexpansive: {firm.passed} "
      f"(worst slack {firm.worst_slack:.2e}, {firm.checked} pairs)")

strong = identity_op()
eta = 1.0
tau = wang_tau(eta, strong.strong_monotonicity, strong.lipschitz)
contraction = check_wang_contraction(strong, eta, 0.5, pairs)
print(f"I - t*eta*Phi is a contraction (tau = {tau:g}): {contraction.passed} "
      f"(worst slack {contraction.worst_slack:.2e})")
