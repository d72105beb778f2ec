"""The conditional two-stage loss and entropy-based confidence.

Shows: toxicity BCE, the masked efficiency term (toxic samples are inert),
the combined objective, analytic gradients, and confidence landmarks.
"""

import numpy as np

from lipidscreen import numerics

# A 3-sample batch: one toxic, two clean with efficiency labels 4 and 9.
z_tox = np.array([2.0, -1.5, -3.0])
z_eff = np.zeros((3, 10))
z_eff[1, 3] = 4.0   # clean sample 1 leans toward class 4
z_eff[2, 8] = 1.0   # clean sample 2 leans weakly toward class 9
y_tox = np.array([1, 0, 0])
y_eff = np.array([1, 4, 9])

bd = numerics.total_loss(z_tox, z_eff, y_tox, y_eff, alpha=0.1)
print(f"toxicity loss      : {bd.l_tox:.6f}")
print(f"efficiency loss    : {bd.l_eff:.6f}  (over {bd.mask_count} non-toxic samples)")
print(f"total (alpha=0.1)  : {bd.l_total:.6f}")

# Perturbing the toxic sample's efficiency logits changes nothing.
perturbed = z_eff.copy()
perturbed[0] += 100.0
same = numerics.efficiency_loss(perturbed, y_eff, y_tox) == numerics.efficiency_loss(
    z_eff, y_eff, y_tox
)
print(f"toxic sample inert : {same}")

g_tox, g_eff = numerics.loss_gradients(z_tox, z_eff, y_tox, y_eff, alpha=0.1)
print(f"gradient rows for the toxic sample are zero: {(g_eff[0] == 0).all()}")

# Confidence = 1 - H/ln10 over the 10-class distribution.
for name, p in [
    ("uniform", np.full(10, 0.1)),
    ("two-way split", np.array([0.5, 0.5] + [0.0] * 8)),
    ("peaked", numerics.softmax(z_eff[1])),
    ("one-hot", np.eye(10)[3]),
]:
    print(f"confidence({name:>13}) = {numerics.confidence(p):.6f}")
