"""Tour of the trimmed-squares building blocks on vectors you can check by hand."""

import numpy as np

from slts import prox_trimmed_squares, select_trim, soft_threshold, trimmed_squares

r = np.array([3.0, 1.0, -2.0])

# Sum of the h smallest squares.  With h=2 the entries 1 and -2 survive.
print("r =", r)
print("T_1(r) =", trimmed_squares(r, 1))
print("T_2(r) =", trimmed_squares(r, 2))
print("T_3(r) =", trimmed_squares(r, 3), "(= ||r||^2, nothing trimmed)")

sel = select_trim(r, 2)
print("\nkept indices for h=2:", sel.kept_indices, "-> values", r[sel.kept_indices])

# The prox shrinks exactly the kept entries by 1/(2*gamma + 1) and reports
# the envelope value gamma/(2*gamma+1) * T_h(r).
for gamma in (0.5, 1.0, 2.0):
    res = prox_trimmed_squares(r, 2, gamma)
    print(f"\ngamma={gamma}: prox point = {res.point}")
    print(f"          envelope = {res.envelope_value}"
          f"  (closed form {gamma / (2 * gamma + 1) * trimmed_squares(r, 2)})")

# Ties resolve by magnitude then index, so repeated runs agree bit for bit.
tied = np.array([1.0, -1.0, 1.0])
print("\ntied input:", tied, "-> kept for h=2:", select_trim(tied, 2).kept_indices)

# Soft thresholding is the other prox in the solver (for the l1 term).
x = np.array([3.0, -0.4, 1.2])
print("\nsoft_threshold(x, 1.0) =", soft_threshold(x, 1.0))
