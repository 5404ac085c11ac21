# Mixing deviations: where the entropy change is and is not affine.
#
# Mixing two states never decreases the entropy change (the deviation
# chi is nonnegative), and chi vanishes exactly when the two states are
# mutually orthogonal AND the morphism keeps them orthogonal.  The
# block-weight functor K shows the axioms are not redundant: it is
# affine for external direct sums but fails the orthogonal-affinity test
# by exactly log 2 on a qubit measurement.

import numpy as np

from ncentropy import (
    AlgebraShape,
    State,
    classical_state,
    convex_combine,
    holevo_change,
    initial,
    k_functor,
    measurement_morphism,
    preserves_orthogonality,
)

shape = AlgebraShape((2,))
e0 = State(shape, [1.0], (np.diag([1.0, 0.0]),))
e1 = State(shape, [1.0], (np.diag([0.0, 1.0]),))

# The Z measurement keeps the diagonal pair orthogonal: chi = 0.
z_meas = measurement_morphism(shape, 0, np.diag([1.0, -1.0]))
print("preserves:", preserves_orthogonality(z_meas, e0, e1))
print("chi on the preserving measurement:", holevo_change(z_meas, 0.5, e0, e1))

# Collapsing a classical bit to a point destroys orthogonality: chi > 0.
bang = initial(AlgebraShape((1, 1)))
d0, d1 = classical_state([1.0, 0.0]), classical_state([0.0, 1.0])
print("preserves:", preserves_orthogonality(bang, d0, d1))
print("chi on the collapsing map:", holevo_change(bang, 0.5, d0, d1), "= log 2")

# The block-weight functor K is NOT affine on the preserved pair: its
# deviation equals -log 2, separating it from the entropy change even
# though both agree on commutative algebras.
mix = convex_combine(0.5, e0, e1)
k_dev = k_functor(z_meas, mix) - 0.5 * k_functor(z_meas, e0) - 0.5 * k_functor(z_meas, e1)
print("K functor deviation:", k_dev, "= -log 2")
