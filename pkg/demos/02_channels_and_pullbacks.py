# Deterministic dynamics act on observables; states pull back.
#
# A unital *-homomorphism between block algebras is stored as a
# multiplicity matrix plus one unitary per target block.  Applying it
# embeds observables; pulling a state back through it traces out the
# multiplicity factors.  The Bell-state example shows the pullback of a
# pure entangled state landing on the maximally mixed qubit, which is
# exactly why its conditional entropy is negative.

import numpy as np

from ncentropy import (
    AlgebraElement,
    AlgebraShape,
    apply,
    block_pure_state,
    entropy_change,
    evaluate,
    pullback,
)
from ncentropy.harness import factor_inclusion

# Include one qubit into a two-qubit system: b -> eye(2) (x) b.
inclusion = factor_inclusion(2, 2)
b = AlgebraElement(AlgebraShape((2,)), (np.array([[1.0, 2.0], [3.0, 4.0]]),))
print("image of b under the inclusion:\n", apply(inclusion, b).blocks[0].real)

# The Bell state on the pair.
bell = block_pure_state(AlgebraShape((4,)), 0, np.array([1.0, 0, 0, 1.0]) / np.sqrt(2))

# Its pullback to a single qubit is maximally mixed.
marginal = pullback(inclusion, bell)
print("marginal density:\n", marginal.densities[0].real)

# Duality: evaluating the pullback equals evaluating the image.
lhs = evaluate(marginal, b)
rhs = evaluate(bell, apply(inclusion, b))
print("duality residual:", abs(lhs - rhs))

# Entropy change = S(bell) - S(marginal) = 0 - log 2 < 0: the global
# state is pure but its marginal is not.
print("conditional entropy of the Bell pair:", entropy_change(inclusion, bell))
