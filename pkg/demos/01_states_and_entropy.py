# States on block algebras and their entropies.
#
# A finite hybrid classical/quantum system is a direct sum of matrix
# blocks; a state assigns a probability to each block and a density
# matrix inside it.  This walkthrough builds a few states by hand and
# reads off their Shannon, von Neumann, and total (Segal-style) entropies.

import numpy as np

from ncentropy import (
    AlgebraElement,
    AlgebraShape,
    State,
    block_pure_state,
    classical_state,
    evaluate,
    is_pure,
    segal,
    shannon,
    support,
    von_neumann,
)

# A classical three-sided die: the commutative algebra C^3.
die = classical_state([0.5, 0.25, 0.25])
print("classical die entropy:", shannon([0.5, 0.25, 0.25]))

# A qubit in the maximally mixed state: one 2x2 block.
qubit = State(AlgebraShape((2,)), [1.0], (np.eye(2) / 2,))
print("maximally mixed qubit:", von_neumann(np.eye(2) / 2), "= log 2")

# A hybrid system: one classical bit plus one qubit, weighted 1:1.
hybrid = State(
    AlgebraShape((1, 2)),
    [0.5, 0.5],
    (np.eye(1), np.eye(2) / 2),
)
print("hybrid total entropy:", segal(hybrid), "= 1.5 log 2 =", 1.5 * np.log(2))

# Expectation values: evaluate the observable diag(1, 3) in the qubit state.
observable = AlgebraElement(AlgebraShape((2,)), (np.diag([1.0, 3.0]),))
print("<diag(1,3)> in I/2:", evaluate(qubit, observable).real)

# Pure states have total entropy zero and rank-one support.
plus = block_pure_state(AlgebraShape((2,)), 0, [1.0, 1.0])
print("|+> is pure:", is_pure(plus), " entropy:", segal(plus))
print("support of |+><+|:\n", support(plus).blocks[0].real)
