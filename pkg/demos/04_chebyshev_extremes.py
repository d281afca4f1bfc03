"""How large can the Chebyshev index get?

A random-restart hill climb over positions and weights.  In one dimension
the value never exceeds 1; in two dimensions the search goes past the
three-group value of 1.125.
"""
import numpy as np

from polarindex import extremal_search_chebyshev

for m in (1, 2, 3):
    society, value = extremal_search_chebyshev(m, iterations=3000, restarts=6)
    print(f"m = {m}: best P_cheb = {value:.6f}")
    order = np.argsort(-society.weights)
    for i in order:
        print(f"    weight {society.weights[i]:.3f} at {np.round(society.positions[i], 3)}")
