"""Calibrated round-budget constants for the acceptance matrix.

The distributed algorithms are linear-round (clustering) and
logarithmic-round (clique voting) up to constants.  These constants were
fixed once by measuring desk-scale runs (worst observed factors were ~4.3
and ~2.8) and adding roughly 3x headroom; tests treat them as hard budgets.

g2mvc_eps:        rounds <= C1_CLUSTERING * n / eps'   (eps' = 1/ceil(1/eps))
g2mvc_cc_voting:  rounds <= C2_VOTING * (log2(n) + 1/eps)
"""

C1_CLUSTERING = 12
C2_VOTING = 12
