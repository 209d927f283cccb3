# Contraction sequence of the 7-cycle that absorbs the cycle into one
# endpoint; every trigraph keeps red degree at most 2 and red components
# of size at most 3.
0 1
0 2
0 3
0 4
0 5
0 6
