# Walkthrough sequence of the demo graph: near-twins first, then the two
# halves. Component twin-width 3.
4 5
0 3
1 4
0 6
1 2
0 1
