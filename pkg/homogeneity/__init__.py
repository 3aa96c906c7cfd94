"""
Homogeneity module: level checks, degree search, criteria and brute-force oracles.
"""
