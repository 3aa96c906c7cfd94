"""
Groups module: permutation groups and automorphism search.
"""
