"""
Metric module: exact scalars, point sets, labeled distance matrices and the
instance catalog.
"""
