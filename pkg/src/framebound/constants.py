"""Reference eigenvalues on the unit disk and published comparison rows.

These are inputs to the bounds and are never computed here.  The
comparison rows are attached to generated tables as annotations only.
"""

# first clamped-plate eigenvalue of the unit disk (tension zero)
PLATE_DISK = 104.36
# first buckling eigenvalue of the unit disk, j_{1,1}^2
BUCKLING_DISK = 14.682

TABLE_PLATE_RATIOS = (1.1, 1.2, 2.0, 4.0)
TABLE_BUCKLING_RATIOS = (1.2, 1.4, 1.6, 2.0, 4.0)

PLATE_ANNOTATIONS = {
    "McLaurin (upper)": (105.741, 109.440, 187.382, 603.2),
    "McLaurin (lower)": (105.741, 109.440, 187.380, 587.2),
}
BUCKLING_ANNOTATIONS = {
    "McLaurin (lower bound)": (15.1, 16.1, 17.5, 20.8, 39.0),
}

# printed precision of the published frame rows (decimal places)
PLATE_DIGITS = (3, 3, 3, 1)
BUCKLING_DIGITS = (2, 2, 2, 2, 2)
