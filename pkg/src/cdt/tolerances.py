"""Library-wide default tolerances.

Functions that use a tolerance accept it as a keyword argument; these are
the defaults and the values the CLI flags override.
"""

#: infinity-norm threshold on the stationarity residuals of a pair
TOL_CRITICAL = 1e-8

#: eigenvalues within TOL_PSD * ||A||_2 of zero count as zero
TOL_PSD = 1e-10

#: half-width of the undecided band around 1 for spectral verdicts
BAND = 1e-6

#: Newton stops when ||grad D||_inf drops below this
TOL_NEWTON = 1e-10

#: membership tests for y in a cone / sigma in a sign constraint
TOL_DOMAIN = 1e-12

#: strict-interior margin for open domains of V and V*
INTERIOR_MARGIN = 1e-12

#: subdifferential pair check for the indicator cone
TOL_SUBDIFF = 1e-9

#: b(sigma) in Im A(sigma) if the least-squares residual is below this * (1 + ||b||)
TOL_RANGE = 1e-8
