"""ctlab: a desk-scale laboratory for Cannon-Thurston boundary maps.

Subpackages cover exact free-group boundary coding (`words`), hyperbolic
plane and Riemann-sphere geometry (`hyp`), fiber representations of
punctured-torus bundles (`kleinian`), the bundle's ending lamination
(`lamination`), electric metrics on finite graphs (`coarse`), synthetic
split-geometry models with ladder audits (`ladder`), and a command-line
surface (`cli`).
"""

__version__ = "0.1.0"
