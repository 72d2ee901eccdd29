"""cmfields: exact arithmetic for the finite objects of complex multiplication.

Layers (one module per subsystem):
  exactnf    - rationals, polynomials, number fields, closures, certified embeddings
  ideals     - maximal orders (orders.py) and fractional-ideal HNF calculus
  cmreflex   - CM-types, reflex fields, reflex norms and their identity suite
  polar      - Riemann-form elements and type quadruples
  latticeav  - lattice models of CM abelian varieties, a-multiplications
  stverify   - point counting, Frobenius elements, Shimura-Taniyama checks
  rayclass   - ray class groups and the reflex transport check
  cli        - reproducible command-line pipelines
"""

__version__ = "0.1.0"
