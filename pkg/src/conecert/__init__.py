"""conecert: exact certificates about tensor products of proper polyhedral cones.

The package decides, with exact rational arithmetic throughout, whether a
pair of proper polyhedral cones is nuclear (minimal and maximal tensor
products coincide) or entangleable, and it produces machine-checkable
certificates for both answers:

* kite-square sandwichings for non-classical cones,
* witness tensors separating the maximal from the minimal tensor product,
* LP infeasibility certificates cross-checking every witness,
* a symbolic proof of the polynomial identity the witnesses rely on.
"""

__version__ = "0.1.0"
