"""pbwlab: an exact workbench for skew-PBW algebras over rational-function
coefficient fields, with operator realizations on truncated polynomial
modules and an extremal-projector calculator for the diagonal pair
sl2 + sl2 over sl2."""

__version__ = "0.1.0"
