"""bicomplex-frames - numerical toolkit for bicomplex frames and Weyl-Heisenberg bc-systems."""

__version__ = "0.1.0"
