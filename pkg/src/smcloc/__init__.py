"""Exact localization of motivic Chern classes on finite and affine flag varieties."""

__version__ = "0.1.0"
