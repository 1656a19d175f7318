"""Star product of the quaternionic Weyl correspondence for a charge in a monopole field."""

__version__ = "0.1.0"
