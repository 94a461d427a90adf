"""Extension graphs, tame types and related computations for GL3 over unramified p-adic fields."""

__version__ = "0.1.0"
