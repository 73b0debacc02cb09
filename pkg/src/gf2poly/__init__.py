"""Binary polynomial multiplication with the additive FFT over Cantor-compatible tower fields."""

from .bitpoly import BitPoly, mul_oracle
from .context import FieldContext, get_context
from .pipeline import BACKENDS, SizeError, multiply, plan

__all__ = ["BACKENDS", "BitPoly", "FieldContext", "SizeError", "get_context", "mul_oracle", "multiply", "plan"]
