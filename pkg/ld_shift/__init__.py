"""LD-Shift - radiation-reaction position shift of a linearly accelerated charge."""

__version__ = "0.1.0"
