"""HTTP service and the operation layer shared with the CLI."""

from . import ops, schemas

__all__ = ["ops", "schemas"]
