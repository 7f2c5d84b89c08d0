"""Exceptions shared across the pipeline."""


class BudgetExceeded(RuntimeError):
    """A configurable size cap was hit (grounding, arguments or extensions)."""
