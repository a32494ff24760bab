class Inconclusive(Exception):
    """The finite horizon cannot certify an answer."""


class InvariantViolation(AssertionError):
    """A construction produced an object breaking one of its invariants."""
