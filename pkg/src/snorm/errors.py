class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidPartitionError(ValueError):
    """A family of index sets is not successive and admissible."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SupportError(ValueError):
    """A vector is supported outside the block it was assigned to."""

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block
