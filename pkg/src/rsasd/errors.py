"""Exception types shared across the package."""


class DecodingFailure(Exception):
    """A decoder could not produce a message."""


class NotApplicableError(ValueError):
    """A formula was asked for outside the parameter range where it holds."""


class ResourceError(RuntimeError):
    """A configured size or cost budget would be exceeded."""
