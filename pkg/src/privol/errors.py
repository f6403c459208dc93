"""Exception types shared across the package."""


class PrivolError(Exception):
    """Base class for all errors raised by privol."""

    kind = "error"

    def to_dict(self):
        return {"error": self.kind, "message": str(self)}


class ParameterError(PrivolError, ValueError):
    kind = "parameter_error"


class DomainError(PrivolError, ValueError):
    kind = "domain_error"


class StateError(PrivolError, RuntimeError):
    kind = "state_error"


class ProtocolError(PrivolError, RuntimeError):
    kind = "protocol_error"

    def __init__(self, message, round_index=None):
        super().__init__(message)
        self.round_index = round_index

    def to_dict(self):
        d = super().to_dict()
        d["round"] = self.round_index
        return d


class UnsupportedError(PrivolError, NotImplementedError):
    kind = "unsupported"


class ConfigurationError(PrivolError, ValueError):
    kind = "configuration_error"


class ConstructionFailed(PrivolError, RuntimeError):
    """The packing construction could not find the next distinguishing timestep.

    ``partial`` holds the streams and timesteps built before the failure.
    """

    kind = "construction_failed"

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class OutputError(PrivolError, OSError):
    kind = "io_error"

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = None if path is None else str(path)

    def to_dict(self):
        d = super().to_dict()
        d["path"] = self.path
        return d
