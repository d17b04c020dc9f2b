class VerificationError(Exception):
    """Base class of all errors raised by the verification platform.

    `code` is the stable, machine-readable name written into CLI error records.
    """

    code = "VerificationError"
    exit_status = 1

    def to_record(self):
        return {"error_code": self.code, "message": str(self)}


class ConfigError(VerificationError, ValueError):
    code = "ConfigError"
    exit_status = 64


class RhoOutOfRange(ConfigError):
    code = "RhoOutOfRange"


class CoefficientTooLarge(ConfigError):
    code = "CoefficientTooLarge"


class DomainError(VerificationError):
    code = "DomainError"


class PoleError(VerificationError):
    code = "PoleError"

    def __init__(self, message, z):
        super().__init__(message)
        self.z = complex(z)

    def to_record(self):
        record = super().to_record()
        record["z"] = [self.z.real, self.z.imag]
        return record


class IdentityFunction(VerificationError):
    code = "IdentityFunction"


class DegenerateAlpha(VerificationError):
    code = "DegenerateAlpha"


class BoundaryViolation(VerificationError):
    code = "BoundaryViolation"


class ClassViolation(VerificationError):
    code = "ClassViolation"


class MonotonicityViolation(VerificationError):
    code = "MonotonicityViolation"


class ZeroFunction(VerificationError):
    code = "ZeroFunction"


class NonFiniteValue(VerificationError):
    code = "NonFiniteValue"
