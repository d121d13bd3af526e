import json
import math
from importlib import import_module


class ImaginarityError(Exception):
    pass


class ValidationError(ImaginarityError, ValueError):
    """
    A matrix failed one of its invariants.

    ``invariant`` names the violated invariant and ``magnitude`` is the size of
    the violation, so callers can report both without parsing the message.
    """

    invariant = "valid"

    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude


class NonFiniteError(ValidationError):
    invariant = "finite"


class NotHermitianError(ValidationError):
    invariant = "hermitian"


class NotPositiveSemidefiniteError(ValidationError):
    invariant = "positive semidefinite"


class NotPositiveDefiniteError(ValidationError):
    invariant = "positive definite"


class TraceError(ValidationError):
    invariant = "unit trace"


class CompletenessError(ValidationError):
    invariant = "kraus completeness"


class DomainError(ImaginarityError, ValueError):
    pass


class DimensionMismatchError(ImaginarityError, ValueError):
    pass


class ParseError(ImaginarityError):
    pass


class UnknownCheckError(ImaginarityError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class OrderingViolationError(ImaginarityError):
    pass


def get_module_class(class_path):
    """
    imports and returns module class from ``path.to.module.Class``
    argument
    """
    mod_name, cls_name = class_path.rsplit(".", 1)
    try:
        mod = import_module(mod_name)
    except ImportError as e:
        raise ImaginarityError(f"Error importing module {mod_name}: '{e}'")
    try:
        return getattr(mod, cls_name)
    except AttributeError:
        raise ImaginarityError(f"Module {mod_name} has no class {cls_name}")


def format_number(value, digits=None):
    if digits is None:
        from imaginarity.conf import settings

        digits = settings.IMAGINARITY_SIGNIFICANT_DIGITS
    if value is None:
        return ""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0:
        value = 0.0
    return f"{value:.{digits}g}"


def serialize(obj):
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False)
