import json
import math
import traceback
import numpy as np


def format_error(err: Exception or any):
    """Formats errors with additional information.

    Args:
        err: Exception to process.

    Returns:
        Dictionary with error name, message and, where present, exit status and validation details.
    """
    error = {'name': err.__class__.__name__, 'message': err if isinstance(err, str) or err is None else (
        err.args[0] if len(err.args) else None)}
    if hasattr(err, 'status'):
        error['status'] = err.status
    if err.__class__.__name__ == 'ValidationException':
        error['details'] = err.details
    if err.__class__.__name__ == 'ChainBrokenException':
        error['index'] = err.index
    if err.__class__.__name__ == 'InadmissibleSquareException':
        error['square'] = err.square
    error['trace'] = traceback.format_exc()
    return error


def string_format_error(err: Exception or any):
    """Outputs error information in string format.

    Args:
        err: Exception to process.

    Return:
        Error information in string format.
    """
    return json.dumps(sanitize(format_error(err)))


def sanitize(obj):
    """Converts a report into plain JSON types. Non-finite floats become null, numpy scalars and arrays
    become Python numbers and lists, objects exposing to_dict are expanded.

    Args:
        obj: Report to convert.

    Returns:
        JSON compatible copy of the report.
    """
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, complex):
        return [sanitize(obj.real), sanitize(obj.imag)]
    if isinstance(obj, dict):
        return {str(key): sanitize(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(item) for item in obj]
    if isinstance(obj, np.ndarray):
        return [sanitize(item) for item in obj.tolist()]
    if hasattr(obj, 'to_dict'):
        return sanitize(obj.to_dict())
    return obj


class ReportEncoder(json.JSONEncoder):
    """A JSON encoder used to print reports deterministically."""

    def iterencode(self, obj, _one_shot=False):
        return json.JSONEncoder.iterencode(self, sanitize(obj), _one_shot)


def dumps_report(report) -> str:
    """Serializes a report to JSON text.

    Args:
        report: Report to serialize.

    Returns:
        JSON text, identical for identical reports.
    """
    return json.dumps(report, cls=ReportEncoder, indent=2, allow_nan=False)
