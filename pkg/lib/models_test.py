import json
import numpy as np
from .models import format_error, string_format_error, sanitize, dumps_report
from .errorHandler import ValidationException, ChainBrokenException


class TestFormatError:
    def test_format_validation_error(self):
        """Should include status and details of validation errors."""
        try:
            raise ValidationException('Parameter r must be in (0, 0.125]', [{'parameter': 'r'}])
        except Exception as err:
            error = format_error(err)
        assert error['name'] == 'ValidationException'
        assert error['status'] == 2
        assert error['details'] == [{'parameter': 'r'}]
        assert 'Traceback' in error['trace']

    def test_format_chain_error(self):
        """Should include broken chain index."""
        error = format_error(ChainBrokenException('not nested', 2))
        assert error['status'] == 3
        assert error['index'] == 2

    def test_format_string_error(self):
        """Should format errors as JSON text."""
        text = string_format_error(ValueError('bad'))
        assert json.loads(text)['message'] == 'bad'


class TestSanitize:
    def test_replace_non_finite_values(self):
        """Should replace non-finite floats with null."""
        assert sanitize({'a': float('inf'), 'b': [float('nan'), 1.5]}) == {'a': None, 'b': [None, 1.5]}

    def test_convert_numpy_values(self):
        """Should convert numpy scalars and arrays."""
        value = sanitize({'count': np.int64(3), 'flag': np.bool_(True), 'values': np.array([0.5, np.inf])})
        assert value == {'count': 3, 'flag': True, 'values': [0.5, None]}
        assert isinstance(value['count'], int)

    def test_expand_objects_with_to_dict(self):
        """Should expand objects exposing to_dict."""
        class Square:
            def to_dict(self):
                return {'m': 1, 'n': 2}
        assert sanitize([Square()]) == [{'m': 1, 'n': 2}]

    def test_dump_reports_deterministically(self):
        """Should produce identical text for identical reports."""
        report = {'totalUpper': 329.875, 'tail': float('inf'), 'rows': (1, 2)}
        assert dumps_report(report) == dumps_report(dict(report))
        assert json.loads(dumps_report(report)) == {'totalUpper': 329.875, 'tail': None, 'rows': [1, 2]}
