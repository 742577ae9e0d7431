import math
from .errorHandler import ValidationException


class OptionsValidator:
    """Class for validating numeric options."""

    def validate_number(self, value: int or float or None, default_value: int or float, name: str):
        """Validates a number parameter.

        Args:
            value: Value to validate.
            default_value: Default value for an option.
            name: Option name.

        Returns:
            Validated value.

        Raises:
            ValidationException: If value is invalid.
        """
        if value is None:
            return default_value
        if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
            raise ValidationException(f'Parameter {name} must be a number', [{
                'parameter': name, 'message': 'must be a number'}])
        if value < 0:
            raise ValidationException(f'Parameter {name} cannot be lower than 0', [{
                'parameter': name, 'message': 'cannot be lower than 0', 'range': '[0, inf)'}])
        return value

    def validate_non_zero(self, value: int or float or None, default_value: int or float, name: str):
        """Validates a number parameter to be above zero.

        Args:
            value: Value to validate.
            default_value: Default value for an option.
            name: Option name.

        Returns:
            Validated value.

        Raises:
            ValidationException: If value is invalid.
        """
        value = self.validate_number(value, default_value, name)
        if value == 0:
            raise ValidationException(f'Parameter {name} must be bigger than 0', [{
                'parameter': name, 'message': 'must be bigger than 0', 'range': '(0, inf)'}])
        return value

    def validate_integer(self, value: int or None, default_value: int, name: str, minimum: int = 0):
        """Validates an integer parameter.

        Args:
            value: Value to validate.
            default_value: Default value for an option.
            name: Option name.
            minimum: Smallest admissible value.

        Returns:
            Validated value.

        Raises:
            ValidationException: If value is invalid.
        """
        if value is None:
            return default_value
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationException(f'Parameter {name} must be an integer', [{
                'parameter': name, 'message': 'must be an integer'}])
        if value < minimum:
            raise ValidationException(f'Parameter {name} cannot be lower than {minimum}', [{
                'parameter': name, 'message': f'cannot be lower than {minimum}', 'range': f'[{minimum}, inf)'}])
        return value

    def validate_range(self, value: int or float or None, default_value: int or float, name: str,
                       low: float, high: float, low_inclusive: bool = False, high_inclusive: bool = True):
        """Validates a number parameter to lie in an interval.

        Args:
            value: Value to validate.
            default_value: Default value for an option.
            name: Option name.
            low: Lower end of the interval.
            high: Upper end of the interval.
            low_inclusive: Whether the lower end is admissible.
            high_inclusive: Whether the upper end is admissible.

        Returns:
            Validated value.

        Raises:
            ValidationException: If value is invalid.
        """
        if value is None:
            return default_value
        interval = ('[' if low_inclusive else '(') + f'{low:g}, {high:g}' + (']' if high_inclusive else ')')
        if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
            raise ValidationException(f'Parameter {name} must be a number', [{
                'parameter': name, 'message': 'must be a number', 'range': interval}])
        above_low = value >= low if low_inclusive else value > low
        below_high = value <= high if high_inclusive else value < high
        if not (above_low and below_high):
            raise ValidationException(f'Parameter {name} must be in {interval}', [{
                'parameter': name, 'message': f'must be in {interval}', 'range': interval}])
        return value

    def validate_boolean(self, value: bool or None, default_value: bool, name: str):
        """Validates a boolean parameter.

        Args:
            value: Value to validate.
            default_value: Default value for an option.
            name: Option name.

        Returns:
            Validated value.

        Raises:
            ValidationException: If value is invalid.
        """
        if value is None:
            return default_value
        if not isinstance(value, bool):
            raise ValidationException(f'Parameter {name} must be a boolean', [{
                'parameter': name, 'message': 'must be a boolean'}])
        return value
